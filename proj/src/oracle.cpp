// Oracle and views are header-only; this TU anchors the library target.
#include "oka/oracle.hpp"
