#include "doctest.h"

#include "oka/oracle.hpp"

using namespace oka;

TEST_CASE("query is deterministic per point") {
  Oracle o(7, 8, 16);
  CHECK(o.query(Principal::A, 0) == o.query(Principal::A, 0));
  CHECK(o.query(Principal::B, 123) == o.query(Principal::Eve, 123));
}

TEST_CASE("different seeds give different tables") {
  Oracle o1(1, 8, 8), o2(2, 8, 8);
  bool differs = false;
  for (Point p = 0; p < 256; ++p)
    if (o1.value(p) != o2.value(p)) differs = true;
  CHECK(differs);
}

TEST_CASE("ledgers count distinct points per principal") {
  Oracle o(3, 8, 8);
  for (Point p : {1, 2, 3, 4, 5}) o.query(Principal::A, p);
  o.query(Principal::A, 3);  // duplicate: charged once
  CHECK(o.ledger(Principal::A).count() == 5);
  CHECK(o.ledger(Principal::B).count() == 0);
  o.query(Principal::B, 9);
  o.query(Principal::Eve, 9);
  CHECK(o.ledger(Principal::B).contains(9));
  CHECK(o.ledger(Principal::Eve).contains(9));
  CHECK(o.value(9) == o.value(9));
}

TEST_CASE("ledger points equal the queried set in order") {
  Oracle o(3, 8, 8);
  std::vector<Point> asked{4, 2, 4, 7};
  for (Point p : asked) o.query(Principal::A, p);
  CHECK(o.ledger(Principal::A).points() == std::vector<Point>{4, 2, 7});
}

TEST_CASE("programmed answers dominate") {
  Oracle o = Oracle(11, 4, 8).with_answers({{3, 9}});
  CHECK(o.value(3) == 9);
  CHECK(o.query(Principal::A, 3) == 9);
  Oracle forced = Oracle(999, 4, 8).with_answers({{1, 0}});
  CHECK(forced.value(1) == 0);
}

TEST_CASE("empty assignment leaves the table unchanged") {
  Oracle o(5, 8, 16);
  Oracle same = o.with_answers({});
  for (Point p = 0; p < 256; ++p) CHECK(o.value(p) == same.value(p));
}

TEST_CASE("disjoint fix_answers commute") {
  Oracle o(5, 4, 8);
  Oracle ab = o.with_answers({{1, 10}}).with_answers({{2, 20}});
  Oracle ba = o.with_answers({{2, 20}}).with_answers({{1, 10}});
  for (Point p = 0; p < 16; ++p) CHECK(ab.value(p) == ba.value(p));
}

TEST_CASE("programming is local") {
  Oracle o(5, 8, 8);
  Oracle fixed = o.with_answers({{17, 42}});
  for (Point p = 0; p < 256; ++p) {
    if (p == 17)
      CHECK(fixed.value(p) == 42);
    else
      CHECK(fixed.value(p) == o.value(p));
  }
}

TEST_CASE("equal construction parameters give equal tables") {
  Oracle a(99, 10, 12), b(99, 10, 12);
  for (Point p = 0; p < 1024; ++p) CHECK(a.value(p) == b.value(p));
}

TEST_CASE("fork is independent with same widths and empty ledgers") {
  Oracle o(1, 6, 16);
  o.query(Principal::A, 0);
  Oracle f = o.fork(2);
  CHECK(f.domain_bits() == 6);
  CHECK(f.range_bits() == 16);
  CHECK(f.ledger(Principal::A).count() == 0);
  bool differs = false;
  for (Point p = 0; p < 64; ++p)
    if (o.value(p) != f.value(p)) differs = true;
  CHECK(differs);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(Oracle(1, 0, 8), parameter_error);
  CHECK_THROWS_AS(Oracle(1, 31, 8), parameter_error);
  CHECK_THROWS_AS(Oracle(1, 8, 0), parameter_error);
  CHECK_THROWS_AS(Oracle(1, 8, 65), parameter_error);
  Oracle o(1, 4, 4);
  CHECK_THROWS_AS(o.value(16), parameter_error);
  CHECK_THROWS_AS(o.with_answers({{1, 16}}), parameter_error);  // 5-bit answer
  CHECK_THROWS_AS(o.with_answers({{17, 0}}), parameter_error);
}

TEST_CASE("answers are range-masked") {
  Oracle o(123, 8, 5);
  for (Point p = 0; p < 256; ++p) CHECK((o.value(p) >> 5) == 0);
}

TEST_CASE("overlay view answers fixed points without charging") {
  Oracle o(9, 8, 8);
  ChargingView inner(o, Principal::A);
  std::unordered_map<Point, Answer> fixed{{5, 77}};
  OverlayView ov(inner, fixed);
  CHECK(ov.ask(5) == 77);
  CHECK(o.ledger(Principal::A).count() == 0);
  CHECK(ov.ask(6) == o.value(6));
  CHECK(o.ledger(Principal::A).count() == 1);
}

TEST_CASE("value view never touches ledgers") {
  Oracle o(9, 8, 8);
  ValueView v(o);
  CHECK(v.ask(3) == o.value(3));
  CHECK(o.ledger(Principal::A).count() == 0);
  CHECK(o.ledger(Principal::Eve).count() == 0);
}
