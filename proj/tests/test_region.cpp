#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "pointproc/region.hpp"
#include "pointproc/rng.hpp"

using namespace pointproc;

namespace {

Point random_point(Universe u, SplitMix64& rng) {
  switch (u) {
    case Universe::Unit1: return Point::star();
    case Universe::Nats: return Point::nat(rng.next() % 10);
    case Universe::RealLine: return Point::real(rng.next_double() * 10 - 5);
    case Universe::UnitSquare:
      return Point::real2(rng.next_double(), rng.next_double());
  }
  throw std::logic_error("bad universe");
}

}  // namespace

TEST_CASE("membership respects bodies and complements") {
  CHECK(Region::rect(0, 0, 1, 1).contains(Point::real2(0.5, 0.5)));
  CHECK_FALSE(
      Region::interval(0, 1).complement().contains(Point::real(0.5)));
  CHECK_FALSE(Region::points({Point::nat(0)}).contains(Point::nat(6)));
  CHECK_THROWS_AS(Region::rect(0, 0, 1, 1).contains(Point::real(0.5)),
                  usage_error);
}

TEST_CASE("measures: areas, counting, complements") {
  CHECK(Region::rect(0, 0, 0.5, 0.5).measure() == 0.25);
  CHECK(Region::rect(0, 0, 0.5, 0.5).complement().measure() == 0.75);
  CHECK(Region::points({Point::nat(0), Point::nat(6)}).measure() == 2.0);
  CHECK(std::isinf(Region::interval(0, 1).complement().measure()));
  CHECK(std::isinf(Region::all(Universe::Nats).measure()));
  CHECK(Region::all(Universe::Unit1).measure() == 1.0);
}

TEST_CASE("complement is an involution pointwise") {
  SplitMix64 rng(7);
  for (Universe u : {Universe::Unit1, Universe::Nats, Universe::RealLine,
                     Universe::UnitSquare}) {
    Region r = [&] {
      switch (u) {
        case Universe::Unit1: return Region::points({Point::star()});
        case Universe::Nats:
          return Region::points({Point::nat(1), Point::nat(4)});
        case Universe::RealLine:
          return Region::intervals({{0.0, 1.0}, {2.5, 3.0}});
        default:
          return Region::rects({{0, 0, 0.5, 1}, {0.25, 0.25, 0.75, 0.75}});
      }
    }();
    Region rr = r.complement().complement();
    for (int i = 0; i < 100; ++i) {
      Point p = random_point(u, rng);
      CHECK(r.contains(p) == rr.contains(p));
    }
  }
}

TEST_CASE("complement of the empty body is the whole universe") {
  SplitMix64 rng(8);
  for (Universe u : {Universe::Nats, Universe::RealLine, Universe::UnitSquare}) {
    Region full = Region::empty(u).complement();
    for (int i = 0; i < 50; ++i) CHECK(full.contains(random_point(u, rng)));
  }
}

TEST_CASE("measure splits between a body and its complement") {
  Region r = Region::rects({{0.1, 0.2, 0.6, 0.9}, {0.5, 0.0, 1.0, 0.4}});
  CHECK_THAT(r.measure() + r.complement().measure(),
             Catch::Matchers::WithinAbs(1.0, 1e-12));
}

TEST_CASE("intersection of bodies and complements") {
  Region a = Region::rect(0, 0, 0.6, 1);
  Region b = Region::rect(0.4, 0, 1, 1);
  Region ab = a.intersect(b);
  CHECK_THAT(ab.measure(), Catch::Matchers::WithinAbs(0.2, 1e-12));
  CHECK(ab == Region::rect(0.4, 0, 0.6, 1));

  Region r = Region::interval(1, 2);
  CHECK(r.intersect(r.complement()).measure() == 0.0);
  CHECK(r.intersect(Region::all(Universe::RealLine)) == r);
  CHECK_THROWS_AS(a.intersect(r), usage_error);
}

TEST_CASE("intersection agrees with conjunction on random probes") {
  SplitMix64 rng(99);
  for (int round = 0; round < 10; ++round) {
    auto riv = [&] {
      double lo = rng.next_double() * 8 - 4;
      return Interval{lo, lo + rng.next_double() * 3};
    };
    Region a = Region::intervals({riv(), riv()});
    Region b = Region::intervals({riv(), riv()});
    if (round % 3 == 1) a = a.complement();
    if (round % 3 == 2) b = b.complement();
    Region ab = a.intersect(b);
    for (int i = 0; i < 100; ++i) {
      Point p = random_point(Universe::RealLine, rng);
      CHECK(ab.contains(p) == (a.contains(p) && b.contains(p)));
    }
  }
  for (int round = 0; round < 10; ++round) {
    auto rrect = [&] {
      double x0 = rng.next_double() * 0.8, y0 = rng.next_double() * 0.8;
      return Rect{x0, y0, x0 + rng.next_double() * (1 - x0),
                  y0 + rng.next_double() * (1 - y0)};
    };
    Region a = Region::rects({rrect(), rrect()});
    Region b = Region::rects({rrect(), rrect()});
    Region ab = a.intersect(b);
    for (int i = 0; i < 100; ++i) {
      Point p = random_point(Universe::UnitSquare, rng);
      CHECK(ab.contains(p) == (a.contains(p) && b.contains(p)));
    }
  }
}

TEST_CASE("canonical form is a fixpoint and additive") {
  // Overlapping and touching pieces fuse into a canonical decomposition;
  // rebuilding from the stored pieces changes nothing.
  Region r = Region::intervals({{0, 1}, {1, 2}, {0.5, 1.5}, {4, 4}});
  CHECK(r.interval_body().size() == 1);
  CHECK(Region::intervals(r.interval_body()) == r);
  CHECK(r.measure() == 2.0);

  Region s = Region::rects({{0, 0, 1, 0.5}, {0, 0.5, 1, 1}, {0.25, 0.25, 0.5, 0.75}});
  CHECK(Region::rects(s.rect_body()) == s);
  CHECK_THAT(s.measure(), Catch::Matchers::WithinAbs(1.0, 1e-12));
  double pieces = 0;
  for (const auto& q : s.rect_body()) pieces += q.area();
  CHECK_THAT(pieces, Catch::Matchers::WithinAbs(s.measure(), 1e-12));

  // same set built two different ways lands on the same representation
  Region t1 = Region::rects({{0, 0, 0.5, 1}, {0.5, 0, 1, 1}});
  Region t2 = Region::rects({{0, 0, 1, 0.5}, {0, 0.5, 1, 1}});
  CHECK(t1 == t2);
}

TEST_CASE("rectangles must stay inside the unit square") {
  CHECK_THROWS_AS(Region::rect(-0.1, 0, 1, 1), usage_error);
  CHECK_THROWS_AS(Region::rect(0, 0, 1.5, 1), usage_error);
}
