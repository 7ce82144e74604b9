#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "pointproc/intensity.hpp"

using namespace pointproc;
using Catch::Matchers::WithinAbs;

namespace {
const Point kStar = Point::star();
const Region kStarRegion = Region::points({kStar});

PointBag stars(std::size_t n) { return PointBag(std::vector<Point>(n, kStar)); }
}  // namespace

TEST_CASE("evaluation of the basic shapes") {
  Point x = Point::nat(2);
  Region u = Region::points({x});
  CHECK(IntensityMeasure::dirac(x).eval(u) == 1.0);
  CHECK(IntensityMeasure::dirac(x).eval(Region::points({Point::nat(3)})) == 0.0);

  auto lam10 = IntensityMeasure::density(10.0, Region::rect(0, 0, 1, 1));
  CHECK(lam10.eval(Region::rect(0, 0, 0.5, 0.5)) == 2.5);

  auto two = IntensityMeasure::sum(
      {IntensityMeasure::dirac(x), IntensityMeasure::dirac(x)});
  CHECK(two.eval(u) == 2.0);
}

TEST_CASE("infinite-measure requests are refused") {
  CHECK_THROWS_AS(
      IntensityMeasure::dirac(Point::nat(0)).eval(Region::all(Universe::Nats)),
      range_error);
  CHECK_THROWS_AS(IntensityMeasure::density(1.0, Region::interval(0, 1))
                      .eval(Region::interval(0, 1).complement()),
                  range_error);
  CHECK_THROWS_AS(
      IntensityMeasure::density(1.0, Region::interval(0, 1).complement()),
      usage_error);
}

TEST_CASE("unit is Dirac") {
  Point x = Point::nat(1);
  CHECK(intensity_unit(x).eval(Region::points({x})) == 1.0);
  CHECK(intensity_unit(x).eval(Region::points({Point::nat(0)})) == 0.0);
  for (std::size_t mask = 0; mask < 8; ++mask) {
    std::vector<Point> pts;
    for (std::size_t b = 0; b < 3; ++b)
      if (mask & (1u << b)) pts.push_back(Point::nat(b));
    Region u = pts.empty() ? Region::empty(Universe::Nats) : Region::points(pts);
    CHECK(intensity_of_exact(gbe_unit<Point>(x)).eval(u) ==
          intensity_unit(x).eval(u));
  }
}

TEST_CASE("bind integrates kernels") {
  Point x = Point::nat(1);
  auto k = [](const Point& p) {
    return IntensityMeasure::weighted_sum({{p, 0.25}, {Point::nat(0), 0.5}});
  };
  auto bound = intensity_bind(IntensityMeasure::dirac(x), k);
  for (std::size_t v = 0; v < 3; ++v) {
    Region u = Region::points({Point::nat(v)});
    CHECK_THAT(bound.eval(u), WithinAbs(k(x).eval(u), 1e-15));
  }

  // the discrete Wald shape: total mass EN at star, kernel mass EX
  auto base = IntensityMeasure::weighted_sum({{kStar, 3.0}});
  auto wald = intensity_bind(base, [](const Point&) {
    return IntensityMeasure::weighted_sum({{kStar, 1.5}});
  });
  CHECK_THAT(wald.eval(kStarRegion), WithinAbs(4.5, 1e-12));

  // mass at star spread uniformly over the square collapses to a density
  Region square = Region::rect(0, 0, 1, 1);
  auto spread = intensity_bind(
      IntensityMeasure::weighted_sum({{kStar, 10.0}}),
      [&](const Point&) { return IntensityMeasure::density(1.0, square); });
  CHECK(spread.eval(Region::rect(0, 0, 0.5, 0.5)) == 2.5);
}

TEST_CASE("intensity of an exact distribution") {
  CHECK(intensity_of_exact(gbe_unit<Point>(Point::nat(4)))
            .eval(Region::points({Point::nat(4)})) == 1.0);

  auto alpha = BagDist::from_weights({{PointBag{}, 0.5}, {stars(2), 0.5}});
  CHECK_THAT(intensity_of_exact(alpha).eval(kStarRegion),
             WithinAbs(1.0, 1e-15));  // 0.5 * 0 + 0.5 * 2

  auto pois = poisson_trunc(3.0, 1e-9).map(
      [](std::uint64_t k) { return stars(k); });
  CHECK_THAT(intensity_of_exact(pois).eval(kStarRegion), WithinAbs(3.0, 1e-6));
}

TEST_CASE("embedded bags count points") {
  Point x = Point::nat(0), y = Point::nat(5);
  PointBag b({x, x, y});
  CHECK(embed_bag(b).eval(Region::points({x})) == 2.0);
  CHECK(embed_bag(PointBag{}).eval(Region::points({x})) == 0.0);
  CHECK(embed_bag(b).eval(Region::points({x, y})) == 3.0);
}

TEST_CASE("factor-sum identity") {
  Point u = Point::nat(0), v = Point::nat(1);
  auto coin = DiscreteDist<Point>::from_weights({{u, 0.5}, {v, 0.5}});
  auto [direct, via] =
      distributive_intensity_check(std::vector{coin, coin}, Region::points({u}));
  CHECK_THAT(direct, WithinAbs(1.0, 1e-15));
  CHECK_THAT(via, WithinAbs(1.0, 1e-12));

  auto [d0, v0] = distributive_intensity_check(
      std::vector<DiscreteDist<Point>>{}, Region::points({u}));
  CHECK(d0 == 0.0);
  CHECK(v0 == 0.0);

  auto inside = DiscreteDist<Point>::unit(u);
  auto [dn, vn] = distributive_intensity_check(
      std::vector{inside, inside, inside}, Region::points({u}));
  CHECK_THAT(dn, WithinAbs(3.0, 1e-15));
  CHECK_THAT(vn, WithinAbs(3.0, 1e-12));
}

TEST_CASE("additivity over disjoint regions") {
  auto m = IntensityMeasure::sum(
      {IntensityMeasure::density(2.0, Region::rect(0, 0, 1, 0.5)),
       IntensityMeasure::weighted_sum({{Point::real2(0.25, 0.75), 1.5}})});
  Region a = Region::rect(0, 0, 0.5, 1);
  Region b = Region::rect(0.5, 0, 1, 1);
  CHECK_THAT(m.eval(a) + m.eval(b),
             WithinAbs(m.eval(Region::rect(0, 0, 1, 1)), 1e-12));
}

TEST_CASE("quadrature approximates smooth kernel binds") {
  // base: unit density on the square; kernel: mass x+y at star.
  // closed form: integral of (x+y) over the square = 1.
  auto kb = intensity_bind(
      IntensityMeasure::density(1.0, Region::rect(0, 0, 1, 1)),
      [](const Point& p) {
        return IntensityMeasure::weighted_sum({{kStar, p.x() + p.y()}});
      });
  CHECK_THAT(kb.eval(kStarRegion), WithinAbs(1.0, 1e-3));

  // 1-d: uniform density shifted mass, integral of x over [0,1) = 0.5
  auto kb1 = intensity_bind(
      IntensityMeasure::density(1.0, Region::interval(0, 1)),
      [](const Point& p) {
        return IntensityMeasure::weighted_sum({{kStar, p.x()}});
      });
  CHECK_THAT(kb1.eval(kStarRegion), WithinAbs(0.5, 1e-3));
}
