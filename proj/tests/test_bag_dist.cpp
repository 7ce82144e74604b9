#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "pointproc/bag_dist.hpp"
#include "pointproc/rng.hpp"

using namespace pointproc;
using Catch::Matchers::WithinAbs;

namespace {
const Point kStar = Point::star();
const Region kStarRegion = Region::points({kStar});

PointBag stars(std::size_t n) {
  return PointBag(std::vector<Point>(n, kStar));
}
}  // namespace

TEST_CASE("deterministic single-point processes") {
  Point x = Point::nat(5);
  Region u = Region::points({x});
  auto alpha = gbe_unit<Point>(x);
  CHECK(prob_count(alpha, u, 1) == 1.0);
  CHECK(prob_count(alpha, u.complement(), 0) == 1.0);

  auto f = [](const Point& p) {
    return BagDist::from_weights({{PointBag({p, p}), 0.5}, {PointBag{}, 0.5}});
  };
  CHECK(total_variation(gbe_bind(alpha, f), f(x)) <= 1e-12);
}

TEST_CASE("bind enumerates independent continuations") {
  // alpha uniform on {[*], [*,*]}, f(*) uniform on {[], [*]}
  auto alpha =
      BagDist::from_weights({{stars(1), 0.5}, {stars(2), 0.5}});
  auto f = [](const Point&) {
    return BagDist::from_weights({{PointBag{}, 0.5}, {stars(1), 0.5}});
  };
  auto out = gbe_bind(alpha, f);
  // enumerating the 2 + 4 weighted outcomes by hand
  CHECK_THAT(out.mass(stars(0)), WithinAbs(0.375, 1e-15));
  CHECK_THAT(out.mass(stars(1)), WithinAbs(0.5, 1e-15));
  CHECK_THAT(out.mass(stars(2)), WithinAbs(0.125, 1e-15));

  // right unit, and the empty bag absorbs any continuation
  CHECK(total_variation(
            gbe_bind(alpha, [](const Point& p) { return gbe_unit<Point>(p); }),
            alpha) <= 1e-12);
  auto empty_mass = BagDist::unit(PointBag{});
  CHECK(total_variation(gbe_bind(empty_mass, f), empty_mass) <= 1e-12);
}

TEST_CASE("count probabilities of an exact process") {
  auto d = DiscreteDist<std::uint64_t>::from_weights({{0, 0.25}, {2, 0.75}});
  auto alpha = d.map([](std::uint64_t k) { return stars(k); });
  CHECK_THAT(prob_count(alpha, kStarRegion, 0), WithinAbs(0.25, 1e-15));
  CHECK_THAT(prob_count(alpha, kStarRegion, 2), WithinAbs(0.75, 1e-15));
  CHECK(prob_count(alpha, kStarRegion, 1) == 0.0);

  double total = 0;
  for (std::size_t k = 0; k <= max_support_bag_size(alpha); ++k)
    total += prob_count(alpha, kStarRegion, k);
  CHECK_THAT(total, WithinAbs(1.0 - alpha.defect(), 1e-12));
}

TEST_CASE("distributive law pushes products onto bags") {
  Point u = Point::nat(0), v = Point::nat(1);
  Region region = Region::points({u});
  auto nu = DiscreteDist<Point>::from_weights({{u, 0.5}, {v, 0.5}});
  std::vector<DiscreteDist<Point>> nus{nu, nu};
  auto law = distributive_law(nus);

  // nu1(U) nu2(~U) + nu1(~U) nu2(U) = 0.5, by enumerating the four outcomes
  CHECK_THAT(prob_count(law, region, 1), WithinAbs(0.5, 1e-15));
  CHECK(prob_count(law, region, 3) == 0.0);  // k > n
  for (const auto& [bag, w] : law.support()) CHECK(bag.size() == 2);
}

TEST_CASE("polynomial coefficients are an independent oracle") {
  Point u = Point::nat(0), v = Point::nat(1);
  Region region = Region::points({u});
  auto nu = DiscreteDist<Point>::from_weights({{u, 0.5}, {v, 0.5}});
  std::vector<DiscreteDist<Point>> nus{nu, nu};

  // (0.5 + 0.5 x)^2 expanded by hand
  CHECK_THAT(poly_coeff_check(nus, region, 1), WithinAbs(0.5, 1e-15));
  CHECK_THAT(poly_coeff_check(nus, region, 0), WithinAbs(0.25, 1e-15));

  SplitMix64 rng(314);
  std::vector<Point> pts{Point::nat(0), Point::nat(1), Point::nat(2)};
  for (int round = 0; round < 200; ++round) {
    std::vector<DiscreteDist<Point>> factors;
    std::size_t n = 1 + rng.next() % 5;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::pair<Point, double>> ws;
      double total = 0;
      for (const auto& p : pts) {
        double w = 0.05 + rng.next_double();
        ws.push_back({p, w});
        total += w;
      }
      for (auto& [p, w] : ws) w /= total;
      factors.push_back(DiscreteDist<Point>::from_weights(std::move(ws)));
    }
    std::vector<Point> subset;
    for (const auto& p : pts)
      if (rng.next() % 2) subset.push_back(p);
    Region u2 = subset.empty() ? Region::empty(Universe::Nats)
                               : Region::points(subset);
    auto law = distributive_law(factors);
    double coeff_total = 0;
    for (std::size_t k = 0; k <= n + 1; ++k) {
      double via_poly = poly_coeff_check(factors, u2, k);
      CHECK(std::abs(prob_count(law, u2, k) - via_poly) <= 1e-12);
      coeff_total += via_poly;
    }
    CHECK_THAT(coeff_total, WithinAbs(1.0, 1e-12));
  }
}

TEST_CASE("support growth is guarded") {
  // 21 factors over 2 points would enumerate 2^21 tuples
  auto nu = DiscreteDist<Point>::from_weights(
      {{Point::nat(0), 0.5}, {Point::nat(1), 0.5}});
  std::vector<DiscreteDist<Point>> many(21, nu);
  CHECK_THROWS_AS(distributive_law(many), resource_error);
}
