#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "pointproc/bag_dist.hpp"
#include "pointproc/intensity.hpp"
#include "pointproc/rng.hpp"

namespace pointproc {

// Truncation used when a Poisson law feeds a sampler.
inline constexpr double kPoissonEps = 1e-12;

class PointProcess;
PointProcess pp_unit(const Point& x);
PointProcess pp_bind(const PointProcess& alpha,
                     std::function<PointProcess(const Point&)> f);
PointProcess from_bag_dist(Universe u, BagDist dist);
PointProcess from_nat_dist(const DiscreteDist<std::uint64_t>& d);
PointProcess from_point_dist(const DiscreteDist<Point>& nu);
PointProcess uniform_point(const Region& region);
PointProcess poisson_pp(double rate, const Region& region);
PointProcess displace(const PointProcess& alpha, const PointProcess& delta);

// A point process as used operationally: a deterministic seeded sampler
// producing bags, the compositionally-maintained intensity measure, and,
// when every constituent has finite support, the exact bag distribution.
// Values are immutable; the combinators below are the only constructors, so
// the three views stay consistent with each other.
class PointProcess {
 public:
  using Sampler = std::function<PointBag(const SeedState&)>;

  Universe universe() const { return universe_; }
  PointBag sample(const SeedState& s) const { return sampler_(s); }
  const IntensityMeasure& intensity() const { return intensity_; }
  const std::optional<BagDist>& exact() const { return exact_; }

 private:
  PointProcess(Universe u, Sampler sampler, IntensityMeasure intensity,
               std::optional<BagDist> exact)
      : universe_(u),
        sampler_(std::move(sampler)),
        intensity_(std::move(intensity)),
        exact_(std::move(exact)) {}

  friend PointProcess pp_unit(const Point&);
  friend PointProcess pp_bind(const PointProcess&,
                              std::function<PointProcess(const Point&)>);
  friend PointProcess from_bag_dist(Universe, BagDist);
  friend PointProcess uniform_point(const Region&);
  friend PointProcess poisson_pp(double, const Region&);
  friend PointProcess displace(const PointProcess&, const PointProcess&);

  Universe universe_;
  Sampler sampler_;
  IntensityMeasure intensity_;
  std::optional<BagDist> exact_;
};

inline PointProcess pp_unit(const Point& x) {
  return PointProcess(
      x.universe(), [x](const SeedState&) { return PointBag::singleton(x); },
      intensity_unit(x), gbe_unit<Point>(x));
}

// Generic exact constructor: draw a whole bag at once by inverse CDF over
// the support. All discrete laws (counts on the one-point space, finite
// point distributions, keep/drop rules) route through here.
inline PointProcess from_bag_dist(Universe u, BagDist dist) {
  for (const auto& [bag, w] : dist.support())
    for (const auto& p : bag)
      if (p.universe() != u)
        throw usage_error("bag distribution point outside its universe");
  auto sampler = [dist](const SeedState& s) {
    double u01 = s.rng().next_double();
    double cum = 0;
    const PointBag* last = nullptr;
    for (const auto& [bag, w] : dist.support()) {
      cum += w;
      last = &bag;
      if (u01 < cum) return bag;
    }
    // Defect corner (probability ~ the truncation eps): fall back to the
    // largest support bag rather than failing the draw.
    if (last == nullptr) throw usage_error("sampling an empty distribution");
    return *last;
  };
  IntensityMeasure intensity = intensity_of_exact(dist);
  return PointProcess(u, std::move(sampler), std::move(intensity),
                      std::move(dist));
}

inline PointProcess from_nat_dist(const DiscreteDist<std::uint64_t>& d) {
  BagDist bags = d.map([](std::uint64_t k) {
    return PointBag(std::vector<Point>(k, Point::star()));
  });
  return from_bag_dist(Universe::Unit1, std::move(bags));
}

inline PointProcess from_point_dist(const DiscreteDist<Point>& nu) {
  if (nu.size() == 0) throw usage_error("point distribution has empty support");
  Universe u = nu.support().begin()->first.universe();
  return from_bag_dist(u, nu.map([](const Point& p) {
    return PointBag::singleton(p);
  }));
}

// One point, uniformly distributed over a region of finite positive
// measure. Piecewise-inverse sampling over the stored pieces; no rejection,
// so the draw cost is deterministic.
inline PointProcess uniform_point(const Region& region) {
  const double total = region.measure();
  if (!(total > 0) || !std::isfinite(total))
    throw usage_error("uniform point needs a region of finite positive measure");
  Universe u = region.universe();
  if (u != Universe::RealLine && u != Universe::UnitSquare)
    throw usage_error("uniform point is for continuous universes");

  PointProcess::Sampler sampler;
  if (u == Universe::RealLine) {
    sampler = [region, total](const SeedState& s) {
      auto rng = s.rng();
      double target = rng.next_double() * total;
      for (const auto& iv : region.interval_body()) {
        if (target < iv.length())
          return PointBag::singleton(Point::real(iv.lo + target));
        target -= iv.length();
      }
      const auto& lastiv = region.interval_body().back();
      return PointBag::singleton(Point::real(lastiv.lo));
    };
  } else {
    sampler = [region, total](const SeedState& s) {
      auto rng = s.rng();
      double target = rng.next_double() * total;
      const Rect* chosen = &region.rect_body().back();
      for (const auto& r : region.rect_body()) {
        if (target < r.area()) {
          chosen = &r;
          break;
        }
        target -= r.area();
      }
      double px = chosen->x0 + rng.next_double() * (chosen->x1 - chosen->x0);
      double py = chosen->y0 + rng.next_double() * (chosen->y1 - chosen->y0);
      return PointBag::singleton(Point::real2(px, py));
    };
  }
  return PointProcess(u, std::move(sampler),
                      IntensityMeasure::density(1.0 / total, region),
                      std::nullopt);
}

// Kleisli bind with the simulation semantics: draw a bag from alpha with
// child seed 0, draw from f(x_i) with child seed i+1 (points taken in
// canonical order), union the results. The child-seed schedule is part of
// the reproducibility contract.
inline PointProcess pp_bind(const PointProcess& alpha,
                            std::function<PointProcess(const Point&)> f) {
  const Universe out_universe = f(canonical_point(alpha.universe())).universe();

  auto alpha_sampler = alpha.sampler_;
  PointProcess::Sampler sampler = [alpha_sampler, f](const SeedState& s) {
    PointBag base = alpha_sampler(s.child(0));
    std::vector<Point> out;
    for (std::size_t i = 0; i < base.size(); ++i) {
      PointBag part = f(base[i]).sample(s.child(i + 1));
      out.insert(out.end(), part.begin(), part.end());
    }
    return PointBag(std::move(out));
  };

  IntensityMeasure intensity = alpha.intensity_.bind(
      [f](const Point& x) { return f(x).intensity(); });

  std::optional<BagDist> exact;
  if (alpha.exact_) {
    std::map<Point, BagDist> memo;
    bool all_exact = true;
    for (const auto& [bag, w] : alpha.exact_->support()) {
      for (const auto& p : bag) {
        if (memo.count(p)) continue;
        auto piece = f(p);
        if (!piece.exact_) {
          all_exact = false;
          break;
        }
        memo.emplace(p, *piece.exact_);
      }
      if (!all_exact) break;
    }
    if (all_exact)
      exact = gbe_bind(*alpha.exact_,
                       [&](const Point& p) { return memo.at(p); });
  }

  return PointProcess(out_universe, std::move(sampler), std::move(intensity),
                      std::move(exact));
}

// Poisson point process: a Poisson number of points scattered uniformly.
// Built from the count law and the uniform single point by bind; the
// intensity is attached in closed form (rate per unit measure over the
// region), which the truncated count law matches to within its defect.
inline PointProcess poisson_pp(double rate, const Region& region) {
  if (!(rate > 0)) throw usage_error("poisson rate must be positive");
  PointProcess composite =
      pp_bind(from_nat_dist(poisson_trunc(rate, kPoissonEps)),
              [region](const Point&) { return uniform_point(region); });
  return PointProcess(composite.universe_, composite.sampler_,
                      IntensityMeasure::density(rate / region.measure(), region),
                      composite.exact_);
}

// Thinning: each point is kept or dropped by the rule, independently.
inline PointProcess thin(const PointProcess& alpha,
                         std::function<PointProcess(const Point&)> rule) {
  return pp_bind(alpha, std::move(rule));
}

// Constant keep-probability thinning.
inline PointProcess thin(const PointProcess& alpha, double keep_prob) {
  if (!(keep_prob >= 0 && keep_prob <= 1))
    throw usage_error("keep probability must be in [0,1]");
  return pp_bind(alpha, [keep_prob](const Point& x) {
    std::vector<std::pair<PointBag, double>> ws;
    if (keep_prob > 0) ws.push_back({PointBag::singleton(x), keep_prob});
    if (keep_prob < 1) ws.push_back({PointBag{}, 1 - keep_prob});
    return from_bag_dist(x.universe(), BagDist::from_weights(std::move(ws)));
  });
}

// Independent displacement by the (single-point) process delta.
inline PointProcess displace(const PointProcess& alpha,
                             const PointProcess& delta) {
  if (alpha.universe() != Universe::RealLine ||
      delta.universe() != Universe::RealLine)
    throw usage_error("displacement works on the real line");
  if (delta.exact()) {
    for (const auto& [bag, w] : delta.exact()->support())
      if (bag.size() != 1)
        throw usage_error("displacement law must draw exactly one point");
  }
  // Wrap delta so a non-exact law that draws anything but a single point is
  // caught at sampling time.
  auto delta_sampler = delta.sampler_;
  PointProcess checked(
      Universe::RealLine,
      [delta_sampler](const SeedState& s) {
        PointBag b = delta_sampler(s);
        if (b.size() != 1)
          throw usage_error("displacement law must draw exactly one point");
        return b;
      },
      delta.intensity_, delta.exact_);
  return pp_bind(alpha, [checked](const Point& x) {
    return pp_bind(checked, [x](const Point& d) {
      return pp_unit(Point::real(x.x() + d.x()));
    });
  });
}

// The clustered process: Poisson(10) seeds on the unit square; around each
// seed, Poisson(rate_scale * 20 * (1 - |x - y|)) points uniform on a side-0.1
// square centered there, clipped to the unit square. Denser near the
// diagonal. The numeric choices are this library's, not canonical.
inline PointProcess cluster_demo(double rate_scale = 1.0) {
  if (rate_scale < 0) throw usage_error("rate scale must be nonnegative");
  auto seeds = poisson_pp(10.0, Region::rect(0, 0, 1, 1));
  return pp_bind(seeds, [rate_scale](const Point& seed) {
    const double cx = seed.x(), cy = seed.y();
    Region square = Region::rect(std::max(0.0, cx - 0.05),
                                 std::max(0.0, cy - 0.05),
                                 std::min(1.0, cx + 0.05),
                                 std::min(1.0, cy + 0.05));
    const double rate = rate_scale * 20.0 * (1.0 - std::abs(cx - cy));
    auto counts = rate > 0
                      ? from_nat_dist(poisson_trunc(rate, kPoissonEps))
                      : from_nat_dist(DiscreteDist<std::uint64_t>::unit(0));
    return pp_bind(counts,
                   [square](const Point&) { return uniform_point(square); });
  });
}

// Fraction of n reproducible draws with exactly k points in the region.
inline double empirical_count_prob(const PointProcess& alpha,
                                   const Region& region, std::size_t k,
                                   std::size_t n, const SeedState& s) {
  if (n < 1) throw usage_error("need at least one draw");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (count_in_region(alpha.sample(s.child(i)), region) == k) ++hits;
  return static_cast<double>(hits) / static_cast<double>(n);
}

struct EmpiricalIntensity {
  double mean = 0;
  double stderr_ = 0;
  std::size_t draws = 0;
};

// Mean count over n reproducible draws, with the sample standard error.
// Counts are accumulated as integers, so the result does not depend on
// evaluation order.
inline EmpiricalIntensity intensity_empirical_stats(const PointProcess& alpha,
                                                    const Region& region,
                                                    std::size_t n,
                                                    const SeedState& s) {
  if (n < 1) throw usage_error("need at least one draw");
  std::uint64_t sum = 0, sumsq = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t c = count_in_region(alpha.sample(s.child(i)), region);
    sum += c;
    sumsq += c * c;
  }
  EmpiricalIntensity out;
  out.draws = n;
  out.mean = static_cast<double>(sum) / static_cast<double>(n);
  if (n > 1) {
    double var = (static_cast<double>(sumsq) -
                  static_cast<double>(n) * out.mean * out.mean) /
                 static_cast<double>(n - 1);
    out.stderr_ = std::sqrt(std::max(0.0, var) / static_cast<double>(n));
  }
  return out;
}

inline double intensity_empirical(const PointProcess& alpha,
                                  const Region& region, std::size_t n,
                                  const SeedState& s) {
  return intensity_empirical_stats(alpha, region, n, s).mean;
}

}  // namespace pointproc
