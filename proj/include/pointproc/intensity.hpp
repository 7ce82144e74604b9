#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <utility>
#include <variant>
#include <vector>

#include "pointproc/bag_dist.hpp"
#include "pointproc/errors.hpp"
#include "pointproc/region.hpp"

namespace pointproc {

// Midpoint-rule resolution for integrating a kernel against a constant
// density: 64x64 per rectangle, 4096 midpoints per interval.
inline constexpr int kQuadratureGrid = 64;

// A measure on one of the base spaces, kept as a small expression tree so
// the discrete cases evaluate in closed form. Construction normalizes:
//  - Dirac / scaled / summed point masses fold into a single WeightedSum,
//  - scaling folds into Density and WeightedSum leaves,
//  - kernel binds over discrete measures collapse to weighted sums of the
//    kernel values; over sums and scalings they distribute; over another
//    kernel bind they re-associate. A stored KernelBind therefore always
//    has a Density base, which is the one case needing quadrature.
class IntensityMeasure {
 public:
  using Kernel = std::function<IntensityMeasure(const Point&)>;

 private:
  struct WeightedSum {
    std::map<Point, double> masses;
  };
  struct Density {
    double level;
    Region support;
  };
  struct Sum;
  struct KernelBind;
  struct Node;

  struct Sum {
    std::vector<IntensityMeasure> parts;
  };
  struct KernelBind {
    std::shared_ptr<IntensityMeasure> base;  // always a Density
    Kernel kernel;
  };
  struct Node {
    std::variant<WeightedSum, Density, Sum, KernelBind> v;
  };

  template <class V>
  explicit IntensityMeasure(V v)
      : node_(std::make_shared<Node>(Node{std::move(v)})) {}

  template <class... Fs>
  auto match(Fs&&... fs) const {
    struct Overload : Fs... {
      using Fs::operator()...;
    };
    return std::visit(Overload{std::forward<Fs>(fs)...}, node_->v);
  }

  double eval_unchecked(const Region& region) const {
    return match(
        [&](const WeightedSum& ws) {
          double s = 0;
          for (const auto& [p, w] : ws.masses)
            if (region.contains(p)) s += w;
          return s;
        },
        [&](const Density& d) {
          return d.level * d.support.intersect(region).measure();
        },
        [&](const Sum& s) {
          double total = 0;
          for (const auto& part : s.parts) total += part.eval_unchecked(region);
          return total;
        },
        [&](const KernelBind& kb) { return quadrature(kb, region); });
  }

  static double quadrature(const KernelBind& kb, const Region& region) {
    const Density& base = std::get<Density>(kb.base->node_->v);
    double total = 0;
    const int n = kQuadratureGrid;
    if (base.support.universe() == Universe::UnitSquare) {
      for (const auto& r : base.support.rect_body()) {
        const double hx = (r.x1 - r.x0) / n;
        const double hy = (r.y1 - r.y0) / n;
        const double cell = hx * hy * base.level;
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j) {
            Point p = Point::real2(r.x0 + (i + 0.5) * hx, r.y0 + (j + 0.5) * hy);
            total += cell * kb.kernel(p).eval_unchecked(region);
          }
        }
      }
    } else if (base.support.universe() == Universe::RealLine) {
      const int n1 = n * n;
      for (const auto& iv : base.support.interval_body()) {
        const double h = iv.length() / n1;
        const double cell = h * base.level;
        for (int i = 0; i < n1; ++i) {
          Point p = Point::real(iv.lo + (i + 0.5) * h);
          total += cell * kb.kernel(p).eval_unchecked(region);
        }
      }
    } else {
      throw usage_error("density base must live on a continuous universe");
    }
    return total;
  }

  std::shared_ptr<const Node> node_;

 public:
  IntensityMeasure() : IntensityMeasure(WeightedSum{}) {}  // zero measure

  static IntensityMeasure zero() { return IntensityMeasure(); }

  static IntensityMeasure dirac(const Point& x) {
    return weighted_sum({{x, 1.0}});
  }

  static IntensityMeasure weighted_sum(
      std::vector<std::pair<Point, double>> masses) {
    WeightedSum ws;
    for (auto& [p, w] : masses) {
      if (w < 0) throw usage_error("intensity mass must be nonnegative");
      if (w > 0) ws.masses[p] += w;
    }
    return IntensityMeasure(std::move(ws));
  }

  static IntensityMeasure density(double level, Region support) {
    if (level < 0) throw usage_error("density level must be nonnegative");
    if (!std::isfinite(support.measure()))
      throw usage_error("density support must have finite measure");
    if (level == 0 || support.measure() == 0) return zero();
    return IntensityMeasure(Density{level, std::move(support)});
  }

  static IntensityMeasure scaled(double factor, const IntensityMeasure& m) {
    if (factor < 0) throw usage_error("scale factor must be nonnegative");
    if (factor == 0) return zero();
    if (factor == 1) return m;
    return m.match(
        [&](const WeightedSum& ws) {
          WeightedSum out = ws;
          for (auto& [p, w] : out.masses) w *= factor;
          return IntensityMeasure(std::move(out));
        },
        [&](const Density& d) {
          return IntensityMeasure(Density{d.level * factor, d.support});
        },
        [&](const Sum& s) {
          std::vector<IntensityMeasure> parts;
          parts.reserve(s.parts.size());
          for (const auto& part : s.parts) parts.push_back(scaled(factor, part));
          return sum(std::move(parts));
        },
        [&](const KernelBind& kb) {
          return IntensityMeasure(
              KernelBind{std::make_shared<IntensityMeasure>(
                             scaled(factor, *kb.base)),
                         kb.kernel});
        });
  }

  static IntensityMeasure sum(std::vector<IntensityMeasure> parts) {
    WeightedSum combined;
    std::vector<IntensityMeasure> rest;
    auto absorb = [&](auto&& self, const IntensityMeasure& m) -> void {
      m.match(
          [&](const WeightedSum& ws) {
            for (const auto& [p, w] : ws.masses) combined.masses[p] += w;
          },
          [&](const Density& d) {
            // Densities over the same support add levels.
            for (auto& r : rest)
              if (const Density* rd = std::get_if<Density>(&r.node_->v);
                  rd && rd->support == d.support) {
                r = IntensityMeasure(Density{rd->level + d.level, d.support});
                return;
              }
            rest.push_back(IntensityMeasure(d));
          },
          [&](const Sum& s) {
            for (const auto& part : s.parts) self(self, part);
          },
          [&](const KernelBind& kb) { rest.push_back(IntensityMeasure(kb)); });
    };
    for (const auto& part : parts) absorb(absorb, part);

    if (!combined.masses.empty() || rest.empty())
      rest.insert(rest.begin(), IntensityMeasure(std::move(combined)));
    if (rest.size() == 1) return rest.front();
    return IntensityMeasure(Sum{std::move(rest)});
  }

  // Kleisli bind in the measure monad: integrate the kernel against this
  // measure. Discrete bases collapse to closed form here.
  IntensityMeasure bind(const Kernel& kernel) const {
    return match(
        [&](const WeightedSum& ws) {
          std::vector<IntensityMeasure> parts;
          parts.reserve(ws.masses.size());
          for (const auto& [p, w] : ws.masses)
            parts.push_back(scaled(w, kernel(p)));
          return sum(std::move(parts));
        },
        [&](const Density& d) {
          return IntensityMeasure(KernelBind{
              std::make_shared<IntensityMeasure>(IntensityMeasure(d)), kernel});
        },
        [&](const Sum& s) {
          std::vector<IntensityMeasure> parts;
          parts.reserve(s.parts.size());
          for (const auto& part : s.parts) parts.push_back(part.bind(kernel));
          return sum(std::move(parts));
        },
        [&](const KernelBind& kb) {
          // Re-associate so the stored base stays a Density.
          Kernel inner = kb.kernel;
          Kernel composed = [inner, kernel](const Point& x) {
            return inner(x).bind(kernel);
          };
          return kb.base->bind(composed);
        });
  }

  // The measure of a region. Requests over infinite-measure regions are
  // refused rather than answered with infinities.
  double eval(const Region& region) const {
    if (!std::isfinite(region.measure()))
      throw range_error("intensity evaluation over an infinite-measure region");
    return eval_unchecked(region);
  }

  bool is_discrete() const {
    return std::holds_alternative<WeightedSum>(node_->v);
  }

  // Point masses of a discrete measure.
  const std::map<Point, double>& masses() const {
    if (!is_discrete())
      throw usage_error("intensity measure is not a finite weighted sum");
    return std::get<WeightedSum>(node_->v).masses;
  }

};

inline IntensityMeasure intensity_unit(const Point& x) {
  return IntensityMeasure::dirac(x);
}

inline IntensityMeasure intensity_bind(const IntensityMeasure& m,
                                       const IntensityMeasure::Kernel& k) {
  return m.bind(k);
}

// The intensity of an exact bag distribution: each point receives the
// weight-times-multiplicity mass it carries across the support, so
// eval(U) = sum_k k * alpha(A^U_k).
inline IntensityMeasure intensity_of_exact(const BagDist& alpha) {
  std::vector<std::pair<Point, double>> masses;
  for (const auto& [bag, w] : alpha.support())
    for (const auto& p : bag) masses.push_back({p, w});
  return IntensityMeasure::weighted_sum(std::move(masses));
}

// A bag read as a measure: one unit of mass per element, counted with
// multiplicity.
inline IntensityMeasure embed_bag(const PointBag& b) {
  std::vector<std::pair<Point, double>> masses;
  masses.reserve(b.size());
  for (const auto& p : b) masses.push_back({p, 1.0});
  return IntensityMeasure::weighted_sum(std::move(masses));
}

// Both routes of the BG -> M square: summing the factor probabilities of U
// directly, and the intensity of the distributive law's output. They must
// agree (the coefficient identity behind discrete Wald).
inline std::pair<double, double> distributive_intensity_check(
    std::span<const DiscreteDist<Point>> factors, const Region& region) {
  double direct = 0;
  for (const auto& nu : factors) direct += nu.prob(region);
  double viaw = intensity_of_exact(distributive_law(factors)).eval(region);
  return {direct, viaw};
}

inline std::pair<double, double> distributive_intensity_check(
    const std::vector<DiscreteDist<Point>>& factors, const Region& region) {
  return distributive_intensity_check(
      std::span<const DiscreteDist<Point>>(factors), region);
}

}  // namespace pointproc
