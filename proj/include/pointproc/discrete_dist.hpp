#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

#include "pointproc/errors.hpp"
#include "pointproc/region.hpp"

namespace pointproc {

// Mass below this after a bind is folded into the defect.
inline constexpr double kPruneThreshold = 1e-15;
// Hard cap on intermediate support sizes; exceeding it raises resource_error
// instead of exhausting memory.
inline constexpr std::size_t kSupportGuard = 1'000'000;
// Construction-time tolerance on |sum of weights + defect - 1|.
inline constexpr double kMassTolerance = 1e-9;

// Finite-support probability distribution over an ordered carrier. Mass
// truncated away (e.g. the tail of a Poisson) is tracked in `defect`, never
// renormalized, so downstream exact comparisons stay honest.
template <class T>
class DiscreteDist {
 public:
  using Support = std::map<T, double>;

  DiscreteDist() : defect_(1.0) {}  // the zero (all-defect) distribution

  static DiscreteDist unit(T x) {
    DiscreteDist d;
    d.support_[std::move(x)] = 1.0;
    d.defect_ = 0.0;
    return d;
  }

  static DiscreteDist from_weights(std::vector<std::pair<T, double>> ws,
                                   double defect = 0.0) {
    DiscreteDist d;
    d.defect_ = defect;
    double total = defect;
    for (auto& [x, w] : ws) {
      if (w < 0) throw usage_error("negative probability weight");
      if (w == 0) continue;
      d.support_[std::move(x)] += w;
      total += w;
    }
    if (std::abs(total - 1.0) > kMassTolerance)
      throw usage_error("weights and defect must sum to 1");
    return d;
  }

  const Support& support() const { return support_; }
  double defect() const { return defect_; }
  std::size_t size() const { return support_.size(); }

  double mass(const T& x) const {
    auto it = support_.find(x);
    return it == support_.end() ? 0.0 : it->second;
  }

  double total_mass() const {
    double s = 0;
    for (const auto& [x, w] : support_) s += w;
    return s;
  }

  template <class Pred>
  double prob_if(Pred&& pred) const {
    double s = 0;
    for (const auto& [x, w] : support_)
      if (pred(x)) s += w;
    return s;
  }

  double prob(const Region& region) const
    requires std::is_same_v<T, Point>
  {
    return prob_if([&](const Point& p) { return region.contains(p); });
  }

  // Kleisli bind: support-weighted mixture of k(x). Defect accumulates as
  // input defect + sum of w_i * defect(k(x_i)) plus any pruned mass.
  template <class F>
  auto bind(F&& k) const {
    using Out = std::decay_t<decltype(k(std::declval<const T&>()))>;
    Out out;
    out.defect_ = defect_;
    for (const auto& [x, w] : support_) {
      const auto piece = k(x);
      out.defect_ += w * piece.defect_;
      for (const auto& [y, wy] : piece.support_) {
        out.support_[y] += w * wy;
        if (out.support_.size() > kSupportGuard)
          throw resource_error("bind support exceeds guard");
      }
    }
    out.prune();
    return out;
  }

  // Pushforward along f (functorial action).
  template <class F>
  auto map(F&& f) const {
    using U = std::decay_t<decltype(f(std::declval<const T&>()))>;
    DiscreteDist<U> out;
    out.defect_ = defect_;
    for (const auto& [x, w] : support_) out.support_[f(x)] += w;
    return out;
  }

  friend auto operator<=>(const DiscreteDist& a, const DiscreteDist& b) {
    if (auto c = a.support_ <=> b.support_; c != 0) return c;
    return a.defect_ <=> b.defect_;
  }
  friend bool operator==(const DiscreteDist& a, const DiscreteDist& b) {
    return a.support_ == b.support_ && a.defect_ == b.defect_;
  }

  // Trusted escape hatch for the combinators in this library; skips the
  // mass check that from_weights performs on user input.
  static DiscreteDist unchecked(Support support, double defect) {
    DiscreteDist d;
    d.support_ = std::move(support);
    d.defect_ = defect;
    return d;
  }

  // unchecked + the same pruning rule bind applies.
  static DiscreteDist pruned(Support support, double defect) {
    DiscreteDist d = unchecked(std::move(support), defect);
    d.prune();
    return d;
  }

 private:
  template <class U>
  friend class DiscreteDist;

  void prune() {
    for (auto it = support_.begin(); it != support_.end();) {
      if (it->second < kPruneThreshold) {
        defect_ += it->second;
        it = support_.erase(it);
      } else {
        ++it;
      }
    }
  }

  Support support_;
  double defect_ = 0.0;
};

// Total variation distance over the union of the supports; the defect gap
// counts as mass on a virtual outcome.
template <class T>
double total_variation(const DiscreteDist<T>& a, const DiscreteDist<T>& b) {
  double sum = std::abs(a.defect() - b.defect());
  auto ia = a.support().begin();
  auto ib = b.support().begin();
  while (ia != a.support().end() || ib != b.support().end()) {
    if (ib == b.support().end() ||
        (ia != a.support().end() && ia->first < ib->first)) {
      sum += ia->second;
      ++ia;
    } else if (ia == a.support().end() || ib->first < ia->first) {
      sum += ib->second;
      ++ib;
    } else {
      sum += std::abs(ia->second - ib->second);
      ++ia;
      ++ib;
    }
  }
  return sum / 2;
}

// Product measure: support is the cartesian product, weights multiply.
template <class T>
DiscreteDist<std::vector<T>> dist_product(
    std::span<const DiscreteDist<T>> factors) {
  std::size_t outcomes = 1;
  double mass = 1.0;
  for (const auto& d : factors) {
    if (d.size() == 0 && d.defect() < 1.0)
      throw usage_error("product of an empty distribution");
    outcomes *= std::max<std::size_t>(d.size(), 1);
    mass *= 1.0 - d.defect();
    if (outcomes > kSupportGuard)
      throw resource_error("product support exceeds guard");
  }

  typename DiscreteDist<std::vector<T>>::Support acc;
  std::vector<T> tuple;
  auto rec = [&](auto&& self, std::size_t i, double w) -> void {
    if (i == factors.size()) {
      acc[tuple] += w;
      return;
    }
    for (const auto& [x, wx] : factors[i].support()) {
      tuple.push_back(x);
      self(self, i + 1, w * wx);
      tuple.pop_back();
    }
  };
  rec(rec, 0, 1.0);
  return DiscreteDist<std::vector<T>>::unchecked(std::move(acc), 1.0 - mass);
}

template <class T>
DiscreteDist<std::vector<T>> dist_product(
    const std::vector<DiscreteDist<T>>& factors) {
  return dist_product(std::span<const DiscreteDist<T>>(factors));
}

template <class T>
  requires std::is_arithmetic_v<T>
double expectation(const DiscreteDist<T>& d) {
  double s = 0;
  for (const auto& [x, w] : d.support()) s += static_cast<double>(x) * w;
  return s;
}

// Poisson(rate) truncated at the smallest K with tail mass < eps. The tail
// is recorded as defect.
inline DiscreteDist<std::uint64_t> poisson_trunc(double rate, double eps) {
  if (!(rate > 0)) throw usage_error("poisson rate must be positive");
  if (!(eps > 0 && eps < 1)) throw usage_error("poisson eps must be in (0,1)");
  typename DiscreteDist<std::uint64_t>::Support support;
  double p = std::exp(-rate);
  double cum = 0.0;
  std::uint64_t k = 0;
  while (true) {
    support[k] = p;
    cum += p;
    if (1.0 - cum < eps) break;
    ++k;
    p *= rate / static_cast<double>(k);
    if (k > 400'000) throw resource_error("poisson truncation did not converge");
  }
  return DiscreteDist<std::uint64_t>::unchecked(std::move(support),
                                                std::max(0.0, 1.0 - cum));
}

}  // namespace pointproc
