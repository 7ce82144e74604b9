#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pointproc/bag.hpp"
#include "pointproc/discrete_dist.hpp"

namespace pointproc {

// Exact finite-support distributions over bags: the executable form of a
// point process on a countable space. Probabilities of "k points in U" are
// sums over the support, no sampling involved.
template <class T>
using GenBagDist = DiscreteDist<Bag<T>>;

using BagDist = GenBagDist<Point>;

template <class T>
GenBagDist<T> gbe_unit(T x) {
  return GenBagDist<T>::unit(Bag<T>::singleton(std::move(x)));
}

// Bind: per support bag [x1..xn], the result draws independently from each
// f(xi) and unions the outcomes. Enumeration folds one element at a time,
// collapsing equal partial unions, so bags of many equal points stay cheap
// (the tuple space is exponential, the collapsed state space is not).
template <class T, class F>
auto gbe_bind(const GenBagDist<T>& alpha, F&& f) {
  using Piece = std::decay_t<decltype(f(std::declval<const T&>()))>;
  using B = typename Piece::Support::key_type;  // Bag<U>
  typename DiscreteDist<B>::Support acc;
  double defect = alpha.defect();
  for (const auto& [bag, w] : alpha.support()) {
    typename DiscreteDist<B>::Support partial;
    partial[B{}] = 1.0;
    double piece_mass = 1.0;
    for (const auto& x : bag) {
      const Piece piece = f(x);
      piece_mass *= 1.0 - piece.defect();
      typename DiscreteDist<B>::Support next;
      for (const auto& [ub, uw] : partial) {
        for (const auto& [pb, pw] : piece.support()) {
          next[bag_union(Bag<B>{ub, pb})] += uw * pw;
          if (next.size() > kSupportGuard)
            throw resource_error("gbe_bind support exceeds guard");
        }
      }
      partial = std::move(next);
    }
    for (const auto& [ub, uw] : partial) {
      acc[ub] += w * uw;
      if (acc.size() > kSupportGuard)
        throw resource_error("gbe_bind support exceeds guard");
    }
    defect += w * (1.0 - piece_mass);
  }
  return DiscreteDist<B>::pruned(std::move(acc), defect);
}

inline double prob_count(const BagDist& alpha, const Region& region,
                         std::size_t k) {
  double s = 0;
  for (const auto& [bag, w] : alpha.support())
    if (count_in_region(bag, region) == k) s += w;
  return s;
}

inline std::size_t max_support_bag_size(const BagDist& alpha) {
  std::size_t m = 0;
  for (const auto& [bag, w] : alpha.support()) m = std::max(m, bag.size());
  return m;
}

// The distributive law BG -> GB: push the product measure of the factors
// forward along the tuple-to-bag collapse. Enumerates the product outright;
// every support bag has size = number of factors.
template <class T>
GenBagDist<T> distributive_law(std::span<const DiscreteDist<T>> factors) {
  auto prod = dist_product(factors);
  return prod.map([](const std::vector<T>& tuple) { return tuple_to_bag(tuple); });
}

template <class T>
GenBagDist<T> distributive_law(const std::vector<DiscreteDist<T>>& factors) {
  return distributive_law(std::span<const DiscreteDist<T>>(factors));
}

// Independent oracle for distributive-law probabilities: the chance of k
// hits in U among independent draws nu_1..nu_n is the x^k coefficient of
// prod_i (nu_i(~U) + nu_i(U) x). Expanded exactly, no bag machinery.
inline double poly_coeff_check(std::span<const DiscreteDist<Point>> factors,
                               const Region& region, std::size_t k) {
  std::vector<double> coeff{1.0};
  for (const auto& nu : factors) {
    const double in = nu.prob(region);
    const double out = nu.prob_if(
        [&](const Point& p) { return !region.contains(p); });
    std::vector<double> next(coeff.size() + 1, 0.0);
    for (std::size_t i = 0; i < coeff.size(); ++i) {
      next[i] += coeff[i] * out;
      next[i + 1] += coeff[i] * in;
    }
    coeff = std::move(next);
  }
  return k < coeff.size() ? coeff[k] : 0.0;
}

inline double poly_coeff_check(const std::vector<DiscreteDist<Point>>& factors,
                               const Region& region, std::size_t k) {
  return poly_coeff_check(std::span<const DiscreteDist<Point>>(factors), region,
                          k);
}

}  // namespace pointproc
