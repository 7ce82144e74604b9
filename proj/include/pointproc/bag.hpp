#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

#include "pointproc/region.hpp"

namespace pointproc {

// A finite multiset, stored as a sorted sequence so that two bags are equal
// iff their representations are. T needs a total order; besides Point this
// is instantiated at Bag<Point> (bags of bags) and at distributions when
// checking the composition laws.
template <class T>
class Bag {
 public:
  Bag() = default;
  explicit Bag(std::vector<T> elems) : elems_(std::move(elems)) {
    std::sort(elems_.begin(), elems_.end());
  }
  Bag(std::initializer_list<T> elems) : Bag(std::vector<T>(elems)) {}

  static Bag singleton(T x) { return Bag(std::vector<T>{std::move(x)}); }

  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }
  auto begin() const { return elems_.begin(); }
  auto end() const { return elems_.end(); }
  const T& operator[](std::size_t i) const { return elems_[i]; }
  const std::vector<T>& elements() const { return elems_; }

  template <class F>
  auto map(F&& f) const -> Bag<std::decay_t<decltype(f(std::declval<T>()))>> {
    std::vector<std::decay_t<decltype(f(std::declval<T>()))>> out;
    out.reserve(elems_.size());
    for (const auto& x : elems_) out.push_back(f(x));
    return Bag<std::decay_t<decltype(f(std::declval<T>()))>>(std::move(out));
  }

  friend auto operator<=>(const Bag& a, const Bag& b) {
    return std::lexicographical_compare_three_way(
        a.elems_.begin(), a.elems_.end(), b.elems_.begin(), b.elems_.end());
  }
  friend bool operator==(const Bag& a, const Bag& b) {
    return a.elems_ == b.elems_;
  }

 private:
  std::vector<T> elems_;
};

using PointBag = Bag<Point>;
using BagOfBags = Bag<PointBag>;

// Union of the inner bags; multiplicities add.
template <class T>
Bag<T> bag_union(const Bag<Bag<T>>& bb) {
  std::vector<T> all;
  for (const auto& b : bb)
    all.insert(all.end(), b.begin(), b.end());
  return Bag<T>(std::move(all));
}

// Collapses an n-tuple to the bag of its components, forgetting order.
template <class T>
Bag<T> tuple_to_bag(std::span<const T> tuple) {
  return Bag<T>(std::vector<T>(tuple.begin(), tuple.end()));
}

template <class T>
Bag<T> tuple_to_bag(const std::vector<T>& tuple) {
  return Bag<T>(tuple);
}

inline std::size_t count_in_region(const PointBag& b, const Region& region) {
  std::size_t n = 0;
  for (const auto& p : b)
    if (region.contains(p)) ++n;
  return n;
}

// The per-inner-bag counts in U, sorted descending: which partition class of
// the union's count this bag-of-bags realizes.
inline std::vector<std::size_t> classify_composition(const BagOfBags& bb,
                                                     const Region& region) {
  std::vector<std::size_t> counts;
  counts.reserve(bb.size());
  for (const auto& b : bb) counts.push_back(count_in_region(b, region));
  std::sort(counts.begin(), counts.end(), std::greater<>());
  return counts;
}

}  // namespace pointproc
