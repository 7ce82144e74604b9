#pragma once

#include <algorithm>
#include <limits>
#include <vector>

#include "pointproc/errors.hpp"
#include "pointproc/point.hpp"

namespace pointproc {

// Half-open interval [lo, hi). Empty when lo >= hi.
struct Interval {
  double lo = 0, hi = 0;
  double length() const { return hi > lo ? hi - lo : 0.0; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

// Half-open axis-aligned rectangle [x0,x1) x [y0,y1).
struct Rect {
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  double area() const {
    return (x1 > x0 && y1 > y0) ? (x1 - x0) * (y1 - y0) : 0.0;
  }
  friend bool operator==(const Rect&, const Rect&) = default;
};

namespace detail {

using IntervalList = std::vector<Interval>;  // canonical: sorted, disjoint

inline IntervalList canonicalize(IntervalList xs) {
  IntervalList out;
  std::erase_if(xs, [](const Interval& i) { return !(i.lo < i.hi); });
  std::sort(xs.begin(), xs.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (const auto& i : xs) {
    if (!out.empty() && i.lo <= out.back().hi)
      out.back().hi = std::max(out.back().hi, i.hi);
    else
      out.push_back(i);
  }
  return out;
}

inline IntervalList intersect(const IntervalList& a, const IntervalList& b) {
  IntervalList out;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    double lo = std::max(a[i].lo, b[j].lo);
    double hi = std::min(a[i].hi, b[j].hi);
    if (lo < hi) out.push_back({lo, hi});
    (a[i].hi < b[j].hi ? i : j)++;
  }
  return out;
}

inline IntervalList unite(IntervalList a, const IntervalList& b) {
  a.insert(a.end(), b.begin(), b.end());
  return canonicalize(std::move(a));
}

inline IntervalList subtract(const IntervalList& a, const IntervalList& b) {
  IntervalList out;
  for (auto piece : a) {
    for (const auto& cut : b) {
      if (cut.hi <= piece.lo || cut.lo >= piece.hi) continue;
      if (cut.lo > piece.lo) out.push_back({piece.lo, cut.lo});
      piece.lo = std::max(piece.lo, cut.hi);
      if (!(piece.lo < piece.hi)) break;
    }
    if (piece.lo < piece.hi) out.push_back(piece);
  }
  return canonicalize(std::move(out));
}

inline bool contains(const IntervalList& xs, double v) {
  for (const auto& i : xs)
    if (v >= i.lo && v < i.hi) return true;
  return false;
}

inline double total_length(const IntervalList& xs) {
  double s = 0;
  for (const auto& i : xs) s += i.length();
  return s;
}

// Horizontal slab [y0,y1) carrying the x-cross-section of a rectangle union.
// The slab decomposition (cut at every y where the cross-section changes,
// canonical interval list per slab) is a unique normal form: two rectangle
// lists denote the same set iff they produce identical slabs.
struct Slab {
  double y0, y1;
  IntervalList xs;
};
using SlabList = std::vector<Slab>;

inline SlabList merge_slabs(SlabList slabs) {
  SlabList out;
  for (auto& s : slabs) {
    if (s.xs.empty() || !(s.y0 < s.y1)) continue;
    if (!out.empty() && out.back().y1 == s.y0 && out.back().xs == s.xs)
      out.back().y1 = s.y1;
    else
      out.push_back(std::move(s));
  }
  return out;
}

inline SlabList to_slabs(const std::vector<Rect>& rects) {
  std::vector<double> ys;
  for (const auto& r : rects) {
    if (!(r.x0 < r.x1 && r.y0 < r.y1)) continue;
    ys.push_back(r.y0);
    ys.push_back(r.y1);
  }
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  SlabList slabs;
  for (std::size_t k = 0; k + 1 < ys.size(); ++k) {
    Slab s{ys[k], ys[k + 1], {}};
    IntervalList xs;
    for (const auto& r : rects)
      if (r.x0 < r.x1 && r.y0 <= s.y0 && r.y1 >= s.y1)
        xs.push_back({r.x0, r.x1});
    s.xs = canonicalize(std::move(xs));
    slabs.push_back(std::move(s));
  }
  return merge_slabs(std::move(slabs));
}

inline std::vector<Rect> from_slabs(const SlabList& slabs) {
  std::vector<Rect> out;
  for (const auto& s : slabs)
    for (const auto& i : s.xs) out.push_back({i.lo, s.y0, i.hi, s.y1});
  return out;
}

// Refine both slab lists onto the union of their y-breakpoints, combine
// cross-sections with `op`, re-merge.
template <class Op>
SlabList combine_slabs(const SlabList& a, const SlabList& b, Op op) {
  std::vector<double> ys;
  for (const auto& s : a) {
    ys.push_back(s.y0);
    ys.push_back(s.y1);
  }
  for (const auto& s : b) {
    ys.push_back(s.y0);
    ys.push_back(s.y1);
  }
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());

  auto section = [](const SlabList& sl, double y0, double y1) -> IntervalList {
    for (const auto& s : sl)
      if (s.y0 <= y0 && s.y1 >= y1) return s.xs;
    return {};
  };

  SlabList out;
  for (std::size_t k = 0; k + 1 < ys.size(); ++k) {
    Slab s{ys[k], ys[k + 1], op(section(a, s.y0, s.y1), section(b, s.y0, s.y1))};
    out.push_back(std::move(s));
  }
  return merge_slabs(std::move(out));
}

}  // namespace detail

// A measurable-set surrogate over one of the four universes. Bodies are kept
// canonical (sorted unique points; disjoint sorted intervals; rectangle slab
// decomposition). The complemented flag is needed only where the complement
// of a finite body is not finitely representable (Nats, RealLine); on Unit1
// and UnitSquare complements are materialized instead.
class Region {
 public:
  static Region empty(Universe u) { return Region(u); }

  static Region all(Universe u) {
    switch (u) {
      case Universe::Unit1: return points({Point::star()});
      case Universe::UnitSquare: return rect(0, 0, 1, 1);
      default: {
        Region r(u);
        r.complemented_ = true;
        return r;
      }
    }
  }

  // Finite point set; discrete universes only. Universe inferred from the
  // points, which must agree.
  static Region points(std::vector<Point> pts) {
    if (pts.empty())
      throw usage_error("point-set region needs at least one point");
    Universe u = pts.front().universe();
    if (u != Universe::Unit1 && u != Universe::Nats)
      throw usage_error("point-set regions are for discrete universes");
    for (const auto& p : pts)
      if (p.universe() != u)
        throw usage_error("point-set region mixes universes");
    Region r(u);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    r.pts_ = std::move(pts);
    return r;
  }

  static Region interval(double a, double b) {
    return intervals({Interval{a, b}});
  }

  static Region intervals(std::vector<Interval> ivs) {
    Region r(Universe::RealLine);
    for (const auto& i : ivs)
      if (!std::isfinite(i.lo) || !std::isfinite(i.hi))
        throw usage_error("interval bounds must be finite");
    r.ivs_ = detail::canonicalize(std::move(ivs));
    return r;
  }

  static Region rect(double x0, double y0, double x1, double y1) {
    return rects({Rect{x0, y0, x1, y1}});
  }

  static Region rects(std::vector<Rect> rs) {
    Region r(Universe::UnitSquare);
    for (const auto& q : rs) {
      if (q.x0 < 0 || q.y0 < 0 || q.x1 > 1 || q.y1 > 1)
        throw usage_error("rectangle outside the unit square");
    }
    r.rects_ = detail::from_slabs(detail::to_slabs(rs));
    return r;
  }

  Universe universe() const { return universe_; }
  bool is_complemented() const { return complemented_; }

  bool contains(const Point& p) const {
    if (p.universe() != universe_)
      throw usage_error("point/region universe mismatch");
    return body_contains(p) != complemented_;
  }

  // Counting measure on discrete universes, length/area otherwise; +inf for
  // co-finite bodies of the infinite universes.
  double measure() const {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    double body = 0;
    switch (universe_) {
      case Universe::Unit1:
      case Universe::Nats:
        body = static_cast<double>(pts_.size());
        break;
      case Universe::RealLine:
        body = detail::total_length(ivs_);
        break;
      case Universe::UnitSquare: {
        body = 0;
        for (const auto& r : rects_) body += r.area();
        break;
      }
    }
    if (!complemented_) return body;
    switch (universe_) {
      case Universe::Unit1: return 1.0 - body;
      case Universe::UnitSquare: return 1.0 - body;
      default: return kInf;
    }
  }

  Region complement() const {
    switch (universe_) {
      case Universe::Unit1: {
        Region r(universe_);
        if (pts_.empty()) r.pts_ = {Point::star()};
        return r;
      }
      case Universe::UnitSquare: {
        Region r(universe_);
        auto full = detail::to_slabs({Rect{0, 0, 1, 1}});
        auto mine = detail::to_slabs(rects_);
        r.rects_ = detail::from_slabs(detail::combine_slabs(
            full, mine, [](const detail::IntervalList& a,
                           const detail::IntervalList& b) {
              return detail::subtract(a, b);
            }));
        return r;
      }
      default: {
        Region r = *this;
        r.complemented_ = !r.complemented_;
        return r;
      }
    }
  }

  Region intersect(const Region& other) const {
    if (other.universe_ != universe_)
      throw usage_error("region universe mismatch");
    // A n B, A n ~B = A \ B, ~A n B, ~A n ~B = ~(A u B).
    Region r(universe_);
    if (!complemented_ && !other.complemented_) {
      r.set_body(body_intersect(other));
    } else if (!complemented_ && other.complemented_) {
      r.set_body(body_subtract(*this, other));
    } else if (complemented_ && !other.complemented_) {
      r.set_body(body_subtract(other, *this));
    } else {
      r.set_body(body_union(other));
      r.complemented_ = true;
    }
    return r;
  }

  const std::vector<Point>& point_body() const { return pts_; }
  const std::vector<Interval>& interval_body() const { return ivs_; }
  const std::vector<Rect>& rect_body() const { return rects_; }

  // Canonical bodies make representational equality extensional.
  friend bool operator==(const Region& a, const Region& b) {
    return a.universe_ == b.universe_ && a.complemented_ == b.complemented_ &&
           a.pts_ == b.pts_ && a.ivs_ == b.ivs_ && a.rects_ == b.rects_;
  }

 private:
  explicit Region(Universe u) : universe_(u) {}

  struct Body {
    std::vector<Point> pts;
    std::vector<Interval> ivs;
    std::vector<Rect> rects;
  };

  void set_body(Body b) {
    pts_ = std::move(b.pts);
    ivs_ = std::move(b.ivs);
    rects_ = std::move(b.rects);
  }

  bool body_contains(const Point& p) const {
    switch (universe_) {
      case Universe::Unit1:
      case Universe::Nats:
        return std::binary_search(pts_.begin(), pts_.end(), p);
      case Universe::RealLine:
        return detail::contains(ivs_, p.x());
      case Universe::UnitSquare:
        for (const auto& r : rects_)
          if (p.x() >= r.x0 && p.x() < r.x1 && p.y() >= r.y0 && p.y() < r.y1)
            return true;
        return false;
    }
    return false;
  }

  Body body_intersect(const Region& o) const {
    Body out;
    switch (universe_) {
      case Universe::Unit1:
      case Universe::Nats:
        std::set_intersection(pts_.begin(), pts_.end(), o.pts_.begin(),
                              o.pts_.end(), std::back_inserter(out.pts));
        break;
      case Universe::RealLine:
        out.ivs = detail::intersect(ivs_, o.ivs_);
        break;
      case Universe::UnitSquare:
        out.rects = detail::from_slabs(detail::combine_slabs(
            detail::to_slabs(rects_), detail::to_slabs(o.rects_),
            [](const detail::IntervalList& a, const detail::IntervalList& b) {
              return detail::intersect(a, b);
            }));
        break;
    }
    return out;
  }

  Body body_union(const Region& o) const {
    Body out;
    switch (universe_) {
      case Universe::Unit1:
      case Universe::Nats:
        std::set_union(pts_.begin(), pts_.end(), o.pts_.begin(), o.pts_.end(),
                       std::back_inserter(out.pts));
        break;
      case Universe::RealLine:
        out.ivs = detail::unite(ivs_, o.ivs_);
        break;
      case Universe::UnitSquare:
        out.rects = detail::from_slabs(detail::combine_slabs(
            detail::to_slabs(rects_), detail::to_slabs(o.rects_),
            [](const detail::IntervalList& a, const detail::IntervalList& b) {
              return detail::unite(a, b);
            }));
        break;
    }
    return out;
  }

  static Body body_subtract(const Region& a, const Region& b) {
    Body out;
    switch (a.universe_) {
      case Universe::Unit1:
      case Universe::Nats:
        std::set_difference(a.pts_.begin(), a.pts_.end(), b.pts_.begin(),
                            b.pts_.end(), std::back_inserter(out.pts));
        break;
      case Universe::RealLine:
        out.ivs = detail::subtract(a.ivs_, b.ivs_);
        break;
      case Universe::UnitSquare:
        out.rects = detail::from_slabs(detail::combine_slabs(
            detail::to_slabs(a.rects_), detail::to_slabs(b.rects_),
            [](const detail::IntervalList& x, const detail::IntervalList& y) {
              return detail::subtract(x, y);
            }));
        break;
    }
    return out;
  }

  Universe universe_;
  bool complemented_ = false;
  std::vector<Point> pts_;
  std::vector<Interval> ivs_;
  std::vector<Rect> rects_;
};

}  // namespace pointproc
