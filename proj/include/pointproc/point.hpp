#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <string>
#include <variant>

#include "pointproc/errors.hpp"

namespace pointproc {

// The four supported base spaces.
enum class Universe : std::uint8_t { Unit1, Nats, RealLine, UnitSquare };

inline const char* universe_name(Universe u) {
  switch (u) {
    case Universe::Unit1: return "unit";
    case Universe::Nats: return "nats";
    case Universe::RealLine: return "real-line";
    case Universe::UnitSquare: return "unit-square";
  }
  return "?";
}

// A point of one of the base spaces. Reals are required to be finite and
// -0.0 is normalized to 0.0, so the per-variant order below is total and
// bags keyed on points have a unique canonical form.
class Point {
 public:
  struct Star {
    friend auto operator<=>(const Star&, const Star&) = default;
  };
  struct R1 {
    double x;
    friend auto operator<=>(const R1&, const R1&) = default;
  };
  struct R2 {
    double x, y;  // lexicographic order
    friend auto operator<=>(const R2&, const R2&) = default;
  };

  static Point star() { return Point(Star{}); }
  static Point nat(std::uint64_t n) { return Point(n); }
  static Point real(double x) { return Point(R1{check_finite(x)}); }
  static Point real2(double x, double y) {
    return Point(R2{check_finite(x), check_finite(y)});
  }

  Universe universe() const {
    switch (v_.index()) {
      case 0: return Universe::Unit1;
      case 1: return Universe::Nats;
      case 2: return Universe::RealLine;
      default: return Universe::UnitSquare;
    }
  }

  std::uint64_t nat_value() const { return std::get<std::uint64_t>(v_); }
  double x() const {
    return universe() == Universe::RealLine ? std::get<R1>(v_).x
                                            : std::get<R2>(v_).x;
  }
  double y() const { return std::get<R2>(v_).y; }

  friend auto operator<=>(const Point& a, const Point& b) {
    // Finite, normalized doubles: the defaulted partial_ordering never
    // yields unordered here, so lift it to a strong order.
    auto c = a.v_ <=> b.v_;
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  friend bool operator==(const Point& a, const Point& b) {
    return a.v_ == b.v_;
  }

 private:
  using Rep = std::variant<Star, std::uint64_t, R1, R2>;
  explicit Point(Rep v) : v_(std::move(v)) {}

  static double check_finite(double x) {
    if (!std::isfinite(x)) throw usage_error("point coordinates must be finite");
    return x == 0.0 ? 0.0 : x;  // fold -0.0
  }

  Rep v_;
};

// The canonical probe point of each universe; used where a total function on
// the universe has to be evaluated once before any draw exists.
inline Point canonical_point(Universe u) {
  switch (u) {
    case Universe::Unit1: return Point::star();
    case Universe::Nats: return Point::nat(0);
    case Universe::RealLine: return Point::real(0.0);
    case Universe::UnitSquare: return Point::real2(0.0, 0.0);
  }
  throw usage_error("bad universe");
}

}  // namespace pointproc
