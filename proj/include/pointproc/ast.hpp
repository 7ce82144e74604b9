#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "pointproc/format.hpp"
#include "pointproc/point.hpp"

namespace pointproc {
namespace ast {

// Region literal, kept as written so printing round-trips.
struct RegionLit {
  enum class Kind { Rect, Interval, Set, Complement, All };
  Kind kind;
  std::vector<double> nums;               // Rect: x0 y0 x1 y1; Interval: a b
  std::vector<Point> points;              // Set
  std::shared_ptr<const RegionLit> inner; // Complement
  int line = 0, col = 0;
};

inline bool operator==(const RegionLit& a, const RegionLit& b) {
  if (a.kind != b.kind || a.nums != b.nums || a.points != b.points)
    return false;
  if (!a.inner != !b.inner) return false;
  return !a.inner || *a.inner == *b.inner;
}

struct DistLit {
  enum class Kind { Poisson, Pmf };
  Kind kind;
  double rate = 0;                                     // Poisson
  std::vector<std::pair<std::uint64_t, double>> pmf;   // Pmf, in source order
  int line = 0, col = 0;

  friend bool operator==(const DistLit& a, const DistLit& b) {
    return a.kind == b.kind && a.rate == b.rate && a.pmf == b.pmf;
  }
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind {
    Unit,        // unit(point)
    FromDist,    // fromdist(dist)
    Uniform,     // uniform(region)
    Poisson,     // poisson(rate, region)
    Bind,        // bind(a, var -> b)
    Thin,        // thin(a, number)
    Displace,    // displace(a, b)
    ClusterDemo  // cluster_demo()
  };
  Kind kind;
  std::shared_ptr<const Point> point;        // Unit
  std::shared_ptr<const DistLit> dist;       // FromDist
  std::shared_ptr<const RegionLit> region;   // Uniform, Poisson
  double number = 0;                         // Poisson rate, Thin probability
  std::string var;                           // Bind
  ExprPtr a, b;                              // children
  int line = 0, col = 0;
};

inline bool operator==(const Expr& x, const Expr& y) {
  if (x.kind != y.kind || x.number != y.number || x.var != y.var) return false;
  auto eq = [](const auto& p, const auto& q) {
    if (!p != !q) return false;
    return !p || *p == *q;
  };
  return eq(x.point, y.point) && eq(x.dist, y.dist) && eq(x.region, y.region) &&
         eq(x.a, y.a) && eq(x.b, y.b);
}

// Point literals: naturals print bare, reals always carry a decimal dot so
// they cannot be re-read as naturals.
inline std::string print_point(const Point& p) {
  auto with_dot = [](std::string s) {
    if (s.find('.') == std::string::npos) s += ".0";
    return s;
  };
  switch (p.universe()) {
    case Universe::Unit1: return "star";
    case Universe::Nats: return std::to_string(p.nat_value());
    case Universe::RealLine: return with_dot(format_double(p.x()));
    case Universe::UnitSquare:
      return "(" + format_double(p.x()) + ", " + format_double(p.y()) + ")";
  }
  return "?";
}

inline std::string print_region(const RegionLit& r) {
  switch (r.kind) {
    case RegionLit::Kind::Rect:
      return "rect(" + format_double(r.nums[0]) + ", " +
             format_double(r.nums[1]) + ", " + format_double(r.nums[2]) +
             ", " + format_double(r.nums[3]) + ")";
    case RegionLit::Kind::Interval:
      return "interval(" + format_double(r.nums[0]) + ", " +
             format_double(r.nums[1]) + ")";
    case RegionLit::Kind::Set: {
      std::string s = "set{";
      for (std::size_t i = 0; i < r.points.size(); ++i) {
        if (i) s += ", ";
        s += print_point(r.points[i]);
      }
      return s + "}";
    }
    case RegionLit::Kind::Complement:
      return "complement(" + print_region(*r.inner) + ")";
    case RegionLit::Kind::All: return "all";
  }
  return "?";
}

inline std::string print_dist(const DistLit& d) {
  if (d.kind == DistLit::Kind::Poisson)
    return "poisson(" + format_double(d.rate) + ")";
  std::string s = "pmf{";
  for (std::size_t i = 0; i < d.pmf.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(d.pmf[i].first) + ": " + format_double(d.pmf[i].second);
  }
  return s + "}";
}

inline std::string print_expr(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Unit: return "unit(" + print_point(*e.point) + ")";
    case Expr::Kind::FromDist: return "fromdist(" + print_dist(*e.dist) + ")";
    case Expr::Kind::Uniform: return "uniform(" + print_region(*e.region) + ")";
    case Expr::Kind::Poisson:
      return "poisson(" + format_double(e.number) + ", " +
             print_region(*e.region) + ")";
    case Expr::Kind::Bind:
      return "bind(" + print_expr(*e.a) + ", " + e.var + " -> " +
             print_expr(*e.b) + ")";
    case Expr::Kind::Thin:
      return "thin(" + print_expr(*e.a) + ", " + format_double(e.number) + ")";
    case Expr::Kind::Displace:
      return "displace(" + print_expr(*e.a) + ", " + print_expr(*e.b) + ")";
    case Expr::Kind::ClusterDemo: return "cluster_demo()";
  }
  return "?";
}

}  // namespace ast
}  // namespace pointproc
