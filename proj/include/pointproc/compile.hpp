#pragma once

#include <optional>
#include <string>

#include "pointproc/ast.hpp"
#include "pointproc/errors.hpp"
#include "pointproc/process.hpp"

namespace pointproc {
namespace ast {

// Static checks happen here, with source positions: universe consistency,
// literal validity. Anything that passes compiles to a PointProcess.

inline Region resolve_region(const RegionLit& lit,
                             std::optional<Universe> expected = {}) {
  auto check = [&](Universe got) {
    if (expected && *expected != got)
      throw parse_error(std::string("region universe is ") +
                            universe_name(got) + ", pipeline lives on " +
                            universe_name(*expected),
                        lit.line, lit.col);
  };
  switch (lit.kind) {
    case RegionLit::Kind::Rect: {
      check(Universe::UnitSquare);
      if (!(lit.nums[0] <= lit.nums[2] && lit.nums[1] <= lit.nums[3]))
        throw parse_error("rect corners must be ordered", lit.line, lit.col);
      if (lit.nums[0] < 0 || lit.nums[1] < 0 || lit.nums[2] > 1 ||
          lit.nums[3] > 1)
        throw parse_error("rect must lie inside the unit square", lit.line,
                          lit.col);
      return Region::rect(lit.nums[0], lit.nums[1], lit.nums[2], lit.nums[3]);
    }
    case RegionLit::Kind::Interval: {
      check(Universe::RealLine);
      if (!(lit.nums[0] <= lit.nums[1]))
        throw parse_error("interval bounds must be ordered", lit.line, lit.col);
      return Region::interval(lit.nums[0], lit.nums[1]);
    }
    case RegionLit::Kind::Set: {
      Universe u = lit.points.front().universe();
      for (const auto& p : lit.points)
        if (p.universe() != u)
          throw parse_error("set mixes point universes", lit.line, lit.col);
      if (u != Universe::Unit1 && u != Universe::Nats)
        throw parse_error("set literals are for discrete universes", lit.line,
                          lit.col);
      check(u);
      return Region::points(lit.points);
    }
    case RegionLit::Kind::Complement:
      return resolve_region(*lit.inner, expected).complement();
    case RegionLit::Kind::All: {
      if (!expected)
        throw parse_error("cannot infer the universe of 'all' here", lit.line,
                          lit.col);
      return Region::all(*expected);
    }
  }
  throw parse_error("bad region", lit.line, lit.col);
}

inline Universe region_universe(const RegionLit& lit,
                                std::optional<Universe> expected = {}) {
  return resolve_region(lit, expected).universe();
}

inline Universe infer_universe(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Unit: return e.point->universe();
    case Expr::Kind::FromDist: return Universe::Unit1;
    case Expr::Kind::Uniform: {
      Universe u = region_universe(*e.region);
      if (u != Universe::RealLine && u != Universe::UnitSquare)
        throw parse_error("uniform needs a continuous region", e.line, e.col);
      return u;
    }
    case Expr::Kind::Poisson: {
      Universe u = region_universe(*e.region);
      if (u != Universe::RealLine && u != Universe::UnitSquare)
        throw parse_error("poisson needs a continuous region", e.line, e.col);
      return u;
    }
    case Expr::Kind::Bind:
      infer_universe(*e.a);  // must itself be well-formed
      return infer_universe(*e.b);
    case Expr::Kind::Thin: return infer_universe(*e.a);
    case Expr::Kind::Displace: {
      if (infer_universe(*e.a) != Universe::RealLine)
        throw parse_error("displace works on the real line", e.a->line,
                          e.a->col);
      if (infer_universe(*e.b) != Universe::RealLine)
        throw parse_error("displacement law must live on the real line",
                          e.b->line, e.b->col);
      return Universe::RealLine;
    }
    case Expr::Kind::ClusterDemo: return Universe::UnitSquare;
  }
  throw parse_error("bad expression", e.line, e.col);
}

inline DiscreteDist<std::uint64_t> resolve_dist(const DistLit& d) {
  if (d.kind == DistLit::Kind::Poisson)
    return poisson_trunc(d.rate, kPoissonEps);
  std::vector<std::pair<std::uint64_t, double>> ws(d.pmf.begin(), d.pmf.end());
  return DiscreteDist<std::uint64_t>::from_weights(std::move(ws));
}

inline PointProcess compile(const Expr& e) {
  infer_universe(e);
  switch (e.kind) {
    case Expr::Kind::Unit: return pp_unit(*e.point);
    case Expr::Kind::FromDist: return from_nat_dist(resolve_dist(*e.dist));
    case Expr::Kind::Uniform: {
      Region r = resolve_region(*e.region);
      if (!(r.measure() > 0))
        throw parse_error("uniform needs a region of positive measure", e.line,
                          e.col);
      return uniform_point(r);
    }
    case Expr::Kind::Poisson: {
      Region r = resolve_region(*e.region);
      if (!(r.measure() > 0))
        throw parse_error("poisson needs a region of positive measure", e.line,
                          e.col);
      return poisson_pp(e.number, r);
    }
    case Expr::Kind::Bind: {
      PointProcess body = compile(*e.b);  // var is never referenced (see grammar)
      return pp_bind(compile(*e.a), [body](const Point&) { return body; });
    }
    case Expr::Kind::Thin: return thin(compile(*e.a), e.number);
    case Expr::Kind::Displace:
      return displace(compile(*e.a), compile(*e.b));
    case Expr::Kind::ClusterDemo: return cluster_demo();
  }
  throw parse_error("bad expression", e.line, e.col);
}

}  // namespace ast
}  // namespace pointproc
