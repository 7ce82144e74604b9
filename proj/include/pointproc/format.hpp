#pragma once

#include <charconv>
#include <cstdint>
#include <string>

#include "pointproc/point.hpp"

namespace pointproc {

// Shortest round-trip decimal form; all deterministic text output (CSV, JSON,
// AST printing) goes through this so identical seeds give identical bytes.
inline std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, p);
  // The DSL rejects scientific notation; fall back to a fixed form for the
  // rare magnitudes where to_chars picks it.
  if (s.find('e') != std::string::npos || s.find('E') != std::string::npos) {
    auto [q, ec2] = std::to_chars(buf, buf + sizeof buf, v,
                                  std::chars_format::fixed);
    s.assign(buf, q);
  }
  return s;
}

inline std::string to_string(const Point& p) {
  switch (p.universe()) {
    case Universe::Unit1: return "star";
    case Universe::Nats: return std::to_string(p.nat_value());
    case Universe::RealLine: return format_double(p.x());
    case Universe::UnitSquare:
      return "(" + format_double(p.x()) + ", " + format_double(p.y()) + ")";
  }
  return "?";
}

}  // namespace pointproc
