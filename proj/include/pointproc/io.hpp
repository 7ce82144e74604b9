#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "pointproc/bag.hpp"
#include "pointproc/discrete_dist.hpp"
#include "pointproc/format.hpp"

namespace pointproc {
namespace io {

// One point per row ("x" or "x,y"); draws separated by a blank line.
inline std::string bag_csv(const PointBag& bag) {
  std::string out;
  for (const auto& p : bag) {
    switch (p.universe()) {
      case Universe::Unit1: out += "star"; break;
      case Universe::Nats: out += std::to_string(p.nat_value()); break;
      case Universe::RealLine: out += format_double(p.x()); break;
      case Universe::UnitSquare:
        out += format_double(p.x()) + "," + format_double(p.y());
        break;
    }
    out += "\n";
  }
  return out;
}

inline std::string draws_csv(const std::vector<PointBag>& draws) {
  std::string out;
  for (std::size_t i = 0; i < draws.size(); ++i) {
    if (i) out += "\n";
    out += bag_csv(draws[i]);
  }
  return out;
}

inline nlohmann::ordered_json point_json(const Point& p) {
  switch (p.universe()) {
    case Universe::Unit1: return "star";
    case Universe::Nats: return p.nat_value();
    case Universe::RealLine: return p.x();
    case Universe::UnitSquare: return nlohmann::ordered_json::array({p.x(), p.y()});
  }
  return nullptr;
}

inline nlohmann::ordered_json draws_json(const std::vector<PointBag>& draws) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& bag : draws) {
    nlohmann::ordered_json b = nlohmann::ordered_json::array();
    for (const auto& p : bag) b.push_back(point_json(p));
    arr.push_back(std::move(b));
  }
  return nlohmann::ordered_json{{"draws", std::move(arr)}};
}

namespace detail {

inline std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline void svg_circle(std::string& out, double cx, double cy) {
  out += "  <circle cx=\"" + svg_num(cx) + "\" cy=\"" + svg_num(cy) +
         "\" r=\"4\" fill=\"#c1272d\"/>\n";
}

}  // namespace detail

// Scatter panels, one per draw, laid out horizontally. Unit-square draws get
// a 500x500 box; draws on the naturals or the real line get a number line
// with equal points stacked vertically (10 px apart).
inline std::string draws_svg(const std::vector<PointBag>& draws, Universe u) {
  using detail::svg_num;
  const double margin = 20;
  const double panel = 500;
  const bool square = (u == Universe::UnitSquare);
  const double panel_h = square ? panel : 140;
  const double width = margin + draws.size() * (panel + margin);
  const double height = panel_h + 2 * margin;

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         svg_num(width) + "\" height=\"" + svg_num(height) + "\" viewBox=\"0 0 " +
         svg_num(width) + " " + svg_num(height) + "\">\n";

  // Axis range for the 1-d layouts: integers, covering 0..6 at minimum.
  double lo = 0, hi = 6;
  if (!square) {
    for (const auto& bag : draws)
      for (const auto& p : bag) {
        double v = (u == Universe::Nats)
                       ? static_cast<double>(p.nat_value())
                       : p.x();
        lo = std::min(lo, std::floor(v));
        hi = std::max(hi, std::ceil(v));
      }
  }

  for (std::size_t d = 0; d < draws.size(); ++d) {
    const double ox = margin + d * (panel + margin);
    out += "<g transform=\"translate(" + svg_num(ox) + "," + svg_num(margin) +
           ")\">\n";
    if (square) {
      out += "  <rect x=\"0\" y=\"0\" width=\"" + svg_num(panel) +
             "\" height=\"" + svg_num(panel) +
             "\" fill=\"white\" stroke=\"black\"/>\n";
      for (const auto& p : draws[d])
        detail::svg_circle(out, p.x() * panel, (1.0 - p.y()) * panel);
    } else {
      const double axis_y = panel_h - 30;
      out += "  <rect x=\"0\" y=\"0\" width=\"" + svg_num(panel) +
             "\" height=\"" + svg_num(panel_h) +
             "\" fill=\"white\" stroke=\"black\"/>\n";
      out += "  <line x1=\"10\" y1=\"" + svg_num(axis_y) + "\" x2=\"" +
             svg_num(panel - 10) + "\" y2=\"" + svg_num(axis_y) +
             "\" stroke=\"black\"/>\n";
      auto xpos = [&](double v) {
        return 10 + (v - lo) / std::max(1.0, hi - lo) * (panel - 20);
      };
      for (double t = lo; t <= hi; t += 1.0) {
        out += "  <line x1=\"" + svg_num(xpos(t)) + "\" y1=\"" +
               svg_num(axis_y - 4) + "\" x2=\"" + svg_num(xpos(t)) +
               "\" y2=\"" + svg_num(axis_y + 4) + "\" stroke=\"black\"/>\n";
        out += "  <text x=\"" + svg_num(xpos(t)) + "\" y=\"" +
               svg_num(axis_y + 18) +
               "\" font-size=\"12\" text-anchor=\"middle\">" +
               format_double(t) + "</text>\n";
      }
      // stack equal points
      std::map<double, int> seen;
      for (const auto& p : draws[d]) {
        double v = (u == Universe::Nats) ? static_cast<double>(p.nat_value())
                                         : p.x();
        int level = seen[v]++;
        detail::svg_circle(out, xpos(v), axis_y - 12 - 10.0 * level);
      }
    }
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

// Rows of the intensity report emitted by the CLI.
struct IntensityRow {
  std::string region;
  double compositional = 0;
  double empirical = 0;
  double stderr_ = 0;
  std::size_t draws = 0;
  bool agree = false;
};

inline nlohmann::ordered_json intensity_report_json(const std::vector<IntensityRow>& rows,
                                            std::uint64_t seed) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    arr.push_back({{"region", r.region},
                   {"exact_or_quadrature", r.compositional},
                   {"empirical", r.empirical},
                   {"n", r.draws},
                   {"stderr", r.stderr_},
                   {"agree", r.agree}});
  }
  return nlohmann::ordered_json{{"seed", seed}, {"rows", std::move(arr)}};
}

// Debug dump of an exact distribution: {"value":..., "p":...} rows plus the
// tracked defect.
inline nlohmann::ordered_json bag_dist_json(const DiscreteDist<PointBag>& d) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& [bag, w] : d.support()) {
    nlohmann::ordered_json pts = nlohmann::ordered_json::array();
    for (const auto& p : bag) pts.push_back(point_json(p));
    rows.push_back({{"bag", std::move(pts)}, {"p", w}});
  }
  return nlohmann::ordered_json{{"support", std::move(rows)}, {"defect", d.defect()}};
}

template <class T>
nlohmann::ordered_json dist_json(const DiscreteDist<T>& d) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& [x, w] : d.support())
    rows.push_back({{"value", x}, {"p", w}});
  return nlohmann::ordered_json{{"support", std::move(rows)}, {"defect", d.defect()}};
}

}  // namespace io
}  // namespace pointproc
