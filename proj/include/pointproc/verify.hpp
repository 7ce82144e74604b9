#pragma once

#include <cmath>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "pointproc/bag_dist.hpp"
#include "pointproc/intensity.hpp"
#include "pointproc/process.hpp"

namespace pointproc {
namespace verify {

inline constexpr double kLawTolerance = 1e-12;

struct CheckResult {
  std::string name;
  bool pass = true;
  std::size_t cases = 0;
  double worst = 0;  // largest discrepancy seen
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  bool pass = true;
  std::deque<CheckResult> checks;  // stable references while checks run

  CheckResult& add(std::string name) {
    checks.emplace_back();
    checks.back().name = std::move(name);
    return checks.back();
  }
  void finish() {
    pass = true;
    for (const auto& c : checks) pass = pass && c.pass;
  }
};

inline void record(CheckResult& c, double discrepancy, double tol,
                   const std::string& what) {
  ++c.cases;
  if (discrepancy > c.worst) c.worst = discrepancy;
  if (!(discrepancy <= tol)) {
    c.pass = false;
    if (c.detail.empty()) c.detail = what;
  }
}

inline void record_bool(CheckResult& c, bool ok, const std::string& what) {
  ++c.cases;
  if (!ok) {
    c.pass = false;
    if (c.detail.empty()) c.detail = what;
  }
}

// Randomized small instances over a 3-point base space, as used by the
// law suites: supports of at most 3, bags of at most 3 elements.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  SplitMix64& rng() { return rng_; }

  std::size_t index(std::size_t n) { return rng_.next() % n; }

  Point point() { return Point::nat(index(3)); }

  PointBag bag(std::size_t max_size = 3) {
    std::vector<Point> pts;
    std::size_t n = index(max_size + 1);
    for (std::size_t i = 0; i < n; ++i) pts.push_back(point());
    return PointBag(std::move(pts));
  }

  // weights are bounded away from zero so products never reach the pruning
  // threshold
  template <class T>
  DiscreteDist<T> dist_over(const std::vector<T>& carrier) {
    std::size_t n = 1 + index(std::min<std::size_t>(3, carrier.size()));
    std::vector<std::size_t> picks;
    for (std::size_t i = 0; i < carrier.size(); ++i) picks.push_back(i);
    for (std::size_t i = 0; i < picks.size(); ++i)
      std::swap(picks[i], picks[index(picks.size())]);
    std::vector<std::pair<T, double>> ws;
    double total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double w = 0.1 + 0.9 * rng_.next_double();
      ws.push_back({carrier[picks[i]], w});
      total += w;
    }
    for (auto& [x, w] : ws) w /= total;
    return DiscreteDist<T>::from_weights(std::move(ws));
  }

  DiscreteDist<Point> point_dist() {
    return dist_over<Point>({Point::nat(0), Point::nat(1), Point::nat(2)});
  }

  BagDist bag_dist() {
    std::vector<PointBag> bags;
    for (int i = 0; i < 4; ++i) bags.push_back(bag());
    return dist_over<PointBag>(bags);
  }

  std::function<BagDist(const Point&)> kernel() {
    std::vector<BagDist> by_point;
    for (int i = 0; i < 3; ++i) by_point.push_back(bag_dist());
    return [by_point](const Point& p) { return by_point[p.nat_value()]; };
  }

  // A region over the base space: one of the 8 subsets of {0,1,2}, possibly
  // complemented (complements stay usable for counting).
  Region region(bool allow_complement = true) {
    std::size_t mask = index(8);
    std::vector<Point> pts;
    for (std::size_t b = 0; b < 3; ++b)
      if (mask & (1u << b)) pts.push_back(Point::nat(b));
    Region r = pts.empty() ? Region::empty(Universe::Nats)
                           : Region::points(std::move(pts));
    if (allow_complement && index(2) == 0) return r.complement();
    return r;
  }

  // Finite-measure probe regions for intensity evaluation.
  static std::vector<Region> probe_regions() {
    std::vector<Region> probes;
    probes.push_back(Region::empty(Universe::Nats));
    for (std::size_t mask = 1; mask < 8; ++mask) {
      std::vector<Point> pts;
      for (std::size_t b = 0; b < 3; ++b)
        if (mask & (1u << b)) pts.push_back(Point::nat(b));
      probes.push_back(Region::points(std::move(pts)));
    }
    probes.push_back(Region::points({Point::nat(3)}));
    probes.push_back(Region::points({Point::nat(0), Point::nat(3)}));
    return probes;  // 10 regions
  }

 private:
  SplitMix64 rng_;
};

// ---------------------------------------------------------------------------
// bag-laws: the Set-level monad structure of bags.

inline SuiteReport bag_laws(std::uint64_t seed, int instances = 200) {
  SuiteReport report;
  report.suite = "bag-laws";
  Gen gen(seed);
  auto& left_unit = report.add("union of singleton wrapper is identity");
  auto& right_unit = report.add("union after per-element singleton is identity");
  auto& assoc = report.add("union is associative on triple nesting");
  auto& count_additive = report.add("region counts add over inner bags");
  auto& composition = report.add("composition classes sum to the union count");

  for (int i = 0; i < instances; ++i) {
    PointBag b = gen.bag();
    record_bool(left_unit, bag_union(BagOfBags{b}) == b, "mu . eta != id");
    record_bool(right_unit,
                bag_union(b.map([](const Point& p) {
                  return PointBag::singleton(p);
                })) == b,
                "mu . B eta != id");

    // triple-nested bag with total size <= 6
    std::vector<Bag<PointBag>> mids;
    std::size_t total = 0;
    std::size_t outer = gen.index(3);
    for (std::size_t m = 0; m < outer; ++m) {
      std::vector<PointBag> inner;
      std::size_t innern = gen.index(3);
      for (std::size_t k = 0; k < innern && total < 6; ++k) {
        PointBag piece = gen.bag(2);
        total += piece.size();
        inner.push_back(std::move(piece));
      }
      mids.push_back(Bag<PointBag>(std::move(inner)));
    }
    Bag<Bag<PointBag>> bbb(std::move(mids));
    record_bool(assoc,
                bag_union(bag_union(bbb)) ==
                    bag_union(bbb.map([](const Bag<PointBag>& bb) {
                      return bag_union(bb);
                    })),
                "mu . mu != mu . B mu");

    std::vector<PointBag> parts;
    for (std::size_t m = 0; m < 3; ++m) parts.push_back(gen.bag());
    BagOfBags bb(std::move(parts));
    Region u = gen.region();
    std::size_t direct = count_in_region(bag_union(bb), u);
    std::size_t via = 0;
    for (const auto& part : bb) via += count_in_region(part, u);
    record_bool(count_additive, direct == via, "count not additive");
    auto comp = classify_composition(bb, u);
    std::size_t comp_sum = 0;
    for (auto c : comp) comp_sum += c;
    record_bool(composition, comp_sum == direct, "composition sum mismatch");
  }
  report.finish();
  return report;
}

// ---------------------------------------------------------------------------
// gb-laws: monad laws for the exact engine, plus agreement of bind with the
// composite multiplication GB GB -> G G B B -> GB.

inline SuiteReport gb_laws(std::uint64_t seed, int instances = 200) {
  SuiteReport report;
  report.suite = "gb-laws";
  Gen gen(seed);
  auto& left_unit = report.add("bind after unit is the kernel");
  auto& right_unit = report.add("bind with unit is identity");
  auto& assoc = report.add("bind is associative");
  auto& composite = report.add("bind agrees with GlB composite");

  for (int i = 0; i < instances; ++i) {
    Point x = gen.point();
    auto f = gen.kernel();
    auto g = gen.kernel();
    BagDist alpha = gen.bag_dist();

    record(left_unit, total_variation(gbe_bind(gbe_unit<Point>(x), f), f(x)),
           kLawTolerance, "left unit failed");
    record(right_unit,
           total_variation(
               gbe_bind(alpha, [](const Point& p) { return gbe_unit<Point>(p); }),
               alpha),
           kLawTolerance, "right unit failed");
    record(assoc,
           total_variation(
               gbe_bind(gbe_bind(alpha, f), g),
               gbe_bind(alpha,
                        [&](const Point& p) { return gbe_bind(f(p), g); })),
           kLawTolerance, "associativity failed");

    // mu_GB = (mu_G * mu_B) . GlB applied to the GBGB value alpha maps into
    auto lifted = alpha.map(
        [&](const PointBag& b) { return b.map(f); });  // G(B(G(B X)))
    auto after_l = lifted.map([](const Bag<BagDist>& bags) {
      return distributive_law<PointBag>(
          std::vector<BagDist>(bags.begin(), bags.end()));
    });  // G G (B B X)
    auto composite_result =
        after_l.bind([](const DiscreteDist<Bag<PointBag>>& inner) {
                  return inner;
                })  // mu_G
            .map([](const Bag<PointBag>& bb) { return bag_union(bb); });  // mu_B
    record(composite, total_variation(gbe_bind(alpha, f), composite_result),
           kLawTolerance, "GlB composite disagrees");
  }
  report.finish();
  return report;
}

// ---------------------------------------------------------------------------
// distributive: the two triangle and two pentagon identities, the fixed
// support cardinality, and the polynomial-coefficient oracle.

inline SuiteReport distributive(std::uint64_t seed, int instances = 200) {
  SuiteReport report;
  report.suite = "distributive";
  Gen gen(seed);
  auto& tri1 = report.add("triangle I: l . B eta_G = eta_G B");
  auto& tri2 = report.add("triangle II: G eta_B = l . eta_B G");
  auto& pent1 = report.add("pentagon I: l . B mu_G = mu_G B . Gl . lG");
  auto& pent2 = report.add("pentagon II: G mu_B . lB . Bl = l . mu_B G");
  auto& card = report.add("cardinality: support bags have size n");
  auto& poly = report.add("polynomial coefficient oracle");
  auto& norm = report.add("counts over all k sum to total mass");

  for (int i = 0; i < instances; ++i) {
    // Triangle I on a random bag
    PointBag b = gen.bag();
    std::vector<DiscreteDist<Point>> diracs;
    for (const auto& p : b) diracs.push_back(DiscreteDist<Point>::unit(p));
    record(tri1,
           total_variation(distributive_law(diracs),
                           DiscreteDist<PointBag>::unit(b)),
           kLawTolerance, "triangle I failed");

    // Triangle II on a random distribution
    DiscreteDist<Point> nu = gen.point_dist();
    record(tri2,
           total_variation(
               nu.map([](const Point& p) { return PointBag::singleton(p); }),
               distributive_law(std::vector<DiscreteDist<Point>>{nu})),
           kLawTolerance, "triangle II failed");

    // Pentagon I on a bag of measures over measures
    std::vector<DiscreteDist<DiscreteDist<Point>>> thetas;
    std::size_t n1 = 1 + gen.index(3);
    for (std::size_t m = 0; m < n1; ++m) {
      std::vector<DiscreteDist<Point>> inner;
      for (int k = 0; k < 3; ++k) inner.push_back(gen.point_dist());
      thetas.push_back(gen.dist_over<DiscreteDist<Point>>(inner));
    }
    std::vector<DiscreteDist<Point>> flattened;
    for (const auto& theta : thetas)
      flattened.push_back(
          theta.bind([](const DiscreteDist<Point>& d) { return d; }));
    auto lhs1 = distributive_law(flattened);
    auto rhs1 =
        distributive_law(thetas)  // lG
            .map([](const Bag<DiscreteDist<Point>>& bagged) {  // Gl
              return distributive_law(std::vector<DiscreteDist<Point>>(
                  bagged.begin(), bagged.end()));
            })
            .bind([](const DiscreteDist<PointBag>& d) { return d; });  // mu_G B
    record(pent1, total_variation(lhs1, rhs1), kLawTolerance,
           "pentagon I failed");

    // Pentagon II on a bag of bags of measures
    std::vector<std::vector<DiscreteDist<Point>>> nested;
    std::size_t outer = 1 + gen.index(2);
    for (std::size_t m = 0; m < outer; ++m) {
      std::vector<DiscreteDist<Point>> inner;
      std::size_t innern = gen.index(3);
      for (std::size_t k = 0; k < innern; ++k) inner.push_back(gen.point_dist());
      nested.push_back(std::move(inner));
    }
    std::vector<DiscreteDist<Point>> concat;
    for (const auto& inner : nested)
      concat.insert(concat.end(), inner.begin(), inner.end());
    auto rhs2 = distributive_law(concat);  // l . mu_B G
    std::vector<DiscreteDist<PointBag>> bound;  // Bl
    for (const auto& inner : nested) bound.push_back(distributive_law(inner));
    auto lhs2 = distributive_law(bound)  // lB
                    .map([](const Bag<PointBag>& bb) {  // G mu_B
                      return bag_union(bb);
                    });
    record(pent2, total_variation(lhs2, rhs2), kLawTolerance,
           "pentagon II failed");

    // Cardinality, oracle and normalization on a fresh factor list
    std::vector<DiscreteDist<Point>> factors;
    std::size_t n = 1 + gen.index(3);
    for (std::size_t m = 0; m < n; ++m) factors.push_back(gen.point_dist());
    auto law = distributive_law(factors);
    bool sizes_ok = true;
    for (const auto& [bagv, w] : law.support())
      sizes_ok = sizes_ok && bagv.size() == factors.size();
    record_bool(card, sizes_ok, "support bag of wrong cardinality");

    Region u = gen.region();
    std::size_t k = gen.index(n + 2);
    record(poly,
           std::abs(prob_count(law, u, k) - poly_coeff_check(factors, u, k)),
           kLawTolerance, "coefficient oracle disagrees");

    double mass = 0;
    for (std::size_t kk = 0; kk <= n; ++kk) mass += prob_count(law, u, kk);
    record(norm, std::abs(mass - (1.0 - law.defect())), kLawTolerance,
           "counts do not exhaust the mass");
  }
  report.finish();
  return report;
}

// ---------------------------------------------------------------------------
// morphism: the intensity map is a monad morphism.

inline SuiteReport morphism(std::uint64_t seed, int instances = 200) {
  SuiteReport report;
  report.suite = "morphism";
  Gen gen(seed);
  auto probes = Gen::probe_regions();
  auto& unit_law = report.add("unit law: intensity of unit is Dirac (exact)");
  auto& mult_law = report.add("mult law: intensity of bind is bind of intensities");
  auto& count_series = report.add("intensity equals sum of k times count probability");
  auto& factor_sum = report.add("distributive intensity agrees with factor sum");
  auto& bag_embed = report.add("embedded bag measures region counts");

  for (int i = 0; i < instances; ++i) {
    Point x = gen.point();
    for (const auto& u : probes) {
      double lhs = intensity_of_exact(gbe_unit<Point>(x)).eval(u);
      double rhs = intensity_unit(x).eval(u);
      record_bool(unit_law, lhs == rhs, "unit law not exact");
    }

    BagDist alpha = gen.bag_dist();
    auto f = gen.kernel();
    auto composite = intensity_of_exact(gbe_bind(alpha, f));
    auto bound = intensity_bind(intensity_of_exact(alpha), [&](const Point& p) {
      return intensity_of_exact(f(p));
    });
    for (const auto& u : probes)
      record(mult_law, std::abs(composite.eval(u) - bound.eval(u)),
             kLawTolerance, "mult law failed");

    auto exact_intensity = intensity_of_exact(alpha);
    std::size_t maxk = max_support_bag_size(alpha);
    for (const auto& u : probes) {
      double series = 0;
      for (std::size_t k = 1; k <= maxk; ++k)
        series += static_cast<double>(k) * prob_count(alpha, u, k);
      record(count_series, std::abs(exact_intensity.eval(u) - series),
             kLawTolerance, "k-weighted series mismatch");
    }

    std::vector<DiscreteDist<Point>> factors;
    std::size_t n = 1 + gen.index(5);
    for (std::size_t m = 0; m < n; ++m) factors.push_back(gen.point_dist());
    const Region& u = probes[gen.index(probes.size())];
    auto [direct, via] = distributive_intensity_check(factors, u);
    record(factor_sum, std::abs(direct - via), kLawTolerance,
           "factor-sum identity failed");

    PointBag b = gen.bag();
    for (const auto& u2 : probes)
      record_bool(bag_embed,
                  embed_bag(b).eval(u2) ==
                      static_cast<double>(count_in_region(b, u2)),
                  "embedded bag count mismatch");
  }
  report.finish();
  return report;
}

// ---------------------------------------------------------------------------
// empirical: exact-versus-sampled calibration for the discrete example
// processes, and compositional-versus-sampled intensity everywhere.

struct ExampleProcess {
  std::string name;
  PointProcess process;
  std::vector<Region> regions;
};

inline std::vector<ExampleProcess> discrete_examples() {
  Region star = Region::points({Point::star()});
  auto pmf = [](std::vector<std::pair<std::uint64_t, double>> ws) {
    return DiscreteDist<std::uint64_t>::from_weights(std::move(ws));
  };

  std::vector<ExampleProcess> out;
  out.push_back({"count-law-pmf",
                 from_nat_dist(pmf({{0, 0.25}, {1, 0.25}, {2, 0.5}})),
                 {star}});
  out.push_back({"count-law-poisson",
                 from_nat_dist(poisson_trunc(3.0, 1e-9)),
                 {star}});

  auto iid = from_nat_dist(pmf({{1, 0.5}, {2, 0.5}}));
  auto compound = pp_bind(from_nat_dist(poisson_trunc(3.0, 1e-9)),
                          [iid](const Point&) { return iid; });
  out.push_back({"compound-poisson", compound, {star}});
  out.push_back({"thinned-compound", thin(compound, 0.4), {star}});

  auto values = from_point_dist(DiscreteDist<Point>::from_weights(
      {{Point::nat(0), 0.5}, {Point::nat(3), 0.25}, {Point::nat(6), 0.25}}));
  auto nats = pp_bind(from_nat_dist(pmf({{2, 0.7}, {3, 0.3}})),
                      [values](const Point&) { return values; });
  out.push_back({"nats-cluster",
                 nats,
                 {Region::points({Point::nat(0)}),
                  Region::points({Point::nat(0), Point::nat(3)}),
                  Region::points({Point::nat(6)}).complement()}});
  return out;
}

inline std::vector<ExampleProcess> continuous_examples() {
  Region square = Region::rect(0, 0, 1, 1);
  Region w = Region::rect(0, 0, 0.5, 0.5);
  Region band = Region::rect(0.25, 0, 0.75, 1);
  Region seg = Region::interval(0, 0.5);
  Region unit_iv = Region::interval(0, 1);

  std::vector<ExampleProcess> out;
  out.push_back({"uniform-square", uniform_point(square), {square, w, band}});
  out.push_back({"poisson-square", poisson_pp(10.0, square), {square, w, band}});
  auto delta = from_point_dist(DiscreteDist<Point>::from_weights(
      {{Point::real(-0.25), 0.5}, {Point::real(0.25), 0.5}}));
  out.push_back({"displaced-uniform",
                 displace(uniform_point(unit_iv), delta),
                 {seg, unit_iv, Region::interval(-0.25, 1.25)}});
  out.push_back({"cluster", cluster_demo(), {square, w, band}});
  return out;
}

// Count statistics of one batch of draws, per region.
struct RegionCounts {
  std::map<std::size_t, std::size_t> histogram;
  std::uint64_t sum = 0;
  std::uint64_t sumsq = 0;
};

inline std::vector<RegionCounts> batched_counts(
    const PointProcess& process, const std::vector<Region>& regions,
    std::size_t draws, const SeedState& root) {
  std::vector<RegionCounts> stats(regions.size());
  for (std::size_t i = 0; i < draws; ++i) {
    PointBag bag = process.sample(root.child(i));
    for (std::size_t j = 0; j < regions.size(); ++j) {
      std::size_t c = count_in_region(bag, regions[j]);
      ++stats[j].histogram[c];
      stats[j].sum += c;
      stats[j].sumsq += static_cast<std::uint64_t>(c) * c;
    }
  }
  return stats;
}

// Expected pass rate: each cell is a two-sided 4-sigma test, so a cell fires
// spuriously with probability ~6e-5; across ~40 cells x 3 seeds that is one
// sporadic miss per ~140 runs, absorbed by the single reseed. A cell missing
// twice is reported as a failure.
inline SuiteReport empirical(std::uint64_t seed, std::size_t draws = 10000) {
  SuiteReport report;
  report.suite = "empirical";
  auto& cells = report.add("count-probability cells within 4 sigma");
  auto& intens = report.add("empirical intensity within 4 standard errors");
  auto& repro = report.add("same seed, same draw");

  const std::uint64_t seeds[3] = {seed, mix64(seed, 1), mix64(seed, 2)};
  const double dn = static_cast<double>(draws);

  for (const auto& ex : discrete_examples()) {
    const BagDist& exact = *ex.process.exact();
    std::size_t maxk = max_support_bag_size(exact);
    for (int si = 0; si < 3; ++si) {
      auto stats = batched_counts(ex.process, ex.regions, draws,
                                  SeedState{seeds[si], 0});
      for (std::size_t j = 0; j < ex.regions.size(); ++j) {
        for (std::size_t k = 0; k <= maxk; ++k) {
          double p = prob_count(exact, ex.regions[j], k);
          if (p < 0.01) continue;
          double sigma = std::sqrt(p * (1.0 - p) / dn);
          auto it = stats[j].histogram.find(k);
          double freq =
              it == stats[j].histogram.end()
                  ? 0.0
                  : static_cast<double>(it->second) / dn;
          bool ok = std::abs(freq - p) <= 4.0 * sigma;
          if (!ok) {
            // one automatic reseed per cell; a second miss is a failure
            double retry = empirical_count_prob(
                ex.process, ex.regions[j], k, draws,
                SeedState{mix64(seeds[si], 0x9E37), 0});
            ok = std::abs(retry - p) <= 4.0 * sigma;
          }
          record_bool(cells, ok,
                      ex.name + ": cell k=" + std::to_string(k) + " seed#" +
                          std::to_string(si));
        }
      }
    }
  }

  auto check_intensity = [&](const ExampleProcess& ex) {
    std::vector<Region> finite;
    for (const auto& region : ex.regions)
      if (std::isfinite(region.measure())) finite.push_back(region);
    auto stats = batched_counts(ex.process, finite, draws,
                                SeedState{seeds[0], 0});
    for (std::size_t j = 0; j < finite.size(); ++j) {
      double expected = ex.process.intensity().eval(finite[j]);
      double mean = static_cast<double>(stats[j].sum) / dn;
      double var = (static_cast<double>(stats[j].sumsq) - dn * mean * mean) /
                   (dn - 1.0);
      double se = std::sqrt(std::max(var, 0.0) / dn);
      double slack = 4.0 * std::max(se, 1e-9);
      record_bool(intens, std::abs(mean - expected) <= slack,
                  ex.name + ": intensity off by " +
                      std::to_string(std::abs(mean - expected)));
    }
  };
  for (const auto& ex : discrete_examples()) check_intensity(ex);
  for (const auto& ex : continuous_examples()) check_intensity(ex);

  for (const auto& ex : continuous_examples()) {
    SeedState root{seeds[0], 7};
    record_bool(repro, ex.process.sample(root) == ex.process.sample(root),
                ex.name + ": draw not reproducible");
  }

  report.finish();
  return report;
}

// ---------------------------------------------------------------------------

inline SuiteReport run_suite(const std::string& name, std::uint64_t seed) {
  if (name == "bag-laws") return bag_laws(seed);
  if (name == "gb-laws") return gb_laws(seed);
  if (name == "distributive") return distributive(seed);
  if (name == "morphism") return morphism(seed);
  if (name == "empirical") return empirical(seed);
  throw usage_error("unknown suite: " + name);
}

inline nlohmann::ordered_json report_json(const SuiteReport& r) {
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name},
                      {"pass", c.pass},
                      {"cases", c.cases},
                      {"worst", c.worst},
                      {"detail", c.detail}});
  return nlohmann::ordered_json{
      {"suite", r.suite}, {"pass", r.pass}, {"checks", std::move(checks)}};
}

}  // namespace verify
}  // namespace pointproc
