// Command-line front end: parse pipeline files, run reproducible draws,
// report intensities, run the verification suites.
//
// Exit codes: 0 success, 1 parse/type error (or failed verify suite),
// 2 invalid request, 3 resource guard.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pointproc/pointproc.hpp"

namespace {

using namespace pointproc;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw usage_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::optional<std::string>& path,
                  const std::string& data) {
  if (!path) {
    std::cout << data;
    return;
  }
  std::ofstream out(*path, std::ios::binary);
  if (!out) throw usage_error("cannot open " + *path + " for writing");
  out << data;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("POINTPROC_SEED")) {
    try {
      return std::stoull(env);
    } catch (...) {
      throw usage_error("POINTPROC_SEED is not a number");
    }
  }
  return 0;
}

struct DrawArgs {
  std::string file;
  std::optional<std::uint64_t> seed;
  std::size_t n = 1;
  std::string format = "csv";
  std::optional<std::string> out;
};

int run_draw(const DrawArgs& args) {
  auto expr = ast::parse(read_file(args.file));
  PointProcess process = ast::compile(*expr);
  SeedState root{args.seed ? *args.seed : default_seed(), 0};
  std::vector<PointBag> draws;
  draws.reserve(args.n);
  for (std::size_t i = 0; i < args.n; ++i)
    draws.push_back(process.sample(root.child(i)));

  if (args.format == "csv") {
    write_output(args.out, io::draws_csv(draws));
  } else if (args.format == "svg") {
    write_output(args.out, io::draws_svg(draws, process.universe()));
  } else if (args.format == "json") {
    write_output(args.out, io::draws_json(draws).dump(2) + "\n");
  } else {
    throw usage_error("unknown format: " + args.format);
  }
  return 0;
}

struct IntensityArgs {
  std::string file;
  std::vector<std::string> regions;
  std::optional<std::uint64_t> seed;
  std::size_t n = 10000;
  std::optional<std::string> out;
};

int run_intensity(const IntensityArgs& args) {
  auto expr = ast::parse(read_file(args.file));
  PointProcess process = ast::compile(*expr);
  std::uint64_t seed = args.seed ? *args.seed : default_seed();

  std::vector<io::IntensityRow> rows;
  for (const auto& text : args.regions) {
    Region region = ast::resolve_region(*ast::parse_region_literal(text),
                                        process.universe());
    io::IntensityRow row;
    row.region = text;
    row.compositional = process.intensity().eval(region);
    auto st = intensity_empirical_stats(process, region, args.n,
                                        SeedState{seed, 0});
    row.empirical = st.mean;
    row.stderr_ = st.stderr_;
    row.draws = st.draws;
    row.agree = std::abs(row.empirical - row.compositional) <= 4.0 * row.stderr_;
    rows.push_back(std::move(row));
  }
  write_output(args.out, io::intensity_report_json(rows, seed).dump(2) + "\n");
  return 0;
}

int run_verify(const std::string& suite, std::optional<std::uint64_t> seed) {
  auto report = verify::run_suite(suite, seed ? *seed : default_seed());
  std::cout << verify::report_json(report).dump(2) << "\n";
  return report.pass ? 0 : 1;
}

int run_parse(const std::string& file) {
  auto expr = ast::parse(read_file(file));
  std::cout << ast::print_expr(*expr) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"composable point processes: draws, intensities, law checks"};
  app.require_subcommand(1);

  DrawArgs draw_args;
  auto* draw = app.add_subcommand("draw", "sample a pipeline and serialize the draws");
  draw->add_option("file", draw_args.file, "pipeline file")->required();
  draw->add_option("--seed,-s", draw_args.seed, "root seed (default $POINTPROC_SEED or 0)");
  draw->add_option("--n,-n", draw_args.n, "number of draws")->check(CLI::PositiveNumber);
  draw->add_option("--format,-f", draw_args.format, "csv|svg|json");
  draw->add_option("--out,-o", draw_args.out, "output file (default stdout)");

  IntensityArgs int_args;
  auto* intens = app.add_subcommand("intensity", "compositional vs empirical expected counts");
  intens->add_option("file", int_args.file, "pipeline file")->required();
  intens->add_option("--region,-r", int_args.regions, "region literal (repeatable)")
      ->required();
  intens->add_option("--seed,-s", int_args.seed, "root seed");
  intens->add_option("--n,-n", int_args.n, "draws for the empirical estimate")
      ->check(CLI::PositiveNumber);
  intens->add_option("--out,-o", int_args.out, "output file (default stdout)");

  std::string suite;
  std::optional<std::uint64_t> verify_seed;
  auto* verify_cmd = app.add_subcommand("verify", "run a law-check suite");
  verify_cmd->add_option("suite", suite,
                         "bag-laws|gb-laws|distributive|morphism|empirical")
      ->required();
  verify_cmd->add_option("--seed,-s", verify_seed, "suite seed");

  std::string parse_file;
  auto* parse_cmd = app.add_subcommand("parse", "parse a pipeline and print its canonical form");
  parse_cmd->add_option("file", parse_file, "pipeline file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (draw->parsed()) return run_draw(draw_args);
    if (intens->parsed()) return run_intensity(int_args);
    if (verify_cmd->parsed()) return run_verify(suite, verify_seed);
    if (parse_cmd->parsed()) return run_parse(parse_file);
  } catch (const parse_error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const resource_error& e) {
    std::cerr << "resource guard: " << e.what() << "\n";
    return 3;
  } catch (const range_error& e) {
    std::cerr << "invalid request: " << e.what() << "\n";
    return 2;
  } catch (const usage_error& e) {
    std::cerr << "invalid request: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
