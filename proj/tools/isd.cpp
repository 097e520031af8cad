// isd: inverse stochastic dominance tests from the command line.
//
//   isd test FIRST SECOND      H0: FIRST dominates SECOND
//   isd test --matched PAIRS   H0: left column dominates right column
//   isd rank A B [C ...]       pairwise ranking matrix
//   isd simulate SPEC | --preset NAME
//
// Exit codes: 0 completed (whatever the decision), 2 input error, 3 config error.

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

#include "isd/error.hpp"
#include "isd/inference.hpp"
#include "isd/io.hpp"
#include "isd/montecarlo.hpp"
#include "isd/simfile.hpp"
#include "isd/version.hpp"

namespace {

constexpr int kInputError = 2;
constexpr int kConfigError = 3;

struct Options {
  isd::TestConfig cfg;
  std::string direction = "up";
  std::string functional = "sup";
  std::string tau = "3";
  std::string format = "text";
  bool matched = false;
  bool no_timing = false;
  std::vector<std::string> files;
  // simulate
  std::string spec_file;
  std::string preset;
  std::string print_preset;
  std::optional<std::size_t> replications;
  std::optional<std::uint64_t> seed;
};

int exit_code(isd::Errc code) {
  switch (code) {
    case isd::Errc::FileNotFound:
    case isd::Errc::ParseError:
    case isd::Errc::EmptyFile:
    case isd::Errc::EmptyInput:
    case isd::Errc::NegativeValue:
    case isd::Errc::NonFiniteValue:
    case isd::Errc::MisalignedInputs:
      return kInputError;
    default:
      return kConfigError;
  }
}

void add_test_flags(CLI::App* app, Options& o) {
  app->add_option("--m", o.cfg.m, "Dominance degree (>= 3)")->capture_default_str();
  app->add_option("--direction", o.direction, "up | down")
      ->check(CLI::IsMember({"up", "down"}))
      ->capture_default_str();
  app->add_option("--functional", o.functional, "sup | int")
      ->check(CLI::IsMember({"sup", "int"}))
      ->capture_default_str();
  app->add_option("--alpha", o.cfg.alpha, "Significance level")->capture_default_str();
  app->add_option("--tau", o.tau, "Contact-set threshold, a positive number or inf")->capture_default_str();
  app->add_option("--xi", o.cfg.xi, "Variance trimming floor")->capture_default_str();
  app->add_option("--eta", o.cfg.eta, "Lower bound on the critical value")->capture_default_str();
  app->add_option("--bootstrap", o.cfg.bootstrap, "Bootstrap draws B")->capture_default_str();
  app->add_option("--seed", o.cfg.seed, "Master seed")->capture_default_str();
  app->add_option("--grid", o.cfg.grid, "Functional grid size")->capture_default_str();
  app->add_option("--vgrid", o.cfg.vgrid, "Variance grid size")->capture_default_str();
}

void add_output_flags(CLI::App* app, Options& o) {
  app->add_option("--format", o.format, "text | json | csv")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  app->add_option("--threads", o.cfg.threads, "Worker cap (0 = all cores)")->capture_default_str();
  app->add_flag("--no-timing", o.no_timing, "Leave wall times out of the report");
}

double parse_tau(const std::string& s) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw isd::Error(isd::Errc::InvalidConfig, "--tau expects a number or inf");
  return v;
}

void finalize(Options& o) {
  o.cfg.direction = o.direction == "down" ? isd::Direction::Down : isd::Direction::Up;
  o.cfg.functional = o.functional == "int" ? isd::FunctionalKind::Int : isd::FunctionalKind::Sup;
  o.cfg.tau = parse_tau(o.tau);
  o.cfg.scheme = o.matched ? isd::SchemeKind::Matched : isd::SchemeKind::Independent;
}

isd::SortedSample load_single(const std::string& path) {
  return std::get<isd::SortedSample>(isd::load_csv(path, isd::Layout::Single));
}

isd::Report make_report(std::string command, std::vector<std::string> inputs, const isd::TestConfig& cfg) {
  isd::Report r;
  r.command = std::move(command);
  r.inputs = std::move(inputs);
  r.config = cfg;
  return r;
}

double since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

isd::Report run_test_command(Options& o) {
  finalize(o);
  isd::validate(o.cfg);
  isd::Report report = make_report("test", o.files, o.cfg);
  if (o.matched) {
    if (o.files.size() != 1) throw isd::Error(isd::Errc::InvalidConfig, "--matched takes one two-column file");
    const auto pairs = std::get<isd::PairedSample>(isd::load_csv(o.files[0], isd::Layout::Paired));
    report.result = isd::run_test(pairs, o.cfg);
  } else {
    if (o.files.size() != 2) throw isd::Error(isd::Errc::InvalidConfig, "test takes two files (or --matched and one)");
    report.result = isd::run_test(load_single(o.files[0]), load_single(o.files[1]), o.cfg);
  }
  return report;
}

isd::Report run_rank_command(Options& o) {
  finalize(o);
  isd::validate(o.cfg);
  if (o.matched) throw isd::Error(isd::Errc::InvalidConfig, "rank compares independent samples");
  if (o.files.size() < 2) throw isd::Error(isd::Errc::InvalidConfig, "rank needs at least two files");
  std::vector<std::pair<std::string, isd::SortedSample>> data;
  for (const auto& f : o.files) data.emplace_back(std::filesystem::path(f).stem().string(), load_single(f));
  isd::Report report = make_report("rank", o.files, o.cfg);
  report.result = isd::pairwise_rank(data, o.cfg);
  return report;
}

isd::Report run_simulate_command(Options& o) {
  if (o.spec_file.empty() == o.preset.empty()) {
    throw isd::Error(isd::Errc::InvalidConfig, "simulate takes a spec file or --preset, not both");
  }
  isd::SimTable table;
  if (!o.preset.empty()) {
    std::istringstream in(isd::preset(o.preset));
    table = isd::parse_simfile(in, o.preset);
  } else {
    table = isd::load_simfile(o.spec_file);
  }
  for (auto& cell : table.cells) {
    if (o.replications) cell.replications = *o.replications;
    if (o.seed) cell.cfg.seed = *o.seed;
    cell.cfg.threads = o.cfg.threads;
  }
  if (o.seed) table.base.seed = *o.seed;
  std::vector<std::string> warned;
  for (const auto& cell : table.cells) {
    for (const auto* p : {&cell.dgp1, &cell.dgp2}) {
      if (auto w = isd::moment_warning(*p); w && std::find(warned.begin(), warned.end(), *w) == warned.end()) {
        std::cerr << "warning: " << *w << '\n';
        warned.push_back(*w);
      }
    }
  }
  isd::Report report =
      make_report("simulate", {o.spec_file.empty() ? "preset:" + o.preset : o.spec_file}, table.base);
  report.result = isd::run_table(std::move(table.cells));
  report.rows = table.rows;
  report.columns = table.columns;
  return report;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Inverse stochastic dominance tests"};
  app.set_version_flag("--version", isd::kVersion);
  app.require_subcommand(1);
  Options o;

  auto* test = app.add_subcommand(
      "test",
      "Test H0: the distribution of FIRST dominates that of SECOND. Rejection is evidence against dominance; "
      "non-rejection is not evidence for it.");
  test->add_option("files", o.files, "FIRST SECOND, or one two-column file with --matched")->required();
  test->add_flag("--matched", o.matched, "Rows are matched pairs (two-column file)");
  add_test_flags(test, o);
  add_output_flags(test, o);

  auto* rank = app.add_subcommand("rank", "Pairwise ranking of two or more samples");
  rank->add_option("files", o.files, "One single-column file per dataset")->required()->expected(2, -1);
  add_test_flags(rank, o);
  add_output_flags(rank, o);

  auto* simulate = app.add_subcommand("simulate", "Rejection-rate tables on double Pareto data");
  simulate->add_option("spec", o.spec_file, "key = value spec file");
  simulate->add_option("--preset", o.preset, "Shipped spec: table1 | table2 | table3 | table4");
  simulate->add_option("--print-preset", o.print_preset, "Print a shipped spec file and exit");
  simulate->add_option("--replications", o.replications, "Override the replication count");
  simulate->add_option("--seed", o.seed, "Override the master seed");
  add_output_flags(simulate, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (simulate->parsed() && !o.print_preset.empty()) {
      std::cout << isd::preset(o.print_preset);
      return 0;
    }
    const auto start = std::chrono::steady_clock::now();
    isd::Report report = test->parsed() ? run_test_command(o)
                         : rank->parsed() ? run_rank_command(o)
                                          : run_simulate_command(o);
    if (!o.no_timing) report.elapsed_ms = since(start);
    std::cout << isd::emit_report(report, isd::parse_format(o.format));
    return 0;
  } catch (const isd::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
}
