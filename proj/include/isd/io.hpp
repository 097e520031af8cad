#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "isd/empirical.hpp"
#include "isd/inference.hpp"
#include "isd/montecarlo.hpp"

namespace isd {

enum class Layout { Single, Paired };

/// One value per line (Single) or "left,right" per line (Paired). A first
/// row that does not parse as numbers is taken as a header; blank lines are
/// skipped. Errors name the offending line.
std::variant<SortedSample, PairedSample> load_csv(const std::filesystem::path& path, Layout layout);

SortedSample parse_sample(std::istream& in, const std::string& source = "<stream>");
PairedSample parse_pairs(std::istream& in, const std::string& source = "<stream>");

/// One value per line with enough digits to read back exactly.
void write_sample(std::ostream& out, std::span<const double> values);

enum class Format { Json, Csv, Text };

Format parse_format(const std::string& name);

struct Report {
  std::string command;
  std::vector<std::string> inputs;
  TestConfig config;
  std::variant<TestResult, RankingMatrix, std::vector<SimResult>> result;
  /// Simulation tables only: cell labels laid out as rows and columns.
  std::string rows = "tau";
  std::string columns = "beta";
  /// Omitted from the output when empty, which keeps reports byte-stable.
  std::optional<double> elapsed_ms;
};

std::string emit_report(const Report& report, Format format);

std::string to_string(Direction dir);
std::string to_string(FunctionalKind kind);
std::string to_string(Relation rel);
/// Shortest round-trip form; +inf is written "inf".
std::string format_number(double v);

}  // namespace isd
