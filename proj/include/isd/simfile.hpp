#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "isd/montecarlo.hpp"

namespace isd {

/// A rejection-rate table: the cartesian product of the listed sweeps.
struct SimTable {
  TestConfig base;
  std::vector<SimSpec> cells;
  std::string rows = "tau";
  std::string columns = "beta";
};

/// "key = value" lines, '#' comments. See the README for the keys.
SimTable parse_simfile(std::istream& in, const std::string& source = "<stream>");
SimTable load_simfile(const std::filesystem::path& path);

/// Shipped spec files for the four simulation tables: table1 ... table4.
const std::string& preset(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace isd
