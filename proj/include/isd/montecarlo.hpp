#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "isd/dgp.hpp"
#include "isd/inference.hpp"

namespace isd {

enum class SimMode { Full, WarpSpeed };

/// One cell of a rejection-rate table. Replication r draws both samples from
/// substreams keyed on (family, r), so cells sharing a family see the same data.
struct SimSpec {
  DoubleParetoParams dgp1{3.0, 2.0};
  DoubleParetoParams dgp2{3.0, 2.0};
  std::size_t n1 = 2000;
  std::size_t n2 = 2000;
  /// cfg.bootstrap is ignored in warp-speed mode; cfg.seed is the master seed.
  TestConfig cfg;
  std::size_t replications = 1000;
  SimMode mode = SimMode::WarpSpeed;
  std::uint32_t family = 0;
  /// Free-form cell coordinates (e.g. alpha, beta, tau) carried into reports.
  std::vector<std::pair<std::string, std::string>> labels;
};

struct SimResult {
  SimSpec spec;
  std::size_t rejections = 0;
  double rejection_rate = 0.0;
  /// Pooled warp-speed critical value; NaN in full mode.
  double critical_value = 0.0;
  double elapsed_ms = 0.0;
};

/// Full mode runs a complete B-draw test per replication. Warp-speed mode
/// computes one bootstrap statistic per replication and compares every
/// statistic with the (1-alpha) quantile of the pooled bootstrap draws.
SimResult run_cell(const SimSpec& spec);

/// Gives every distinct (dgp1, dgp2, n1, n2) design its own family, in order
/// of first appearance, so tuning variants of one design share data.
void assign_families(std::vector<SimSpec>& cells);

/// assign_families followed by run_cell on each cell.
std::vector<SimResult> run_table(std::vector<SimSpec> cells);

}  // namespace isd
