#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "isd/inference.hpp"
#include "isd/rng.hpp"

namespace isd::detail {

// Everything about one test that does not depend on the bootstrap draw.
struct Prepared {
  Grid grid;
  SortedSample first;
  SortedSample second;
  std::optional<PairedSample> pairs;
  double t_n;
  Eigen::VectorXd phi;
  double statistic;
  ContactSet contact;
};

Prepared prepare(const SortedSample& first, const SortedSample& second, const PairedSample* pairs,
                 const TestConfig& cfg);

struct Workspace {
  std::vector<std::uint32_t> rows, w1, w2, cum1, cum2;
  std::vector<double> curve1, curve2;
  Eigen::VectorXd h;
};

double bootstrap_replicate(const Prepared& prep, const TestConfig& cfg, const RngStream& rng,
                           std::uint32_t family, std::uint32_t replication, Workspace& ws);

// B replicates in index order; threads <= 0 means the OpenMP default.
std::vector<double> bootstrap_statistics(const Prepared& prep, const TestConfig& cfg, const RngStream& rng,
                                         int threads);

TestResult decide(const Prepared& prep, const TestConfig& cfg, std::vector<double> stats);

int resolve_threads(int requested);

}  // namespace isd::detail
