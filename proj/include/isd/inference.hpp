#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "isd/curves.hpp"
#include "isd/empirical.hpp"
#include "isd/functionals.hpp"
#include "isd/variance.hpp"

namespace isd {

/// Tuning knobs of the dominance test. Defaults: tau = 3 for samples of up
/// to about 2000 observations, xi = 0.001, alpha = 0.05, eta = 0.
struct TestConfig {
  int m = 3;
  Direction direction = Direction::Up;
  FunctionalKind functional = FunctionalKind::Sup;
  double alpha = 0.05;
  double tau = 3.0;
  double xi = 0.001;
  double eta = 0.0;
  std::size_t bootstrap = 999;
  std::uint64_t seed = 1;
  std::size_t grid = 1001;
  std::size_t vgrid = 101;
  SchemeKind scheme = SchemeKind::Independent;
  /// Worker cap; 0 uses the OpenMP default. Never affects results.
  int threads = 0;
};

/// Throws InvalidConfig or UnsupportedDegree.
void validate(const TestConfig& cfg);

struct TestResult {
  double statistic = 0.0;
  /// After the eta floor, when eta > 0.
  double critical_value = 0.0;
  double p_value = 1.0;
  bool reject = false;
  double contact_fraction = 0.0;
  double t_n = 0.0;
  struct Diagnostics {
    std::size_t grid = 0;
    std::size_t vgrid = 0;
    std::size_t bootstrap = 0;
    double raw_critical_value = 0.0;
    double elapsed_ms = 0.0;
  } diagnostics;
};

/// Tests H0: the distribution of `first` dominates that of `second` at
/// degree cfg.m in cfg.direction, i.e. Lambda_2 <= Lambda_1 everywhere.
/// Large positive Lambda_2 - Lambda_1 leads to rejection. Not rejecting is
/// absence of evidence against dominance, not a confirmation of it.
TestResult run_test(const SortedSample& first, const SortedSample& second, const TestConfig& cfg);

/// Matched-pairs version; the left column plays `first`.
TestResult run_test(const PairedSample& pairs, const TestConfig& cfg);

enum class Relation { None, Less, Greater };

struct PairOutcome {
  std::size_t a = 0, b = 0;
  TestResult a_dominates_b;  // null (i)
  TestResult b_dominates_a;  // null (ii)
};

/// relation(a, b) == Less means a < b: b strictly dominates a.
struct RankingMatrix {
  std::vector<std::string> labels;
  std::vector<Relation> relation;  // row-major, labels.size()^2
  std::vector<PairOutcome> pairs;

  Relation at(std::size_t a, std::size_t b) const { return relation[a * labels.size() + b]; }
};

/// Runs both one-sided tests for every unordered pair. Rejecting "a
/// dominates b" while not rejecting "b dominates a" yields a < b, and
/// symmetrically; anything else is no strict relation.
RankingMatrix pairwise_rank(const std::vector<std::pair<std::string, SortedSample>>& datasets,
                            const TestConfig& cfg);

}  // namespace isd
