#pragma once

#include <optional>
#include <string>

#include "isd/empirical.hpp"
#include "isd/rng.hpp"

namespace isd {

/// Double Pareto dP(alpha, beta) with scale M: density proportional to
/// x^{beta-1} below M and to x^{-alpha-1} above it.
struct DoubleParetoParams {
  double alpha;
  double beta;
  double scale = 1.0;
};

void validate(const DoubleParetoParams& params);

/// Set when the upper tail is too heavy for a finite (2+eps)-th moment.
std::optional<std::string> moment_warning(const DoubleParetoParams& params);

double dp_pdf(const DoubleParetoParams& params, double x);
double dp_cdf(const DoubleParetoParams& params, double x);
/// Inverse CDF on [0,1); u = 1 is rejected.
double dp_quantile(const DoubleParetoParams& params, double u);
/// alpha beta M / ((alpha - 1)(beta + 1)); infinite for alpha <= 1.
double dp_mean(const DoubleParetoParams& params);

SortedSample dp_sample(const DoubleParetoParams& params, std::size_t n, Philox4x32& engine);

}  // namespace isd
