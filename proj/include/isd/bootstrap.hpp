#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "isd/curves.hpp"
#include "isd/empirical.hpp"
#include "isd/functionals.hpp"
#include "isd/rng.hpp"

namespace isd {

/// Multinomial(n; 1/n, ..., 1/n) counts; sums to n.
std::vector<std::uint32_t> draw_weights(std::size_t n, Philox4x32& engine);

/// Weight writes into caller storage; `counts` is resized to n.
void draw_weights_into(std::size_t n, Philox4x32& engine, std::vector<std::uint32_t>& counts);

/// Weights for both samples, each aligned with its sorted sample. For matched
/// pairs `rows` holds the shared per-row vector that both were scattered from.
struct BootstrapDraw {
  std::vector<std::uint32_t> first;
  std::vector<std::uint32_t> second;
  std::vector<std::uint32_t> rows;
};

BootstrapDraw draw_independent(std::size_t n1, std::size_t n2, const RngStream& rng, std::uint32_t family,
                               std::uint32_t replication);
BootstrapDraw draw_matched(const PairedSample& pairs, const RngStream& rng, std::uint32_t family,
                           std::uint32_t replication);

DifferenceCurve bootstrap_diff_curve(const SortedSample& first, const SortedSample& second,
                                     const BootstrapDraw& draw, int m, Direction dir);

/// F'(sqrt(T_n) (phi* - phi_hat)) with the derivative estimated on the contact set.
double bootstrap_statistic(const Eigen::Ref<const Eigen::VectorXd>& phi_star,
                           const Eigen::Ref<const Eigen::VectorXd>& phi_hat, const ContactSet& cs, double t_n,
                           FunctionalKind kind, const Grid& g);

/// The ceil((1-alpha) B)-th smallest statistic.
double critical_value(std::span<const double> stats, double alpha);

/// Share of bootstrap statistics at or above the observed value.
double p_value(std::span<const double> stats, double observed);

}  // namespace isd
