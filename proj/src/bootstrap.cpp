#include "isd/bootstrap.hpp"

#include <algorithm>
#include <cmath>

#include "isd/error.hpp"
#include "isd/summation.hpp"

namespace isd {

void draw_weights_into(std::size_t n, Philox4x32& engine, std::vector<std::uint32_t>& counts) {
  if (n == 0) throw Error(Errc::EmptyInput, "cannot resample an empty sample");
  counts.assign(n, 0u);
  const auto bound = static_cast<std::uint32_t>(n);
  for (std::size_t i = 0; i < n; ++i) ++counts[engine.below(bound)];
}

std::vector<std::uint32_t> draw_weights(std::size_t n, Philox4x32& engine) {
  std::vector<std::uint32_t> counts;
  draw_weights_into(n, engine, counts);
  return counts;
}

BootstrapDraw draw_independent(std::size_t n1, std::size_t n2, const RngStream& rng, std::uint32_t family,
                               std::uint32_t replication) {
  BootstrapDraw draw;
  auto e1 = rng.substream(family, replication, StreamPurpose::FirstWeights);
  auto e2 = rng.substream(family, replication, StreamPurpose::SecondWeights);
  draw_weights_into(n1, e1, draw.first);
  draw_weights_into(n2, e2, draw.second);
  return draw;
}

BootstrapDraw draw_matched(const PairedSample& pairs, const RngStream& rng, std::uint32_t family,
                           std::uint32_t replication) {
  BootstrapDraw draw;
  auto engine = rng.substream(family, replication, StreamPurpose::FirstWeights);
  draw_weights_into(pairs.size(), engine, draw.rows);
  draw.first.assign(pairs.size(), 0u);
  draw.second.assign(pairs.size(), 0u);
  const auto r1 = pairs.left_rank();
  const auto r2 = pairs.right_rank();
  for (std::size_t row = 0; row < pairs.size(); ++row) {
    draw.first[r1[row]] = draw.rows[row];
    draw.second[r2[row]] = draw.rows[row];
  }
  return draw;
}

DifferenceCurve bootstrap_diff_curve(const SortedSample& first, const SortedSample& second,
                                     const BootstrapDraw& draw, int m, Direction dir) {
  if (draw.first.size() != first.size() || draw.second.size() != second.size()) {
    throw Error(Errc::WeightMisalignment, "bootstrap weights not aligned with samples");
  }
  return DifferenceCurve(LambdaCurve(WeightedSample(first, draw.first), m, dir),
                         LambdaCurve(WeightedSample(second, draw.second), m, dir));
}

double bootstrap_statistic(const Eigen::Ref<const Eigen::VectorXd>& phi_star,
                           const Eigen::Ref<const Eigen::VectorXd>& phi_hat, const ContactSet& cs, double t_n,
                           FunctionalKind kind, const Grid& g) {
  if (phi_star.size() != phi_hat.size() || static_cast<std::size_t>(phi_hat.size()) != g.size()) {
    throw Error(Errc::MisalignedInputs, "bootstrap curve not aligned with grid");
  }
  const Eigen::VectorXd h = std::sqrt(t_n) * (phi_star - phi_hat);
  return apply_derivative(kind, h, cs, g);
}

double critical_value(std::span<const double> stats, double alpha) {
  if (stats.empty()) throw Error(Errc::EmptyStats, "no bootstrap statistics");
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(Errc::OutOfRange, "significance level outside (0,1)");
  const long b = static_cast<long>(stats.size());
  const long rank = std::clamp(detail::knot_ceil(1.0 - alpha, b), 1L, b);
  std::vector<double> sorted(stats.begin(), stats.end());
  std::nth_element(sorted.begin(), sorted.begin() + (rank - 1), sorted.end());
  return sorted[static_cast<std::size_t>(rank - 1)];
}

double p_value(std::span<const double> stats, double observed) {
  if (stats.empty()) throw Error(Errc::EmptyStats, "no bootstrap statistics");
  const auto hits = std::count_if(stats.begin(), stats.end(), [&](double s) { return s >= observed; });
  return static_cast<double>(hits) / static_cast<double>(stats.size());
}

}  // namespace isd
