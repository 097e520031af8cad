#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "isd/empirical.hpp"

namespace isd {

enum class Direction { Up, Down };

inline constexpr int kMaxDegree = 12;

/// Ordered evaluation points in [0,1], strictly increasing, containing both
/// endpoints.
class Grid {
 public:
  explicit Grid(Eigen::VectorXd points);
  /// size equally spaced points 0, 1/(size-1), ..., 1.
  static Grid uniform(std::size_t size);

  const Eigen::VectorXd& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(points_.size()); }
  double operator[](std::size_t i) const noexcept { return points_[static_cast<Eigen::Index>(i)]; }

 private:
  Eigen::VectorXd points_;
};

namespace detail {

// Non-owning view of a step quantile function: item i holds value x[i] on the
// probability interval (cum(i-1)/n, cum(i)/n]. An empty `cum` means unit weights.
struct StepView {
  std::span<const double> x;
  std::span<const std::uint32_t> cum;
  std::uint32_t n = 0;
  double mean = 0.0;

  std::uint32_t upper(std::size_t i) const noexcept {
    return cum.empty() ? static_cast<std::uint32_t>(i + 1) : cum[i];
  }
  std::uint32_t lower(std::size_t i) const noexcept { return i == 0 ? 0u : upper(i - 1); }
};

double lambda_point(const StepView& q, int m, Direction dir, double p);

// Evaluates the curve at every point of an ascending list of abscissae.
void lambda_sweep(const StepView& q, int m, Direction dir, std::span<const double> grid,
                  std::span<double> out);

void check_degree(int m, Direction dir);

}  // namespace detail

/// Lambda^m (Up) or tilde-Lambda^m (Down) of an empirical or resampled
/// distribution: the (m-1)-fold repeated integral of its step quantile
/// function. Evaluation is exact up to floating point.
class LambdaCurve {
 public:
  LambdaCurve(SortedSample sample, int m, Direction dir);
  LambdaCurve(const WeightedSample& sample, int m, Direction dir);

  int degree() const noexcept { return m_; }
  Direction direction() const noexcept { return dir_; }
  double mean() const noexcept { return mean_; }
  detail::StepView view() const noexcept;

  double operator()(double p) const;

 private:
  SortedSample base_;
  std::vector<std::uint32_t> cumulative_;
  double mean_;
  int m_;
  Direction dir_;
};

/// phi(p) = second(p) - first(p). Positive values are evidence against the
/// hypothesis that the first distribution dominates the second.
class DifferenceCurve {
 public:
  DifferenceCurve(LambdaCurve first, LambdaCurve second);

  const LambdaCurve& first() const noexcept { return first_; }
  const LambdaCurve& second() const noexcept { return second_; }
  int degree() const noexcept { return first_.degree(); }
  Direction direction() const noexcept { return first_.direction(); }

  double operator()(double p) const { return second_(p) - first_(p); }

 private:
  LambdaCurve first_;
  LambdaCurve second_;
};

inline double lambda_eval(const LambdaCurve& c, double p) { return c(p); }
inline double diff_eval(const DifferenceCurve& d, double p) { return d(p); }

Eigen::VectorXd eval_on_grid(const LambdaCurve& c, const Grid& g);
Eigen::VectorXd eval_on_grid(const DifferenceCurve& d, const Grid& g);

}  // namespace isd
