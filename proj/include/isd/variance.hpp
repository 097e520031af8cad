#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <vector>

#include "isd/curves.hpp"
#include "isd/empirical.hpp"
#include "isd/error.hpp"
#include "isd/summation.hpp"

namespace isd {

enum class SchemeKind { Independent, Matched };

/// Sampling framework. Carries the sizes that determine lambda_hat and T_n.
class Scheme {
 public:
  static Scheme independent(std::size_t n1, std::size_t n2);
  static Scheme matched(std::size_t n);

  SchemeKind kind() const noexcept { return kind_; }
  std::size_t n1() const noexcept { return n1_; }
  std::size_t n2() const noexcept { return n2_; }
  double lambda_hat() const noexcept { return static_cast<double>(n1_) / static_cast<double>(n1_ + n2_); }
  double t_n() const noexcept {
    return static_cast<double>(n1_) * static_cast<double>(n2_) / static_cast<double>(n1_ + n2_);
  }

 private:
  Scheme(SchemeKind kind, std::size_t n1, std::size_t n2) : kind_(kind), n1_(n1), n2_(n2) {}
  SchemeKind kind_;
  std::size_t n1_, n2_;
};

/// Plug-in estimate of E[G(t) G(t')] for the limit of the integrated
/// quantile difference, built from sample covariances of clipped series
/// min(Q_j(t), X^j).
class CovKernel {
 public:
  static CovKernel independent(SortedSample first, SortedSample second);
  static CovKernel matched(const PairedSample& pairs);

  const Scheme& scheme() const noexcept { return scheme_; }
  const SortedSample& sample(int j) const { return j == 1 ? first_ : second_; }

  /// Sample covariance (n-1 denominator) of {Q_j(p) ^ X_i^j} and
  /// {Q_j'(p') ^ X_i^j'}. Cross terms (j != j') need matched pairs.
  double vv_cov(int j, int j2, double p, double p2) const;

  /// Kernel value at (t, t').
  double operator()(double t, double t2) const;

  Eigen::MatrixXd matrix(const Grid& g) const;

  /// Variance of the limit of the degree-m difference curve at p: the
  /// (2m-4)-fold repeated integral of the kernel collapsed to
  ///   int int w(p,t) w(p,t') K(t,t') dt dt',  w = (p-t)^{m-3}/(m-3)! (Up).
  /// Covariance is bilinear, so this equals the sample variance of
  /// Z_i(p) = int w(p,t) min(Q(t), X_i) dt, which is computed in closed form.
  double sigma_sq(int m, Direction dir, double p) const;
  Eigen::VectorXd sigma_sq(int m, Direction dir, const Grid& g) const;

 private:
  CovKernel(Scheme scheme, SortedSample first, SortedSample second);

  void integrated_clipped(int j, int m, Direction dir, double p, std::vector<double>& z) const;

  Scheme scheme_;
  SortedSample first_, second_;
  // Matched only: row -> position in the sorted column.
  std::vector<std::uint32_t> rank1_, rank2_;
  // upper_j[i] = #{k : X_k^j <= X_i^j}.
  std::vector<std::uint32_t> upper1_, upper2_;
};

/// Generic trapezoid evaluation of the collapsed double integral for any
/// kernel callable k(t, t'), on the nodes of `vgrid` inside the integration
/// range plus p itself.
template <typename Kernel>
double sigma_sq_quadrature(const Kernel& kernel, int m, Direction dir, double p, const Grid& vgrid) {
  if (m < 3) throw Error(Errc::UnsupportedDegree, "variance needs degree >= 3");
  if (!(p >= 0.0 && p <= 1.0)) throw Error(Errc::OutOfRange, "argument outside [0,1]");
  std::vector<double> nodes;
  const auto& pts = vgrid.points();
  if (dir == Direction::Up) {
    for (Eigen::Index i = 0; i < pts.size() && pts[i] < p; ++i) nodes.push_back(pts[i]);
    nodes.push_back(p);
  } else {
    nodes.push_back(p);
    for (Eigen::Index i = 0; i < pts.size(); ++i) {
      if (pts[i] > p) nodes.push_back(pts[i]);
    }
  }
  const auto count = static_cast<Eigen::Index>(nodes.size());
  if (count < 2) return 0.0;

  const double norm = detail::factorial(m - 3);
  Eigen::VectorXd a = Eigen::VectorXd::Zero(count);
  for (Eigen::Index i = 0; i + 1 < count; ++i) {
    const double half = 0.5 * (nodes[i + 1] - nodes[i]);
    a[i] += half;
    a[i + 1] += half;
  }
  for (Eigen::Index i = 0; i < count; ++i) {
    const double lag = dir == Direction::Up ? p - nodes[i] : nodes[i] - p;
    a[i] *= detail::ipow(lag, m - 3) / norm;
  }
  Eigen::MatrixXd k(count, count);
  for (Eigen::Index r = 0; r < count; ++r) {
    for (Eigen::Index c = r; c < count; ++c) {
      k(r, c) = kernel(nodes[r], nodes[c]);
      k(c, r) = k(r, c);
    }
  }
  return a.dot(k * a);
}

/// max{sigma^2, xi}^{1/2}, pointwise.
Eigen::VectorXd trim(const Eigen::Ref<const Eigen::VectorXd>& sigma_sq, double xi);

struct SigmaCurve {
  Grid grid;
  Eigen::VectorXd sigma_sq;
  Eigen::VectorXd vhat;
  double xi;
};

/// sigma^2 evaluated at the nodes of `vgrid`, linearly interpolated onto
/// `grid`, clamped at zero and trimmed by xi.
SigmaCurve sigma_curve(const CovKernel& kernel, int m, Direction dir, const Grid& grid, const Grid& vgrid,
                       double xi);

}  // namespace isd
