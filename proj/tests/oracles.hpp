#pragma once

// Independent reference implementations used only by the tests. None of them
// share code with the library: quantiles, integrals and covariances are
// recomputed from first principles by brute force.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

inline double simpson_step(const std::function<double(double)>& f, double a, double b, double fa, double fm,
                           double fb, double whole, double rel, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  const double scale = std::abs(left) + std::abs(right);
  if (depth <= 0 || std::abs(delta) <= 15.0 * rel * scale || scale == 0.0) return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, rel, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, rel, depth - 1);
}

/// Adaptive Simpson quadrature with Richardson correction; `rel` bounds the
/// local error relative to the local magnitude.
inline double simpson(const std::function<double(double)>& f, double a, double b, double rel = 1e-13,
                      int depth = 30) {
  if (b <= a) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, b, fa, fm, fb, whole, rel, depth);
}

/// Step quantile of a sorted sample with integer multiplicities: the value of
/// the first item whose cumulative weight reaches s * n. Only evaluated away
/// from the knots.
struct StepQuantile {
  std::vector<double> x;
  std::vector<double> knots;  // 0 = k_0 < k_1 < ... < k_r = 1, one piece per positive-weight item
  std::vector<double> piece_value;

  StepQuantile(std::vector<double> sorted, std::vector<std::uint32_t> weights = {}) : x(std::move(sorted)) {
    if (weights.empty()) weights.assign(x.size(), 1u);
    double n = 0;
    for (auto w : weights) n += w;
    knots.push_back(0.0);
    double run = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (weights[i] == 0) continue;
      run += weights[i];
      knots.push_back(run / n);
      piece_value.push_back(x[i]);
    }
    knots.back() = 1.0;
  }

  std::size_t piece(double s) const {
    const auto it = std::upper_bound(knots.begin(), knots.end(), s);
    const auto idx = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - knots.begin() - 1, 0));
    return std::min(idx, piece_value.size() - 1);
  }

  double operator()(double s) const { return piece_value[piece(s)]; }
};

/// The degree-m curve as a literal repeated integral of the step quantile:
/// L2(p) = int_0^p Q, then Up: L_k(p) = int_0^p L_{k-1}, Down: L_k(p) = int_p^1 L_{k-1}.
/// Each level is integrated piece by piece between quantile knots with
/// adaptive Simpson, with running totals at the knots.
class RepeatedIntegral {
 public:
  RepeatedIntegral(const StepQuantile& q, int m, bool up) : q_(q), m_(m), up_(up) {
    const std::size_t r = q.knots.size();
    at_knots_.assign(static_cast<std::size_t>(m + 1), std::vector<double>(r, 0.0));
    // Level 2 is always a forward integral from 0.
    for (std::size_t j = 0; j + 1 < r; ++j) {
      at_knots_[2][j + 1] = at_knots_[2][j] + piece_integral(2, j, q.knots[j], q.knots[j + 1]);
    }
    for (int k = 3; k <= m; ++k) {
      if (up) {
        for (std::size_t j = 0; j + 1 < r; ++j) {
          at_knots_[k][j + 1] = at_knots_[k][j] + piece_integral(k, j, q.knots[j], q.knots[j + 1]);
        }
      } else {
        for (std::size_t j = r - 1; j > 0; --j) {
          at_knots_[k][j - 1] = at_knots_[k][j] + piece_integral(k, j - 1, q.knots[j - 1], q.knots[j]);
        }
      }
    }
  }

  double operator()(double p) const { return level(m_, p); }

 private:
  // Value of level k at p.
  double level(int k, double p) const {
    if (k == 1) return q_(p);
    std::size_t j = q_.piece(p);
    const double lo = q_.knots[j], hi = q_.knots[j + 1];
    if (k == 2 || up_) return at_knots_[k][j] + piece_integral(k, j, lo, p);
    return at_knots_[k][j + 1] + piece_integral(k, j, p, hi);
  }

  // Integral over [a, b] (inside piece j) of the integrand of level k.
  double piece_integral(int k, std::size_t j, double a, double b) const {
    if (b <= a) return 0.0;
    const double lo = q_.knots[j], hi = q_.knots[j + 1];
    const auto inner = [&](double s) {
      s = std::clamp(s, lo, hi);
      if (k - 1 == 1) return q_.piece_value[j];
      const int kk = k - 1;
      if (kk == 2 || up_) return at_knots_[kk][j] + piece_integral(kk, j, lo, s);
      return at_knots_[kk][j + 1] + piece_integral(kk, j, s, hi);
    };
    return simpson(inner, a, b);
  }

  const StepQuantile& q_;
  int m_;
  bool up_;
  std::vector<std::vector<double>> at_knots_;
};

/// Variance of the degree-m curve computed from its raw nested definition.
/// The covariance kernel of the clipped series is averaged over each of
/// `cells` equal cells; Cov(L_k(a), L_k(b)) is then built level by level as a
/// 2-D repeated integral (cell sums on the first level, trapezoid sums on
/// later ones). Returns the covariance on the lattice of cell boundaries.
class NestedVariance {
 public:
  // clipped[j](i, c): cell-c average of min(Q_j(t), X_i^j); mix holds the scheme weights.
  NestedVariance(const std::vector<Eigen::MatrixXd>& clipped, const std::vector<double>& mix, int cells)
      : cells_(cells) {
    const double h = 1.0 / cells;
    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(cells, cells);
    for (std::size_t j = 0; j < clipped.size(); ++j) {
      Eigen::MatrixXd c = clipped[j];
      c.rowwise() -= c.colwise().mean();
      k.noalias() += mix[j] / static_cast<double>(c.rows() - 1) * (c.transpose() * c);
    }
    kernel_ = k;
    h_ = h;
  }

  // Matched pairs: one centered combined series per row.
  static NestedVariance matched(const Eigen::MatrixXd& combined, int cells) {
    return NestedVariance({combined}, {1.0}, cells);
  }

  Eigen::MatrixXd level_covariance(int m, bool up) const {
    const int n = cells_;
    // Level 3: 2-D prefix sums of midpoint values, on the (n+1)^2 boundary lattice.
    Eigen::MatrixXd cur = Eigen::MatrixXd::Zero(n + 1, n + 1);
    if (up) {
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          cur(a + 1, b + 1) = kernel_(a, b) * h_ * h_ + cur(a, b + 1) + cur(a + 1, b) - cur(a, b);
    } else {
      for (int a = n - 1; a >= 0; --a)
        for (int b = n - 1; b >= 0; --b)
          cur(a, b) = kernel_(a, b) * h_ * h_ + cur(a + 1, b) + cur(a, b + 1) - cur(a + 1, b + 1);
    }
    for (int level = 4; level <= m; ++level) {
      Eigen::MatrixXd next = Eigen::MatrixXd::Zero(n + 1, n + 1);
      auto cell = [&](int a, int b) {
        return 0.25 * h_ * h_ * (cur(a, b) + cur(a + 1, b) + cur(a, b + 1) + cur(a + 1, b + 1));
      };
      if (up) {
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b)
            next(a + 1, b + 1) = cell(a, b) + next(a, b + 1) + next(a + 1, b) - next(a, b);
      } else {
        for (int a = n - 1; a >= 0; --a)
          for (int b = n - 1; b >= 0; --b)
            next(a, b) = cell(a, b) + next(a + 1, b) + next(a, b + 1) - next(a + 1, b + 1);
      }
      cur = std::move(next);
    }
    return cur;
  }

 private:
  int cells_;
  double h_ = 0.0;
  Eigen::MatrixXd kernel_;
};

/// Cell averages of min(Q(t), X_i) over [c/cells, (c+1)/cells] for all rows i,
/// with Q the unweighted step quantile. The average is taken piece by piece
/// over the quantile knots k/n falling inside each cell.
inline Eigen::MatrixXd clipped_series(const std::vector<double>& rows, int cells) {
  std::vector<double> sorted = rows;
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<Eigen::Index>(rows.size());
  const double nd = static_cast<double>(n);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, cells);
  for (int c = 0; c < cells; ++c) {
    const double lo = static_cast<double>(c) / cells, hi = static_cast<double>(c + 1) / cells;
    auto k = static_cast<std::size_t>(std::floor(lo * nd));
    for (; k < sorted.size() && static_cast<double>(k) / nd < hi; ++k) {
      const double overlap = std::min(hi, static_cast<double>(k + 1) / nd) - std::max(lo, static_cast<double>(k) / nd);
      if (overlap <= 0.0) continue;
      for (Eigen::Index i = 0; i < n; ++i) {
        out(i, c) += overlap * cells * std::min(sorted[k], rows[static_cast<std::size_t>(i)]);
      }
    }
  }
  return out;
}

}  // namespace oracle
