#include "isd/curves.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "isd/error.hpp"
#include "isd/summation.hpp"

namespace isd {

Grid::Grid(Eigen::VectorXd points) : points_(std::move(points)) {
  const Eigen::Index n = points_.size();
  if (n < 2 || points_[0] != 0.0 || points_[n - 1] != 1.0) {
    throw Error(Errc::OutOfRange, "grid must contain both 0 and 1");
  }
  for (Eigen::Index i = 1; i < n; ++i) {
    if (!(points_[i] > points_[i - 1])) throw Error(Errc::OutOfRange, "grid must be strictly increasing");
  }
}

Grid Grid::uniform(std::size_t size) {
  if (size < 2) throw Error(Errc::OutOfRange, "grid needs at least two points");
  Eigen::VectorXd pts(static_cast<Eigen::Index>(size));
  const double last = static_cast<double>(size - 1);
  for (std::size_t i = 0; i < size; ++i) pts[static_cast<Eigen::Index>(i)] = static_cast<double>(i) / last;
  return Grid(std::move(pts));
}

namespace detail {

void check_degree(int m, Direction dir) {
  if (m < 2 || m > kMaxDegree) {
    throw Error(Errc::UnsupportedDegree, "degree must lie in [2, " + std::to_string(kMaxDegree) + "]");
  }
  if (m == 2 && dir == Direction::Down) {
    throw Error(Errc::UnsupportedDegree, "downward curves need degree >= 3");
  }
}

namespace {

// Items are visited in "t-space": for Up t = p and items run upward; for Down
// t = 1 - p and items are mirrored, so both directions reduce to
//   S(t) = sum_i x_i [((t - lo_i/n)+)^k - ((t - hi_i/n)+)^k].
struct MirroredItem {
  double x;
  std::uint32_t lo, hi;
};

inline MirroredItem item_at(const StepView& q, Direction dir, std::size_t idx) {
  if (dir == Direction::Up) return {q.x[idx], q.lower(idx), q.upper(idx)};
  const std::size_t i = q.x.size() - 1 - idx;
  return {q.x[i], q.n - q.upper(i), q.n - q.lower(i)};
}

double tail_sum_point(const StepView& q, Direction dir, int k, double t) {
  const double n = q.n;
  CompensatedSum acc;
  for (std::size_t idx = 0; idx < q.x.size(); ++idx) {
    const MirroredItem it = item_at(q, dir, idx);
    const double a = it.lo / n;
    if (!(a < t)) break;
    if (it.hi == it.lo) continue;
    const double b = it.hi / n;
    const double alpha = t - a;
    if (b <= t) {
      acc += it.x * power_gap(alpha, t - b, (it.hi - it.lo) / n, k);
    } else {
      acc += it.x * ipow(alpha, k);
    }
  }
  return acc.value();
}

double finish(const StepView& q, int m, Direction dir, double t, double tail) {
  const int k = m - 1;
  if (dir == Direction::Up) return tail / factorial(k);
  return ipow(t, m - 2) * q.mean / factorial(m - 2) - tail / factorial(k);
}

}  // namespace

double lambda_point(const StepView& q, int m, Direction dir, double p) {
  check_degree(m, dir);
  if (!(p >= 0.0 && p <= 1.0)) throw Error(Errc::OutOfRange, "curve argument outside [0,1]");
  const double t = dir == Direction::Up ? p : 1.0 - p;
  return finish(q, m, dir, t, tail_sum_point(q, dir, m - 1, t));
}

void lambda_sweep(const StepView& q, int m, Direction dir, std::span<const double> grid,
                  std::span<double> out) {
  check_degree(m, dir);
  if (grid.size() != out.size()) throw Error(Errc::MisalignedInputs, "output length differs from grid");
  const int k = m - 1;
  const double n = q.n;
  const std::size_t items = q.x.size();
  const std::size_t g = grid.size();

  std::array<double, kMaxDegree + 1> binom{};
  binom[0] = 1.0;
  for (int j = 1; j <= k; ++j) binom[j] = binom[j - 1] * (k - j + 1) / j;

  // Completed items as a polynomial of degree k-1 in (t - center).
  std::array<double, kMaxDegree> coeff{};
  double center = 0.0;
  std::size_t idx = 0;

  for (std::size_t step = 0; step < g; ++step) {
    const std::size_t gi = dir == Direction::Up ? step : g - 1 - step;
    const double t = dir == Direction::Up ? grid[gi] : 1.0 - grid[gi];
    const double h = t - center;
    if (h != 0.0) {
      for (int i = 0; i + 1 < k; ++i) {
        for (int j = k - 2; j >= i; --j) coeff[j] += h * coeff[j + 1];
      }
      center = t;
    }
    for (; idx < items; ++idx) {
      const MirroredItem it = item_at(q, dir, idx);
      if (it.hi / n > t) break;
      if (it.hi == it.lo) continue;
      const double alpha = t - it.lo / n;
      const double beta = std::max(0.0, t - it.hi / n);
      const double diff = (it.hi - it.lo) / n;
      for (int j = 0; j < k; ++j) coeff[j] += it.x * binom[j] * power_gap(alpha, beta, diff, k - j);
    }
    double partial = 0.0;
    if (idx < items) {
      const MirroredItem it = item_at(q, dir, idx);
      const double a = it.lo / n;
      if (a < t) partial = it.x * ipow(t - a, k);
    }
    out[gi] = finish(q, m, dir, t, coeff[0] + partial);
  }
}

}  // namespace detail

LambdaCurve::LambdaCurve(SortedSample sample, int m, Direction dir)
    : base_(std::move(sample)), mean_(base_.mean()), m_(m), dir_(dir) {
  detail::check_degree(m, dir);
}

LambdaCurve::LambdaCurve(const WeightedSample& sample, int m, Direction dir)
    : base_(sample.base()),
      cumulative_(sample.cumulative().begin(), sample.cumulative().end()),
      mean_(sample.mean()),
      m_(m),
      dir_(dir) {
  detail::check_degree(m, dir);
}

detail::StepView LambdaCurve::view() const noexcept {
  return {base_.values(), cumulative_, static_cast<std::uint32_t>(base_.size()), mean_};
}

double LambdaCurve::operator()(double p) const { return detail::lambda_point(view(), m_, dir_, p); }

DifferenceCurve::DifferenceCurve(LambdaCurve first, LambdaCurve second)
    : first_(std::move(first)), second_(std::move(second)) {
  if (first_.degree() != second_.degree() || first_.direction() != second_.direction()) {
    throw Error(Errc::MisalignedInputs, "difference of curves with different degree or direction");
  }
}

Eigen::VectorXd eval_on_grid(const LambdaCurve& c, const Grid& g) {
  Eigen::VectorXd out(g.points().size());
  detail::lambda_sweep(c.view(), c.degree(), c.direction(),
                       std::span<const double>(g.points().data(), g.size()),
                       std::span<double>(out.data(), g.size()));
  return out;
}

Eigen::VectorXd eval_on_grid(const DifferenceCurve& d, const Grid& g) {
  return eval_on_grid(d.second(), g) - eval_on_grid(d.first(), g);
}

}  // namespace isd
