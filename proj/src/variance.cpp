#include "isd/variance.hpp"

#include <algorithm>

namespace isd {

namespace {

std::vector<std::uint32_t> tie_upper(const SortedSample& s) {
  const auto v = s.values();
  std::vector<std::uint32_t> upper(v.size());
  std::size_t i = v.size();
  while (i > 0) {
    std::size_t j = i;
    while (j > 0 && v[j - 1] == v[i - 1]) --j;
    for (std::size_t k = j; k < i; ++k) upper[k] = static_cast<std::uint32_t>(i);
    i = j;
  }
  return upper;
}

double sample_variance(std::span<const double> z) {
  if (z.size() < 2) return 0.0;
  detail::CompensatedSum s;
  for (double v : z) s += v;
  const double mu = s.value() / static_cast<double>(z.size());
  detail::CompensatedSum ss;
  for (double v : z) ss += (v - mu) * (v - mu);
  return ss.value() / static_cast<double>(z.size() - 1);
}

template <typename A, typename B>
double covariance(std::size_t n, A&& first, B&& second) {
  if (n < 2) return 0.0;
  detail::CompensatedSum s1, s2;
  for (std::size_t i = 0; i < n; ++i) {
    s1 += first(i);
    s2 += second(i);
  }
  const double mu1 = s1.value() / static_cast<double>(n);
  const double mu2 = s2.value() / static_cast<double>(n);
  detail::CompensatedSum acc;
  for (std::size_t i = 0; i < n; ++i) acc += (first(i) - mu1) * (second(i) - mu2);
  return acc.value() / static_cast<double>(n - 1);
}

void check_level(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(Errc::OutOfRange, "argument outside [0,1]");
}

}  // namespace

Scheme Scheme::independent(std::size_t n1, std::size_t n2) {
  if (n1 == 0 || n2 == 0) throw Error(Errc::EmptyInput, "sample sizes must be positive");
  return Scheme(SchemeKind::Independent, n1, n2);
}

Scheme Scheme::matched(std::size_t n) {
  if (n == 0) throw Error(Errc::EmptyInput, "sample size must be positive");
  return Scheme(SchemeKind::Matched, n, n);
}

CovKernel::CovKernel(Scheme scheme, SortedSample first, SortedSample second)
    : scheme_(scheme),
      first_(std::move(first)),
      second_(std::move(second)),
      upper1_(tie_upper(first_)),
      upper2_(tie_upper(second_)) {}

CovKernel CovKernel::independent(SortedSample first, SortedSample second) {
  const Scheme scheme = Scheme::independent(first.size(), second.size());
  return CovKernel(scheme, std::move(first), std::move(second));
}

CovKernel CovKernel::matched(const PairedSample& pairs) {
  CovKernel k(Scheme::matched(pairs.size()), pairs.left(), pairs.right());
  k.rank1_.assign(pairs.left_rank().begin(), pairs.left_rank().end());
  k.rank2_.assign(pairs.right_rank().begin(), pairs.right_rank().end());
  return k;
}

double CovKernel::vv_cov(int j, int j2, double p, double p2) const {
  check_level(p);
  check_level(p2);
  if ((j != 1 && j != 2) || (j2 != 1 && j2 != 2)) throw Error(Errc::OutOfRange, "sample index must be 1 or 2");
  const SortedSample& a = sample(j);
  const SortedSample& b = sample(j2);
  const double qa = quantile(a, p);
  const double qb = quantile(b, p2);
  if (j == j2) {
    return covariance(
        a.size(), [&](std::size_t i) { return std::min(qa, a[i]); },
        [&](std::size_t i) { return std::min(qb, a[i]); });
  }
  if (scheme_.kind() != SchemeKind::Matched) {
    throw Error(Errc::CrossTermWithoutPairing, "cross-sample covariance needs matched pairs");
  }
  const auto& ra = j == 1 ? rank1_ : rank2_;
  const auto& rb = j2 == 1 ? rank1_ : rank2_;
  return covariance(
      ra.size(), [&](std::size_t row) { return std::min(qa, a[ra[row]]); },
      [&](std::size_t row) { return std::min(qb, b[rb[row]]); });
}

double CovKernel::operator()(double t, double t2) const {
  const double lambda = scheme_.lambda_hat();
  const double v11 = vv_cov(1, 1, t, t2);
  const double v22 = vv_cov(2, 2, t, t2);
  if (scheme_.kind() == SchemeKind::Independent) return (1.0 - lambda) * v11 + lambda * v22;
  const double cross = std::sqrt(lambda * (1.0 - lambda));
  return (1.0 - lambda) * v11 - cross * vv_cov(1, 2, t, t2) - cross * vv_cov(2, 1, t, t2) + lambda * v22;
}

Eigen::MatrixXd CovKernel::matrix(const Grid& g) const {
  const auto n = static_cast<Eigen::Index>(g.size());
  Eigen::MatrixXd k(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = r; c < n; ++c) {
      k(r, c) = (*this)(g[static_cast<std::size_t>(r)], g[static_cast<std::size_t>(c)]);
      k(c, r) = k(r, c);
    }
  }
  return k;
}

// z[i] = (m-2)! * int w(p,t) min(Q(t), X_i) dt for the i-th order statistic.
void CovKernel::integrated_clipped(int j, int m, Direction dir, double p, std::vector<double>& z) const {
  const SortedSample& s = sample(j);
  const auto& upper = j == 1 ? upper1_ : upper2_;
  const auto x = s.values();
  const long n = static_cast<long>(x.size());
  const double nd = static_cast<double>(n);
  const int e = m - 2;
  z.resize(x.size());
  std::vector<double> prefix(x.size() + 1, 0.0);

  if (dir == Direction::Up) {
    const long done = std::clamp(detail::knot_floor(p, n), 0L, n);
    detail::CompensatedSum acc;
    for (long i = 0; i < done; ++i) {
      const double alpha = p - i / nd;
      const double beta = std::max(0.0, p - (i + 1) / nd);
      acc += x[i] * detail::power_gap(alpha, beta, 1.0 / nd, e);
      prefix[i + 1] = acc.value();
    }
    double whole = prefix[done];
    if (done < n && p > done / nd) whole += x[done] * detail::ipow(p - done / nd, e);
    for (long k = 0; k < n; ++k) {
      const long u = upper[k];
      z[k] = u <= done ? prefix[u] + x[k] * detail::ipow(std::max(0.0, p - u / nd), e) : whole;
    }
  } else {
    const long first = std::clamp(detail::knot_floor(p, n), 0L, n);
    detail::CompensatedSum acc;
    for (long i = first; i < n; ++i) {
      const double a = i / nd;
      const double b = (i + 1) / nd;
      const double term = a >= p ? detail::power_gap(b - p, a - p, 1.0 / nd, e) : detail::ipow(b - p, e);
      acc += x[i] * term;
      prefix[i + 1] = acc.value();
    }
    const double tail = detail::ipow(1.0 - p, e);
    for (long k = 0; k < n; ++k) {
      const long u = upper[k];
      if (u <= first) {
        z[k] = x[k] * tail;
      } else {
        const double lag = u / nd - p;
        z[k] = prefix[u] + x[k] * detail::power_gap(1.0 - p, lag, 1.0 - u / nd, e);
      }
    }
  }
}

double CovKernel::sigma_sq(int m, Direction dir, double p) const {
  if (m < 3 || m > kMaxDegree) throw Error(Errc::UnsupportedDegree, "variance needs degree in [3, 12]");
  check_level(p);
  std::vector<double> z1, z2;
  integrated_clipped(1, m, dir, p, z1);
  integrated_clipped(2, m, dir, p, z2);
  const double norm = detail::factorial(m - 2);
  const double lambda = scheme_.lambda_hat();
  double var = 0.0;
  if (scheme_.kind() == SchemeKind::Independent) {
    var = (1.0 - lambda) * sample_variance(z1) + lambda * sample_variance(z2);
  } else {
    const double w1 = std::sqrt(1.0 - lambda);
    const double w2 = std::sqrt(lambda);
    std::vector<double> d(rank1_.size());
    for (std::size_t row = 0; row < d.size(); ++row) d[row] = w1 * z1[rank1_[row]] - w2 * z2[rank2_[row]];
    var = sample_variance(d);
  }
  return var / (norm * norm);
}

Eigen::VectorXd CovKernel::sigma_sq(int m, Direction dir, const Grid& g) const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(g.size()));
  for (std::size_t i = 0; i < g.size(); ++i) out[static_cast<Eigen::Index>(i)] = sigma_sq(m, dir, g[i]);
  return out;
}

Eigen::VectorXd trim(const Eigen::Ref<const Eigen::VectorXd>& sigma_sq, double xi) {
  if (!(xi > 0.0)) throw Error(Errc::NonPositiveXi, "trimming floor must be positive");
  return sigma_sq.array().max(xi).sqrt().matrix();
}

SigmaCurve sigma_curve(const CovKernel& kernel, int m, Direction dir, const Grid& grid, const Grid& vgrid,
                       double xi) {
  const Eigen::VectorXd coarse = kernel.sigma_sq(m, dir, vgrid);
  const auto& vp = vgrid.points();
  Eigen::VectorXd fine(static_cast<Eigen::Index>(grid.size()));
  Eigen::Index seg = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double p = grid[i];
    while (seg + 2 < vp.size() && vp[seg + 1] < p) ++seg;
    const double lo = vp[seg], hi = vp[seg + 1];
    const double w = std::clamp((p - lo) / (hi - lo), 0.0, 1.0);
    const double value = (1.0 - w) * coarse[seg] + w * coarse[seg + 1];
    fine[static_cast<Eigen::Index>(i)] = std::max(value, 0.0);
  }
  Eigen::VectorXd vhat = trim(fine, xi);
  return SigmaCurve{grid, std::move(fine), std::move(vhat), xi};
}

}  // namespace isd
