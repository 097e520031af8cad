#pragma once

#include <cmath>

namespace isd::detail {

// Neumaier compensated accumulator.
class CompensatedSum {
 public:
  void add(double v) noexcept {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double v) noexcept {
    add(v);
    return *this;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Snapped ceil/floor of n*p so that p = k/n rounded in floating point maps
// back onto knot k.
inline long knot_ceil(double p, long n) noexcept {
  const double np = p * static_cast<double>(n);
  return static_cast<long>(std::ceil(np - 1e-9 * (np > 1.0 ? np : 1.0)));
}

inline long knot_floor(double p, long n) noexcept {
  const double np = p * static_cast<double>(n);
  return static_cast<long>(std::floor(np + 1e-9 * (np > 1.0 ? np : 1.0)));
}

// (alpha^q - beta^q) for alpha >= beta >= 0, written as
// (alpha - beta) * sum alpha^r beta^(q-1-r) with the difference passed in
// directly so no cancellation occurs.
inline double power_gap(double alpha, double beta, double diff, int q) noexcept {
  if (q <= 0) return 0.0;
  // S_1 = 1, S_q = alpha * S_{q-1} + beta^{q-1}
  double acc = 1.0;
  double bp = 1.0;
  for (int r = 1; r < q; ++r) {
    bp *= beta;
    acc = alpha * acc + bp;
  }
  return diff * acc;
}

inline double ipow(double x, int q) noexcept {
  double r = 1.0;
  for (int i = 0; i < q; ++i) r *= x;
  return r;
}

inline double factorial(int k) noexcept {
  double r = 1.0;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

}  // namespace isd::detail
