#include "isd/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "isd/error.hpp"
#include "isd/summation.hpp"

namespace isd {

namespace {

void validate(std::span<const double> raw) {
  if (raw.empty()) throw Error(Errc::EmptyInput, "sample has no observations");
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!std::isfinite(raw[i])) {
      throw Error(Errc::NonFiniteValue, "observation " + std::to_string(i) + " is not finite");
    }
    if (raw[i] < 0.0) {
      throw Error(Errc::NegativeValue, "observation " + std::to_string(i) + " is negative");
    }
  }
}

std::vector<std::uint32_t> ranks_of(std::span<const double> raw) {
  std::vector<std::uint32_t> order(raw.size());
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return raw[a] < raw[b]; });
  std::vector<std::uint32_t> rank(raw.size());
  for (std::uint32_t pos = 0; pos < order.size(); ++pos) rank[order[pos]] = pos;
  return rank;
}

}  // namespace

SortedSample::SortedSample(std::vector<double> sorted) {
  detail::CompensatedSum acc;
  for (double v : sorted) acc += v;
  mean_ = acc.value() / static_cast<double>(sorted.size());
  values_ = std::make_shared<const std::vector<double>>(std::move(sorted));
}

SortedSample SortedSample::scaled(double c) const {
  if (!(c > 0.0) || !std::isfinite(c)) throw Error(Errc::OutOfRange, "scale factor must be positive");
  std::vector<double> v(values_->begin(), values_->end());
  for (double& x : v) x *= c;
  return SortedSample(std::move(v));
}

SortedSample make_sample(std::span<const double> raw) {
  validate(raw);
  std::vector<double> v(raw.begin(), raw.end());
  std::stable_sort(v.begin(), v.end());
  return SortedSample(std::move(v));
}

WeightedSample::WeightedSample(SortedSample base, std::vector<std::uint32_t> weights)
    : base_(std::move(base)), weights_(std::move(weights)) {
  if (weights_.size() != base_.size()) {
    throw Error(Errc::WeightMisalignment, "weight vector length differs from sample size");
  }
  cumulative_.resize(weights_.size());
  std::uint64_t total = 0;
  detail::CompensatedSum acc;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    total += weights_[i];
    cumulative_[i] = static_cast<std::uint32_t>(total);
    if (weights_[i] != 0) acc += static_cast<double>(weights_[i]) * base_[i];
  }
  if (total != base_.size()) {
    throw Error(Errc::WeightMisalignment, "weights must sum to the sample size");
  }
  mean_ = acc.value() / static_cast<double>(base_.size());
}

PairedSample::PairedSample(std::span<const double> left, std::span<const double> right)
    : left_raw_(left.begin(), left.end()),
      right_raw_(right.begin(), right.end()),
      left_(make_sample(left)),
      right_(make_sample(right)) {
  if (left.size() != right.size()) {
    throw Error(Errc::MisalignedInputs, "paired columns have different lengths");
  }
  left_rank_ = ranks_of(left_raw_);
  right_rank_ = ranks_of(right_raw_);
}

double ecdf(const SortedSample& s, double x) noexcept {
  const auto v = s.values();
  const auto count = std::upper_bound(v.begin(), v.end(), x) - v.begin();
  return static_cast<double>(count) / static_cast<double>(v.size());
}

double ecdf(const WeightedSample& s, double x) noexcept {
  const auto v = s.base().values();
  const auto count = std::upper_bound(v.begin(), v.end(), x) - v.begin();
  if (count == 0) return 0.0;
  return static_cast<double>(s.cumulative()[count - 1]) / static_cast<double>(v.size());
}

double quantile(const SortedSample& s, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(Errc::OutOfRange, "quantile level outside [0,1]");
  const long n = static_cast<long>(s.size());
  const long rank = std::clamp(detail::knot_ceil(p, n), 1L, n);
  return s[static_cast<std::size_t>(rank - 1)];
}

double quantile(const WeightedSample& s, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(Errc::OutOfRange, "quantile level outside [0,1]");
  const long n = static_cast<long>(s.size());
  const auto cum = s.cumulative();
  const std::uint32_t rank = static_cast<std::uint32_t>(std::clamp(detail::knot_ceil(p, n), 1L, n));
  // smallest i with cum[i] >= rank
  const auto it = std::lower_bound(cum.begin(), cum.end(), rank);
  return s.base()[static_cast<std::size_t>(it - cum.begin())];
}

}  // namespace isd
