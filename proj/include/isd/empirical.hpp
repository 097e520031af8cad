#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace isd {

/// Ascending, validated list of nonnegative observations. Storage is shared
/// and immutable, so copies are cheap.
class SortedSample {
 public:
  std::span<const double> values() const noexcept { return *values_; }
  std::size_t size() const noexcept { return values_->size(); }
  double operator[](std::size_t i) const noexcept { return (*values_)[i]; }
  double min() const noexcept { return values_->front(); }
  double max() const noexcept { return values_->back(); }
  double mean() const noexcept { return mean_; }

  /// Every observation multiplied by c > 0.
  SortedSample scaled(double c) const;

 private:
  friend SortedSample make_sample(std::span<const double> raw);
  explicit SortedSample(std::vector<double> sorted);

  std::shared_ptr<const std::vector<double>> values_;
  double mean_ = 0.0;
};

/// Sorts and validates raw observations. Throws EmptyInput, NonFiniteValue
/// or NegativeValue.
SortedSample make_sample(std::span<const double> raw);

/// A sorted sample reweighted by integer multiplicities that sum to n, i.e.
/// a multinomial bootstrap resample.
class WeightedSample {
 public:
  WeightedSample(SortedSample base, std::vector<std::uint32_t> weights);

  const SortedSample& base() const noexcept { return base_; }
  std::span<const std::uint32_t> weights() const noexcept { return weights_; }
  /// cumulative()[i] = weights[0] + ... + weights[i].
  std::span<const std::uint32_t> cumulative() const noexcept { return cumulative_; }
  std::size_t size() const noexcept { return base_.size(); }
  double mean() const noexcept { return mean_; }

 private:
  SortedSample base_;
  std::vector<std::uint32_t> weights_;
  std::vector<std::uint32_t> cumulative_;
  double mean_ = 0.0;
};

/// Two columns observed on the same rows. Row order is kept so the pairs
/// (X_i^1, X_i^2) stay recoverable after each column is sorted.
class PairedSample {
 public:
  PairedSample(std::span<const double> left, std::span<const double> right);

  std::size_t size() const noexcept { return left_raw_.size(); }
  std::span<const double> left_rows() const noexcept { return left_raw_; }
  std::span<const double> right_rows() const noexcept { return right_raw_; }
  const SortedSample& left() const noexcept { return left_; }
  const SortedSample& right() const noexcept { return right_; }
  /// Position of each row inside the sorted column.
  std::span<const std::uint32_t> left_rank() const noexcept { return left_rank_; }
  std::span<const std::uint32_t> right_rank() const noexcept { return right_rank_; }

 private:
  std::vector<double> left_raw_, right_raw_;
  SortedSample left_, right_;
  std::vector<std::uint32_t> left_rank_, right_rank_;
};

double ecdf(const SortedSample& s, double x) noexcept;
double ecdf(const WeightedSample& s, double x) noexcept;

/// Q(p) = inf{x : F(x) >= p}; Q(0) is the minimum observation.
double quantile(const SortedSample& s, double p);
double quantile(const WeightedSample& s, double p);

inline double mean(const SortedSample& s) noexcept { return s.mean(); }
inline double mean(const WeightedSample& s) noexcept { return s.mean(); }

}  // namespace isd
