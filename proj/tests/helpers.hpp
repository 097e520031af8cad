#pragma once

#include <cstdint>
#include <vector>

#include "isd/dgp.hpp"
#include "isd/empirical.hpp"
#include "isd/rng.hpp"

namespace testing {

inline isd::Philox4x32 engine(std::uint64_t seed, std::uint32_t salt = 0) {
  return isd::RngStream(seed).substream(0xABCDu, salt, isd::StreamPurpose::FirstSample);
}

inline std::vector<double> dp_values(double alpha, double beta, std::size_t n, std::uint64_t seed,
                                     std::uint32_t salt = 0) {
  auto e = engine(seed, salt);
  const auto s = isd::dp_sample({alpha, beta}, n, e);
  return {s.values().begin(), s.values().end()};
}

inline isd::SortedSample dp(double alpha, double beta, std::size_t n, std::uint64_t seed, std::uint32_t salt = 0) {
  auto e = engine(seed, salt);
  return isd::dp_sample({alpha, beta}, n, e);
}

inline isd::SortedSample sample(const std::vector<double>& v) { return isd::make_sample(v); }

}  // namespace testing

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <ostream>

namespace testing {

/// Relative comparison |a - b| <= rel * max(|a|, |b|) + abs. doctest's Approx
/// silently adds an absolute slack of `epsilon`, which hides errors in small values.
struct Near {
  double value;
  double rel;
  double abs;
};

inline Near near(double value, double rel = 1e-12, double abs = 0.0) { return {value, rel, abs}; }

inline bool operator==(double lhs, const Near& r) {
  return std::abs(lhs - r.value) <= r.rel * std::max(std::abs(lhs), std::abs(r.value)) + r.abs;
}

inline std::ostream& operator<<(std::ostream& os, const Near& r) {
  return os << "near(" << doctest::toString(r.value) << ", rel " << r.rel << ")";
}

}  // namespace testing
