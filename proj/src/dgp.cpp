#include "isd/dgp.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "isd/error.hpp"

namespace isd {

void validate(const DoubleParetoParams& params) {
  if (!(params.alpha > 0.0) || !(params.beta > 0.0) || !(params.scale > 0.0) || !std::isfinite(params.alpha) ||
      !std::isfinite(params.beta) || !std::isfinite(params.scale)) {
    throw Error(Errc::InvalidConfig, "double Pareto parameters must be positive and finite");
  }
}

std::optional<std::string> moment_warning(const DoubleParetoParams& params) {
  if (params.alpha <= 2.0) {
    std::ostringstream os;
    os << "dP(" << params.alpha << ", " << params.beta
       << ") has no finite (2+eps)-th moment; asymptotic size control is not guaranteed";
    return os.str();
  }
  return std::nullopt;
}

double dp_pdf(const DoubleParetoParams& params, double x) {
  validate(params);
  if (x < 0.0) throw Error(Errc::NegativeX, "density evaluated below zero");
  const double a = params.alpha, b = params.beta, M = params.scale;
  const double c = a * b / (a + b);
  if (x >= M) return c * std::pow(M, a) * std::pow(x, -a - 1.0);
  return c * std::pow(M, -b) * std::pow(x, b - 1.0);
}

double dp_cdf(const DoubleParetoParams& params, double x) {
  validate(params);
  if (x < 0.0) throw Error(Errc::NegativeX, "CDF evaluated below zero");
  const double a = params.alpha, b = params.beta, M = params.scale;
  if (x < M) return a / (a + b) * std::pow(x / M, b);
  return a / (a + b) + b / (a + b) * -std::expm1(-a * std::log(x / M));
}

double dp_quantile(const DoubleParetoParams& params, double u) {
  validate(params);
  if (!(u >= 0.0 && u < 1.0)) throw Error(Errc::OutOfRange, "quantile level must lie in [0,1)");
  const double a = params.alpha, b = params.beta, M = params.scale;
  const double split = a / (a + b);
  if (u <= split) return M * std::pow(u * (a + b) / a, 1.0 / b);
  return M * std::pow((1.0 - u) * (a + b) / b, -1.0 / a);
}

double dp_mean(const DoubleParetoParams& params) {
  validate(params);
  if (params.alpha <= 1.0) return std::numeric_limits<double>::infinity();
  return params.alpha * params.beta * params.scale / ((params.alpha - 1.0) * (params.beta + 1.0));
}

SortedSample dp_sample(const DoubleParetoParams& params, std::size_t n, Philox4x32& engine) {
  validate(params);
  if (n == 0) throw Error(Errc::EmptyInput, "sample size must be positive");
  std::vector<double> draws(n);
  for (auto& x : draws) x = dp_quantile(params, engine.uniform01());
  return make_sample(draws);
}

}  // namespace isd
