#include "isd/inference.hpp"

#include <omp.h>

#include <chrono>
#include <cmath>
#include <exception>

#include "isd/bootstrap.hpp"
#include "isd/error.hpp"
#include "isd/summation.hpp"
#include "pipeline.hpp"

namespace isd {

void validate(const TestConfig& cfg) {
  if (cfg.m < 3 || cfg.m > kMaxDegree) {
    throw Error(Errc::UnsupportedDegree, "test degree must lie in [3, " + std::to_string(kMaxDegree) + "]");
  }
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw Error(Errc::InvalidConfig, "alpha must lie in (0,1)");
  if (!(cfg.tau > 0.0)) throw Error(Errc::InvalidConfig, "tau must be positive or inf");
  if (!(cfg.xi > 0.0) || !std::isfinite(cfg.xi)) throw Error(Errc::NonPositiveXi, "xi must be positive");
  if (!(cfg.eta >= 0.0) || !std::isfinite(cfg.eta)) throw Error(Errc::InvalidConfig, "eta must be nonnegative");
  if (cfg.bootstrap < 1) throw Error(Errc::InvalidConfig, "bootstrap count must be positive");
  if (cfg.bootstrap > 0xFFFFFFFFu) throw Error(Errc::InvalidConfig, "bootstrap count too large");
  if (cfg.grid < 2 || cfg.vgrid < 2) throw Error(Errc::InvalidConfig, "grids need at least two points");
  if (cfg.threads < 0) throw Error(Errc::InvalidConfig, "thread count must be nonnegative");
}

namespace detail {

int resolve_threads(int requested) { return requested > 0 ? requested : omp_get_max_threads(); }

Prepared prepare(const SortedSample& first, const SortedSample& second, const PairedSample* pairs,
                 const TestConfig& cfg) {
  if (first.size() < 2 || second.size() < 2) {
    throw Error(Errc::EmptyInput, "each sample needs at least two observations");
  }
  Grid grid = Grid::uniform(cfg.grid);
  const CovKernel kernel = pairs ? CovKernel::matched(*pairs) : CovKernel::independent(first, second);
  const double t_n = kernel.scheme().t_n();

  const LambdaCurve l1(first, cfg.m, cfg.direction);
  const LambdaCurve l2(second, cfg.m, cfg.direction);
  Eigen::VectorXd phi = eval_on_grid(DifferenceCurve(l1, l2), grid);
  const double statistic = std::sqrt(t_n) * apply_functional(cfg.functional, phi, grid);

  const SigmaCurve sigma = sigma_curve(kernel, cfg.m, cfg.direction, grid, Grid::uniform(cfg.vgrid), cfg.xi);
  ContactSet contact = estimate_contact_set(phi, sigma.vhat, grid, t_n, cfg.tau);
  if (contact.count() == 0) throw Error(Errc::EmptyContactSet, "contact set has no members");

  std::optional<PairedSample> kept;
  if (pairs) kept = *pairs;
  return Prepared{grid, first, second, std::move(kept), t_n, std::move(phi), statistic, std::move(contact)};
}

namespace {

void cumulate(const std::vector<std::uint32_t>& w, std::vector<std::uint32_t>& cum) {
  cum.resize(w.size());
  std::uint32_t run = 0;
  for (std::size_t i = 0; i < w.size(); ++i) cum[i] = run += w[i];
}

double weighted_mean(const SortedSample& s, const std::vector<std::uint32_t>& w) {
  CompensatedSum acc;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] != 0) acc += static_cast<double>(w[i]) * s[i];
  }
  return acc.value() / static_cast<double>(s.size());
}

void sweep(const SortedSample& s, const std::vector<std::uint32_t>& w, std::vector<std::uint32_t>& cum,
           const TestConfig& cfg, const Grid& grid, std::vector<double>& out) {
  cumulate(w, cum);
  const StepView view{s.values(), cum, static_cast<std::uint32_t>(s.size()), weighted_mean(s, w)};
  out.resize(grid.size());
  lambda_sweep(view, cfg.m, cfg.direction, std::span<const double>(grid.points().data(), grid.size()), out);
}

}  // namespace

double bootstrap_replicate(const Prepared& prep, const TestConfig& cfg, const RngStream& rng,
                           std::uint32_t family, std::uint32_t replication, Workspace& ws) {
  if (prep.pairs) {
    auto engine = rng.substream(family, replication, StreamPurpose::FirstWeights);
    draw_weights_into(prep.pairs->size(), engine, ws.rows);
    ws.w1.assign(ws.rows.size(), 0u);
    ws.w2.assign(ws.rows.size(), 0u);
    const auto r1 = prep.pairs->left_rank();
    const auto r2 = prep.pairs->right_rank();
    for (std::size_t row = 0; row < ws.rows.size(); ++row) {
      ws.w1[r1[row]] = ws.rows[row];
      ws.w2[r2[row]] = ws.rows[row];
    }
  } else {
    auto e1 = rng.substream(family, replication, StreamPurpose::FirstWeights);
    auto e2 = rng.substream(family, replication, StreamPurpose::SecondWeights);
    draw_weights_into(prep.first.size(), e1, ws.w1);
    draw_weights_into(prep.second.size(), e2, ws.w2);
  }
  sweep(prep.first, ws.w1, ws.cum1, cfg, prep.grid, ws.curve1);
  sweep(prep.second, ws.w2, ws.cum2, cfg, prep.grid, ws.curve2);

  const auto size = static_cast<Eigen::Index>(prep.grid.size());
  const Eigen::Map<const Eigen::VectorXd> c1(ws.curve1.data(), size);
  const Eigen::Map<const Eigen::VectorXd> c2(ws.curve2.data(), size);
  ws.h.resize(size);
  ws.h.noalias() = std::sqrt(prep.t_n) * ((c2 - c1) - prep.phi);
  return apply_derivative(cfg.functional, ws.h, prep.contact, prep.grid);
}

std::vector<double> bootstrap_statistics(const Prepared& prep, const TestConfig& cfg, const RngStream& rng,
                                         int threads) {
  const auto count = static_cast<long>(cfg.bootstrap);
  std::vector<double> stats(cfg.bootstrap);
  std::exception_ptr failure;
#pragma omp parallel num_threads(resolve_threads(threads))
  {
    Workspace ws;
#pragma omp for schedule(static)
    for (long b = 0; b < count; ++b) {
      try {
        stats[static_cast<std::size_t>(b)] = bootstrap_replicate(prep, cfg, rng, 0, static_cast<std::uint32_t>(b), ws);
      } catch (...) {
#pragma omp critical(isd_bootstrap_failure)
        if (!failure) failure = std::current_exception();
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
  return stats;
}

TestResult decide(const Prepared& prep, const TestConfig& cfg, std::vector<double> stats) {
  TestResult r;
  r.statistic = prep.statistic;
  r.diagnostics.raw_critical_value = critical_value(stats, cfg.alpha);
  r.critical_value = cfg.eta > 0.0 ? std::max(r.diagnostics.raw_critical_value, cfg.eta)
                                   : r.diagnostics.raw_critical_value;
  r.reject = r.statistic > r.critical_value;
  r.p_value = p_value(stats, r.statistic);
  r.contact_fraction = prep.contact.fraction();
  r.t_n = prep.t_n;
  r.diagnostics.grid = cfg.grid;
  r.diagnostics.vgrid = cfg.vgrid;
  r.diagnostics.bootstrap = cfg.bootstrap;
  return r;
}

}  // namespace detail

namespace {

TestResult run(const SortedSample& first, const SortedSample& second, const PairedSample* pairs,
               const TestConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  validate(cfg);
  const auto prep = detail::prepare(first, second, pairs, cfg);
  auto stats = detail::bootstrap_statistics(prep, cfg, RngStream(cfg.seed), cfg.threads);
  TestResult r = detail::decide(prep, cfg, std::move(stats));
  r.diagnostics.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace

TestResult run_test(const SortedSample& first, const SortedSample& second, const TestConfig& cfg) {
  if (cfg.scheme != SchemeKind::Independent) {
    throw Error(Errc::SchemeMismatch, "matched scheme needs paired data");
  }
  return run(first, second, nullptr, cfg);
}

TestResult run_test(const PairedSample& pairs, const TestConfig& cfg) {
  if (cfg.scheme != SchemeKind::Matched) {
    throw Error(Errc::SchemeMismatch, "paired data given with the independent scheme");
  }
  return run(pairs.left(), pairs.right(), &pairs, cfg);
}

RankingMatrix pairwise_rank(const std::vector<std::pair<std::string, SortedSample>>& datasets,
                            const TestConfig& cfg) {
  if (datasets.size() < 2) throw Error(Errc::InvalidConfig, "ranking needs at least two datasets");
  const std::size_t k = datasets.size();
  RankingMatrix out;
  for (const auto& d : datasets) out.labels.push_back(d.first);
  out.relation.assign(k * k, Relation::None);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      PairOutcome pair{a, b, run_test(datasets[a].second, datasets[b].second, cfg),
                       run_test(datasets[b].second, datasets[a].second, cfg)};
      const bool first = pair.a_dominates_b.reject;
      const bool second = pair.b_dominates_a.reject;
      if (first && !second) {
        out.relation[a * k + b] = Relation::Less;
        out.relation[b * k + a] = Relation::Greater;
      } else if (second && !first) {
        out.relation[a * k + b] = Relation::Greater;
        out.relation[b * k + a] = Relation::Less;
      }
      out.pairs.push_back(std::move(pair));
    }
  }
  return out;
}

}  // namespace isd
