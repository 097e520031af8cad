#include "isd/montecarlo.hpp"

#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <tuple>

#include "isd/bootstrap.hpp"
#include "isd/error.hpp"
#include "pipeline.hpp"

namespace isd {

namespace {

void check(const SimSpec& spec) {
  validate(spec.dgp1);
  validate(spec.dgp2);
  validate(spec.cfg);
  if (spec.cfg.scheme != SchemeKind::Independent) {
    throw Error(Errc::SchemeMismatch, "simulations draw independent samples");
  }
  if (spec.replications < 1 || spec.replications > 0xFFFFFFFFu) {
    throw Error(Errc::InvalidConfig, "replications must be positive");
  }
  if (spec.n1 < 2 || spec.n2 < 2) throw Error(Errc::InvalidConfig, "sample sizes must be at least two");
}

template <typename Body>
void parallel_replications(std::size_t count, int threads, Body body) {
  const auto total = static_cast<long>(count);
  std::exception_ptr failure;
#pragma omp parallel num_threads(detail::resolve_threads(threads))
  {
    detail::Workspace ws;
#pragma omp for schedule(dynamic, 4)
    for (long r = 0; r < total; ++r) {
      try {
        body(static_cast<std::uint32_t>(r), ws);
      } catch (...) {
#pragma omp critical(isd_sim_failure)
        if (!failure) failure = std::current_exception();
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

SimResult run_cell(const SimSpec& spec) {
  const auto start = std::chrono::steady_clock::now();
  check(spec);
  const RngStream master(spec.cfg.seed);
  const std::size_t reps = spec.replications;
  std::vector<unsigned char> rejected(reps, 0);
  SimResult out;
  out.spec = spec;
  out.critical_value = std::numeric_limits<double>::quiet_NaN();

  auto draw_data = [&](std::uint32_t r) {
    auto e1 = master.substream(spec.family, r, StreamPurpose::FirstSample);
    auto e2 = master.substream(spec.family, r, StreamPurpose::SecondSample);
    SortedSample s1 = dp_sample(spec.dgp1, spec.n1, e1);
    SortedSample s2 = dp_sample(spec.dgp2, spec.n2, e2);
    return std::pair{std::move(s1), std::move(s2)};
  };

  if (spec.mode == SimMode::Full) {
    parallel_replications(reps, spec.cfg.threads, [&](std::uint32_t r, detail::Workspace&) {
      const auto [s1, s2] = draw_data(r);
      const auto prep = detail::prepare(s1, s2, nullptr, spec.cfg);
      auto stats = detail::bootstrap_statistics(prep, spec.cfg, RngStream(master.derive(spec.family, r)), 1);
      rejected[r] = detail::decide(prep, spec.cfg, std::move(stats)).reject ? 1 : 0;
    });
  } else {
    std::vector<double> observed(reps), boot(reps);
    parallel_replications(reps, spec.cfg.threads, [&](std::uint32_t r, detail::Workspace& ws) {
      const auto [s1, s2] = draw_data(r);
      const auto prep = detail::prepare(s1, s2, nullptr, spec.cfg);
      observed[r] = prep.statistic;
      boot[r] = detail::bootstrap_replicate(prep, spec.cfg, master, spec.family, r, ws);
    });
    double c = critical_value(boot, spec.cfg.alpha);
    if (spec.cfg.eta > 0.0) c = std::max(c, spec.cfg.eta);
    out.critical_value = c;
    for (std::size_t r = 0; r < reps; ++r) rejected[r] = observed[r] > c ? 1 : 0;
  }

  for (const auto flag : rejected) out.rejections += flag;
  out.rejection_rate = static_cast<double>(out.rejections) / static_cast<double>(reps);
  out.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

void assign_families(std::vector<SimSpec>& cells) {
  using Design = std::tuple<double, double, double, double, double, double, std::size_t, std::size_t>;
  std::vector<Design> seen;
  for (auto& cell : cells) {
    const Design d{cell.dgp1.alpha, cell.dgp1.beta, cell.dgp1.scale, cell.dgp2.alpha,
                   cell.dgp2.beta,  cell.dgp2.scale, cell.n1,        cell.n2};
    std::size_t id = 0;
    while (id < seen.size() && seen[id] != d) ++id;
    if (id == seen.size()) seen.push_back(d);
    cell.family = static_cast<std::uint32_t>(id);
  }
}

std::vector<SimResult> run_table(std::vector<SimSpec> cells) {
  if (cells.empty()) throw Error(Errc::InvalidConfig, "simulation table has no cells");
  assign_families(cells);
  std::vector<SimResult> out;
  out.reserve(cells.size());
  for (const auto& cell : cells) out.push_back(run_cell(cell));
  return out;
}

}  // namespace isd
