#include <doctest.h>

#include <numeric>

#include "helpers.hpp"
#include "isd/bootstrap.hpp"
#include "isd/error.hpp"

using namespace isd;

TEST_SUITE("bootstrap") {
  TEST_CASE("multinomial weights") {
    auto e = testing::engine(1);
    CHECK(draw_weights(1, e) == std::vector<std::uint32_t>{1});
    for (std::size_t n : {2u, 3u, 10u, 999u}) {
      const auto w = draw_weights(n, e);
      CHECK(w.size() == n);
      CHECK(std::accumulate(w.begin(), w.end(), 0u) == n);
    }
    auto a = testing::engine(2), b = testing::engine(2);
    CHECK(draw_weights(3, a) == draw_weights(3, b));
    CHECK_THROWS_AS(draw_weights(0, a), Error);
  }

  TEST_CASE("weight marginals have mean one") {
    const std::size_t n = 100, reps = 10000;
    std::vector<double> total(n, 0.0);
    const RngStream rng(3);
    for (std::uint32_t r = 0; r < reps; ++r) {
      const auto d = draw_independent(n, n, rng, 0, r);
      for (std::size_t i = 0; i < n; ++i) total[i] += d.first[i];
    }
    const double se = std::sqrt((1.0 - 1.0 / n) / reps);
    for (double t : total) CHECK(std::abs(t / reps - 1.0) < 4 * se);
  }

  TEST_CASE("draws depend only on their keys") {
    const RngStream rng(9);
    const auto a = draw_independent(50, 70, rng, 2, 11);
    const auto b = draw_independent(50, 70, rng, 2, 11);
    CHECK(a.first == b.first);
    CHECK(a.second == b.second);
    CHECK(a.first != draw_independent(50, 70, rng, 2, 12).first);
  }

  TEST_CASE("matched draws share one row vector") {
    const std::vector<double> left{5, 1, 4, 2, 3}, right{0.1, 0.5, 0.2, 0.4, 0.3};
    const PairedSample pairs(left, right);
    const RngStream rng(4);
    for (std::uint32_t r = 0; r < 20; ++r) {
      const auto d = draw_matched(pairs, rng, 0, r);
      for (std::size_t row = 0; row < pairs.size(); ++row) {
        CHECK(d.first[pairs.left_rank()[row]] == d.rows[row]);
        CHECK(d.second[pairs.right_rank()[row]] == d.rows[row]);
      }
      const auto curve = bootstrap_diff_curve(pairs.left(), pairs.right(), d, 3, Direction::Up);
      CHECK(curve.first().mean() == testing::near(
                                        [&] {
                                          double s = 0;
                                          for (std::size_t row = 0; row < 5; ++row) s += d.rows[row] * left[row];
                                          return s / 5;
                                        }(),
                                        1e-14));
    }
  }

  TEST_CASE("bootstrap difference curves") {
    const auto s1 = testing::dp(3, 2, 20, 5), s2 = testing::dp(3, 2, 30, 6);
    BootstrapDraw unit{std::vector<std::uint32_t>(20, 1u), std::vector<std::uint32_t>(30, 1u), {}};
    const auto star = bootstrap_diff_curve(s1, s2, unit, 3, Direction::Up);
    const DifferenceCurve hat(LambdaCurve(s1, 3, Direction::Up), LambdaCurve(s2, 3, Direction::Up));
    for (int k = 0; k <= 20; ++k) CHECK(star(k / 20.0) == testing::near(hat(k / 20.0), 1e-13, 1e-300));

    // All mass on each minimum: degenerate laws, Lambda^3(p) = min * p^2 / 2.
    BootstrapDraw corner{std::vector<std::uint32_t>(20, 0u), std::vector<std::uint32_t>(30, 0u), {}};
    corner.first[0] = 20;
    corner.second[0] = 30;
    const auto degenerate = bootstrap_diff_curve(s1, s2, corner, 3, Direction::Up);
    CHECK(degenerate(0.6) == testing::near((s2.min() - s1.min()) * 0.18, 1e-12));

    BootstrapDraw bad{std::vector<std::uint32_t>(19, 1u), std::vector<std::uint32_t>(30, 1u), {}};
    CHECK_THROWS_AS(bootstrap_diff_curve(s1, s2, bad, 3, Direction::Up), Error);
  }

  TEST_CASE("bootstrap statistic") {
    const Grid g = Grid::uniform(101);
    const Eigen::VectorXd hat = g.points().array().sin();
    ContactSet full{g, Eigen::Array<bool, Eigen::Dynamic, 1>::Constant(101, true)};
    CHECK(bootstrap_statistic(hat, hat, full, 400, FunctionalKind::Sup, g) == 0.0);
    CHECK(bootstrap_statistic(hat, hat, full, 400, FunctionalKind::Int, g) == 0.0);
    const Eigen::VectorXd star = hat + 0.01 * g.points();
    CHECK(bootstrap_statistic(star, hat, full, 400, FunctionalKind::Sup, g) == testing::near(20 * 0.01, 1e-12));
    const Eigen::VectorXd below = hat - 0.01 * g.points();
    CHECK(bootstrap_statistic(below, hat, full, 400, FunctionalKind::Int, g) == 0.0);
    CHECK_THROWS_AS(bootstrap_statistic(hat.head(50), hat, full, 400, FunctionalKind::Sup, g), Error);
  }

  TEST_CASE("critical values use the ceil((1-alpha)B)-th order statistic") {
    std::vector<double> stats;
    for (int i = 100; i >= 1; --i) stats.push_back(i / 100.0);
    CHECK(critical_value(stats, 0.05) == 0.95);
    CHECK(critical_value(std::vector<double>{3.5}, 0.3) == 3.5);
    CHECK(critical_value(std::vector<double>(17, 2.0), 0.1) == 2.0);
    CHECK_THROWS_AS(critical_value(std::vector<double>{}, 0.05), Error);
    double prev = -1.0;
    for (double a : {0.5, 0.2, 0.1, 0.05, 0.01}) {
      const double c = critical_value(stats, a);
      CHECK(c >= prev);
      CHECK(c >= 0.01);
      CHECK(c <= 1.0);
      prev = c;
    }
  }

  TEST_CASE("p-values") {
    const std::vector<double> stats{0.1, 0.2, 0.3, 0.4};
    CHECK(p_value(stats, 5.0) == 0.0);
    CHECK(p_value(stats, -std::numeric_limits<double>::infinity()) == 1.0);
    CHECK(p_value(stats, 0.25) == 0.5);
    CHECK_THROWS_AS(p_value(std::vector<double>{}, 0.0), Error);
  }
}
