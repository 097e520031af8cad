#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "isd/curves.hpp"
#include "isd/error.hpp"
#include "oracles.hpp"

using namespace isd;

namespace {

double oracle_value(const std::vector<double>& x, int m, Direction dir, double p,
                    const std::vector<std::uint32_t>& w = {}) {
  const oracle::StepQuantile q(x, w);
  return oracle::RepeatedIntegral(q, m, dir == Direction::Up)(p);
}

}  // namespace

TEST_SUITE("curves") {
  TEST_CASE("closed form on {1,2,3}") {
    const auto s = testing::sample({1, 2, 3});
    CHECK(LambdaCurve(s, 2, Direction::Up)(1.0) == testing::near(2.0));
    CHECK(LambdaCurve(s, 3, Direction::Up)(0.0) == 0.0);
    const double seven_ninths = oracle_value({1, 2, 3}, 3, Direction::Up, 1.0);
    CHECK(seven_ninths == testing::near(7.0 / 9, 1e-13));
    CHECK(LambdaCurve(s, 3, Direction::Up)(1.0) == testing::near(seven_ninths, 1e-14));
    CHECK(LambdaCurve(s, 3, Direction::Down)(0.0) == testing::near(oracle_value({1, 2, 3}, 3, Direction::Down, 0.0)));
    CHECK(LambdaCurve(s, 3, Direction::Down)(0.0) == testing::near(7.0 / 9, 1e-14));
  }

  TEST_CASE("difference curve of a unit shift") {
    const DifferenceCurve d(LambdaCurve(testing::sample({1, 2, 3}), 3, Direction::Up),
                            LambdaCurve(testing::sample({2, 3, 4}), 3, Direction::Up));
    const double expected = oracle_value({2, 3, 4}, 3, Direction::Up, 1.0) - oracle_value({1, 2, 3}, 3, Direction::Up, 1.0);
    CHECK(expected == testing::near(0.5, 1e-13));
    CHECK(diff_eval(d, 1.0) == testing::near(0.5, 1e-14));
    CHECK(diff_eval(d, 0.0) == 0.0);

    const auto s = testing::dp(3, 2, 20, 4);
    const DifferenceCurve same(LambdaCurve(s, 3, Direction::Down), LambdaCurve(s, 3, Direction::Down));
    for (int k = 0; k <= 10; ++k) CHECK(diff_eval(same, k / 10.0) == 0.0);
  }

  TEST_CASE("grid evaluation") {
    const LambdaCurve c(testing::sample({1, 2, 3}), 3, Direction::Up);
    const Eigen::Vector2d pts(0.0, 1.0);
    const auto v = eval_on_grid(c, Grid(pts));
    CHECK(v[0] == 0.0);
    CHECK(v[1] == testing::near(7.0 / 9, 1e-14));

    // Constant sample {c}: Lambda^3(p) = c p^2 / 2.
    const LambdaCurve flat(testing::sample({4, 4}), 3, Direction::Up);
    const auto f = eval_on_grid(flat, Grid(Eigen::Vector3d(0.0, 0.5, 1.0)));
    CHECK(f[0] == 0.0);
    CHECK(f[1] == testing::near(0.5, 1e-15));
    CHECK(f[2] == testing::near(2.0, 1e-15));

    const auto s = testing::dp(3, 2, 15, 8);
    const auto zeros = eval_on_grid(DifferenceCurve(LambdaCurve(s, 4, Direction::Up), LambdaCurve(s, 4, Direction::Up)),
                                    Grid::uniform(11));
    CHECK(zeros.cwiseAbs().maxCoeff() == 0.0);
  }

  TEST_CASE("sweep agrees with pointwise evaluation") {
    for (int m = 2; m <= 6; ++m) {
      for (auto dir : {Direction::Up, Direction::Down}) {
        if (m == 2 && dir == Direction::Down) continue;
        const LambdaCurve c(testing::dp(3, 2, 40, 100 + m), m, dir);
        const Grid g = Grid::uniform(257);
        const auto swept = eval_on_grid(c, g);
        for (std::size_t i = 0; i < g.size(); ++i) {
          const double point = c(g[i]);
          CHECK(swept[static_cast<Eigen::Index>(i)] == testing::near(point, 1e-12));
        }
      }
    }
  }

  TEST_CASE("weighted curve matches the oracle on the weighted quantile") {
    const auto x = testing::dp_values(3, 2, 12, 21);
    const std::vector<std::uint32_t> w{0, 3, 1, 0, 0, 2, 1, 1, 0, 4, 0, 0};
    const WeightedSample ws(testing::sample(x), w);
    for (int m : {2, 3, 4}) {
      for (auto dir : {Direction::Up, Direction::Down}) {
        if (m == 2 && dir == Direction::Down) continue;
        const LambdaCurve c(ws, m, dir);
        for (int k = 0; k <= 20; ++k) {
          const double p = k / 20.0;
          CHECK(c(p) == testing::near(oracle_value(x, m, dir, p, w), 1e-10));
        }
      }
    }
  }

  TEST_CASE("boundaries vanish exactly") {
    for (std::uint32_t rep = 0; rep < 30; ++rep) {
      const auto s = testing::dp(3, 2, 1 + rep, 31, rep);
      for (int m = 2; m <= kMaxDegree; ++m) {
        CHECK(LambdaCurve(s, m, Direction::Up)(0.0) == 0.0);
        if (m >= 3) CHECK(LambdaCurve(s, m, Direction::Down)(1.0) == 0.0);
      }
    }
  }

  TEST_CASE("Up is nondecreasing and convex") {
    const LambdaCurve c(testing::dp(3, 2, 30, 17), 3, Direction::Up);
    const auto v = eval_on_grid(c, Grid::uniform(1001));
    for (Eigen::Index i = 1; i < v.size(); ++i) CHECK(v[i] >= v[i - 1]);
    for (Eigen::Index i = 1; i + 1 < v.size(); ++i) CHECK(v[i + 1] - 2 * v[i] + v[i - 1] >= -1e-14);
  }

  TEST_CASE("shifting the second sample raises the difference") {
    const auto a = testing::dp_values(3, 2, 25, 41);
    auto b = testing::dp_values(3, 2, 25, 42);
    const Grid g = Grid::uniform(201);
    for (auto dir : {Direction::Up, Direction::Down}) {
      const auto before = eval_on_grid(DifferenceCurve(LambdaCurve(testing::sample(a), 3, dir),
                                                       LambdaCurve(testing::sample(b), 3, dir)), g);
      auto shifted = b;
      for (double& v : shifted) v += 0.3;
      const auto after = eval_on_grid(DifferenceCurve(LambdaCurve(testing::sample(a), 3, dir),
                                                      LambdaCurve(testing::sample(shifted), 3, dir)), g);
      for (Eigen::Index i = 0; i < after.size(); ++i) CHECK(after[i] >= before[i] - 1e-14);
    }
  }

  TEST_CASE("scale equivariance") {
    const auto s = testing::dp(3, 2, 33, 12);
    for (auto dir : {Direction::Up, Direction::Down}) {
      const LambdaCurve c(s, 4, dir), cs(s.scaled(250.0), 4, dir);
      for (int k = 0; k <= 50; ++k) CHECK(cs(k / 50.0) == testing::near(250.0 * c(k / 50.0), 1e-13));
    }
  }

  TEST_CASE("argument and degree validation") {
    const auto s = testing::sample({1, 2, 3});
    CHECK_THROWS_AS(LambdaCurve(s, 2, Direction::Down), Error);
    CHECK_THROWS_AS(LambdaCurve(s, 1, Direction::Up), Error);
    CHECK_THROWS_AS(LambdaCurve(s, kMaxDegree + 1, Direction::Up), Error);
    const LambdaCurve c(s, 3, Direction::Up);
    CHECK_THROWS_AS(c(1.01), Error);
    CHECK_THROWS_AS(c(-0.01), Error);
    CHECK_THROWS_AS(DifferenceCurve(c, LambdaCurve(s, 4, Direction::Up)), Error);
    CHECK_THROWS_AS(Grid(Eigen::Vector2d(0.1, 1.0)), Error);
    CHECK_THROWS_AS(Grid(Eigen::Vector3d(0.0, 0.6, 0.5)), Error);
  }
}
