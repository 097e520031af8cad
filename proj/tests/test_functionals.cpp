#include <doctest.h>

#include <cmath>
#include <limits>

#include "helpers.hpp"
#include "isd/error.hpp"
#include "isd/functionals.hpp"

using namespace isd;

namespace {

const Grid& fine() {
  static const Grid g = Grid::uniform(1001);
  return g;
}

ContactSet members(const Grid& g, auto pred) {
  ContactSet cs{g, Eigen::Array<bool, Eigen::Dynamic, 1>(static_cast<Eigen::Index>(g.size()))};
  for (std::size_t i = 0; i < g.size(); ++i) cs.member[static_cast<Eigen::Index>(i)] = pred(g[i]);
  return cs;
}

}  // namespace

TEST_SUITE("functionals") {
  TEST_CASE("sup functional") {
    const Eigen::VectorXd p = fine().points();
    CHECK(sup_functional(p.array() - 0.5) == testing::near(0.5));
    Eigen::VectorXd h = Eigen::VectorXd::Constant(p.size(), -1.0);
    h[0] = 0.0;
    CHECK(sup_functional(h) == 0.0);
    CHECK(sup_functional(Eigen::VectorXd::Zero(p.size())) == 0.0);
  }

  TEST_CASE("integral functional") {
    const Eigen::VectorXd p = fine().points();
    CHECK(int_functional(p.array() - 0.5, fine()) == testing::near(0.125, 1e-12));
    CHECK(int_functional(-p.array() - 0.1, fine()) == 0.0);
    CHECK(int_functional(Eigen::VectorXd::Ones(p.size()), fine()) == testing::near(1.0, 1e-14));
    CHECK_THROWS_AS(int_functional(Eigen::VectorXd::Ones(3), fine()), Error);
  }

  TEST_CASE("contact set estimation") {
    const Grid& g = fine();
    const auto n = static_cast<Eigen::Index>(g.size());
    const Eigen::VectorXd v = Eigen::VectorXd::Constant(n, std::sqrt(0.001));
    CHECK(estimate_contact_set(Eigen::VectorXd::Zero(n), v, g, 100.0, 3.0).count() == n);

    const Eigen::VectorXd big = Eigen::VectorXd::Constant(n, 5.0);
    CHECK(estimate_contact_set(big, v, g, 100.0, std::numeric_limits<double>::infinity()).count() == n);
    CHECK(estimate_contact_set(big, v, g, 100.0, 3.0).count() == 0);

    Eigen::VectorXd phi = Eigen::VectorXd::Zero(n);
    phi[500] = 1.0;  // sqrt(T)=100: 100 > 3 * 0.0316
    const auto cs = estimate_contact_set(phi, v, g, 1e4, 3.0);
    CHECK_FALSE(cs.member[500]);
    CHECK(cs.count() == n - 1);
    CHECK_THROWS_AS(estimate_contact_set(phi.head(10), v, g, 1e4, 3.0), Error);
  }

  TEST_CASE("contact set grows with tau") {
    const Grid& g = fine();
    const auto n = static_cast<Eigen::Index>(g.size());
    const Eigen::VectorXd phi = g.points().array().sin() * 0.05;
    const Eigen::VectorXd v = Eigen::VectorXd::Constant(n, 0.1);
    auto prev = estimate_contact_set(phi, v, g, 400.0, 0.5);
    for (double tau : {1.0, 2.0, 3.0, 4.0, 10.0}) {
      const auto cur = estimate_contact_set(phi, v, g, 400.0, tau);
      for (Eigen::Index i = 0; i < n; ++i) CHECK((!prev.member[i] || cur.member[i]));
      prev = cur;
    }
  }

  TEST_CASE("derivative of the sup") {
    const Grid& g = fine();
    Eigen::VectorXd h = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(g.size()), 9.0);
    h[500] = 7.0;
    CHECK(derivative_sup(h, members(g, [](double p) { return p == 0.5; })) == 7.0);
    const Eigen::VectorXd q = g.points().array().square() - 0.3;
    CHECK(derivative_sup(q, members(g, [](double) { return true; })) == sup_functional(q));
    Eigen::VectorXd neg = -g.points();
    CHECK(derivative_sup(neg, members(g, [](double p) { return p < 0.2; })) == 0.0);
    CHECK_THROWS_AS(derivative_sup(neg, members(g, [](double) { return false; })), Error);
  }

  TEST_CASE("derivative of the integral") {
    const Grid& g = fine();
    const Eigen::VectorXd q = (6.0 * g.points().array()).cos();
    CHECK(derivative_int(q, members(g, [](double) { return true; }), g) == int_functional(q, g));
    // Isolated member points carry no mass.
    CHECK(derivative_int(Eigen::VectorXd::Ones(1001), members(g, [](double p) { return p == 0.0 || p == 1.0; }), g) ==
          0.0);
    CHECK(derivative_int(Eigen::VectorXd::Ones(1001), members(g, [](double p) { return p <= 0.5; }), g) ==
          testing::near(0.5, 1e-14));
  }

  TEST_CASE("positive homogeneity and monotonicity") {
    const Grid& g = fine();
    const Eigen::VectorXd h = (9.0 * g.points().array()).sin() - 0.2;
    const auto half = members(g, [](double p) { return p < 0.5; });
    for (double c : {0.5, 3.0, 1e3}) {
      CHECK(sup_functional(c * h) == testing::near(c * sup_functional(h), 1e-15));
      CHECK(int_functional(c * h, g) == testing::near(c * int_functional(h, g), 1e-14));
      const Eigen::VectorXd up = h.array() + c;
      CHECK(sup_functional(up) >= sup_functional(h));
      CHECK(int_functional(up, g) >= int_functional(h, g));
      CHECK(derivative_sup(up, half) >= derivative_sup(h, half));
      CHECK(derivative_int(up, half, g) >= derivative_int(h, half, g));
    }
    Eigen::VectorXd bump = -g.points();
    bump[300] = 0.01;
    CHECK(sup_functional(bump) > 0.0);
    CHECK(int_functional(bump, g) > 0.0);
  }
}
