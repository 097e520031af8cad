#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "isd/curves.hpp"
#include "isd/error.hpp"

namespace isd {

enum class FunctionalKind { Sup, Int };

/// Estimated contact set: grid points where the difference curve is within
/// tau studentized units of zero.
struct ContactSet {
  Grid grid;
  Eigen::Array<bool, Eigen::Dynamic, 1> member;

  Eigen::Index count() const { return member.count(); }
  double fraction() const { return static_cast<double>(count()) / static_cast<double>(member.size()); }
};

// Grid proxy for sup_{p in [0,1]} h(p).
template <typename Derived>
double sup_functional(const Eigen::DenseBase<Derived>& h) {
  if (h.size() == 0) throw Error(Errc::EmptyInput, "functional of an empty vector");
  return h.maxCoeff();
}

// Trapezoid of max{h, 0} over the grid.
template <typename Derived>
double int_functional(const Eigen::DenseBase<Derived>& h, const Grid& g) {
  if (static_cast<std::size_t>(h.size()) != g.size()) {
    throw Error(Errc::MisalignedInputs, "values not aligned with grid");
  }
  const auto& pts = g.points();
  double acc = 0.0;
  for (Eigen::Index i = 0; i + 1 < h.size(); ++i) {
    const double lo = std::max(h.derived().coeff(i), 0.0);
    const double hi = std::max(h.derived().coeff(i + 1), 0.0);
    acc += 0.5 * (pts[i + 1] - pts[i]) * (lo + hi);
  }
  return acc;
}

template <typename Derived>
double apply_functional(FunctionalKind kind, const Eigen::DenseBase<Derived>& h, const Grid& g) {
  return kind == FunctionalKind::Sup ? sup_functional(h) : int_functional(h, g);
}

/// Membership is |sqrt(T_n) phi(p)| <= tau * vhat(p); tau = +inf keeps every point.
ContactSet estimate_contact_set(const Eigen::Ref<const Eigen::VectorXd>& phi,
                                const Eigen::Ref<const Eigen::VectorXd>& vhat, const Grid& g,
                                double t_n, double tau);

/// sup of h over the contact set.
template <typename Derived>
double derivative_sup(const Eigen::DenseBase<Derived>& h, const ContactSet& cs) {
  if (h.size() != cs.member.size()) throw Error(Errc::MisalignedInputs, "values not aligned with contact set");
  double best = -std::numeric_limits<double>::infinity();
  bool any = false;
  for (Eigen::Index i = 0; i < h.size(); ++i) {
    if (cs.member[i]) {
      best = std::max(best, static_cast<double>(h.derived().coeff(i)));
      any = true;
    }
  }
  if (!any) throw Error(Errc::EmptyContactSet, "contact set has no members");
  return best;
}

/// Integral of max{h, 0} over the contact set. A grid cell contributes only
/// when both of its endpoints are members, so isolated points carry no mass.
template <typename Derived>
double derivative_int(const Eigen::DenseBase<Derived>& h, const ContactSet& cs, const Grid& g) {
  if (h.size() != cs.member.size() || static_cast<std::size_t>(h.size()) != g.size()) {
    throw Error(Errc::MisalignedInputs, "values not aligned with contact set");
  }
  if (cs.count() == 0) throw Error(Errc::EmptyContactSet, "contact set has no members");
  const auto& pts = g.points();
  double acc = 0.0;
  for (Eigen::Index i = 0; i + 1 < h.size(); ++i) {
    if (!(cs.member[i] && cs.member[i + 1])) continue;
    const double lo = std::max(static_cast<double>(h.derived().coeff(i)), 0.0);
    const double hi = std::max(static_cast<double>(h.derived().coeff(i + 1)), 0.0);
    acc += 0.5 * (pts[i + 1] - pts[i]) * (lo + hi);
  }
  return acc;
}

template <typename Derived>
double apply_derivative(FunctionalKind kind, const Eigen::DenseBase<Derived>& h, const ContactSet& cs,
                        const Grid& g) {
  return kind == FunctionalKind::Sup ? derivative_sup(h, cs) : derivative_int(h, cs, g);
}

}  // namespace isd
