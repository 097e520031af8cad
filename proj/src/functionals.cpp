#include "isd/functionals.hpp"

namespace isd {

ContactSet estimate_contact_set(const Eigen::Ref<const Eigen::VectorXd>& phi,
                                const Eigen::Ref<const Eigen::VectorXd>& vhat, const Grid& g,
                                double t_n, double tau) {
  if (phi.size() != vhat.size() || static_cast<std::size_t>(phi.size()) != g.size()) {
    throw Error(Errc::MisalignedInputs, "phi, vhat and grid must have equal length");
  }
  if (!(t_n > 0.0)) throw Error(Errc::OutOfRange, "T_n must be positive");
  if (!(tau > 0.0)) throw Error(Errc::OutOfRange, "tau must be positive");

  ContactSet cs{g, Eigen::Array<bool, Eigen::Dynamic, 1>(phi.size())};
  if (std::isinf(tau)) {
    cs.member.setConstant(true);
    return cs;
  }
  const double root = std::sqrt(t_n);
  cs.member = (root * phi.array()).abs() <= tau * vhat.array();
  return cs;
}

}  // namespace isd
