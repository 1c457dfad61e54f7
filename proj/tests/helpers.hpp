#pragma once

#include <random>
#include <vector>

#include "pseudoroll/indefinite.hpp"

namespace testutil {

using Eigen::MatrixXd;
using Eigen::VectorXd;

inline double max_abs(const MatrixXd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// Random algebra element as a random combination of the W_ij basis.
inline pseudoroll::AlgebraElement random_algebra(std::mt19937& rng,
                                                 const pseudoroll::Signature& sig,
                                                 double scale = 0.5) {
  std::uniform_real_distribution<double> coef(-scale, scale);
  MatrixXd a = MatrixXd::Zero(sig.n, sig.n);
  for (int i = 1; i <= sig.n; ++i)
    for (int j = i + 1; j <= sig.n; ++j)
      a += coef(rng) * pseudoroll::lie_basis(i, j, sig).mat;
  return pseudoroll::AlgebraElement::checked(a, sig);
}

/// Random group element in the identity component (exponential image).
inline pseudoroll::GroupElement random_group(std::mt19937& rng,
                                             const pseudoroll::Signature& sig,
                                             double scale = 0.5) {
  return pseudoroll::matrix_exp(random_algebra(rng, sig, scale));
}

/// Point of the unit Lorentzian hyperquadric in R^3_1 from hyperbolic
/// parameters.
inline VectorXd lorentz_sphere_point(double a, double b) {
  VectorXd x(3);
  x << std::sinh(a), std::cosh(a) * std::sin(b), std::cosh(a) * std::cos(b);
  return x;
}

}  // namespace testutil
