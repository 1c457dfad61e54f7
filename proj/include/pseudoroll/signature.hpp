#pragma once

#include <Eigen/Dense>

#include "pseudoroll/errors.hpp"

namespace pseudoroll {

/// Default tolerance for deciding that a causal quantity vanishes.
inline constexpr double kCausalTol = 1e-9;

/// Default tolerance on the group / algebra defining constraints.
inline constexpr double kConstraintTol = 1e-9;

/// Signature of the scalar product on R^n with nu minus signs:
/// <x,y> = x^T J y with J = diag(-1,...,-1, 1,...,1)  (nu leading -1's).
///
/// The same struct describes both ambient spaces R^n_nu and the frame-level
/// isometry groups G_mu(m); it is nothing more than the pair (n, nu).
struct Signature {
  int n;   ///< dimension
  int nu;  ///< index: number of timelike (negative) directions

  Signature(int n_, int nu_) : n(n_), nu(nu_) {
    if (n < 1 || nu < 0 || nu > n)
      throw DimensionError("Signature: need 0 <= nu <= n, n >= 1, got n=" +
                           std::to_string(n_) + " nu=" + std::to_string(nu_));
  }

  /// Sign of the i-th coordinate direction, 0-based: -1 for i < nu, else +1.
  double eps(int i) const {
    if (i < 0 || i >= n) throw DimensionError("Signature::eps: index out of range");
    return i < nu ? -1.0 : 1.0;
  }

  /// All signs as a vector (convenient for frame bookkeeping).
  Eigen::VectorXd eps_vector() const {
    Eigen::VectorXd e(n);
    for (int i = 0; i < n; ++i) e(i) = eps(i);
    return e;
  }

  /// The Gram matrix J as a dense matrix.
  Eigen::MatrixXd gram() const {
    Eigen::MatrixXd j = Eigen::MatrixXd::Identity(n, n);
    for (int i = 0; i < nu; ++i) j(i, i) = -1.0;
    return j;
  }

  bool operator==(const Signature& o) const { return n == o.n && nu == o.nu; }
  bool operator!=(const Signature& o) const { return !(*this == o); }
};

/// Causal character of a vector, matrix, or scalar invariant.
enum class CausalClass { Timelike, Spacelike, Null };

inline const char* to_string(CausalClass c) {
  switch (c) {
    case CausalClass::Timelike: return "timelike";
    case CausalClass::Spacelike: return "spacelike";
    default: return "null";
  }
}

/// Classify a squared causal norm q = <v,v>.
///
/// Convention for the degenerate corner: a vanishing object (zero vector,
/// zero matrix, vanishing derivative) is Spacelike, while q ~ 0 for a
/// nonvanishing object means Null.
inline CausalClass classify_causal_value(double q, bool object_is_zero,
                                         double tol = kCausalTol) {
  if (q < -tol) return CausalClass::Timelike;
  if (q > tol) return CausalClass::Spacelike;
  return object_is_zero ? CausalClass::Spacelike : CausalClass::Null;
}

}  // namespace pseudoroll
