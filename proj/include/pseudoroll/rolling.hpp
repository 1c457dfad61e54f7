#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "pseudoroll/geometry.hpp"

namespace pseudoroll {

/// Control u(t): the development velocity, valued in the (fixed) tangent
/// space of the hyperquadric at the initial contact point.
struct Control {
  std::function<VectorXd(double)> eval;

  VectorXd operator()(double t) const { return eval(t); }

  static Control constant(VectorXd u);
  /// Piecewise-linear interpolation of sampled values.
  static Control sampled(std::vector<double> ts, std::vector<VectorXd> values);
  static Control callback(std::function<VectorXd(double)> fn);
};

/// Output of the kinematic integrator: the translational part s(t), the
/// rotational part R(t) in O_nu(n), and the control samples, on a shared
/// time grid.  The rolling curve is x(t) = R(t) x0 and the development curve
/// is x^(t) = x0 + s(t).
struct RollingTrajectory {
  Hyperquadric surface;
  VectorXd x0;
  std::vector<double> times;
  std::vector<VectorXd> s;
  std::vector<Eigen::MatrixXd> rot;
  std::vector<VectorXd> controls;  ///< u(t_k)

  CurveSamples rolling_curve() const;
  CurveSamples development_curve() const;

  /// max_t  |R^T J R - J|_max : drift off the group along the trajectory.
  double constraint_drift() const;

  /// R(t_k)^{-1} via the J-adjoint.
  Eigen::MatrixXd rot_inverse(std::size_t k) const;
};

/// Integrate the rolling kinematics
///     s' = u(t),   R' = R (u(t) x0^T - x0 u(t)^T) J / r
/// with the Lie-group midpoint scheme R_{k+1} = R_k exp(h Omega(t_mid)) and
/// midpoint quadrature for s, so R stays on the group to rounding accuracy
/// at every step.  u(t_mid) must be J-orthogonal to x0 (the control lives in
/// T_x0); violations raise OrthogonalityError.
RollingTrajectory integrate_kinematics(const Hyperquadric& hq,
                                       const VectorXd& x0, const Control& u,
                                       const std::vector<double>& grid);

/// Residuals of the defining conditions of a rolling map, all as max-over-
/// time numbers:
///   contact        both curves stay on their manifolds
///   tangency       R(t) maps T_{x(t)} onto the plane's direction space
///   orientation    R(t) stays in the identity component (0 = yes, 1 = no)
///   no_slip        x^' - R^{-1} x'        (2nd-order differences: this is
///                  the residual whose step-halving behavior is certified)
///   no_twist_tan   R^{-1} (D Z/dt) - D^(R^{-1}Z)/dt on tangent test fields
///   no_twist_nor   same on a normal test field
struct VerificationReport {
  double contact = 0, tangency = 0, orientation = 0;
  double no_slip = 0, no_twist_tangent = 0, no_twist_normal = 0;
  double tol = 0;

  bool pass() const;
  double max_residual() const;
  std::string summary() const;
};

VerificationReport verify_rolling(const RollingTrajectory& traj, double tol);

/// Parallel transport along the rolling curve realized algebraically:
/// Y(t_k) = R(t_k) Y0.  Y0 must be tangent (resp. normal) at x0 according to
/// the flavor, else FlavorError.
std::vector<VectorXd> rolling_transport(const RollingTrajectory& traj,
                                        const VectorXd& y0, FrameFlavor flavor);

/// Causal bookkeeping along a trajectory: the squared norms of the two curve
/// velocities and of the control agree, and <<R',R'>> = 2 <u,u> / r.
struct CausalSample {
  double t;
  double dx2;     ///< <x', x'>
  double dxhat2;  ///< <x^', x^'>
  double u2;      ///< <u, u>
  double rdot2;   ///< <<R', R'>>
  CausalClass control_class;
};

struct CausalReport {
  std::vector<CausalSample> samples;
  /// max |dx2 - u2|, |dxhat2 - u2| over samples.
  double max_velocity_mismatch = 0;
  /// max |rdot2 - 2 u2 / r| over samples.
  double max_rotation_mismatch = 0;
};

CausalReport causal_report(const RollingTrajectory& traj);

}  // namespace pseudoroll
