#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "pseudoroll/charts.hpp"
#include "pseudoroll/rolling.hpp"

namespace pseudoroll {

/// A rolling trajectory trivialized into chart data: chart coordinates of
/// the two contact curves plus the configuration matrices A(t) (tangent,
/// Gram convention in the orthonormal chart frames) and B(t) (normal).
struct TrivializedCurve {
  std::vector<double> times;
  std::vector<VectorXd> x;     ///< chart coordinates on the rolling surface
  std::vector<VectorXd> xhat;  ///< chart coordinates on the development side
  std::vector<Eigen::MatrixXd> a;
  std::vector<Eigen::MatrixXd> b;
};

/// Trivialize a trajectory through a pair of embedded charts.  The B part
/// uses the canonical codimension-1 normals x(t)/sqrt|r| and x0/sqrt|r|.
TrivializedCurve trivialize(const RollingTrajectory& traj,
                            const EmbeddedChart& chart,
                            const EmbeddedChart& chart_hat);

/// Coefficients w_ij (i < j) of the horizontal lift of a tangent coordinate
/// vector v at chart state (x, x^, A):
///   w_ij = <nabla_v e_j, e_i>  -  <nabla_{qv} (q e_j), (q e_i)>^
/// expanded through the frame-connection coefficients of both charts; q is
/// the isometry encoded by A.  Returned as a full antisymmetric-in-(i,j)
/// coefficient matrix with w_ij at (i,j), i < j.
Eigen::MatrixXd lift(const MetricChart& chart, const MetricChart& chart_hat,
                     const VectorXd& x, const VectorXd& xhat,
                     const Eigen::MatrixXd& a, const VectorXd& v);

/// The corresponding algebra tangent: U = sum_{i<j} w_ij eps_i W_ij, so that
/// a horizontal curve satisfies A' = A U.
Eigen::MatrixXd algebra_from_lift(const Eigen::MatrixXd& w,
                                  const VectorXd& signs);

/// Normal-bundle connection coefficients as a callback:
/// coeffs[kappa](l, lambda) = <nabla^perp_{e_l} n_lambda, n_kappa> at the
/// chart point (l indexes the tangent frame, kappa/lambda the normal frame).
using NormalConnection = std::function<Tensor3(const VectorXd&)>;

/// Lift coefficients on the normal bundle (mirrors `lift` with the normal
/// frames and B); sign patterns of the normal frames are passed explicitly.
Eigen::MatrixXd lift_normal(const NormalConnection& conn,
                            const NormalConnection& conn_hat,
                            const VectorXd& normal_signs, const VectorXd& x,
                            const VectorXd& xhat, const Eigen::MatrixXd& a,
                            const Eigen::MatrixXd& b, const VectorXd& v,
                            const MetricChart& chart,
                            const MetricChart& chart_hat);

/// Residual of horizontality of a trivialized curve, per sample:
/// max of  |x^'_f - J A x'_f|  (no slip in frame coordinates),
///         |A' - A U|          (tangent lift consistency) and
///         |B' - B U_perp|     (normal lift consistency, when conns given).
std::vector<double> horizontality_residual(
    const TrivializedCurve& tc, const MetricChart& chart,
    const MetricChart& chart_hat, const NormalConnection& conn = nullptr,
    const NormalConnection& conn_hat = nullptr,
    const VectorXd* normal_signs = nullptr);

/// Causal character of a configuration-matrix curve: per-sample
/// -tr(U(t)^2) with U = A^{-1} A' (finite differences, then left translation)
/// and its causal class.  A(t) must stay in the isometry group of diag(signs)
/// (GroupConstraintError otherwise).  A vanishing value is Null when A' != 0
/// and Spacelike when A' = 0.
struct CausalTracePoint {
  double t;
  double value;
  CausalClass cls;
};

std::vector<CausalTracePoint> causal_trace(const std::vector<double>& times,
                                           const std::vector<Eigen::MatrixXd>& a,
                                           const VectorXd& signs,
                                           double tol = kCausalTol);

/// The closed-form expression for the same quantity,
///   sum_{i,h} eps_i eps_h ( sum_k [ x'^k gamma^i_kh
///                                   - c_ih x^'^k gamma^^i_kh ] )^2
/// with c_ih = sum_{r,s} eps_r eps_s a_rh a_si, evaluated from the two
/// frame connections.  Exact whenever the development-side frame connection
/// vanishes (affine charts), which covers every flat development.
std::vector<double> causal_trace_formula(const MetricChart& chart,
                                         const MetricChart& chart_hat,
                                         const TrivializedCurve& tc);

}  // namespace pseudoroll
