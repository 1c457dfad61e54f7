#pragma once

#include <Eigen/Dense>
#include <vector>

#include "pseudoroll/rolling.hpp"

namespace pseudoroll {

/// Orthonormal parallel frame along a sampled curve: per-sample field values
/// f_i(t_k) with <f_i, f_j> = signs_i delta_ij, all of one flavor.
struct ParallelFrame {
  Signature sig = Signature(1, 0);  ///< ambient signature the frame lives in
  std::vector<double> times;
  std::vector<std::vector<VectorXd>> vectors;  ///< [sample][field]
  VectorXd signs;
  FrameFlavor flavor = FrameFlavor::Tangent;

  std::size_t samples() const { return times.size(); }
  int fields() const { return int(signs.size()); }

  /// Field i as a time-series.
  std::vector<VectorXd> field(int i) const;

  /// Worst deviation of <f_i, f_j> from signs_i delta_ij over all samples.
  double orthonormality_deviation() const;
};

/// Integrate the parallel-transport ODE for the given initial frame along
/// the curve (RK4 driven by local-cubic interpolation of the curve).  The
/// initial vectors must be orthonormal and of the right flavor at the first
/// curve point (FrameError otherwise); the signs are read off the inputs,
/// and any mix of timelike/spacelike fields in any order is preserved —
/// freedom-adapted orderings put the velocity direction last, so no fixed
/// timelike-first order is imposed here.
ParallelFrame parallel_frame_along(const SubmanifoldGeometry& geom,
                                   const CurveSamples& curve,
                                   const std::vector<VectorXd>& initial,
                                   FrameFlavor flavor);

/// Configuration matrices of a rolling trajectory in parallel frames:
///   A(t)_ij = <e^_i(t), R(t)^{-1} e_j(t)>   (tangent-tangent)
///   B(t)_kl = <n^_k(t), R(t)^{-1} n_l(t)>   (normal-normal)
/// Both are constant in time for a genuine rolling with parallel frames; the
/// report carries their time averages and the worst deviation from those
/// averages.  When the normal frames are omitted (codimension 1 only), the
/// canonical unit normals x(t)/sqrt|r| and x0/sqrt|r| are used.
struct ConfigurationMatrices {
  Eigen::MatrixXd a;  ///< m x m tangent configuration (Gram convention)
  Eigen::MatrixXd b;  ///< codim x codim normal configuration
  double deviation = 0;
};

ConfigurationMatrices configuration_matrices(const RollingTrajectory& traj,
                                             const ParallelFrame& e,
                                             const ParallelFrame& ehat,
                                             const ParallelFrame* n = nullptr,
                                             const ParallelFrame* nhat = nullptr,
                                             double frame_tol = 1e-4);

/// Dimension k of the space of parallel tangent fields pointwise orthogonal
/// to the curve velocity, computed as m - rank of the matrix of velocity
/// frame products M_kj = <e_j(t_k), x'(t_k)> (SVD rank at relative threshold
/// tol * sigma_max).  Geodesics give k = m - 1; a curve whose velocity
/// coordinates span all of the frame gives k = 0.
int freedom_dimension(const CurveSamples& curve, const ParallelFrame& frame,
                      double tol = 1e-8);

/// Rewrite a configuration matrix under the residual freedom: for an adapted
/// frame (first k fields spanning the orthogonal parallel space V, velocity
/// direction last) and an isometry A' of V in the same Gram convention as A,
/// the new configuration is  A * J_m * blockdiag(A', J_{m-k})  (J_m =
/// diag(signs)).  The identity action is A' = J_k; k = 0 and k = 1 leave A
/// unchanged.  A' must satisfy A'^T J_k A' = J_k and det(J_k A') > 0
/// (orientation-preserving), else SignatureError; A must satisfy
/// A^T J_m A = J_m, else GroupConstraintError.
Eigen::MatrixXd freedom_action(const Eigen::MatrixXd& a, const VectorXd& signs,
                               int k, const Eigen::MatrixXd& a_prime,
                               double tol = 1e-8);

/// Extend an intrinsic rolling to the normal bundles: given parallel normal
/// frames on both sides and a contravariant matrix p0 (the frame coordinates
/// of the normal isometry at t = 0, so p0 = I maps n_l(0) to n^_l(0)), the
/// extension transports p0 constantly in the frames.  Returns the ambient
/// operator p(t) = sum_{l,r} p0_rl n^_r(t) (sign_l n_l(t))^T J per sample
/// (it annihilates tangent vectors).  p0 must be an isometry of the common
/// normal signature: p0^T J p0 = J with J = diag(signs), else SignatureError.
std::vector<Eigen::MatrixXd> extend_to_extrinsic(const Eigen::MatrixXd& p0,
                                                 const ParallelFrame& n,
                                                 const ParallelFrame& nhat,
                                                 double tol = 1e-8);

/// Do the two sampled curves form a geodesic pair (both covariant
/// accelerations vanish and the squared speeds agree pointwise, within tol)?
bool geodesic_pair_check(const SubmanifoldGeometry& geom,
                         const CurveSamples& curve,
                         const SubmanifoldGeometry& geom_hat,
                         const CurveSamples& curve_hat, double tol = 1e-6);

}  // namespace pseudoroll
