#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "pseudoroll/geometry.hpp"

namespace pseudoroll {

/// Rank-3 coefficient array T[i](k, h) (e.g. Christoffel symbols Gamma^i_kh
/// or frame-connection coefficients gamma^i_kh).
using Tensor3 = std::vector<Eigen::MatrixXd>;

/// A coordinate chart with a pseudo-Riemannian metric: dimension, index, and
/// the metric matrix g(x) in coordinates.  An optional closed-form
/// Christoffel callback short-circuits the finite-difference fallback.
struct MetricChart {
  int dim = 0;
  int index = 0;
  std::function<Eigen::MatrixXd(const VectorXd&)> metric;
  std::function<Tensor3(const VectorXd&)> christoffel_closed;  ///< optional
  double fd_scale = 1.0;  ///< length scale for finite-difference steps

  Signature frame_signature() const { return Signature(dim, index); }
};

/// Christoffel symbols Gamma^i_kh(x) of the Levi-Civita connection,
/// symmetric in (k,h).  Uses the chart's closed form when present, else
/// central differences of the metric with step ~ cbrt(eps)*fd_scale.
/// Throws MetricDegeneracyError when g(x) cannot be inverted reliably.
Tensor3 christoffel(const MetricChart& chart, const VectorXd& x);

/// Orthonormal frame at x in coordinate components: column i of `basis` is
/// e_i, with <e_i, e_j>_g = signs_i delta_ij, ordered timelike-first.
/// Built by pivoted Gram-Schmidt from the coordinate basis; on charts with
/// (block-)diagonal metrics this is smooth in x.
struct ChartFrame {
  Eigen::MatrixXd basis;
  VectorXd signs;
};

ChartFrame chart_frame(const MetricChart& chart, const VectorXd& x);

/// Frame-connection coefficients gamma^i_kh(x) = <nabla_{e_k} e_h, e_i>_g of
/// the orthonormal frame, antisymmetric in (i,h) up to the signs.
Tensor3 frame_connection(const MetricChart& chart, const VectorXd& x);

/// Frame coordinates of a coordinate-component vector v: solve basis c = v.
VectorXd frame_coordinates(const ChartFrame& frame, const VectorXd& v);

/// A chart of an embedded submanifold: the intrinsic metric data plus the
/// embedding, its inverse on the image, and its Jacobian (columns are the
/// ambient representations of the coordinate basis).
struct EmbeddedChart {
  MetricChart chart;
  Signature ambient = Signature(1, 0);
  std::function<VectorXd(const VectorXd&)> embed;
  std::function<VectorXd(const VectorXd&)> coords;
  std::function<Eigen::MatrixXd(const VectorXd&)> jacobian;

  /// Ambient representation of the orthonormal chart frame at chart point x.
  std::vector<VectorXd> ambient_frame(const VectorXd& x) const;
};

/// The hyperbolic-angle chart (a, b) -> (sinh a, cosh a sin b, cosh a cos b)
/// of the unit Lorentzian hyperquadric in R^3_1, with closed-form metric
/// diag(-1, cosh^2 a) and Christoffel symbols.
EmbeddedChart lorentz_hyperquadric_chart();

/// Chart of an affine plane: coordinates in its orthonormal direction basis;
/// the metric is the constant diag(direction signs) and all Christoffel
/// symbols vanish.
EmbeddedChart affine_plane_chart(const AffinePlane& plane);

}  // namespace pseudoroll
