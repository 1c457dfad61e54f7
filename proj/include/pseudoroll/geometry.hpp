#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "pseudoroll/finite_diff.hpp"
#include "pseudoroll/indefinite.hpp"

namespace pseudoroll {

/// Which subbundle a field lives in.
enum class FrameFlavor { Tangent, Normal };

const char* to_string(FrameFlavor f);

/// Sampled curve in the ambient space: strictly increasing times, one point
/// per time, all of the same dimension.
struct CurveSamples {
  std::vector<double> times;
  std::vector<VectorXd> points;

  CurveSamples() = default;
  CurveSamples(std::vector<double> ts, std::vector<VectorXd> pts);

  std::size_t size() const { return times.size(); }
  int dim() const { return points.empty() ? 0 : int(points.front().size()); }

  /// Local-cubic interpolated value / derivative at t.
  VectorXd value_at(double t) const { return interpolate(times, points, t); }
  VectorXd derivative_at(double t) const {
    return interpolate_derivative(times, points, t);
  }

  /// Per-node finite-difference velocity.
  std::vector<VectorXd> velocity(int order = 4) const {
    return sampled_derivative(times, points, order);
  }
};

/// Common interface of the two rolling partners: a hyperquadric and the
/// affine flat it rolls over.  Both are nondegenerate submanifolds of the
/// same pseudo-Euclidean ambient space, and both expose pointwise projections
/// onto the tangent/normal subspaces plus the transport right-hand side used
/// by the parallel-frame integrator.
class SubmanifoldGeometry {
 public:
  virtual ~SubmanifoldGeometry() = default;

  const Signature& ambient() const { return sig_; }
  int dim() const { return dim_; }
  int codim() const { return sig_.n - dim_; }

  virtual bool contains(const VectorXd& x, double tol) const = 0;
  virtual VectorXd tangent_project(const VectorXd& x,
                                   const VectorXd& v) const = 0;
  virtual VectorXd normal_project(const VectorXd& x,
                                  const VectorXd& v) const = 0;

  /// d f/dt of a parallel field with value f at x, for curve velocity xdot.
  virtual VectorXd transport_rhs(const VectorXd& x, const VectorXd& xdot,
                                 const VectorXd& f, FrameFlavor flavor) const = 0;

  /// Membership guard for interior preconditions.  Scaled so that large
  /// trajectory points are not rejected for pure-rounding residuals.
  void require_member(const VectorXd& x, const char* who) const;

 protected:
  SubmanifoldGeometry(const Signature& sig, int dim) : sig_(sig), dim_(dim) {}
  /// Unscaled defect of the defining equation(s) at x.
  virtual double membership_defect(const VectorXd& x) const = 0;

  Signature sig_;
  int dim_;
};

/// Level set S = { x : <x,x>_J = r }, r != 0, of dimension n-1.
class Hyperquadric final : public SubmanifoldGeometry {
 public:
  Hyperquadric(const Signature& sig, double level);

  double level() const { return level_; }

  bool contains(const VectorXd& x, double tol) const override;
  VectorXd tangent_project(const VectorXd& x, const VectorXd& v) const override;
  VectorXd normal_project(const VectorXd& x, const VectorXd& v) const override;
  VectorXd transport_rhs(const VectorXd& x, const VectorXd& xdot,
                         const VectorXd& f, FrameFlavor flavor) const override;

  /// Geodesic through x0 with initial velocity u at parameter t.
  ///
  /// u must be tangent at x0 and satisfy <u,u> in {-1, 0, +1} (up to tol).
  /// For level 1 the cos/cosh/affine closed forms are used; any other level
  /// (including negative ones) goes through the exponential of the generator
  /// (u x0^T - x0 u^T) J / r, which stays on the level set exactly.
  VectorXd geodesic(const VectorXd& x0, const VectorXd& u, double t) const;

  /// Geodesic sampled on a grid.
  CurveSamples geodesic_curve(const VectorXd& x0, const VectorXd& u,
                              const std::vector<double>& ts) const;

 protected:
  double membership_defect(const VectorXd& x) const override;

 private:
  double level_;
};

/// Affine flat x0 + span(d_1, ..., d_m) with J-orthonormal directions; the
/// directions are orthonormalized (causal pivoting) on construction.  Its
/// tangent space is the same at every point, so projections ignore x and the
/// transport right-hand side vanishes.
class AffinePlane final : public SubmanifoldGeometry {
 public:
  AffinePlane(const Signature& sig, VectorXd base,
              const std::vector<VectorXd>& spanning);

  const VectorXd& base() const { return base_; }
  const std::vector<VectorXd>& directions() const { return dirs_; }
  const VectorXd& direction_signs() const { return dir_signs_; }

  bool contains(const VectorXd& x, double tol) const override;
  VectorXd tangent_project(const VectorXd& x, const VectorXd& v) const override;
  VectorXd normal_project(const VectorXd& x, const VectorXd& v) const override;
  VectorXd transport_rhs(const VectorXd& x, const VectorXd& xdot,
                         const VectorXd& f, FrameFlavor flavor) const override;

  /// Coordinates of a plane point in the direction basis.
  VectorXd coords(const VectorXd& x) const;

  /// The affine tangent space of a hyperquadric at x0 (the rolling partner):
  /// the plane through x0 spanned by T_x0.
  static AffinePlane tangent_plane(const Hyperquadric& hq, const VectorXd& x0);

 protected:
  double membership_defect(const VectorXd& x) const override;

 private:
  VectorXd base_;
  std::vector<VectorXd> dirs_;
  VectorXd dir_signs_;
};

/// Covariant derivative along a sampled curve of a sampled tangent field:
/// finite-difference Z', then project onto the tangent space pointwise.
/// Throws FlavorError if Z is not tangent along the curve, GridError for
/// fewer than 3 samples.
std::vector<VectorXd> covariant_derivative(const SubmanifoldGeometry& geom,
                                           const CurveSamples& curve,
                                           const std::vector<VectorXd>& field,
                                           int order = 4);

/// Normal-bundle derivative of a sampled normal field: FD then normal
/// projection.  Throws FlavorError if the field is not normal along the curve.
std::vector<VectorXd> normal_derivative(const SubmanifoldGeometry& geom,
                                        const CurveSamples& curve,
                                        const std::vector<VectorXd>& field,
                                        int order = 4);

}  // namespace pseudoroll
