#include "pseudoroll/geometry.hpp"

#include <cmath>

namespace pseudoroll {

namespace {

/// Guard tolerance for interior membership/orthogonality preconditions.
constexpr double kGuardTol = 1e-8;

}  // namespace

const char* to_string(FrameFlavor f) {
  return f == FrameFlavor::Tangent ? "tangent" : "normal";
}

CurveSamples::CurveSamples(std::vector<double> ts, std::vector<VectorXd> pts)
    : times(std::move(ts)), points(std::move(pts)) {
  if (times.size() != points.size())
    throw GridError("CurveSamples: times/points length mismatch");
  require_grid(times, 2, "CurveSamples");
  for (const auto& p : points)
    if (p.size() != points.front().size())
      throw GridError("CurveSamples: mixed point dimensions");
}

void SubmanifoldGeometry::require_member(const VectorXd& x,
                                         const char* who) const {
  if (x.size() != sig_.n)
    throw DimensionError(std::string(who) + ": point dimension mismatch");
  // |defect| <= tol * (1 + |x|^2): points of Euclidean size L can never beat
  // a residual of order L^2 * eps_mach, so an absolute bound would spuriously
  // reject far-out trajectory samples.
  if (membership_defect(x) > kGuardTol * (1.0 + x.squaredNorm()))
    throw MembershipError(std::string(who) + ": point is not on the manifold");
}

// ---------------------------------------------------------------------------
// Hyperquadric

Hyperquadric::Hyperquadric(const Signature& sig, double level)
    : SubmanifoldGeometry(sig, sig.n - 1), level_(level) {
  if (level_ == 0.0)
    throw MetricDegeneracyError(
        "Hyperquadric: level 0 is the light cone, not a hyperquadric");
  if (sig.n < 2) throw DimensionError("Hyperquadric: need ambient dim >= 2");
}

double Hyperquadric::membership_defect(const VectorXd& x) const {
  return std::abs(j_inner(x, x, sig_) - level_);
}

bool Hyperquadric::contains(const VectorXd& x, double tol) const {
  if (x.size() != sig_.n)
    throw DimensionError("Hyperquadric::contains: dimension mismatch");
  return membership_defect(x) <= tol;
}

VectorXd Hyperquadric::tangent_project(const VectorXd& x,
                                       const VectorXd& v) const {
  require_member(x, "Hyperquadric::tangent_project");
  if (v.size() != sig_.n)
    throw DimensionError("Hyperquadric::tangent_project: dimension mismatch");
  // The normal at x is x itself, <x,x> = r, so the tangent part of v is
  // v - (<v,x>/r) x.
  return v - (j_inner(v, x, sig_) / level_) * x;
}

VectorXd Hyperquadric::normal_project(const VectorXd& x,
                                      const VectorXd& v) const {
  require_member(x, "Hyperquadric::normal_project");
  if (v.size() != sig_.n)
    throw DimensionError("Hyperquadric::normal_project: dimension mismatch");
  return (j_inner(v, x, sig_) / level_) * x;
}

VectorXd Hyperquadric::transport_rhs(const VectorXd& x, const VectorXd& xdot,
                                     const VectorXd& f,
                                     FrameFlavor flavor) const {
  // Parallel tangent field:  f' = -<f, x'> x / r   (normal-valued correction)
  // Parallel normal field:   f' =  <f, x> x' / r   (f = k x with k constant)
  if (flavor == FrameFlavor::Tangent)
    return -(j_inner(f, xdot, sig_) / level_) * x;
  return (j_inner(f, x, sig_) / level_) * xdot;
}

VectorXd Hyperquadric::geodesic(const VectorXd& x0, const VectorXd& u,
                                double t) const {
  require_member(x0, "Hyperquadric::geodesic");
  if (u.size() != sig_.n)
    throw DimensionError("Hyperquadric::geodesic: velocity dimension mismatch");
  const double ux0 = j_inner(u, x0, sig_);
  if (std::abs(ux0) > kGuardTol * (1.0 + x0.squaredNorm() + u.squaredNorm()))
    throw OrthogonalityError("Hyperquadric::geodesic: <u,x0> != 0");
  const double q = j_inner(u, u, sig_);
  const bool null_u = std::abs(q) <= kCausalTol;
  if (!null_u && std::abs(std::abs(q) - 1.0) > 1e-6)
    throw NormalizationError(
        "Hyperquadric::geodesic: <u,u> must be -1, 0 or +1");

  if (level_ == 1.0) {
    if (null_u) return x0 + t * u;                               // straight
    if (q > 0) return std::cos(t) * x0 + std::sin(t) * u;        // circular
    return std::cosh(t) * x0 + std::sinh(t) * u;                 // hyperbolic
  }
  // Generic level: exponential of the geodesic generator.  It lies in the
  // algebra, so the orbit stays on the level set for every r (also r < 0).
  const MatrixXd j = sig_.gram();
  const MatrixXd gen = (u * x0.transpose() - x0 * u.transpose()) * j / level_;
  return matrix_exp_raw(t * gen) * x0;
}

CurveSamples Hyperquadric::geodesic_curve(const VectorXd& x0, const VectorXd& u,
                                          const std::vector<double>& ts) const {
  std::vector<VectorXd> pts;
  pts.reserve(ts.size());
  for (double t : ts) pts.push_back(geodesic(x0, u, t));
  return CurveSamples(ts, pts);
}

// ---------------------------------------------------------------------------
// AffinePlane

AffinePlane::AffinePlane(const Signature& sig, VectorXd base,
                         const std::vector<VectorXd>& spanning)
    : SubmanifoldGeometry(sig, int(spanning.size())), base_(std::move(base)) {
  if (base_.size() != sig.n)
    throw DimensionError("AffinePlane: base point dimension mismatch");
  if (spanning.empty() || int(spanning.size()) >= sig.n)
    throw DimensionError("AffinePlane: need 1 <= dim < n directions");
  const auto frame = indefinite_orthonormalize(spanning, sig);
  dirs_ = frame.vectors;
  dir_signs_ = frame.signs;
}

double AffinePlane::membership_defect(const VectorXd& x) const {
  return normal_project(base_, x - base_).cwiseAbs().maxCoeff();
}

bool AffinePlane::contains(const VectorXd& x, double tol) const {
  if (x.size() != sig_.n)
    throw DimensionError("AffinePlane::contains: dimension mismatch");
  return membership_defect(x) <= tol;
}

VectorXd AffinePlane::tangent_project(const VectorXd& /*x*/,
                                      const VectorXd& v) const {
  if (v.size() != sig_.n)
    throw DimensionError("AffinePlane::tangent_project: dimension mismatch");
  VectorXd out = VectorXd::Zero(sig_.n);
  for (std::size_t i = 0; i < dirs_.size(); ++i)
    out += dir_signs_(Eigen::Index(i)) * j_inner(dirs_[i], v, sig_) * dirs_[i];
  return out;
}

VectorXd AffinePlane::normal_project(const VectorXd& x, const VectorXd& v) const {
  return v - tangent_project(x, v);
}

VectorXd AffinePlane::transport_rhs(const VectorXd&, const VectorXd&,
                                    const VectorXd& f, FrameFlavor) const {
  // Flat: parallel fields are constant.
  return VectorXd::Zero(f.size());
}

VectorXd AffinePlane::coords(const VectorXd& x) const {
  require_member(x, "AffinePlane::coords");
  VectorXd c(Eigen::Index(dirs_.size()));
  for (std::size_t i = 0; i < dirs_.size(); ++i)
    c(Eigen::Index(i)) =
        dir_signs_(Eigen::Index(i)) * j_inner(dirs_[i], x - base_, sig_);
  return c;
}

AffinePlane AffinePlane::tangent_plane(const Hyperquadric& hq,
                                       const VectorXd& x0) {
  hq.require_member(x0, "AffinePlane::tangent_plane");
  const Signature& sig = hq.ambient();
  // Project the coordinate directions onto T_x0 and extract a basis; causal
  // pivoting skips the (one) direction that degenerates under projection.
  std::vector<VectorXd> cand;
  for (int i = 0; i < sig.n; ++i)
    cand.push_back(hq.tangent_project(x0, VectorXd::Unit(sig.n, i)));
  const auto frame = orthonormalize_spanning(cand, sig.gram(), sig.n - 1);
  return AffinePlane(sig, x0, frame.vectors);
}

// ---------------------------------------------------------------------------
// Derivatives along curves

namespace {

std::vector<VectorXd> bundle_derivative(const SubmanifoldGeometry& geom,
                                        const CurveSamples& curve,
                                        const std::vector<VectorXd>& field,
                                        FrameFlavor flavor, int order) {
  if (field.size() != curve.size())
    throw GridError("bundle derivative: field/curve length mismatch");
  if (curve.size() < 3)
    throw GridError("bundle derivative: need at least 3 samples");
  // The field must actually live in the subbundle it is differentiated in.
  for (std::size_t k = 0; k < field.size(); ++k) {
    const VectorXd& x = curve.points[k];
    const VectorXd& z = field[k];
    const VectorXd off = flavor == FrameFlavor::Tangent
                             ? geom.normal_project(x, z)
                             : geom.tangent_project(x, z);
    if (off.cwiseAbs().maxCoeff() >
        kGuardTol * (1.0 + x.squaredNorm() + z.squaredNorm()))
      throw FlavorError(std::string("bundle derivative: field is not ") +
                        to_string(flavor) + " along the curve");
  }
  auto zdot = sampled_derivative(curve.times, field, order);
  for (std::size_t k = 0; k < zdot.size(); ++k)
    zdot[k] = flavor == FrameFlavor::Tangent
                  ? geom.tangent_project(curve.points[k], zdot[k])
                  : geom.normal_project(curve.points[k], zdot[k]);
  return zdot;
}

}  // namespace

std::vector<VectorXd> covariant_derivative(const SubmanifoldGeometry& geom,
                                           const CurveSamples& curve,
                                           const std::vector<VectorXd>& field,
                                           int order) {
  return bundle_derivative(geom, curve, field, FrameFlavor::Tangent, order);
}

std::vector<VectorXd> normal_derivative(const SubmanifoldGeometry& geom,
                                        const CurveSamples& curve,
                                        const std::vector<VectorXd>& field,
                                        int order) {
  return bundle_derivative(geom, curve, field, FrameFlavor::Normal, order);
}

}  // namespace pseudoroll
