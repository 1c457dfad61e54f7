#include "pseudoroll/rolling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pseudoroll {

Control Control::constant(VectorXd u) {
  return Control{[u = std::move(u)](double) { return u; }};
}

Control Control::sampled(std::vector<double> ts, std::vector<VectorXd> values) {
  if (ts.size() != values.size() || ts.size() < 2)
    throw GridError("Control::sampled: need matching times/values, >= 2");
  require_grid(ts, 2, "Control::sampled");
  return Control{[ts = std::move(ts), values = std::move(values)](double t) {
    // Piecewise-linear, clamped outside the sample range.
    if (t <= ts.front()) return values.front();
    if (t >= ts.back()) return values.back();
    const auto it = std::upper_bound(ts.begin(), ts.end(), t);
    const std::size_t hi = std::size_t(std::distance(ts.begin(), it));
    const std::size_t lo = hi - 1;
    const double w = (t - ts[lo]) / (ts[hi] - ts[lo]);
    return VectorXd((1.0 - w) * values[lo] + w * values[hi]);
  }};
}

Control Control::callback(std::function<VectorXd(double)> fn) {
  return Control{std::move(fn)};
}

CurveSamples RollingTrajectory::rolling_curve() const {
  std::vector<VectorXd> pts;
  pts.reserve(rot.size());
  for (const auto& r : rot) pts.push_back(r * x0);
  return CurveSamples(times, pts);
}

CurveSamples RollingTrajectory::development_curve() const {
  std::vector<VectorXd> pts;
  pts.reserve(s.size());
  for (const auto& sk : s) pts.push_back(x0 + sk);
  return CurveSamples(times, pts);
}

double RollingTrajectory::constraint_drift() const {
  const Eigen::MatrixXd j = surface.ambient().gram();
  double worst = 0.0;
  for (const auto& r : rot)
    worst = std::max(worst,
                     (r.transpose() * j * r - j).cwiseAbs().maxCoeff());
  return worst;
}

Eigen::MatrixXd RollingTrajectory::rot_inverse(std::size_t k) const {
  return j_adjoint(rot.at(k), surface.ambient());
}

RollingTrajectory integrate_kinematics(const Hyperquadric& hq,
                                       const VectorXd& x0, const Control& u,
                                       const std::vector<double>& grid) {
  hq.require_member(x0, "integrate_kinematics");
  require_grid(grid, 2, "integrate_kinematics");
  const Signature& sig = hq.ambient();
  const double r = hq.level();
  const VectorXd jx0 = sig.gram() * x0;

  const auto control_at = [&](double t) {
    VectorXd ut = u(t);
    if (ut.size() != sig.n)
      throw DimensionError("integrate_kinematics: control dimension mismatch");
    if (std::abs(j_inner(ut, x0, sig)) >
        1e-8 * (1.0 + ut.norm() * x0.norm()))
      throw OrthogonalityError(
          "integrate_kinematics: control is not J-orthogonal to x0");
    return ut;
  };

  RollingTrajectory out{hq, x0, grid, {}, {}, {}};
  out.s.reserve(grid.size());
  out.rot.reserve(grid.size());
  out.controls.reserve(grid.size());

  VectorXd s = VectorXd::Zero(sig.n);
  Eigen::MatrixXd rot = Eigen::MatrixXd::Identity(sig.n, sig.n);
  out.s.push_back(s);
  out.rot.push_back(rot);
  out.controls.push_back(control_at(grid.front()));

  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    const double h = grid[k + 1] - grid[k];
    const double tm = 0.5 * (grid[k] + grid[k + 1]);
    const VectorXd um = control_at(tm);
    // Omega = (u x0^T - x0 u^T) J / r, written with J folded into the
    // column factors.  The step multiplier exp(h Omega) is exactly
    // pseudo-orthogonal, so the group constraint never drifts beyond
    // accumulated rounding.
    const VectorXd ju = sig.gram() * um;
    const Eigen::MatrixXd omega =
        (um * jx0.transpose() - x0 * ju.transpose()) / r;
    rot = rot * matrix_exp_raw(h * omega);
    s += h * um;
    out.s.push_back(s);
    out.rot.push_back(rot);
    out.controls.push_back(control_at(grid[k + 1]));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Verification of the defining conditions

bool VerificationReport::pass() const { return max_residual() <= tol; }

double VerificationReport::max_residual() const {
  return std::max({contact, tangency, orientation, no_slip, no_twist_tangent,
                   no_twist_normal});
}

std::string VerificationReport::summary() const {
  std::ostringstream os;
  os << "contact=" << contact << " tangency=" << tangency
     << " orientation=" << orientation << " no_slip=" << no_slip
     << " no_twist_tangent=" << no_twist_tangent
     << " no_twist_normal=" << no_twist_normal << " tol=" << tol << " -> "
     << (pass() ? "pass" : "FAIL");
  return os.str();
}

VerificationReport verify_rolling(const RollingTrajectory& traj, double tol) {
  const Hyperquadric& hq = traj.surface;
  const Signature& sig = hq.ambient();
  const double r = hq.level();
  const std::size_t n_samples = traj.times.size();
  const CurveSamples x = traj.rolling_curve();
  const CurveSamples xhat = traj.development_curve();
  const AffinePlane plane = AffinePlane::tangent_plane(hq, traj.x0);

  VerificationReport rep;
  rep.tol = tol;

  // (i) contact: both curves stay where they must.
  for (std::size_t k = 0; k < n_samples; ++k) {
    rep.contact = std::max(
        rep.contact, std::abs(j_inner(x.points[k], x.points[k], sig) - r));
    rep.contact = std::max(
        rep.contact,
        plane.normal_project(traj.x0, xhat.points[k] - traj.x0)
            .cwiseAbs()
            .maxCoeff());
  }

  // (ii) tangency: R^{-1} carries T_{x(t)} into the plane directions, i.e.
  // R^{-1} b is J-orthogonal to x0 for every tangent-basis vector b.
  for (std::size_t k = 0; k < n_samples; ++k) {
    const Eigen::MatrixXd rinv = traj.rot_inverse(k);
    std::vector<VectorXd> cand;
    for (int i = 0; i < sig.n; ++i)
      cand.push_back(hq.tangent_project(x.points[k], VectorXd::Unit(sig.n, i)));
    const auto basis = orthonormalize_spanning(cand, sig.gram(), sig.n - 1);
    for (const auto& b : basis.vectors)
      rep.tangency =
          std::max(rep.tangency, std::abs(j_inner(rinv * b, traj.x0, sig)));
  }

  // (iii) orientation: the identity component, at every sample.
  for (std::size_t k = 0; k < n_samples; ++k) {
    const auto g = GroupElement::trusted(traj.rot[k], sig);
    if (orientation_component(g) != Orientation::PP) {
      rep.orientation = 1.0;
      break;
    }
  }

  // (iv) no slip: x^' = R^{-1} x'.  Second-order differences on both curves;
  // halving the grid step must shrink this residual by ~4.
  {
    const auto dx = x.velocity(2);
    const auto dxh = xhat.velocity(2);
    for (std::size_t k = 0; k < n_samples; ++k) {
      const VectorXd lhs = dxh[k];
      const VectorXd rhs = traj.rot_inverse(k) * dx[k];
      rep.no_slip = std::max(rep.no_slip, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  }

  // (v) no twist, tangential: R^{-1}(D Z/dt) = D^(R^{-1} Z)/dt for tangent
  // test fields Z.  Projected coordinate fields Z_c(t) = P_{x(t)} c probe all
  // directions without being parallel themselves.
  {
    for (int c = 0; c < sig.n; ++c) {
      std::vector<VectorXd> z(n_samples), z_moved(n_samples);
      for (std::size_t k = 0; k < n_samples; ++k) {
        z[k] = hq.tangent_project(x.points[k], VectorXd::Unit(sig.n, c));
        z_moved[k] = traj.rot_inverse(k) * z[k];
      }
      const auto dz = covariant_derivative(hq, x, z, 5);
      const auto dzm = covariant_derivative(plane, xhat, z_moved, 5);
      for (std::size_t k = 0; k < n_samples; ++k) {
        const VectorXd lhs = traj.rot_inverse(k) * dz[k];
        rep.no_twist_tangent = std::max(
            rep.no_twist_tangent, (lhs - dzm[k]).cwiseAbs().maxCoeff());
      }
    }
  }

  // (vi) no twist, normal: same with a non-parallel normal test field
  // Psi(t) = (1 + t/2) x(t).
  {
    std::vector<VectorXd> psi(n_samples), psi_moved(n_samples);
    for (std::size_t k = 0; k < n_samples; ++k) {
      psi[k] = (1.0 + 0.5 * traj.times[k]) * x.points[k];
      psi_moved[k] = traj.rot_inverse(k) * psi[k];
    }
    const auto dpsi = normal_derivative(hq, x, psi, 5);
    const auto dpsim = normal_derivative(plane, xhat, psi_moved, 5);
    for (std::size_t k = 0; k < n_samples; ++k) {
      const VectorXd lhs = traj.rot_inverse(k) * dpsi[k];
      rep.no_twist_normal = std::max(rep.no_twist_normal,
                                     (lhs - dpsim[k]).cwiseAbs().maxCoeff());
    }
  }

  return rep;
}

std::vector<VectorXd> rolling_transport(const RollingTrajectory& traj,
                                        const VectorXd& y0,
                                        FrameFlavor flavor) {
  const Hyperquadric& hq = traj.surface;
  if (y0.size() != hq.ambient().n)
    throw DimensionError("rolling_transport: dimension mismatch");
  const VectorXd off = flavor == FrameFlavor::Tangent
                           ? hq.normal_project(traj.x0, y0)
                           : hq.tangent_project(traj.x0, y0);
  if (off.cwiseAbs().maxCoeff() > 1e-8 * (1.0 + y0.squaredNorm()))
    throw FlavorError(std::string("rolling_transport: Y0 is not ") +
                      to_string(flavor) + " at x0");
  std::vector<VectorXd> out;
  out.reserve(traj.rot.size());
  for (const auto& rk : traj.rot) out.push_back(rk * y0);
  return out;
}

CausalReport causal_report(const RollingTrajectory& traj) {
  const Signature& sig = traj.surface.ambient();
  const double r = traj.surface.level();
  // Five-point windows throughout: the causal identities are certified at
  // every sample, so the end stencils must not be lower order.
  const CurveSamples x = traj.rolling_curve();
  const CurveSamples xhat = traj.development_curve();
  const auto dx = x.velocity(5);
  const auto dxh = xhat.velocity(5);
  const auto drot = sampled_derivative(traj.times, traj.rot, 5);

  CausalReport rep;
  rep.samples.reserve(traj.times.size());
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    CausalSample s;
    s.t = traj.times[k];
    s.dx2 = j_inner(dx[k], dx[k], sig);
    s.dxhat2 = j_inner(dxh[k], dxh[k], sig);
    s.u2 = j_inner(traj.controls[k], traj.controls[k], sig);
    s.rdot2 = matrix_j_inner(drot[k], drot[k], sig);
    s.control_class =
        classify_causal_value(s.u2, traj.controls[k].isZero(0.0));
    rep.samples.push_back(s);
    rep.max_velocity_mismatch =
        std::max({rep.max_velocity_mismatch, std::abs(s.dx2 - s.u2),
                  std::abs(s.dxhat2 - s.u2)});
    rep.max_rotation_mismatch =
        std::max(rep.max_rotation_mismatch, std::abs(s.rdot2 - 2.0 * s.u2 / r));
  }
  return rep;
}

}  // namespace pseudoroll
