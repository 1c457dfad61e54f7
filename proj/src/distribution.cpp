#include "pseudoroll/distribution.hpp"

#include <cmath>
#include <string>

#include "pseudoroll/finite_diff.hpp"

namespace pseudoroll {

namespace {

// Contraction S_ih = sum_k v_f^k gamma^i_kh, the frame-connection pairing
// <nabla_v e_h, e_i>.  Antisymmetric in (i,h) because the frame is
// orthonormal.
Eigen::MatrixXd contract_velocity(const Tensor3& gamma, const VectorXd& vf) {
  const int m = int(gamma.size());
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) s.row(i) = vf.transpose() * gamma[std::size_t(i)];
  return s;
}

// Strictly antisymmetric copy built from the upper triangle; the lift
// formulas are antisymmetric analytically, this removes the rounding
// asymmetry before the algebra element is assembled.
Eigen::MatrixXd antisymmetric_part(const Eigen::MatrixXd& w) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(w.rows(), w.cols());
  for (int i = 0; i < w.rows(); ++i)
    for (int j = i + 1; j < w.cols(); ++j) {
      out(i, j) = w(i, j);
      out(j, i) = -w(i, j);
    }
  return out;
}

void require_square(const Eigen::MatrixXd& a, int m, const char* who) {
  if (a.rows() != m || a.cols() != m)
    throw DimensionError(std::string(who) + ": expected a " +
                         std::to_string(m) + "x" + std::to_string(m) +
                         " matrix, got " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()));
}

void require_isometry(const Eigen::MatrixXd& a, const VectorXd& signs,
                      const char* who) {
  const Eigen::MatrixXd jm = signs.asDiagonal();
  const double defect = (a.transpose() * jm * a - jm).cwiseAbs().maxCoeff();
  if (defect > 1e-8 * (1.0 + a.squaredNorm()))
    throw GroupConstraintError(std::string(who) +
                               ": matrix is not an isometry of diag(signs)"
                               " (defect " +
                               std::to_string(defect) + ")");
}

}  // namespace

TrivializedCurve trivialize(const RollingTrajectory& traj,
                            const EmbeddedChart& chart,
                            const EmbeddedChart& chart_hat) {
  const Signature& sig = traj.surface.ambient();
  if (chart.ambient != sig || chart_hat.ambient != sig)
    throw SignatureError("trivialize: chart ambient signature mismatch");
  const int m = chart.chart.dim;
  if (chart_hat.chart.dim != m || chart_hat.chart.index != chart.chart.index)
    throw SignatureError(
        "trivialize: charts are not of a common dimension and index");
  if (m != traj.surface.dim())
    throw DimensionError("trivialize: chart does not cover the surface");

  const double root = std::sqrt(std::abs(traj.surface.level()));
  const CurveSamples rolling = traj.rolling_curve();
  const CurveSamples development = traj.development_curve();

  TrivializedCurve tc;
  tc.times = traj.times;
  tc.x.reserve(traj.times.size());
  tc.xhat.reserve(traj.times.size());
  tc.a.reserve(traj.times.size());
  tc.b.reserve(traj.times.size());

  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const VectorXd xk = chart.coords(rolling.points[k]);
    const VectorXd xhk = chart_hat.coords(development.points[k]);
    const Eigen::MatrixXd rinv = traj.rot_inverse(k);

    const std::vector<VectorXd> e = chart.ambient_frame(xk);
    const std::vector<VectorXd> ehat = chart_hat.ambient_frame(xhk);
    Eigen::MatrixXd a(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        a(i, j) = j_inner(ehat[std::size_t(i)],
                          rinv * e[std::size_t(j)], sig);

    // Canonical codimension-1 normals: x(t)/sqrt|r| on the surface, the
    // (constant) x0/sqrt|r| on the plane.  R^{-1} x(t) = x0, so B is the
    // constant [sign r]; it is still computed, not assumed, so that drift
    // shows up here as well.
    Eigen::MatrixXd b(1, 1);
    b(0, 0) = j_inner(traj.x0 / root, rinv * rolling.points[k] / root, sig);

    tc.x.push_back(xk);
    tc.xhat.push_back(xhk);
    tc.a.push_back(std::move(a));
    tc.b.push_back(std::move(b));
  }
  return tc;
}

Eigen::MatrixXd lift(const MetricChart& chart, const MetricChart& chart_hat,
                     const VectorXd& x, const VectorXd& xhat,
                     const Eigen::MatrixXd& a, const VectorXd& v) {
  const int m = chart.dim;
  if (chart_hat.dim != m || chart_hat.index != chart.index)
    throw SignatureError(
        "lift: charts are not of a common dimension and index");
  require_square(a, m, "lift");
  if (v.size() != m) throw DimensionError("lift: vector dimension mismatch");

  const ChartFrame frame = chart_frame(chart, x);
  const Eigen::MatrixXd jm = frame.signs.asDiagonal();
  require_isometry(a, frame.signs, "lift");

  const VectorXd vf = frame_coordinates(frame, v);
  const VectorXd vf_hat = jm * (a * vf);  // no-slip image of v, hat frame

  // w_ij = <nabla_v e_j, e_i>  -  sum_{r,s} eps_r eps_s a_rj a_si
  //                                  <nabla_{qv} e^_r, e^_s>
  // The second factor collapses to a congruence by A of the hat-side
  // contraction.
  const Eigen::MatrixXd s = contract_velocity(frame_connection(chart, x), vf);
  const Eigen::MatrixXd s_hat =
      contract_velocity(frame_connection(chart_hat, xhat), vf_hat);
  return antisymmetric_part(s - a.transpose() * jm * s_hat * jm * a);
}

Eigen::MatrixXd algebra_from_lift(const Eigen::MatrixXd& w,
                                  const VectorXd& signs) {
  if (w.rows() != w.cols() || w.rows() != signs.size())
    throw DimensionError("algebra_from_lift: size mismatch");
  // U = sum_{i<j} w_ij eps_i W_ij with W_ij = E_ij - eps_i eps_j E_ji
  // collapses to diag(eps) * antisym(w).
  return signs.asDiagonal() * antisymmetric_part(w);
}

Eigen::MatrixXd lift_normal(const NormalConnection& conn,
                            const NormalConnection& conn_hat,
                            const VectorXd& normal_signs, const VectorXd& x,
                            const VectorXd& xhat, const Eigen::MatrixXd& a,
                            const Eigen::MatrixXd& b, const VectorXd& v,
                            const MetricChart& chart,
                            const MetricChart& chart_hat) {
  if (!conn || !conn_hat)
    throw FrameError("lift_normal: missing normal connection");
  const int p = int(normal_signs.size());
  require_square(a, chart.dim, "lift_normal");
  require_square(b, p, "lift_normal");
  require_isometry(b, normal_signs, "lift_normal");

  const ChartFrame frame = chart_frame(chart, x);
  require_isometry(a, frame.signs, "lift_normal");
  const VectorXd vf = frame_coordinates(frame, v);
  const VectorXd vf_hat = frame.signs.asDiagonal() * (a * vf);

  const Tensor3 gperp = conn(x);
  const Tensor3 gperp_hat = conn_hat(xhat);
  if (int(gperp.size()) != p || int(gperp_hat.size()) != p)
    throw DimensionError("lift_normal: connection rank mismatch");

  const Eigen::MatrixXd jp = normal_signs.asDiagonal();
  const Eigen::MatrixXd s = contract_velocity(gperp, vf);
  const Eigen::MatrixXd s_hat = contract_velocity(gperp_hat, vf_hat);
  return antisymmetric_part(s - b.transpose() * jp * s_hat * jp * b);
}

std::vector<double> horizontality_residual(const TrivializedCurve& tc,
                                           const MetricChart& chart,
                                           const MetricChart& chart_hat,
                                           const NormalConnection& conn,
                                           const NormalConnection& conn_hat,
                                           const VectorXd* normal_signs) {
  require_grid(tc.times, 5, "horizontality_residual");
  if (tc.x.size() != tc.times.size() || tc.xhat.size() != tc.times.size() ||
      tc.a.size() != tc.times.size())
    throw DimensionError("horizontality_residual: ragged trivialization");
  const bool with_normal = bool(conn) && bool(conn_hat);
  if (with_normal && normal_signs == nullptr)
    throw FrameError("horizontality_residual: normal signs are required"
                     " alongside the normal connections");
  if (with_normal && tc.b.size() != tc.times.size())
    throw DimensionError("horizontality_residual: ragged trivialization");

  const auto dx = sampled_derivative(tc.times, tc.x, 5);
  const auto dxhat = sampled_derivative(tc.times, tc.xhat, 5);
  const auto da = sampled_derivative(tc.times, tc.a, 5);
  const std::vector<Eigen::MatrixXd> db =
      with_normal ? sampled_derivative(tc.times, tc.b, 5)
                  : std::vector<Eigen::MatrixXd>();

  std::vector<double> out(tc.times.size(), 0.0);
  for (std::size_t k = 0; k < tc.times.size(); ++k) {
    const ChartFrame frame = chart_frame(chart, tc.x[k]);
    const ChartFrame frame_hat = chart_frame(chart_hat, tc.xhat[k]);
    const Eigen::MatrixXd jm = frame.signs.asDiagonal();
    const VectorXd vf = frame_coordinates(frame, dx[k]);
    const VectorXd vf_hat = frame_coordinates(frame_hat, dxhat[k]);

    double resid = (vf_hat - jm * (tc.a[k] * vf)).cwiseAbs().maxCoeff();

    const Eigen::MatrixXd u = algebra_from_lift(
        lift(chart, chart_hat, tc.x[k], tc.xhat[k], tc.a[k], dx[k]),
        frame.signs);
    resid = std::max(resid,
                     (da[k] - tc.a[k] * u).cwiseAbs().maxCoeff());

    if (with_normal) {
      const Eigen::MatrixXd uperp = algebra_from_lift(
          lift_normal(conn, conn_hat, *normal_signs, tc.x[k], tc.xhat[k],
                      tc.a[k], tc.b[k], dx[k], chart, chart_hat),
          *normal_signs);
      resid = std::max(resid,
                       (db[k] - tc.b[k] * uperp).cwiseAbs().maxCoeff());
    }
    out[k] = resid;
  }
  return out;
}

std::vector<CausalTracePoint> causal_trace(
    const std::vector<double>& times, const std::vector<Eigen::MatrixXd>& a,
    const VectorXd& signs, double tol) {
  require_grid(times, 5, "causal_trace");
  if (a.size() != times.size())
    throw DimensionError("causal_trace: one matrix per sample expected");
  const Eigen::MatrixXd jm = signs.asDiagonal();
  for (const auto& ak : a) {
    require_square(ak, int(signs.size()), "causal_trace");
    require_isometry(ak, signs, "causal_trace");
  }

  const auto da = sampled_derivative(times, a, 5);
  std::vector<CausalTracePoint> out;
  out.reserve(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    // Left-translate to the algebra: U = A^{-1} A' with A^{-1} = J A^T J.
    const Eigen::MatrixXd u = jm * a[k].transpose() * jm * da[k];
    const double value = -(u * u).trace();
    const bool still = u.norm() <= tol;
    out.push_back({times[k], value, classify_causal_value(value, still, tol)});
  }
  return out;
}

std::vector<double> causal_trace_formula(const MetricChart& chart,
                                         const MetricChart& chart_hat,
                                         const TrivializedCurve& tc) {
  require_grid(tc.times, 5, "causal_trace_formula");
  if (tc.x.size() != tc.times.size() || tc.xhat.size() != tc.times.size() ||
      tc.a.size() != tc.times.size())
    throw DimensionError("causal_trace_formula: ragged trivialization");

  const auto dx = sampled_derivative(tc.times, tc.x, 5);
  const auto dxhat = sampled_derivative(tc.times, tc.xhat, 5);

  std::vector<double> out;
  out.reserve(tc.times.size());
  for (std::size_t k = 0; k < tc.times.size(); ++k) {
    const ChartFrame frame = chart_frame(chart, tc.x[k]);
    const ChartFrame frame_hat = chart_frame(chart_hat, tc.xhat[k]);
    const VectorXd& eps = frame.signs;
    require_isometry(tc.a[k], eps, "causal_trace_formula");

    const VectorXd vf = frame_coordinates(frame, dx[k]);
    const VectorXd vf_hat = frame_coordinates(frame_hat, dxhat[k]);
    const Eigen::MatrixXd s =
        contract_velocity(frame_connection(chart, tc.x[k]), vf);
    const Eigen::MatrixXd s_hat =
        contract_velocity(frame_connection(chart_hat, tc.xhat[k]), vf_hat);

    // c_ih = sum_{r,s} eps_r eps_s a_rh a_si factors through p = A^T eps.
    const VectorXd p = tc.a[k].transpose() * eps;
    double value = 0.0;
    const int m = chart.dim;
    for (int i = 0; i < m; ++i)
      for (int h = 0; h < m; ++h) {
        const double term = s(i, h) - p(i) * p(h) * s_hat(i, h);
        value += eps(i) * eps(h) * term * term;
      }
    out.push_back(value);
  }
  return out;
}

}  // namespace pseudoroll
