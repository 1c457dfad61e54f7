#include "pseudoroll/intrinsic.hpp"

#include <cmath>

namespace pseudoroll {

std::vector<VectorXd> ParallelFrame::field(int i) const {
  std::vector<VectorXd> out;
  out.reserve(samples());
  for (const auto& fs : vectors) out.push_back(fs.at(std::size_t(i)));
  return out;
}

double ParallelFrame::orthonormality_deviation() const {
  double worst = 0.0;
  for (const auto& fs : vectors)
    for (std::size_t i = 0; i < fs.size(); ++i)
      for (std::size_t j = 0; j < fs.size(); ++j) {
        const double want = i == j ? signs(Eigen::Index(i)) : 0.0;
        worst =
            std::max(worst, std::abs(j_inner(fs[i], fs[j], sig) - want));
      }
  return worst;
}

ParallelFrame parallel_frame_along(const SubmanifoldGeometry& geom,
                                   const CurveSamples& curve,
                                   const std::vector<VectorXd>& initial,
                                   FrameFlavor flavor) {
  if (initial.empty()) throw FrameError("parallel_frame_along: empty frame");
  require_grid(curve.times, 2, "parallel_frame_along");
  const Signature& sig = geom.ambient();
  const VectorXd& x0 = curve.points.front();
  geom.require_member(x0, "parallel_frame_along");

  // Validate flavor and orthonormality of the initial data.
  VectorXd signs(Eigen::Index(initial.size()));
  for (std::size_t i = 0; i < initial.size(); ++i) {
    const VectorXd& f = initial[i];
    if (f.size() != sig.n)
      throw DimensionError("parallel_frame_along: frame dimension mismatch");
    const VectorXd off = flavor == FrameFlavor::Tangent
                             ? geom.normal_project(x0, f)
                             : geom.tangent_project(x0, f);
    if (off.cwiseAbs().maxCoeff() > 1e-8 * (1.0 + f.squaredNorm()))
      throw FrameError(std::string("parallel_frame_along: field ") +
                       std::to_string(i) + " is not " + to_string(flavor) +
                       " at the initial point");
    const double q = j_inner(f, f, sig);
    if (std::abs(std::abs(q) - 1.0) > 1e-8)
      throw FrameError("parallel_frame_along: initial frame is not unit");
    signs(Eigen::Index(i)) = q > 0 ? 1.0 : -1.0;
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(j_inner(f, initial[j], sig)) > 1e-8)
        throw FrameError(
            "parallel_frame_along: initial frame is not J-orthogonal");
  }

  // One RK4 step per grid interval, with the curve (and its velocity) read
  // from the local cubic interpolant so the stage points exist off-grid.
  const auto rhs = [&](double t, const VectorXd& f) {
    const VectorXd x = curve.value_at(t);
    const VectorXd v = curve.derivative_at(t);
    return geom.transport_rhs(x, v, f, flavor);
  };

  ParallelFrame out;
  out.sig = sig;
  out.times = curve.times;
  out.signs = signs;
  out.flavor = flavor;
  out.vectors.resize(curve.size());
  out.vectors[0] = initial;

  for (std::size_t k = 0; k + 1 < curve.size(); ++k) {
    const double t = curve.times[k];
    const double h = curve.times[k + 1] - t;
    out.vectors[k + 1].reserve(initial.size());
    for (const VectorXd& f : out.vectors[k]) {
      const VectorXd k1 = rhs(t, f);
      const VectorXd k2 = rhs(t + 0.5 * h, f + 0.5 * h * k1);
      const VectorXd k3 = rhs(t + 0.5 * h, f + 0.5 * h * k2);
      const VectorXd k4 = rhs(t + h, f + h * k3);
      out.vectors[k + 1].push_back(f +
                                   (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4));
    }
  }
  return out;
}

namespace {

void require_parallel(const SubmanifoldGeometry& geom,
                      const CurveSamples& curve, const ParallelFrame& frame,
                      double tol, const char* who) {
  if (frame.samples() != curve.size())
    throw FrameError(std::string(who) + ": frame/curve grid mismatch");
  for (int i = 0; i < frame.fields(); ++i) {
    const auto field = frame.field(i);
    const auto deriv = frame.flavor == FrameFlavor::Tangent
                           ? covariant_derivative(geom, curve, field)
                           : normal_derivative(geom, curve, field);
    for (const auto& d : deriv)
      if (d.cwiseAbs().maxCoeff() > tol)
        throw FrameError(std::string(who) +
                         ": frame field is not parallel along the curve");
  }
}

Eigen::MatrixXd time_average(const std::vector<Eigen::MatrixXd>& ms) {
  Eigen::MatrixXd acc =
      Eigen::MatrixXd::Zero(ms.front().rows(), ms.front().cols());
  for (const auto& m : ms) acc += m;
  return acc / double(ms.size());
}

double max_deviation(const std::vector<Eigen::MatrixXd>& ms,
                     const Eigen::MatrixXd& mean) {
  double worst = 0.0;
  for (const auto& m : ms)
    worst = std::max(worst, (m - mean).cwiseAbs().maxCoeff());
  return worst;
}

}  // namespace

ConfigurationMatrices configuration_matrices(const RollingTrajectory& traj,
                                             const ParallelFrame& e,
                                             const ParallelFrame& ehat,
                                             const ParallelFrame* n,
                                             const ParallelFrame* nhat,
                                             double frame_tol) {
  const Hyperquadric& hq = traj.surface;
  const Signature& sig = hq.ambient();
  const CurveSamples x = traj.rolling_curve();
  const CurveSamples xhat = traj.development_curve();
  const AffinePlane plane = AffinePlane::tangent_plane(hq, traj.x0);

  if (e.flavor != FrameFlavor::Tangent || ehat.flavor != FrameFlavor::Tangent)
    throw FrameError("configuration_matrices: e-frames must be tangent");
  if (e.fields() != hq.dim() || ehat.fields() != hq.dim())
    throw FrameError(
        "configuration_matrices: tangent frames must have m fields");
  require_parallel(hq, x, e, frame_tol, "configuration_matrices");
  require_parallel(plane, xhat, ehat, frame_tol, "configuration_matrices");

  const std::size_t n_samples = traj.times.size();
  std::vector<Eigen::MatrixXd> a_t(n_samples);
  for (std::size_t k = 0; k < n_samples; ++k) {
    const Eigen::MatrixXd rinv = traj.rot_inverse(k);
    Eigen::MatrixXd a(hq.dim(), hq.dim());
    for (int i = 0; i < hq.dim(); ++i)
      for (int j = 0; j < hq.dim(); ++j)
        a(i, j) = j_inner(ehat.vectors[k][std::size_t(i)],
                          rinv * e.vectors[k][std::size_t(j)], sig);
    a_t[k] = std::move(a);
  }

  // Normal side.  For codimension 1 default to the canonical unit normals
  // x(t)/sqrt|r| on the hyperquadric and x0/sqrt|r| on the plane.
  std::vector<Eigen::MatrixXd> b_t(n_samples);
  if (n != nullptr && nhat != nullptr) {
    if (n->flavor != FrameFlavor::Normal ||
        nhat->flavor != FrameFlavor::Normal)
      throw FrameError("configuration_matrices: n-frames must be normal");
    require_parallel(hq, x, *n, frame_tol, "configuration_matrices");
    require_parallel(plane, xhat, *nhat, frame_tol, "configuration_matrices");
    for (std::size_t k = 0; k < n_samples; ++k) {
      const Eigen::MatrixXd rinv = traj.rot_inverse(k);
      Eigen::MatrixXd b(nhat->fields(), n->fields());
      for (int i = 0; i < nhat->fields(); ++i)
        for (int j = 0; j < n->fields(); ++j)
          b(i, j) = j_inner(nhat->vectors[k][std::size_t(i)],
                            rinv * n->vectors[k][std::size_t(j)], sig);
      b_t[k] = std::move(b);
    }
  } else if (n == nullptr && nhat == nullptr) {
    const double scale = std::sqrt(std::abs(hq.level()));
    for (std::size_t k = 0; k < n_samples; ++k) {
      const Eigen::MatrixXd rinv = traj.rot_inverse(k);
      Eigen::MatrixXd b(1, 1);
      b(0, 0) = j_inner(traj.x0 / scale, rinv * (x.points[k] / scale), sig);
      b_t[k] = std::move(b);
    }
  } else {
    throw FrameError(
        "configuration_matrices: pass both normal frames or neither");
  }

  ConfigurationMatrices out;
  out.a = time_average(a_t);
  out.b = time_average(b_t);
  out.deviation =
      std::max(max_deviation(a_t, out.a), max_deviation(b_t, out.b));
  return out;
}

int freedom_dimension(const CurveSamples& curve, const ParallelFrame& frame,
                      double tol) {
  if (frame.flavor != FrameFlavor::Tangent)
    throw FrameError("freedom_dimension: needs a tangent frame");
  if (frame.samples() != curve.size())
    throw FrameError("freedom_dimension: frame/curve grid mismatch");
  // A parallel field sum_j c_j e_j (constant coefficients) is orthogonal to
  // the velocity at every sample iff M c' = 0 for the matrix of products
  // M_kj = <e_j(t_k), x'(t_k)> and c'_j = eps_j c_j, so the freedom dimension
  // is dim ker M = m - rank M.  Uniform-order stencils keep the boundary
  // rows as accurate as the rest, else their truncation error injects a
  // spurious singular value above the rank threshold.
  const auto vel = curve.velocity(5);
  Eigen::MatrixXd m(curve.size(), frame.fields());
  for (std::size_t k = 0; k < curve.size(); ++k)
    for (int j = 0; j < frame.fields(); ++j)
      m(Eigen::Index(k), j) =
          j_inner(frame.vectors[k][std::size_t(j)], vel[k], frame.sig);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return frame.fields();
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * sv(0)) ++rank;
  return frame.fields() - rank;
}

Eigen::MatrixXd freedom_action(const Eigen::MatrixXd& a, const VectorXd& signs,
                               int k, const Eigen::MatrixXd& a_prime,
                               double tol) {
  const int m = int(signs.size());
  if (a.rows() != m || a.cols() != m)
    throw DimensionError("freedom_action: configuration matrix is not m x m");
  if (k < 0 || k > m) throw DimensionError("freedom_action: k out of range");
  if (a_prime.rows() != k || a_prime.cols() != k)
    throw DimensionError("freedom_action: A' must be k x k");

  const Eigen::MatrixXd jm = signs.asDiagonal();
  if ((a.transpose() * jm * a - jm).cwiseAbs().maxCoeff() > tol)
    throw GroupConstraintError(
        "freedom_action: A is not a configuration matrix for these signs");

  if (k > 0) {
    const Eigen::MatrixXd jk =
        VectorXd(signs.head(k)).asDiagonal().toDenseMatrix();
    if ((a_prime.transpose() * jk * a_prime - jk).cwiseAbs().maxCoeff() > tol)
      throw SignatureError(
          "freedom_action: A' is not an isometry of the induced signature");
    if ((jk * a_prime).determinant() <= 0)
      throw SignatureError("freedom_action: A' must preserve orientation");
  }

  Eigen::MatrixXd block = Eigen::MatrixXd::Zero(m, m);
  if (k > 0) block.topLeftCorner(k, k) = a_prime;
  for (int i = k; i < m; ++i) block(i, i) = signs(i);
  return a * jm * block;
}

std::vector<Eigen::MatrixXd> extend_to_extrinsic(const Eigen::MatrixXd& p0,
                                                 const ParallelFrame& n,
                                                 const ParallelFrame& nhat,
                                                 double tol) {
  if (n.flavor != FrameFlavor::Normal || nhat.flavor != FrameFlavor::Normal)
    throw FrameError("extend_to_extrinsic: needs normal frames");
  if (n.fields() != nhat.fields())
    throw FrameError("extend_to_extrinsic: frame sizes differ");
  if (n.samples() != nhat.samples())
    throw FrameError("extend_to_extrinsic: frame grids differ");
  if ((n.signs - nhat.signs).cwiseAbs().maxCoeff() != 0.0)
    throw SignatureError(
        "extend_to_extrinsic: normal sign patterns must agree");
  const int cod = n.fields();
  if (p0.rows() != cod || p0.cols() != cod)
    throw DimensionError("extend_to_extrinsic: p0 dimension mismatch");

  const Eigen::MatrixXd jn = n.signs.asDiagonal();
  if ((p0.transpose() * jn * p0 - jn).cwiseAbs().maxCoeff() > tol)
    throw SignatureError(
        "extend_to_extrinsic: p0 is not an isometry of the normal signature");

  // p(t) n_l(t) = sum_r p0_rl n^_r(t): assemble the ambient operator through
  // the J-dual covectors sign_l (J n_l)^T, which kill the tangent spaces.
  const Eigen::MatrixXd j = n.sig.gram();
  std::vector<Eigen::MatrixXd> out;
  out.reserve(n.samples());
  for (std::size_t k = 0; k < n.samples(); ++k) {
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n.sig.n, n.sig.n);
    for (int l = 0; l < cod; ++l) {
      VectorXd image = VectorXd::Zero(n.sig.n);
      for (int r = 0; r < cod; ++r)
        image += p0(r, l) * nhat.vectors[k][std::size_t(r)];
      p += image * (n.signs(l) * (j * n.vectors[k][std::size_t(l)])).transpose();
    }
    out.push_back(std::move(p));
  }
  return out;
}

bool geodesic_pair_check(const SubmanifoldGeometry& geom,
                         const CurveSamples& curve,
                         const SubmanifoldGeometry& geom_hat,
                         const CurveSamples& curve_hat, double tol) {
  if (curve.size() != curve_hat.size())
    throw GridError("geodesic_pair_check: curve grids differ");
  // Covariant acceleration = tangent projection of the plain second
  // derivative; differentiate the positions once (direct second-derivative
  // stencils) instead of stacking two first-derivative passes, which would
  // amplify boundary truncation error past any useful tolerance.
  const auto vel = curve.velocity(5);
  const auto vel_hat = curve_hat.velocity(5);
  const auto acc = sampled_second_derivative(curve.times, curve.points);
  const auto acc_hat =
      sampled_second_derivative(curve_hat.times, curve_hat.points);
  for (std::size_t k = 0; k < curve.size(); ++k) {
    const VectorXd cov = geom.tangent_project(curve.points[k], acc[k]);
    const VectorXd cov_hat =
        geom_hat.tangent_project(curve_hat.points[k], acc_hat[k]);
    if (cov.cwiseAbs().maxCoeff() > tol) return false;
    if (cov_hat.cwiseAbs().maxCoeff() > tol) return false;
    const double q = j_inner(vel[k], vel[k], geom.ambient());
    const double qh = j_inner(vel_hat[k], vel_hat[k], geom_hat.ambient());
    if (std::abs(q - qh) > tol) return false;
  }
  return true;
}

}  // namespace pseudoroll
