#include "pseudoroll/charts.hpp"

#include <cmath>
#include <limits>

#include "pseudoroll/indefinite.hpp"

namespace pseudoroll {

namespace {

// cbrt(machine eps): optimal central-difference step scale for first
// derivatives of smooth O(1) functions.
const double kFdStep = std::cbrt(std::numeric_limits<double>::epsilon());

Eigen::MatrixXd metric_at(const MetricChart& chart, const VectorXd& x) {
  if (!chart.metric) throw MetricDegeneracyError("chart has no metric");
  Eigen::MatrixXd g = chart.metric(x);
  if (g.rows() != chart.dim || g.cols() != chart.dim)
    throw DimensionError("chart metric has wrong dimensions");
  return g;
}

Eigen::MatrixXd inverse_metric(const Eigen::MatrixXd& g) {
  Eigen::FullPivLU<Eigen::MatrixXd> lu(g);
  // Relative pivot threshold: a metric this far from invertible cannot
  // support Christoffel symbols at working precision.
  lu.setThreshold(1e-10);
  if (!lu.isInvertible())
    throw MetricDegeneracyError("chart metric is numerically singular");
  return lu.inverse();
}

}  // namespace

Tensor3 christoffel(const MetricChart& chart, const VectorXd& x) {
  if (x.size() != chart.dim)
    throw DimensionError("christoffel: chart point dimension mismatch");
  if (chart.christoffel_closed) return chart.christoffel_closed(x);

  const int m = chart.dim;
  const Eigen::MatrixXd ginv = inverse_metric(metric_at(chart, x));
  const double h = kFdStep * std::max(1.0, chart.fd_scale);

  // dg[k] = d g / d x^k by central differences.
  std::vector<Eigen::MatrixXd> dg(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    VectorXd xp = x, xm = x;
    xp(k) += h;
    xm(k) -= h;
    dg[std::size_t(k)] =
        (metric_at(chart, xp) - metric_at(chart, xm)) / (2.0 * h);
  }

  // Gamma^i_kh = 1/2 g^{il} (d_k g_lh + d_h g_lk - d_l g_kh).
  Tensor3 gamma(std::size_t(m), Eigen::MatrixXd::Zero(m, m));
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k)
      for (int hh = 0; hh < m; ++hh) {
        double acc = 0.0;
        for (int l = 0; l < m; ++l)
          acc += ginv(i, l) * (dg[std::size_t(k)](l, hh) +
                               dg[std::size_t(hh)](l, k) -
                               dg[std::size_t(l)](k, hh));
        gamma[std::size_t(i)](k, hh) = 0.5 * acc;
      }
  // Symmetrize in the lower pair: torsion-freeness is exact, the finite
  // differences are not.
  for (int i = 0; i < m; ++i)
    gamma[std::size_t(i)] =
        0.5 * (gamma[std::size_t(i)] +
               Eigen::MatrixXd(gamma[std::size_t(i)].transpose()));
  return gamma;
}

ChartFrame chart_frame(const MetricChart& chart, const VectorXd& x) {
  const Eigen::MatrixXd g = metric_at(chart, x);
  std::vector<VectorXd> basis;
  for (int i = 0; i < chart.dim; ++i)
    basis.push_back(VectorXd::Unit(chart.dim, i));
  const auto f = orthonormalize_with_gram(basis, g);
  ChartFrame out;
  out.basis.resize(chart.dim, chart.dim);
  for (int i = 0; i < chart.dim; ++i) out.basis.col(i) = f.vectors[std::size_t(i)];
  out.signs = f.signs;
  if (int((out.signs.array() < 0).count()) != chart.index)
    throw SignatureError(
        "chart_frame: frame index disagrees with the declared chart index");
  return out;
}

Tensor3 frame_connection(const MetricChart& chart, const VectorXd& x) {
  const int m = chart.dim;
  const Eigen::MatrixXd g = metric_at(chart, x);
  const Tensor3 gamma = christoffel(chart, x);
  const ChartFrame frame = chart_frame(chart, x);
  const double h = kFdStep * std::max(1.0, chart.fd_scale);

  // dS[k] = d(frame basis)/d x^k by central differences; the pivoted
  // orthonormalization is smooth on the diagonal-metric charts used here.
  std::vector<Eigen::MatrixXd> ds(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    VectorXd xp = x, xm = x;
    xp(k) += h;
    xm(k) -= h;
    ds[std::size_t(k)] =
        (chart_frame(chart, xp).basis - chart_frame(chart, xm).basis) /
        (2.0 * h);
  }

  // (nabla_{e_k} e_h)^b = sum_a S^a_k ( d_a S^b_h + Gamma^b_ag S^g_h ),
  // then gamma^i_kh = g( nabla_{e_k} e_h, e_i ).
  Tensor3 out(std::size_t(m), Eigen::MatrixXd::Zero(m, m));
  for (int k = 0; k < m; ++k)
    for (int hh = 0; hh < m; ++hh) {
      VectorXd nabla = VectorXd::Zero(m);
      for (int a = 0; a < m; ++a) {
        const double ska = frame.basis(a, k);
        if (ska == 0.0) continue;
        VectorXd term = ds[std::size_t(a)].col(hh);
        for (int b = 0; b < m; ++b) {
          double acc = 0.0;
          for (int gg = 0; gg < m; ++gg)
            acc += gamma[std::size_t(b)](a, gg) * frame.basis(gg, hh);
          term(b) += acc;
        }
        nabla += ska * term;
      }
      for (int i = 0; i < m; ++i)
        out[std::size_t(i)](k, hh) = nabla.dot(g * frame.basis.col(i));
    }
  return out;
}

VectorXd frame_coordinates(const ChartFrame& frame, const VectorXd& v) {
  return frame.basis.fullPivLu().solve(v);
}

std::vector<VectorXd> EmbeddedChart::ambient_frame(const VectorXd& x) const {
  const ChartFrame f = chart_frame(chart, x);
  const Eigen::MatrixXd jac = jacobian(x);
  std::vector<VectorXd> out;
  out.reserve(std::size_t(chart.dim));
  for (int i = 0; i < chart.dim; ++i) out.push_back(jac * f.basis.col(i));
  return out;
}

EmbeddedChart lorentz_hyperquadric_chart() {
  EmbeddedChart ec;
  ec.ambient = Signature(3, 1);
  ec.chart.dim = 2;
  ec.chart.index = 1;
  ec.chart.fd_scale = 1.0;
  ec.chart.metric = [](const VectorXd& x) {
    Eigen::MatrixXd g(2, 2);
    const double c = std::cosh(x(0));
    g << -1.0, 0.0, 0.0, c * c;
    return g;
  };
  ec.chart.christoffel_closed = [](const VectorXd& x) {
    // Nonzero symbols of diag(-1, cosh^2 a): Gamma^a_bb = sinh a cosh a,
    // Gamma^b_ab = Gamma^b_ba = tanh a.
    const double a = x(0);
    Tensor3 gamma(2, Eigen::MatrixXd::Zero(2, 2));
    gamma[0](1, 1) = std::sinh(a) * std::cosh(a);
    gamma[1](0, 1) = std::tanh(a);
    gamma[1](1, 0) = std::tanh(a);
    return gamma;
  };
  ec.embed = [](const VectorXd& x) {
    VectorXd p(3);
    p << std::sinh(x(0)), std::cosh(x(0)) * std::sin(x(1)),
        std::cosh(x(0)) * std::cos(x(1));
    return p;
  };
  ec.coords = [](const VectorXd& p) {
    VectorXd x(2);
    x << std::asinh(p(0)), std::atan2(p(1), p(2));
    return x;
  };
  ec.jacobian = [](const VectorXd& x) {
    Eigen::MatrixXd jac(3, 2);
    const double sa = std::sinh(x(0)), ca = std::cosh(x(0));
    const double sb = std::sin(x(1)), cb = std::cos(x(1));
    jac << ca, 0.0, sa * sb, ca * cb, sa * cb, -ca * sb;
    return jac;
  };
  return ec;
}

EmbeddedChart affine_plane_chart(const AffinePlane& plane) {
  const Signature sig = plane.ambient();
  const int m = plane.dim();
  int index = 0;
  for (Eigen::Index i = 0; i < plane.direction_signs().size(); ++i)
    if (plane.direction_signs()(i) < 0) ++index;

  EmbeddedChart ec;
  ec.ambient = sig;
  ec.chart.dim = m;
  ec.chart.index = index;
  ec.chart.metric = [signs = plane.direction_signs()](const VectorXd&) {
    return Eigen::MatrixXd(signs.asDiagonal());
  };
  ec.chart.christoffel_closed = [m](const VectorXd&) {
    return Tensor3(std::size_t(m), Eigen::MatrixXd::Zero(m, m));
  };
  ec.embed = [plane](const VectorXd& c) {
    VectorXd p = plane.base();
    for (int i = 0; i < int(plane.directions().size()); ++i)
      p += c(i) * plane.directions()[std::size_t(i)];
    return p;
  };
  ec.coords = [plane](const VectorXd& p) { return plane.coords(p); };
  ec.jacobian = [plane, m](const VectorXd&) {
    Eigen::MatrixXd jac(plane.ambient().n, m);
    for (int i = 0; i < m; ++i) jac.col(i) = plane.directions()[std::size_t(i)];
    return jac;
  };
  return ec;
}

}  // namespace pseudoroll
