#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "pseudoroll/rolling.hpp"

using namespace pseudoroll;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

VectorXd vec3(double a, double b, double c) {
  VectorXd v(3);
  v << a, b, c;
  return v;
}

RollingTrajectory benchmark_roll(const VectorXd& u, double t_end, double step) {
  const Hyperquadric hq(Signature(3, 1), 1.0);
  return integrate_kinematics(hq, vec3(0, 0, 1), Control::constant(u),
                              uniform_grid(0.0, t_end, step));
}

/// Rotation part of the constant-control roll, written out by hand.  For
/// u = (1,0,0) at x0 = (0,0,1) the generator has one hyperbolic plane (1,3):
///     R(t) = [[cosh t, 0, sinh t], [0, 1, 0], [sinh t, 0, cosh t]]
MatrixXd boost_13(double t) {
  MatrixXd r = MatrixXd::Identity(3, 3);
  r(0, 0) = r(2, 2) = std::cosh(t);
  r(0, 2) = r(2, 0) = std::sinh(t);
  return r;
}

}  // namespace

TEST_CASE("zero control freezes the trajectory exactly") {
  const auto traj = benchmark_roll(vec3(0, 0, 0), 1.0, 0.01);
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    CHECK(testutil::max_abs(traj.s[k]) == 0.0);
    CHECK(testutil::max_abs(traj.rot[k] - MatrixXd::Identity(3, 3)) == 0.0);
  }
}

TEST_CASE("constant timelike control reproduces the boost closed form") {
  const auto traj = benchmark_roll(vec3(1, 0, 0), 2.0, 0.001);
  double worst_r = 0, worst_x = 0, worst_s = 0;
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const double t = traj.times[k];
    worst_r = std::max(worst_r,
                       testutil::max_abs(traj.rot[k] - boost_13(t)));
    worst_x = std::max(
        worst_x, testutil::max_abs(traj.rot[k] * traj.x0 -
                                   vec3(std::sinh(t), 0, std::cosh(t))));
    worst_s = std::max(worst_s, testutil::max_abs(traj.s[k] - vec3(t, 0, 0)));
  }
  // Constant controls make the midpoint scheme exact up to rounding.
  CHECK(worst_r < 1e-11);
  CHECK(worst_x < 1e-11);
  CHECK(worst_s < 1e-12);
  CHECK(traj.constraint_drift() < 1e-11);
}

TEST_CASE("spacelike roll through half a period lands on the antipode") {
  const Hyperquadric hq(Signature(3, 1), 1.0);
  const VectorXd x0 = vec3(0, 0, 1);
  const auto traj = integrate_kinematics(
      hq, x0, Control::constant(vec3(0, 1, 0)),
      uniform_grid(0.0, M_PI, 1e-3));
  CHECK(testutil::max_abs(traj.rolling_curve().points.back() + x0) < 1e-10);
}

TEST_CASE("rot_inverse uses the group structure, not a linear solve") {
  const auto traj = benchmark_roll(vec3(1, 1, 0), 1.0, 0.01);
  for (std::size_t k : {std::size_t(0), traj.times.size() / 2,
                        traj.times.size() - 1}) {
    CHECK(testutil::max_abs(traj.rot_inverse(k) * traj.rot[k] -
                            MatrixXd::Identity(3, 3)) < 1e-12);
  }
}

TEST_CASE("controls must stay in the initial tangent space") {
  // A control with a component along x0 violates the kinematic setup.
  CHECK_THROWS_AS(benchmark_roll(vec3(0, 0, 1), 1.0, 0.1),
                  OrthogonalityError);
}

TEST_CASE("verification passes on an honest trajectory") {
  const auto traj = benchmark_roll(vec3(1, 0, 0), 2.0, 1e-3);
  const auto report = verify_rolling(traj, 1e-6);
  CHECK(report.pass());
  CHECK(report.contact < 1e-9);
  CHECK(report.tangency < 1e-9);
  CHECK(report.orientation == 0.0);
  CHECK(report.no_slip < 1e-6);
  CHECK(report.no_twist_tangent < 1e-6);
  CHECK(report.no_twist_normal < 1e-6);
  CHECK(report.max_residual() < 1e-6);
}

TEST_CASE("verification flags a frozen rotation as slipping") {
  auto traj = benchmark_roll(vec3(1, 0, 0), 1.0, 1e-2);
  for (auto& r : traj.rot) r = MatrixXd::Identity(3, 3);
  const auto report = verify_rolling(traj, 1e-6);
  CHECK_FALSE(report.pass());
  // s(t) keeps moving while x(t) stands still: that is slip, and the rolling
  // curve also detaches from nothing (it stays on the quadric), so the slip
  // residual is the one that fires.
  CHECK(report.no_slip > 0.5);
}

TEST_CASE("halving the step quarters the no-slip residual") {
  const auto coarse = verify_rolling(benchmark_roll(vec3(1, 0, 0), 2.0, 2e-3),
                                     1e-3);
  const auto fine = verify_rolling(benchmark_roll(vec3(1, 0, 0), 2.0, 1e-3),
                                   1e-3);
  CHECK(coarse.no_slip / fine.no_slip > 3.5);
  CHECK(coarse.no_slip / fine.no_slip < 4.5);
}

TEST_CASE("transported vectors keep their causal value") {
  const auto traj = benchmark_roll(vec3(1, 1, 0), 1.5, 1e-3);
  const Signature& sig = traj.surface.ambient();

  SUBCASE("tangent flavor") {
    const VectorXd y0 = vec3(1, -2, 0);
    const auto ys = rolling_transport(traj, y0, FrameFlavor::Tangent);
    const double q0 = j_inner(y0, y0, sig);
    for (std::size_t k = 0; k < ys.size(); ++k) {
      CHECK(j_inner(ys[k], ys[k], sig) == doctest::Approx(q0).epsilon(1e-10));
      // Stays tangent along the moving contact point.
      const VectorXd xk = traj.rot[k] * traj.x0;
      CHECK(std::abs(j_inner(ys[k], xk, sig)) < 1e-9);
    }
  }
  SUBCASE("normal flavor") {
    const auto ys = rolling_transport(traj, traj.x0, FrameFlavor::Normal);
    for (std::size_t k = 0; k < ys.size(); ++k)
      CHECK(testutil::max_abs(ys[k] - traj.rot[k] * traj.x0) == 0.0);
  }
  SUBCASE("flavor mismatch throws") {
    CHECK_THROWS_AS(rolling_transport(traj, traj.x0, FrameFlavor::Tangent),
                    FlavorError);
    CHECK_THROWS_AS(rolling_transport(traj, vec3(1, 0, 0), FrameFlavor::Normal),
                    FlavorError);
  }
}

TEST_CASE("causal report ties both curve velocities to the control") {
  SUBCASE("unit level") {
    for (const auto& u : {vec3(1, 0, 0), vec3(0, 1, 0), vec3(1, 1, 0)}) {
      const auto traj = benchmark_roll(u, 1.0, 1e-3);
      const auto rep = causal_report(traj);
      CHECK(rep.max_velocity_mismatch < 1e-6);
      CHECK(rep.max_rotation_mismatch < 1e-6);
      const double q = j_inner(u, u, Signature(3, 1));
      for (const auto& smp : rep.samples) {
        CHECK(smp.u2 == doctest::Approx(q).epsilon(1e-12));
        CHECK(smp.control_class == causal_class(u, Signature(3, 1)));
      }
    }
  }
  SUBCASE("level 4 scales the rotational speed by 1/r") {
    const Hyperquadric hq(Signature(3, 1), 4.0);
    const auto traj = integrate_kinematics(
        hq, vec3(0, 0, 2), Control::constant(vec3(0, 1, 0)),
        uniform_grid(0.0, 1.0, 1e-3));
    const auto rep = causal_report(traj);
    CHECK(rep.max_rotation_mismatch < 1e-6);
    for (const auto& smp : rep.samples)
      CHECK(smp.rdot2 == doctest::Approx(2.0 * smp.u2 / 4.0).epsilon(1e-5));
  }
}

TEST_CASE("sampled and callback controls agree with their sources") {
  const auto ts = uniform_grid(0.0, 1.0, 1e-3);
  std::vector<VectorXd> us;
  for (double t : ts) us.push_back(vec3(std::cos(t), std::sin(t), 0));
  const Hyperquadric hq(Signature(3, 1), 1.0);
  const VectorXd x0 = vec3(0, 0, 1);

  const auto a = integrate_kinematics(hq, x0, Control::sampled(ts, us), ts);
  const auto b = integrate_kinematics(
      hq, x0,
      Control::callback(
          [](double t) { return vec3(std::cos(t), std::sin(t), 0); }),
      ts);
  double worst = 0;
  for (std::size_t k = 0; k < ts.size(); ++k)
    worst = std::max(worst, testutil::max_abs(a.rot[k] - b.rot[k]));
  // Linear interpolation of the control is 2nd-order accurate at midpoints.
  CHECK(worst < 1e-6);
  CHECK(verify_rolling(b, 1e-5).pass());
}
