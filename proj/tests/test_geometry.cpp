#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "pseudoroll/geometry.hpp"

using namespace pseudoroll;
using Eigen::VectorXd;

namespace {

VectorXd vec3(double a, double b, double c) {
  VectorXd v(3);
  v << a, b, c;
  return v;
}

}  // namespace

TEST_CASE("hyperquadric construction rejects degenerate levels") {
  CHECK_THROWS_AS(Hyperquadric(Signature(3, 1), 0.0), MetricDegeneracyError);
  CHECK_THROWS_AS(Hyperquadric(Signature(1, 0), 1.0), DimensionError);
  CHECK_NOTHROW(Hyperquadric(Signature(3, 1), -1.0));
}

TEST_CASE("projections split vectors J-orthogonally") {
  const Signature sig(4, 2);
  const Hyperquadric hq(sig, 1.0);
  VectorXd x(4);
  x << 1.0, 0.0, 1.0, 1.0;  // <x,x> = -1 + 0 + 1 + 1 = 1
  REQUIRE(hq.contains(x, 1e-14));

  std::mt19937_64 rng(7);
  std::normal_distribution<double> gauss;
  for (int rep = 0; rep < 20; ++rep) {
    VectorXd v(4), w(4);
    for (int i = 0; i < 4; ++i) {
      v(i) = gauss(rng);
      w(i) = gauss(rng);
    }
    const VectorXd vt = hq.tangent_project(x, v);
    const VectorXd vn = hq.normal_project(x, v);
    // Complementary, idempotent, J-self-adjoint, and tangent means <.,x> = 0.
    CHECK(testutil::max_abs(vt + vn - v) < 1e-14);
    CHECK(testutil::max_abs(hq.tangent_project(x, vt) - vt) < 1e-14);
    CHECK(testutil::max_abs(hq.normal_project(x, vn) - vn) < 1e-14);
    CHECK(std::abs(j_inner(vt, x, sig)) < 1e-13);
    CHECK(j_inner(vt, w, sig) ==
          doctest::Approx(j_inner(v, hq.tangent_project(x, w), sig))
              .epsilon(1e-12));
  }
  CHECK_THROWS_AS(hq.tangent_project(2.0 * x, x), MembershipError);
}

TEST_CASE("unit-level geodesics match their trigonometric closed forms") {
  const Signature sig(3, 1);
  const Hyperquadric hq(sig, 1.0);
  const VectorXd x0 = vec3(0, 0, 1);

  for (double t : {-1.5, -0.3, 0.0, 0.7, 2.0}) {
    // Timelike direction: hyperbolic angle.
    CHECK(testutil::max_abs(hq.geodesic(x0, vec3(1, 0, 0), t) -
                            vec3(std::sinh(t), 0, std::cosh(t))) < 1e-14);
    // Spacelike direction: circular angle.
    CHECK(testutil::max_abs(hq.geodesic(x0, vec3(0, 1, 0), t) -
                            vec3(0, std::sin(t), std::cos(t))) < 1e-14);
    // Null direction: an affine line that lies on the quadric.
    const VectorXd xn = hq.geodesic(x0, vec3(1, 1, 0), t);
    CHECK(testutil::max_abs(xn - vec3(t, t, 1)) < 1e-14);
    CHECK(hq.contains(xn, 1e-12 * (1.0 + xn.squaredNorm())));
  }
}

TEST_CASE("non-unit levels take the group orbit and stay on the level set") {
  const Signature sig(3, 1);

  SUBCASE("radius-2 sphere slice: angle scales as t / sqrt(r)") {
    const Hyperquadric hq(sig, 4.0);
    const VectorXd x0 = vec3(0, 0, 2);
    const VectorXd u = vec3(0, 1, 0);
    for (double t : {0.25, 1.0, 3.0}) {
      const VectorXd x = hq.geodesic(x0, u, t);
      CHECK(testutil::max_abs(
                x - vec3(0, 2 * std::sin(t / 2), 2 * std::cos(t / 2))) < 1e-12);
    }
  }
  SUBCASE("negative level: orbit is a boost and survives long parameters") {
    const Hyperquadric hq(sig, -1.0);
    const VectorXd x0 = vec3(1, 0, 0);  // <x0,x0> = -1
    const VectorXd u = vec3(0, 1, 0);
    for (double t : {0.5, 5.0, 20.0}) {
      const VectorXd x = hq.geodesic(x0, u, t);
      CHECK(testutil::max_abs(x - vec3(std::cosh(t), std::sinh(t), 0)) <
            1e-9 * std::cosh(t));
      CHECK(hq.contains(x, 1e-9 * (1.0 + x.squaredNorm())));
    }
  }
}

TEST_CASE("geodesic preconditions are enforced") {
  const Hyperquadric hq(Signature(3, 1), 1.0);
  const VectorXd x0 = vec3(0, 0, 1);
  CHECK_THROWS_AS(hq.geodesic(x0, vec3(0, 0, 1), 1.0), OrthogonalityError);
  CHECK_THROWS_AS(hq.geodesic(x0, vec3(0, 0.5, 0), 1.0), NormalizationError);
  CHECK_THROWS_AS(hq.geodesic(vec3(0, 0, 2), vec3(0, 1, 0), 1.0),
                  MembershipError);
}

TEST_CASE("affine planes have position-independent projections") {
  const Signature sig(3, 1);
  const VectorXd base = vec3(0, 0, 1);
  const AffinePlane plane(sig, base, {vec3(0, 1, 0), vec3(1, 0, 0)});

  CHECK(plane.dim() == 2);
  CHECK(plane.contains(vec3(3, -2, 1), 1e-14));
  CHECK_FALSE(plane.contains(vec3(0, 0, 1.5), 1e-6));

  // Orthonormalization pivots causally: timelike direction leads.
  REQUIRE(plane.direction_signs().size() == 2);
  CHECK(plane.direction_signs()(0) == -1.0);
  CHECK(plane.direction_signs()(1) == 1.0);

  const VectorXd v = vec3(2, 3, 5);
  const VectorXd vt = plane.tangent_project(base, v);
  CHECK(testutil::max_abs(vt - vec3(2, 3, 0)) < 1e-14);
  CHECK(testutil::max_abs(plane.normal_project(base, v) - vec3(0, 0, 5)) <
        1e-14);
  // Same answer at another plane point.
  CHECK(testutil::max_abs(plane.tangent_project(vec3(7, -4, 1), v) - vt) <
        1e-14);

  const VectorXd c = plane.coords(vec3(3, -2, 1));
  CHECK(testutil::max_abs(plane.base() + c(0) * plane.directions()[0] +
                          c(1) * plane.directions()[1] - vec3(3, -2, 1)) <
        1e-13);
}

TEST_CASE("the affine tangent plane of a quadric touches it at the point") {
  const Signature sig(3, 1);
  const Hyperquadric hq(sig, 1.0);
  const VectorXd x0 = testutil::lorentz_sphere_point(0.4, 0.9);
  const AffinePlane plane = AffinePlane::tangent_plane(hq, x0);

  CHECK(plane.dim() == 2);
  CHECK(plane.contains(x0, 1e-12));
  for (const VectorXd& d : plane.directions())
    CHECK(std::abs(j_inner(d, x0, sig)) < 1e-12);
  // The plane's normal space is the quadric's normal at x0: x0 itself.
  const VectorXd n = plane.normal_project(x0, vec3(0.3, -0.2, 0.9));
  CHECK(testutil::max_abs(n - (j_inner(n, x0, sig) / 1.0) * x0) < 1e-12);
}

TEST_CASE("covariant derivative of a geodesic velocity field vanishes") {
  const Signature sig(3, 1);
  const Hyperquadric hq(sig, 1.0);
  const VectorXd x0 = vec3(0, 0, 1);
  const VectorXd u = vec3(1, 0, 0);
  const auto ts = uniform_grid(0.0, 1.0, 0.01);
  const CurveSamples curve = hq.geodesic_curve(x0, u, ts);

  // Exact velocity field, so every residual below is the operator's own.
  std::vector<VectorXd> vel;
  for (double t : ts) vel.push_back(vec3(std::cosh(t), 0, std::sinh(t)));
  const auto acc = covariant_derivative(hq, curve, vel, 5);
  double worst = 0;
  for (const auto& a : acc) worst = std::max(worst, testutil::max_abs(a));
  CHECK(worst < 1e-7);

  // The raw second derivative is NOT zero; the normal part carries it all.
  const auto ddx = sampled_second_derivative(ts, curve.points);
  double raw = 0, normal_gap = 0;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    raw = std::max(raw, testutil::max_abs(ddx[k]));
    normal_gap = std::max(
        normal_gap, testutil::max_abs(
                        hq.normal_project(curve.points[k], ddx[k]) - ddx[k]));
  }
  CHECK(raw > 0.5);
  CHECK(normal_gap < 1e-5);
}

TEST_CASE("normal derivative tracks the shape of the quadric") {
  const Signature sig(3, 1);
  const Hyperquadric hq(sig, 1.0);
  const auto ts = uniform_grid(0.0, 1.0, 0.01);
  const CurveSamples curve =
      hq.geodesic_curve(vec3(0, 0, 1), vec3(0, 1, 0), ts);

  // The unit normal field along the curve is x(t); its derivative x'(t) is
  // tangent, so the normal-projected derivative vanishes identically.
  const auto dn = normal_derivative(hq, curve, curve.points, 5);
  double worst = 0;
  for (const auto& d : dn) worst = std::max(worst, testutil::max_abs(d));
  CHECK(worst < 1e-8);

  // Feeding a tangent field to the normal-bundle derivative is a flavor error.
  CHECK_THROWS_AS(normal_derivative(hq, curve, curve.velocity()), FlavorError);
  CHECK_THROWS_AS(covariant_derivative(hq, curve, curve.points), FlavorError);
}

TEST_CASE("curve samples interpolate between nodes") {
  const auto ts = uniform_grid(0.0, 2.0, 0.05);
  const Hyperquadric hq(Signature(3, 1), 1.0);
  const CurveSamples curve =
      hq.geodesic_curve(vec3(0, 0, 1), vec3(1, 0, 0), ts);
  const double t = 0.777;
  // Cubic interpolation between nodes: ~h^4 of the local quartic term.
  CHECK(testutil::max_abs(curve.value_at(t) -
                          vec3(std::sinh(t), 0, std::cosh(t))) < 1e-6);
  CHECK(testutil::max_abs(curve.derivative_at(t) -
                          vec3(std::cosh(t), 0, std::sinh(t))) < 1e-5);
}
