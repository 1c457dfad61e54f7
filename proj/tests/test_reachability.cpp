#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "pseudoroll/reachability.hpp"
#include "pseudoroll/rolling.hpp"

using namespace pseudoroll;
using Eigen::VectorXd;

namespace {

const Signature kSig(3, 1);
const Hyperquadric kHq(kSig, 1.0);

VectorXd vec3(double a, double b, double c) {
  VectorXd v(3);
  v << a, b, c;
  return v;
}

const VectorXd kNorth = vec3(0, 0, 1);

/// Follow the classified geodesic and report how far it lands from x1.
double endpoint_error(const ReachabilityResult& res, const VectorXd& x0,
                      const VectorXd& x1) {
  REQUIRE(res.u.has_value());
  REQUIRE(res.t1.has_value());
  return testutil::max_abs(kHq.geodesic(x0, *res.u, *res.t1) - x1);
}

}  // namespace

TEST_CASE("the four reachable cases produce landing geodesics") {
  SUBCASE("timelike: target past the affine tangent plane") {
    const VectorXd x1 = vec3(std::sinh(1.3), 0, std::cosh(1.3));
    const auto res = classify(kHq, kNorth, x1);
    CHECK(res.kind == ReachKind::TimelikeGeodesic);
    CHECK(res.inner == doctest::Approx(std::cosh(1.3)).epsilon(1e-14));
    CHECK(*res.t1 == doctest::Approx(1.3).epsilon(1e-12));
    CHECK(j_inner(*res.u, *res.u, kSig) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(endpoint_error(res, kNorth, x1) < 1e-12);
  }
  SUBCASE("null: target on the affine tangent plane") {
    const VectorXd x1 = vec3(2, 2, 1);  // <x1,x1> = -4+4+1, <x0,x1> = 1
    const auto res = classify(kHq, kNorth, x1);
    CHECK(res.kind == ReachKind::NullGeodesic);
    CHECK(*res.t1 == 1.0);
    CHECK(testutil::max_abs(*res.u - vec3(2, 2, 0)) < 1e-14);
    CHECK(endpoint_error(res, kNorth, x1) < 1e-14);
  }
  SUBCASE("spacelike: target between the two planes") {
    const VectorXd x1 = vec3(0, std::sin(0.9), std::cos(0.9));
    const auto res = classify(kHq, kNorth, x1);
    CHECK(res.kind == ReachKind::SpacelikeGeodesic);
    CHECK(*res.t1 == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(j_inner(*res.u, *res.u, kSig) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(endpoint_error(res, kNorth, x1) < 1e-12);
  }
  SUBCASE("antipodal: half turn along any spacelike direction") {
    const auto res = classify(kHq, kNorth, -kNorth);
    CHECK(res.kind == ReachKind::Antipodal);
    CHECK(*res.t1 == doctest::Approx(M_PI));
    CHECK(j_inner(*res.u, *res.u, kSig) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(j_inner(*res.u, kNorth, kSig)) < 1e-12);
    CHECK(endpoint_error(res, kNorth, -kNorth) < 1e-12);
  }
}

TEST_CASE("targets at or beyond the antipodal plane need two segments") {
  const VectorXd x1 = vec3(std::sinh(0.8), 0, -std::cosh(0.8));
  const auto res = classify(kHq, kNorth, x1);
  CHECK(res.kind == ReachKind::NotSingleGeodesic);
  CHECK_FALSE(res.u.has_value());
  REQUIRE(res.broken.has_value());
  CHECK(testutil::max_abs(res.broken->midpoint + x1) < 1e-14);
  // The suggested midpoint -x1 itself is a single-geodesic target.
  CHECK(res.broken->first_leg == ReachKind::TimelikeGeodesic);
  const auto leg = classify(kHq, kNorth, res.broken->midpoint);
  CHECK(leg.kind == res.broken->first_leg);
}

TEST_CASE("coincident start and target is a degenerate question") {
  CHECK_THROWS_AS(classify(kHq, kNorth, kNorth), DegenerateTargetError);
}

TEST_CASE("boundary bands resolve to the plane cases") {
  // Just inside the band around inner = 1: treated as on the plane.
  const double tol = 1e-9;
  const VectorXd almost = vec3(0, std::sin(1e-5), std::cos(1e-5));
  CHECK(std::abs(j_inner(kNorth, almost, kSig) - 1.0) < tol);
  CHECK(classify(kHq, kNorth, almost, tol).kind == ReachKind::NullGeodesic);
  // Outside the band: a genuine spacelike arc.
  const VectorXd clearly = vec3(0, std::sin(1e-3), std::cos(1e-3));
  CHECK(classify(kHq, kNorth, clearly, tol).kind ==
        ReachKind::SpacelikeGeodesic);
}

TEST_CASE("hyperplane regions agree with the classification") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> ua(-2.0, 2.0);
  std::uniform_real_distribution<double> ub(-M_PI, M_PI);
  for (int rep = 0; rep < 500; ++rep) {
    const VectorXd x1 = testutil::lorentz_sphere_point(ua(rng), ub(rng));
    if (testutil::max_abs(x1 - kNorth) < 1e-9) continue;
    const auto res = classify(kHq, kNorth, x1);
    CHECK(hyperplane_test(kHq, kNorth, x1) == region_of_kind(res.kind));
  }
}

TEST_CASE("classified geodesics actually land on the target") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> ua(-2.0, 2.0);
  std::uniform_real_distribution<double> ub(-M_PI, M_PI);
  int reachable = 0;
  for (int rep = 0; rep < 2000; ++rep) {
    const VectorXd x0 = testutil::lorentz_sphere_point(ua(rng), ub(rng));
    const VectorXd x1 = testutil::lorentz_sphere_point(ua(rng), ub(rng));
    if (testutil::max_abs(x1 - x0) < 1e-6) continue;
    const auto res = classify(kHq, x0, x1);
    if (!res.u.has_value()) continue;
    ++reachable;
    REQUIRE(kHq.contains(kHq.geodesic(x0, *res.u, *res.t1), 1e-9));
    CHECK(testutil::max_abs(kHq.geodesic(x0, *res.u, *res.t1) - x1) < 1e-9);
  }
  CHECK(reachable > 1000);  // the sampler covers the reachable set well
}

TEST_CASE("reaching velocities integrate to the target as constant controls") {
  // The geodesic data doubles as a rolling plan: feeding u as a constant
  // control must drive the contact point to x1.
  const VectorXd target = testutil::lorentz_sphere_point(0.9, 2.1);
  const auto res = classify(kHq, kNorth, target);
  REQUIRE(res.u.has_value());
  const auto traj = integrate_kinematics(
      kHq, kNorth, Control::constant(*res.u),
      uniform_grid(0.0, *res.t1, 1e-3));
  CHECK(testutil::max_abs(traj.rolling_curve().points.back() - target) < 1e-6);
}

TEST_CASE("partition sampling labels the whole parameter window") {
  const auto pts = sample_partition(kHq, kNorth, 41, 64, 2.5);
  REQUIRE(!pts.empty());
  int counts[5] = {0, 0, 0, 0, 0};
  for (const auto& p : pts) {
    // Embedded point matches the parameters, label matches a recomputation.
    CHECK(testutil::max_abs(
              p.x - testutil::lorentz_sphere_point(p.a, p.b)) < 1e-13);
    CHECK(p.inner ==
          doctest::Approx(j_inner(kNorth, p.x, kSig)).epsilon(1e-13));
    CHECK(p.kind == classify(kHq, kNorth, p.x).kind);
    counts[int(p.kind)]++;
    CHECK(testutil::max_abs(p.x - kNorth) > 1e-12);  // x0 itself is skipped
  }
  // All three open regions are populated on this window; the antipode is hit
  // by the (a, b) = (0, pi) row only if the grid contains it.
  CHECK(counts[int(ReachKind::TimelikeGeodesic)] > 0);
  CHECK(counts[int(ReachKind::SpacelikeGeodesic)] > 0);
  CHECK(counts[int(ReachKind::NotSingleGeodesic)] > 0);
}

TEST_CASE("kind and region names are stable identifiers") {
  CHECK(std::string(to_string(ReachKind::TimelikeGeodesic)) == "timelike");
  CHECK(std::string(to_string(ReachKind::NullGeodesic)) == "null");
  CHECK(std::string(to_string(ReachKind::SpacelikeGeodesic)) == "spacelike");
  CHECK(std::string(to_string(ReachKind::Antipodal)) == "antipodal");
  CHECK(std::string(to_string(ReachKind::NotSingleGeodesic)) ==
        "not_single_geodesic");
  CHECK(std::string(to_string(HyperplaneRegion::OnAffineTangent)) ==
        "on_affine_tangent");
  CHECK(std::string(to_string(HyperplaneRegion::BeyondAffineTangent)) ==
        "beyond_affine_tangent");
  CHECK(std::string(to_string(HyperplaneRegion::BetweenPlanes)) ==
        "between_planes");
  CHECK(std::string(to_string(HyperplaneRegion::AtOrBeyondAntipodalPlane)) ==
        "at_or_beyond_antipodal_plane");
}
