#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "pseudoroll/geometry.hpp"

namespace pseudoroll {

/// How (and whether) a single geodesic reaches a target point on the unit
/// Lorentzian hyperquadric (level 1, index 1).
enum class ReachKind {
  TimelikeGeodesic,
  NullGeodesic,
  SpacelikeGeodesic,
  Antipodal,
  NotSingleGeodesic,
};

const char* to_string(ReachKind k);

/// Position of the target relative to the two parallel hyperplanes
/// <x0, .> = +1 (the affine tangent space at x0) and <x0, .> = -1.
enum class HyperplaneRegion {
  OnAffineTangent,
  BeyondAffineTangent,
  BetweenPlanes,
  AtOrBeyondAntipodalPlane,
};

const char* to_string(HyperplaneRegion r);

/// For an unreachable target, the informational two-segment suggestion:
/// go to -x1 first (single geodesic), then the antipodal step to x1.
struct BrokenGeodesicHint {
  VectorXd midpoint;   ///< -x1
  ReachKind first_leg; ///< kind of the x0 -> -x1 segment
};

struct ReachabilityResult {
  ReachKind kind;
  double inner;                ///< <x0, x1>
  std::optional<VectorXd> u;   ///< initial velocity, when a geodesic exists
  std::optional<double> t1;    ///< arrival parameter, when a geodesic exists
  std::optional<BrokenGeodesicHint> broken;
};

/// Classify the target x1 as seen from x0 on the unit hyperquadric of index 1
/// and construct the reaching geodesic data when one exists:
///   inner > 1   timelike,  u = (x1 - x0 cosh th)/sinh th, t1 = th = acosh inner
///   inner = 1   null,      u = x1 - x0,                   t1 = 1
///   |inner| < 1 spacelike, u = (x1 - x0 cos th)/sin th,   t1 = th = acos inner
///   x1 = -x0    antipodal: any unit spacelike u works; the first
///               J-orthonormalized coordinate direction is returned, t1 = pi
///   inner <= -1 (x1 != -x0)  not reachable by a single geodesic; a broken
///               two-segment hint via -x1 is attached.
/// Boundary bands of width tol around inner = +-1 resolve to the null and
/// unreachable cases respectively.
ReachabilityResult classify(const Hyperquadric& hq, const VectorXd& x0,
                            const VectorXd& x1, double tol = kCausalTol);

/// Same threshold logic without constructing geodesics.
HyperplaneRegion hyperplane_test(const Hyperquadric& hq, const VectorXd& x0,
                                 const VectorXd& x1, double tol = kCausalTol);

/// The region a ReachKind must land in (used for consistency checks).
HyperplaneRegion region_of_kind(ReachKind k);

/// One labeled point of the reachability partition figure.
struct PartitionPoint {
  double a, b;    ///< hyperbolic parameters
  VectorXd x;     ///< (sinh a, cosh a sin b, cosh a cos b)
  double inner;   ///< <x0, x>
  ReachKind kind;
};

/// Label a (na x nb) parameter grid over [-a_max, a_max] x [-pi, pi) on the
/// unit Lorentzian hyperquadric in R^3_1 as seen from x0.  Grid points that
/// coincide with x0 are skipped.  Labeling is parallel over rows, capped by
/// PSEUDOROLL_THREADS.
std::vector<PartitionPoint> sample_partition(const Hyperquadric& hq,
                                             const VectorXd& x0, int na,
                                             int nb, double a_max = 2.5);

}  // namespace pseudoroll
