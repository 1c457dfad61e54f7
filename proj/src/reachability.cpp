#include "pseudoroll/reachability.hpp"

#include <cmath>

#include "pseudoroll/parallel.hpp"

namespace pseudoroll {

namespace {

void require_benchmark(const Hyperquadric& hq, const char* who) {
  if (hq.level() != 1.0 || hq.ambient().nu != 1)
    throw Error(std::string(who) +
                ": reachability analysis is specific to level 1, index 1");
}

}  // namespace

const char* to_string(ReachKind k) {
  switch (k) {
    case ReachKind::TimelikeGeodesic: return "timelike";
    case ReachKind::NullGeodesic: return "null";
    case ReachKind::SpacelikeGeodesic: return "spacelike";
    case ReachKind::Antipodal: return "antipodal";
    default: return "not_single_geodesic";
  }
}

const char* to_string(HyperplaneRegion r) {
  switch (r) {
    case HyperplaneRegion::OnAffineTangent: return "on_affine_tangent";
    case HyperplaneRegion::BeyondAffineTangent: return "beyond_affine_tangent";
    case HyperplaneRegion::BetweenPlanes: return "between_planes";
    default: return "at_or_beyond_antipodal_plane";
  }
}

ReachabilityResult classify(const Hyperquadric& hq, const VectorXd& x0,
                            const VectorXd& x1, double tol) {
  require_benchmark(hq, "classify");
  hq.require_member(x0, "classify");
  hq.require_member(x1, "classify");
  const Signature& sig = hq.ambient();

  if ((x1 - x0).cwiseAbs().maxCoeff() <= tol)
    throw DegenerateTargetError("classify: target coincides with base point");

  ReachabilityResult res;
  res.inner = j_inner(x0, x1, sig);

  if ((x1 + x0).cwiseAbs().maxCoeff() <= tol) {
    // Antipodal: every unit spacelike direction reaches -x0 at parameter pi.
    // Pick deterministically: the first coordinate direction that survives
    // tangent projection with a positive causal norm.
    res.kind = ReachKind::Antipodal;
    for (int i = 0; i < sig.n; ++i) {
      VectorXd w = hq.tangent_project(x0, VectorXd::Unit(sig.n, i));
      const double q = j_inner(w, w, sig);
      if (q > tol) {
        res.u = VectorXd(w / std::sqrt(q));
        break;
      }
    }
    res.t1 = M_PI;
    return res;
  }

  if (std::abs(res.inner - 1.0) <= tol) {
    res.kind = ReachKind::NullGeodesic;
    res.u = VectorXd(x1 - x0);
    res.t1 = 1.0;
    return res;
  }

  if (res.inner > 1.0) {
    const double th = std::acosh(res.inner);
    res.kind = ReachKind::TimelikeGeodesic;
    res.u = VectorXd((x1 - std::cosh(th) * x0) / std::sinh(th));
    res.t1 = th;
    return res;
  }

  if (res.inner + 1.0 > tol) {  // strictly inside (-1, 1)
    const double th = std::acos(std::clamp(res.inner, -1.0, 1.0));
    res.kind = ReachKind::SpacelikeGeodesic;
    res.u = VectorXd((x1 - std::cos(th) * x0) / std::sin(th));
    res.t1 = th;
    return res;
  }

  // inner <= -1 without x1 = -x0: no single geodesic arrives.  Suggest the
  // broken path through -x1 (reported, never integrated).
  res.kind = ReachKind::NotSingleGeodesic;
  BrokenGeodesicHint hint;
  hint.midpoint = -x1;
  // <x0, -x1> = -inner >= 1: the first leg is timelike (or null on the
  // boundary band).
  hint.first_leg = (std::abs(res.inner + 1.0) <= tol)
                       ? ReachKind::NullGeodesic
                       : ReachKind::TimelikeGeodesic;
  res.broken = hint;
  return res;
}

HyperplaneRegion hyperplane_test(const Hyperquadric& hq, const VectorXd& x0,
                                 const VectorXd& x1, double tol) {
  require_benchmark(hq, "hyperplane_test");
  hq.require_member(x0, "hyperplane_test");
  hq.require_member(x1, "hyperplane_test");
  const double inner = j_inner(x0, x1, hq.ambient());
  if (std::abs(inner - 1.0) <= tol) return HyperplaneRegion::OnAffineTangent;
  if (inner > 1.0) return HyperplaneRegion::BeyondAffineTangent;
  if (inner + 1.0 > tol) return HyperplaneRegion::BetweenPlanes;
  return HyperplaneRegion::AtOrBeyondAntipodalPlane;
}

HyperplaneRegion region_of_kind(ReachKind k) {
  switch (k) {
    case ReachKind::TimelikeGeodesic:
      return HyperplaneRegion::BeyondAffineTangent;
    case ReachKind::NullGeodesic:
      return HyperplaneRegion::OnAffineTangent;
    case ReachKind::SpacelikeGeodesic:
      return HyperplaneRegion::BetweenPlanes;
    default:
      return HyperplaneRegion::AtOrBeyondAntipodalPlane;
  }
}

std::vector<PartitionPoint> sample_partition(const Hyperquadric& hq,
                                             const VectorXd& x0, int na,
                                             int nb, double a_max) {
  require_benchmark(hq, "sample_partition");
  if (hq.ambient().n != 3)
    throw DimensionError("sample_partition: the partition figure lives in R^3_1");
  hq.require_member(x0, "sample_partition");
  if (na < 2 || nb < 2 || !(a_max > 0))
    throw GridError("sample_partition: need na, nb >= 2 and a_max > 0");

  std::vector<std::optional<PartitionPoint>> buf(std::size_t(na) * nb);
  parallel_for_chunks(std::size_t(na), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t ia = lo; ia < hi; ++ia) {
      const double a = -a_max + 2.0 * a_max * double(ia) / double(na - 1);
      for (int ib = 0; ib < nb; ++ib) {
        // b runs over the half-open circle [-pi, pi).
        const double b = -M_PI + 2.0 * M_PI * double(ib) / double(nb);
        VectorXd x(3);
        x << std::sinh(a), std::cosh(a) * std::sin(b),
            std::cosh(a) * std::cos(b);
        PartitionPoint p;
        p.a = a;
        p.b = b;
        p.x = x;
        try {
          const auto res = classify(hq, x0, x);
          p.inner = res.inner;
          p.kind = res.kind;
        } catch (const DegenerateTargetError&) {
          continue;  // skip the base point itself
        }
        buf[ia * std::size_t(nb) + std::size_t(ib)] = std::move(p);
      }
    }
  });

  std::vector<PartitionPoint> out;
  out.reserve(buf.size());
  for (auto& p : buf)
    if (p) out.push_back(std::move(*p));
  return out;
}

}  // namespace pseudoroll
