#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "pseudoroll/distribution.hpp"

using namespace pseudoroll;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

const Signature kSig(3, 1);
const Hyperquadric kHq(kSig, 1.0);

VectorXd vec3(double a, double b, double c) {
  VectorXd v(3);
  v << a, b, c;
  return v;
}

VectorXd vec2(double a, double b) {
  VectorXd v(2);
  v << a, b;
  return v;
}

struct BenchSetup {
  RollingTrajectory traj;
  EmbeddedChart chart;
  EmbeddedChart chart_hat;
  TrivializedCurve tc;
};

BenchSetup trivialized_roll(const VectorXd& u, double t_end, double step) {
  const VectorXd x0 = vec3(0, 0, 1);
  BenchSetup s{integrate_kinematics(kHq, x0, Control::constant(u),
                                    uniform_grid(0.0, t_end, step)),
               lorentz_hyperquadric_chart(),
               affine_plane_chart(AffinePlane::tangent_plane(kHq, x0)),
               {}};
  s.tc = trivialize(s.traj, s.chart, s.chart_hat);
  return s;
}

}  // namespace

TEST_CASE("trivializing the timelike benchmark gives linear chart data") {
  const auto s = trivialized_roll(vec3(1, 0, 0), 1.0, 1e-3);
  const auto& tc = s.tc;
  REQUIRE(tc.times.size() == s.traj.times.size());
  for (std::size_t k = 0; k < tc.times.size(); ++k) {
    const double t = tc.times[k];
    // Both contact curves read (t, 0) in their charts...
    CHECK(testutil::max_abs(tc.x[k] - vec2(t, 0)) < 1e-9);
    CHECK(testutil::max_abs(tc.xhat[k] - vec2(t, 0)) < 1e-9);
    // ...and the chart frames happen to be parallel along these axes, so the
    // tangent configuration is frozen at the initial Gram matrix diag(-1,1).
    MatrixXd jm(2, 2);
    jm << -1, 0, 0, 1;
    CHECK(testutil::max_abs(tc.a[k] - jm) < 1e-9);
    REQUIRE(tc.b[k].rows() == 1);
    CHECK(tc.b[k](0, 0) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("lifts vanish between flat charts and are antisymmetric in general") {
  const AffinePlane plane =
      AffinePlane::tangent_plane(kHq, vec3(0, 0, 1));
  const EmbeddedChart flat = affine_plane_chart(plane);
  const EmbeddedChart curved = lorentz_hyperquadric_chart();

  const VectorXd x = vec2(0.3, -0.8);
  const VectorXd xhat = vec2(1.1, 0.2);
  MatrixXd jm(2, 2);
  jm << -1, 0, 0, 1;

  SUBCASE("flat-to-flat: nothing to lift") {
    const MatrixXd w = lift(flat.chart, flat.chart, x, xhat, jm, vec2(2, -3));
    CHECK(testutil::max_abs(w) < 1e-12);
  }
  SUBCASE("curved-to-flat: antisymmetric and linear in the velocity") {
    const auto wv = [&](const VectorXd& v) {
      return lift(curved.chart, flat.chart, x, xhat, jm, v);
    };
    const MatrixXd w1 = wv(vec2(1, 0));
    const MatrixXd w2 = wv(vec2(0, 1));
    CHECK(testutil::max_abs(w1 + w1.transpose()) < 1e-10);
    CHECK(testutil::max_abs(w2 + w2.transpose()) < 1e-10);
    CHECK(testutil::max_abs(wv(vec2(2.0, -0.5)) - (2.0 * w1 - 0.5 * w2)) <
          1e-9);
  }
  SUBCASE("the algebra tangent solves A' = A U for horizontal motion") {
    const MatrixXd w = lift(curved.chart, flat.chart, x, xhat, jm, vec2(1, 1));
    const VectorXd signs = vec2(-1, 1);
    const MatrixXd u = algebra_from_lift(w, signs);
    // U lies in the algebra of diag(signs).
    CHECK(testutil::max_abs((signs.asDiagonal().toDenseMatrix() * u) +
                            (signs.asDiagonal().toDenseMatrix() * u)
                                .transpose()) < 1e-12);
  }
}

TEST_CASE("null-control rolls are horizontal for the lifted distribution") {
  const auto s = trivialized_roll(vec3(1, 1, 0), 1.0, 1e-3);
  const auto res =
      horizontality_residual(s.tc, s.chart.chart, s.chart_hat.chart);
  REQUIRE(res.size() == s.tc.times.size());
  double worst = 0;
  for (double r : res) worst = std::max(worst, r);
  CHECK(worst < 1e-6);

  // The configuration actually moves here; horizontality is not vacuous.
  double spread = 0;
  for (const auto& a : s.tc.a)
    spread = std::max(spread, testutil::max_abs(a - s.tc.a.front()));
  CHECK(spread > 0.1);
}

TEST_CASE("freezing the configuration breaks horizontality") {
  auto s = trivialized_roll(vec3(1, 1, 0), 1.0, 1e-2);
  for (auto& a : s.tc.a) a = s.tc.a.front();
  const auto res =
      horizontality_residual(s.tc, s.chart.chart, s.chart_hat.chart);
  double worst = 0;
  for (double r : res) worst = std::max(worst, r);
  CHECK(worst > 1e-3);
}

TEST_CASE("normal lifts are trivial in codimension one with flat connections") {
  const NormalConnection zero_conn = [](const VectorXd&) {
    return Tensor3{MatrixXd::Zero(2, 1)};
  };
  const EmbeddedChart curved = lorentz_hyperquadric_chart();
  const EmbeddedChart flat = affine_plane_chart(
      AffinePlane::tangent_plane(kHq, vec3(0, 0, 1)));
  MatrixXd jm(2, 2);
  jm << -1, 0, 0, 1;
  const MatrixXd wp = lift_normal(
      zero_conn, zero_conn, VectorXd::Ones(1), vec2(0.2, 0.1), vec2(0.5, 0),
      jm, MatrixXd::Identity(1, 1), vec2(1, -1), curved.chart, flat.chart);
  CHECK(wp.rows() == 1);
  CHECK(testutil::max_abs(wp) == 0.0);
}

TEST_CASE("the causal trace recovers closed forms on one-parameter groups") {
  const auto ts = uniform_grid(0.0, 1.0, 1e-3);

  SUBCASE("boost family: timelike with value -2 w^2") {
    const Signature sig2(2, 1);
    const double w = 0.7;
    const MatrixXd gen = w * lie_basis(1, 2, sig2).mat;
    std::vector<MatrixXd> a;
    for (double t : ts) a.push_back(matrix_exp_raw(t * gen));
    const auto trace = causal_trace(ts, a, sig2.eps_vector());
    for (const auto& p : trace) {
      CHECK(p.value == doctest::Approx(-2.0 * w * w).epsilon(1e-7));
      CHECK(p.cls == CausalClass::Timelike);
      // Cross-check against the invariant metric on the algebra.
      CHECK(p.value ==
            doctest::Approx(matrix_j_inner(gen, gen, sig2)).epsilon(1e-7));
    }
  }
  SUBCASE("rotation family: spacelike with value +2 w^2") {
    const Signature sig2(2, 0);
    const double w = 1.3;
    const MatrixXd gen = w * lie_basis(1, 2, sig2).mat;
    std::vector<MatrixXd> a;
    for (double t : ts) a.push_back(matrix_exp_raw(t * gen));
    const auto trace = causal_trace(ts, a, sig2.eps_vector());
    for (const auto& p : trace) {
      CHECK(p.value == doctest::Approx(2.0 * w * w).epsilon(1e-7));
      CHECK(p.cls == CausalClass::Spacelike);
    }
  }
  SUBCASE("constant family: still, hence spacelike by convention") {
    std::vector<MatrixXd> a(ts.size(), MatrixXd::Identity(2, 2));
    const auto trace = causal_trace(ts, a, VectorXd::Ones(2));
    for (const auto& p : trace) {
      CHECK(std::abs(p.value) < 1e-20);
      CHECK(p.cls == CausalClass::Spacelike);
    }
  }
  SUBCASE("moving family with vanishing trace: null") {
    const auto s = trivialized_roll(vec3(1, 1, 0), 1.0, 1e-3);
    const auto trace = causal_trace(s.traj.times, s.traj.rot,
                                    kSig.eps_vector());
    std::size_t nulls = 0;
    for (const auto& p : trace)
      if (p.cls == CausalClass::Null) ++nulls;
    CHECK(nulls == trace.size());
  }
}

TEST_CASE("rotation parts of rolls have the causal class of their control") {
  const auto s = trivialized_roll(vec3(1, 0, 0), 1.0, 1e-3);
  const auto trace =
      causal_trace(s.traj.times, s.traj.rot, kSig.eps_vector());
  for (const auto& p : trace) {
    CHECK(p.value == doctest::Approx(-2.0).epsilon(1e-6));
    CHECK(p.cls == CausalClass::Timelike);
  }
}

TEST_CASE("group drift in the input is rejected") {
  const auto ts = uniform_grid(0.0, 0.1, 1e-2);
  std::vector<MatrixXd> a(ts.size(), MatrixXd::Identity(2, 2));
  a.back()(0, 0) = 1.5;  // not an isometry of diag(1,1)
  CHECK_THROWS_AS(causal_trace(ts, a, VectorXd::Ones(2)),
                  GroupConstraintError);
}

TEST_CASE("the connection-coefficient formula matches the derivative trace") {
  // Null control: the configuration genuinely moves, so the comparison is
  // nontrivial; the development chart is flat, where the formula is exact.
  const auto s = trivialized_roll(vec3(1, 1, 0), 1.0, 1e-3);
  const auto trace = causal_trace(s.tc.times, s.tc.a, vec2(-1, 1));
  const auto formula =
      causal_trace_formula(s.chart.chart, s.chart_hat.chart, s.tc);
  REQUIRE(trace.size() == formula.size());
  for (std::size_t k = 0; k < trace.size(); ++k)
    CHECK(trace[k].value == doctest::Approx(formula[k]).epsilon(1e-5));
}
