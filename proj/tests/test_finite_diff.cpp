#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "pseudoroll/finite_diff.hpp"

using namespace pseudoroll;
using Eigen::VectorXd;

namespace {

std::vector<VectorXd> sample_fn(const std::vector<double>& ts,
                                double (*f)(double)) {
  std::vector<VectorXd> out;
  for (double t : ts) {
    VectorXd v(1);
    v(0) = f(t);
    out.push_back(v);
  }
  return out;
}

double max_err(const std::vector<double>& ts,
               const std::vector<VectorXd>& got, double (*df)(double)) {
  double worst = 0;
  for (std::size_t k = 0; k < ts.size(); ++k)
    worst = std::max(worst, std::abs(got[k](0) - df(ts[k])));
  return worst;
}

}  // namespace

TEST_CASE("lagrange weights differentiate polynomials exactly") {
  const std::vector<double> nodes = {0.0, 0.3, 0.7, 1.1, 1.6};
  const auto w = lagrange_diff_weights(nodes, 0.7);
  // d/dt t^3 at 0.7 = 3 * 0.49; five nodes resolve cubics exactly.
  double acc = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    acc += w[i] * nodes[i] * nodes[i] * nodes[i];
  CHECK(acc == doctest::Approx(3 * 0.49).epsilon(1e-13));

  const auto v = lagrange_value_weights(nodes, 0.9);
  acc = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    acc += v[i] * (2.0 * nodes[i] * nodes[i] - nodes[i] + 1.0);
  CHECK(acc == doctest::Approx(2.0 * 0.81 - 0.9 + 1.0).epsilon(1e-13));

  const auto w2 = lagrange_second_diff_weights(nodes, 1.1);
  acc = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    acc += w2[i] * std::pow(nodes[i], 4);
  CHECK(acc == doctest::Approx(12 * 1.1 * 1.1).epsilon(1e-12));
}

TEST_CASE("sampled derivatives converge at the advertised orders") {
  const auto grid_err = [&](double h, int order) {
    const auto ts = uniform_grid(0.0, 1.0, h);
    return max_err(ts, sampled_derivative(ts, sample_fn(ts, std::sin), order),
                   std::cos);
  };

  SUBCASE("three-point scheme halves to a quarter of the error") {
    const double e1 = grid_err(0.01, 2);
    const double e2 = grid_err(0.005, 2);
    CHECK(e1 / e2 > 3.5);
    CHECK(e1 / e2 < 4.5);
  }
  SUBCASE("five-point interior scheme is far tighter away from the ends") {
    const auto ts = uniform_grid(0.0, 1.0, 0.01);
    const auto got = sampled_derivative(ts, sample_fn(ts, std::sin), 4);
    double interior = 0;
    for (std::size_t k = 2; k + 2 < ts.size(); ++k)
      interior = std::max(interior, std::abs(got[k](0) - std::cos(ts[k])));
    CHECK(interior < 5e-9);             // centered window ~ h^4
    CHECK(grid_err(0.01, 4) < 5e-5);    // one-sided ends drop to ~ h^2
  }
  SUBCASE("uniform five-point windows keep the ends at full accuracy") {
    CHECK(grid_err(0.01, 5) < 5e-9);
    const double e1 = grid_err(0.01, 5);
    const double e2 = grid_err(0.005, 5);
    CHECK(e1 / e2 > 12.0);  // ~ h^4
  }
}

TEST_CASE("second derivatives come from one stencil, not stacked ones") {
  const auto ts = uniform_grid(0.0, 1.0, 0.01);
  const auto dd = sampled_second_derivative(ts, sample_fn(ts, std::sin));
  double worst = 0;
  for (std::size_t k = 0; k < ts.size(); ++k)
    worst = std::max(worst, std::abs(dd[k](0) + std::sin(ts[k])));
  CHECK(worst < 1e-6);
}

TEST_CASE("local cubic interpolation reproduces cubics") {
  const auto ts = uniform_grid(0.0, 2.0, 0.1);
  std::vector<VectorXd> vals;
  for (double t : ts) {
    VectorXd v(1);
    v(0) = ((t - 1.0) * t + 2.0) * t - 0.5;  // cubic
    vals.push_back(v);
  }
  for (double t : {0.001, 0.5501, 1.2345, 1.999}) {
    CHECK(interpolate(ts, vals, t)(0) ==
          doctest::Approx(((t - 1.0) * t + 2.0) * t - 0.5).epsilon(1e-12));
    CHECK(interpolate_derivative(ts, vals, t)(0) ==
          doctest::Approx(3 * t * t - 2 * t + 2).epsilon(1e-10));
  }
}

TEST_CASE("uniform grids land on the endpoints and respect the hint") {
  const auto g = uniform_grid(0.0, 1.0, 0.3);
  REQUIRE(g.size() == 5);  // ceil(1/0.3) = 4 steps
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 1.0);
  for (std::size_t k = 1; k < g.size(); ++k)
    CHECK(g[k] - g[k - 1] <= 0.3 + 1e-15);
}

TEST_CASE("grid validation flags short and non-increasing grids") {
  CHECK_THROWS_AS(require_grid({0.0, 1.0}, 3, "test"), GridError);
  CHECK_THROWS_AS(require_grid({0.0, 0.5, 0.5, 1.0}, 3, "test"), GridError);
  CHECK_NOTHROW(require_grid({0.0, 0.5, 1.0}, 3, "test"));
}
