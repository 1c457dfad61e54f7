#include "pseudoroll/finite_diff.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace pseudoroll {

std::vector<double> lagrange_diff_weights(const std::vector<double>& ts,
                                          double t) {
  const std::size_t p = ts.size();
  std::vector<double> w(p, 0.0);
  // w_i = L_i'(t) = sum_{j != i} prod_{k != i,j} (t - t_k) / prod_{k != i} (t_i - t_k)
  for (std::size_t i = 0; i < p; ++i) {
    double denom = 1.0;
    for (std::size_t k = 0; k < p; ++k)
      if (k != i) denom *= ts[i] - ts[k];
    double num = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
      if (j == i) continue;
      double prod = 1.0;
      for (std::size_t k = 0; k < p; ++k)
        if (k != i && k != j) prod *= t - ts[k];
      num += prod;
    }
    w[i] = num / denom;
  }
  return w;
}

std::vector<double> lagrange_value_weights(const std::vector<double>& ts,
                                           double t) {
  const std::size_t p = ts.size();
  std::vector<double> w(p, 1.0);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t k = 0; k < p; ++k)
      if (k != i) w[i] *= (t - ts[k]) / (ts[i] - ts[k]);
  return w;
}

std::vector<double> lagrange_second_diff_weights(const std::vector<double>& ts,
                                                 double t) {
  const std::size_t p = ts.size();
  std::vector<double> w(p, 0.0);
  // L_i''(t) = 2 sum_{j<l, j,l != i} prod_{k != i,j,l} (t - t_k)
  //            / prod_{k != i} (t_i - t_k)
  for (std::size_t i = 0; i < p; ++i) {
    double denom = 1.0;
    for (std::size_t k = 0; k < p; ++k)
      if (k != i) denom *= ts[i] - ts[k];
    double num = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
      if (j == i) continue;
      for (std::size_t l = j + 1; l < p; ++l) {
        if (l == i) continue;
        double prod = 1.0;
        for (std::size_t k = 0; k < p; ++k)
          if (k != i && k != j && k != l) prod *= t - ts[k];
        num += prod;
      }
    }
    w[i] = 2.0 * num / denom;
  }
  return w;
}

namespace {

// Window of `width` node indices around node k, clamped to the range.
std::pair<std::size_t, std::size_t> window(std::size_t k, std::size_t n,
                                           std::size_t width) {
  const std::size_t half = width / 2;
  std::size_t lo = k > half ? k - half : 0;
  if (lo + width > n) lo = n - width;
  return {lo, lo + width};
}

template <typename Value>
std::vector<Value> sampled_derivative_impl(const std::vector<double>& times,
                                           const std::vector<Value>& values,
                                           int order) {
  if (times.size() != values.size())
    throw GridError("sampled_derivative: times/values length mismatch");
  require_grid(times, 3, "sampled_derivative");
  if (order != 2 && order != 4 && order != 5)
    throw GridError("sampled_derivative: order must be 2, 4 or 5");

  const std::size_t n = times.size();
  const std::size_t interior_width =
      std::min<std::size_t>(order == 2 ? 3 : 5, n);

  std::vector<Value> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    // Orders 2 and 4 drop to one-sided three-point stencils at the boundary
    // nodes; order 5 keeps the full window (one-sided) there.
    std::size_t width = interior_width;
    if (order != 5 && (k == 0 || k == n - 1))
      width = std::min<std::size_t>(3, n);
    auto [lo, hi] = window(k, n, width);
    std::vector<double> local(times.begin() + std::ptrdiff_t(lo),
                              times.begin() + std::ptrdiff_t(hi));
    const auto w = lagrange_diff_weights(local, times[k]);
    Value acc = w[0] * values[lo];
    for (std::size_t i = 1; i < w.size(); ++i) acc += w[i] * values[lo + i];
    out[k] = acc;
  }
  return out;
}

template <typename Value>
Value interpolate_impl(const std::vector<double>& times,
                       const std::vector<Value>& values, double t,
                       bool derivative) {
  if (times.size() != values.size())
    throw GridError("interpolate: times/values length mismatch");
  require_grid(times, 2, "interpolate");
  const std::size_t n = times.size();
  const std::size_t width = std::min<std::size_t>(4, n);

  // Node nearest to t decides the (clamped) four-point window.
  const auto it = std::lower_bound(times.begin(), times.end(), t);
  std::size_t k = std::size_t(std::distance(times.begin(), it));
  if (k == n) k = n - 1;
  auto [lo, hi] = window(k, n, width);
  std::vector<double> local(times.begin() + std::ptrdiff_t(lo),
                            times.begin() + std::ptrdiff_t(hi));
  const auto w = derivative ? lagrange_diff_weights(local, t)
                            : lagrange_value_weights(local, t);
  Value acc = w[0] * values[lo];
  for (std::size_t i = 1; i < w.size(); ++i) acc += w[i] * values[lo + i];
  return acc;
}

}  // namespace

std::vector<Eigen::VectorXd> sampled_derivative(
    const std::vector<double>& times, const std::vector<Eigen::VectorXd>& values,
    int order) {
  return sampled_derivative_impl(times, values, order);
}

std::vector<Eigen::MatrixXd> sampled_derivative(
    const std::vector<double>& times, const std::vector<Eigen::MatrixXd>& values,
    int order) {
  return sampled_derivative_impl(times, values, order);
}

std::vector<Eigen::VectorXd> sampled_second_derivative(
    const std::vector<double>& times,
    const std::vector<Eigen::VectorXd>& values) {
  if (times.size() != values.size())
    throw GridError("sampled_second_derivative: times/values length mismatch");
  require_grid(times, 3, "sampled_second_derivative");
  const std::size_t n = times.size();
  const std::size_t width = std::min<std::size_t>(5, n);
  std::vector<Eigen::VectorXd> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    auto [lo, hi] = window(k, n, width);
    std::vector<double> local(times.begin() + std::ptrdiff_t(lo),
                              times.begin() + std::ptrdiff_t(hi));
    const auto w = lagrange_second_diff_weights(local, times[k]);
    Eigen::VectorXd acc = w[0] * values[lo];
    for (std::size_t i = 1; i < w.size(); ++i) acc += w[i] * values[lo + i];
    out[k] = acc;
  }
  return out;
}

Eigen::VectorXd interpolate(const std::vector<double>& times,
                            const std::vector<Eigen::VectorXd>& values,
                            double t) {
  return interpolate_impl(times, values, t, false);
}

Eigen::VectorXd interpolate_derivative(const std::vector<double>& times,
                                       const std::vector<Eigen::VectorXd>& values,
                                       double t) {
  return interpolate_impl(times, values, t, true);
}

std::vector<double> uniform_grid(double t0, double t1, double step_hint) {
  if (!(t1 > t0) || !(step_hint > 0))
    throw GridError("uniform_grid: need t1 > t0 and step > 0");
  const auto steps = std::max<std::size_t>(
      1, std::size_t(std::ceil((t1 - t0) / step_hint - 1e-12)));
  std::vector<double> ts(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k)
    ts[k] = t0 + (t1 - t0) * double(k) / double(steps);
  return ts;
}

void require_grid(const std::vector<double>& times, std::size_t min_samples,
                  const char* who) {
  if (times.size() < min_samples)
    throw GridError(std::string(who) + ": need at least " +
                    std::to_string(min_samples) + " samples");
  for (std::size_t k = 1; k < times.size(); ++k)
    if (!(times[k] > times[k - 1]))
      throw GridError(std::string(who) + ": times must be strictly increasing");
}

}  // namespace pseudoroll
