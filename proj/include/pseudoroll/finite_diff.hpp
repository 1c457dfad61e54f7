#pragma once

#include <Eigen/Dense>
#include <vector>

#include "pseudoroll/errors.hpp"

namespace pseudoroll {

/// Lagrange differentiation weights: w_i such that f'(t) ~ sum_i w_i f(t_i)
/// for the interpolating polynomial through the nodes ts (all distinct).
std::vector<double> lagrange_diff_weights(const std::vector<double>& ts,
                                          double t);

/// Lagrange interpolation weights: f(t) ~ sum_i w_i f(t_i).
std::vector<double> lagrange_value_weights(const std::vector<double>& ts,
                                           double t);

/// Second-derivative weights of the interpolating polynomial.
std::vector<double> lagrange_second_diff_weights(const std::vector<double>& ts,
                                                 double t);

/// Per-node derivative of sampled vector data.
///
/// order = 2: three-point stencils (2nd-order), one-sided at the ends;
/// order = 4: five-point interior stencils (4th-order on uniform grids) with
///            2nd-order one-sided three-point stencils at the ends;
/// order = 5: five-point windows everywhere, one-sided at the ends, so the
///            accuracy stays ~4th order uniformly (used where end samples
///            must meet the same tolerance as the interior).
/// The grid need not be uniform; weights come from local Lagrange
/// interpolation.
std::vector<Eigen::VectorXd> sampled_derivative(
    const std::vector<double>& times, const std::vector<Eigen::VectorXd>& values,
    int order = 4);

/// Same for matrix-valued samples (entrywise).
std::vector<Eigen::MatrixXd> sampled_derivative(
    const std::vector<double>& times, const std::vector<Eigen::MatrixXd>& values,
    int order = 4);

/// Per-node second derivative via five-point Lagrange windows (one-sided at
/// the ends).  Preferred over differentiating twice: no error amplification
/// from stacked stencils.
std::vector<Eigen::VectorXd> sampled_second_derivative(
    const std::vector<double>& times,
    const std::vector<Eigen::VectorXd>& values);

/// Cubic (four-point) Lagrange interpolation of sampled vector data at t,
/// clamped to the sample range at the ends.
Eigen::VectorXd interpolate(const std::vector<double>& times,
                            const std::vector<Eigen::VectorXd>& values,
                            double t);

/// Derivative of the same local cubic interpolant at t.
Eigen::VectorXd interpolate_derivative(const std::vector<double>& times,
                                       const std::vector<Eigen::VectorXd>& values,
                                       double t);

/// Uniform grid over [t0, t1] with step <= step_hint (last point lands on t1).
std::vector<double> uniform_grid(double t0, double t1, double step_hint);

/// Validate a sample grid: at least min_samples entries, strictly increasing.
void require_grid(const std::vector<double>& times, std::size_t min_samples,
                  const char* who);

}  // namespace pseudoroll
