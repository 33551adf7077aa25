#include "cwblow/problem.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "cwblow/mesh.hpp"

namespace cwblow {

PDEParams validate_params(const PDEParams& params) {
  if (!(params.p > 1.0))
    throw std::invalid_argument("params: need p > 1, got p = " + std::to_string(params.p));
  if (!(params.q >= 1.0))
    throw std::invalid_argument("params: need q >= 1, got q = " + std::to_string(params.q));
  if (!(params.q <= params.gradient_exponent_bound()))
    throw std::invalid_argument("params: need q <= 2p/(p+1) = " +
                                std::to_string(params.gradient_exponent_bound()) +
                                ", got q = " + std::to_string(params.q));
  if (!(params.a >= 0.0))
    throw std::invalid_argument("params: need a >= 0, got a = " + std::to_string(params.a));
  if (!(params.b >= 0.0))
    throw std::invalid_argument("params: need b >= 0, got b = " + std::to_string(params.b));
  return params;
}

InitialData build_sine_profile(double amplitude) {
  if (!(amplitude >= 0.0))
    throw std::invalid_argument("sine profile: amplitude must be >= 0");
  InitialData data;
  data.amplitude = amplitude;
  data.sampler = [amplitude](double x) {
    // The boundary zeros must be exact; sin(pi) evaluated directly is not.
    if (x <= -1.0 || x >= 1.0) return 0.0;
    return amplitude * std::sin(std::numbers::pi * (x + 1.0) * 0.5);
  };
  return data;
}

AssumptionReport check_assumptions(const InitialData& data, const Grid& grid,
                                   double largeness_threshold) {
  if (!data.sampler) throw std::invalid_argument("check_assumptions: empty sampler");

  const int K = grid.intervals;
  const int m = grid.midpoint();
  std::vector<double> u(K + 1);
  for (int j = 0; j <= K; ++j) u[j] = data.sampler(grid.nodes[j]);

  AssumptionReport report;
  for (double v : u) report.sup_norm = std::max(report.sup_norm, std::abs(v));
  const double tol = 1e-12 * report.sup_norm;

  bool nonnegative = true, nonconstant = false;
  for (int j = 0; j <= K; ++j) {
    if (u[j] < 0.0) nonnegative = false;
    if (u[j] != u[0]) nonconstant = true;
  }
  report.nonnegative_nonconstant = nonnegative && nonconstant;

  report.symmetric = true;
  for (int i = 1; i <= m; ++i)
    if (std::abs(u[m - i] - u[m + i]) > tol) report.symmetric = false;

  report.increasing_left_half = true;
  for (int j = 0; j < m; ++j)
    if (!(u[j] < u[j + 1])) report.increasing_left_half = false;

  report.large = report.sup_norm >= largeness_threshold;
  report.boundary_zero = std::abs(u[0]) <= tol && std::abs(u[K]) <= tol;
  return report;
}

double discrete_energy(std::span<const double> values, const Grid& grid,
                       const PDEParams& params) {
  const std::size_t K = static_cast<std::size_t>(grid.intervals);
  if (values.size() != K + 1)
    throw std::invalid_argument("discrete_energy: expected " + std::to_string(K + 1) +
                                " values, got " + std::to_string(values.size()));
  const double h = grid.spacing;
  double gradient_part = 0.0;
  for (std::size_t j = 0; j < K; ++j) {
    const double slope = (values[j + 1] - values[j]) / h;
    gradient_part += slope * slope;
  }
  gradient_part *= 0.5 * h;

  double potential_part = 0.0;
  for (std::size_t j = 0; j <= K; ++j)
    potential_part += std::pow(std::abs(values[j]), params.p + 1.0);
  potential_part *= h / (params.p + 1.0);

  return gradient_part - potential_part;
}

}  // namespace cwblow
