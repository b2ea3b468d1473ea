#pragma once

#include <cstdint>
#include <span>

#include "ppt/types.hpp"

namespace ppt {

/// Principal real branch of the Lambert W function, x >= -1/e.
/// Halley iteration; throws std::domain_error below the branch point.
double lambert_w0(double x);

/// log x - log log x. Only meaningful as a seed or as a diagnostic for large
/// x; requires x > e.
double lambert_w0_asymptotic(double x);

/// d/dx W(x) = W / (x (1 + W)), valid for x > 0.
double lambert_w0_derivative(double x);

/// log k!, absolute error below 1e-12 for every k.
double log_factorial(std::uint64_t k);

LogProb log_poisson_pmf(std::uint64_t k, double lambda);

/// log P(X >= m) for X ~ Poisson(lambda).
LogProb log_poisson_sf(std::uint64_t m, double lambda);

/// Optimised Chernoff exponent -m log(m/lambda) + m - lambda bounding
/// log P(X >= m). Requires m > lambda.
double chernoff_log_bound(double m, double lambda);

/// log sum exp(v_i). -inf entries contribute nothing; throws on empty input.
double log_sum_exp(std::span<const double> values);
double log_sum_exp(double a, double b);

/// log(exp(a) - exp(b)) for a >= b.
double log_diff_exp(double a, double b);

}  // namespace ppt
