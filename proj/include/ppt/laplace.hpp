#pragma once

#include <cstdint>
#include <span>

#include "ppt/saddle.hpp"
#include "ppt/types.hpp"

namespace ppt {

/// Laplace approximation of log P(X1 ... Xm >= n).
///
/// log_p is kept as a raw double rather than a LogProb: the approximation is
/// asymptotic and may exceed zero for tiny n, and clamping would break the
/// identity log_p == T_at_saddle + log_prefactor.
struct LaplaceEstimate {
    double log_p = 0.0;
    double T_at_saddle = 0.0;
    double log_prefactor = 0.0;
    PrefactorMode prefactor_mode = PrefactorMode::exact_hessian;
    SaddlePoint saddle;
};

/// Stirling surrogate of sum_i log P(X_i = k_i):
///   -sum lambda_i + sum k_i (log lambda_i - log k_i + 1) [- sum 1/2 log(2 pi k_i)]
double T_value(std::span<const double> k, const PoissonModel& model, Variant variant);

/// log det of A restricted to the orthogonal complement of u, where
/// A = diag(1/k_i - 1/(2 k_i^2)) (exact) or diag(1/k_i) (asymptotic) and
/// u_i = prod_{j != i} k_j. Uses det(A) u^T A^{-1} u / u^T u in log space.
double constrained_hessian_logdet(std::span<const double> k, PrefactorMode mode);

LaplaceEstimate laplace_tail(const PoissonModel& model, std::uint64_t n, Variant variant = Variant::refined,
                             PrefactorMode mode = PrefactorMode::exact_hessian);

}  // namespace ppt
