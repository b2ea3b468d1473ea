#pragma once

#include <cstdint>

#include "ppt/types.hpp"

namespace ppt {

/// Truncations of log P(X1 X2 >= n) in powers of sqrt(n) and log n:
///   order 1: -sqrt(n) log n
///   order 2: + sqrt(n) (2 + log(lambda1 lambda2))
///   order 3: - 1/2 log n
double expansion_log_tail(double lambda1, double lambda2, std::uint64_t n, int order);

/// 1/2 log(2 pi) + 1/4 log n + expansion_log_tail(order).
double coarse_log_tail(double lambda1, double lambda2, std::uint64_t n, int order = 2);

/// ((m-1)/2) log(2 pi) + ((m-1)/(2m)) log n - n^{1/m} log n + n^{1/m} (m + sum log lambda_i).
double heuristic_two_term_m(const PoissonModel& model, std::uint64_t n);

/// Bounds for the split of {k l >= n} into the strips R1 = {k <= a_n},
/// R2 = {l <= a_n} and the balanced core R3, with a_n = sqrt(n)/log n.
struct RegionBounds {
    double a_n = 0.0;
    double m_n = 0.0;              // n / a_n = sqrt(n) log n
    std::uint64_t m_diag = 0;      // ceil(sqrt(n)), the diagonal point (m, m) in R3
    double log_ub_R1 = 0.0;        // Chernoff bound on P(X2 >= m_n)
    double log_ub_R2 = 0.0;        // Chernoff bound on P(X1 >= m_n)
    double log_lb_R3 = 0.0;        // log P(X1 = m, X2 = m)
    double log_ratio = 0.0;        // log(ub_R1 + ub_R2) - lb_R3
};

RegionBounds region_bounds(double lambda1, double lambda2, std::uint64_t n);

/// Exponent loss from replacing the saddle (k*, l*) by its leading
/// truncation k~ = sqrt(n), with the partner l~ = n / k~ kept on the
/// constraint curve.
struct TruncationGap {
    std::uint64_t n = 0;
    double k_star = 0.0;
    double k_trunc = 0.0;
    double delta_k = 0.0;   // k~ - k*
    double delta_T = 0.0;   // T(k~, l~) - T(k*, l*), refined T
    double growth_ratio = 0.0;  // delta_T / (sqrt(n) (log log n)^2 / log n)
};

TruncationGap truncation_gap(double lambda1, double lambda2, std::uint64_t n);

}  // namespace ppt
