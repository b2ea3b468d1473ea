#include "ppt/expansions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ppt/saddle.hpp"
#include "ppt/special_functions.hpp"

namespace ppt {

namespace {

const double kLog2Pi = std::log(2.0 * std::numbers::pi);

void require_n_at_least(std::uint64_t n, std::uint64_t lo, const char* who) {
    if (n < lo) {
        throw std::domain_error(std::string(who) + ": n too small");
    }
}

void require_rates(double lambda1, double lambda2, const char* who) {
    if (!(lambda1 > 0.0) || !(lambda2 > 0.0)) {
        throw std::invalid_argument(std::string(who) + ": rates must be > 0");
    }
}

}  // namespace

double expansion_log_tail(double lambda1, double lambda2, std::uint64_t n, int order) {
    if (order < 1 || order > 3) {
        throw std::invalid_argument("expansion_log_tail: order must be 1, 2 or 3");
    }
    require_rates(lambda1, lambda2, "expansion_log_tail");
    require_n_at_least(n, 2, "expansion_log_tail");
    const double nd = static_cast<double>(n);
    const double root = std::sqrt(nd);
    const double log_n = std::log(nd);

    double value = -root * log_n;
    if (order >= 2) {
        value += root * (2.0 + std::log(lambda1 * lambda2));
    }
    if (order >= 3) {
        value -= 0.5 * log_n;
    }
    return value;
}

double coarse_log_tail(double lambda1, double lambda2, std::uint64_t n, int order) {
    const double nd = static_cast<double>(n);
    return 0.5 * kLog2Pi + 0.25 * std::log(nd) + expansion_log_tail(lambda1, lambda2, n, order);
}

double heuristic_two_term_m(const PoissonModel& model, std::uint64_t n) {
    if (model.size() < 2) {
        throw std::invalid_argument("heuristic_two_term_m: requires m >= 2");
    }
    require_n_at_least(n, 2, "heuristic_two_term_m");
    const double md = static_cast<double>(model.size());
    const double nd = static_cast<double>(n);
    const double log_n = std::log(nd);
    const double root = std::pow(nd, 1.0 / md);
    double sum_log_lambda = 0.0;
    for (double l : model.lambdas()) {
        sum_log_lambda += std::log(l);
    }
    return 0.5 * (md - 1.0) * kLog2Pi + (md - 1.0) / (2.0 * md) * log_n - root * log_n +
           root * (md + sum_log_lambda);
}

RegionBounds region_bounds(double lambda1, double lambda2, std::uint64_t n) {
    require_rates(lambda1, lambda2, "region_bounds");
    require_n_at_least(n, 3, "region_bounds");
    const double nd = static_cast<double>(n);
    const double log_n = std::log(nd);

    RegionBounds rb;
    rb.a_n = std::sqrt(nd) / log_n;
    rb.m_n = nd / rb.a_n;
    if (!(rb.m_n > std::max(lambda1, lambda2))) {
        throw std::domain_error("region_bounds: requires sqrt(n) log n > max(lambda)");
    }
    rb.m_diag = static_cast<std::uint64_t>(std::ceil(std::sqrt(nd)));
    while (rb.m_diag * rb.m_diag < n) ++rb.m_diag;
    while (rb.m_diag > 1 && (rb.m_diag - 1) * (rb.m_diag - 1) >= n) --rb.m_diag;

    rb.log_ub_R1 = chernoff_log_bound(rb.m_n, lambda2);
    rb.log_ub_R2 = chernoff_log_bound(rb.m_n, lambda1);
    const double md = static_cast<double>(rb.m_diag);
    rb.log_lb_R3 = -(lambda1 + lambda2) + md * std::log(lambda1 * lambda2) - 2.0 * log_factorial(rb.m_diag);
    rb.log_ratio = log_sum_exp(rb.log_ub_R1, rb.log_ub_R2) - rb.log_lb_R3;
    return rb;
}

TruncationGap truncation_gap(double lambda1, double lambda2, std::uint64_t n) {
    require_rates(lambda1, lambda2, "truncation_gap");
    require_n_at_least(n, 16, "truncation_gap");
    const PoissonModel model({lambda1, lambda2});
    const SaddlePoint sp = solve_saddle_2(lambda1, lambda2, n);
    const double nd = static_cast<double>(n);

    TruncationGap gap;
    gap.n = n;
    gap.k_star = sp.k[0];
    gap.k_trunc = std::sqrt(nd);
    gap.delta_k = gap.k_trunc - gap.k_star;
    const std::array<double, 2> truncated{gap.k_trunc, nd / gap.k_trunc};
    // Pair k* with its exact constraint partner so both points sit on the
    // same curve; the solver's own l* is off by rounding, which the large
    // first derivative of T would amplify.
    const std::array<double, 2> saddle{sp.k[0], nd / sp.k[0]};
    // T(a) - T(b) coordinatewise, written so the O(sqrt(n) log n) parts
    // cancel analytically instead of in floating point.
    double delta_T = 0.0;
    for (std::size_t i = 0; i < 2; ++i) {
        const double a = truncated[i];
        const double b = saddle[i];
        const double d = a - b;
        const double log_ratio = std::log1p(d / b);
        delta_T += d * (std::log(model[i]) + 1.0 - std::log(a)) - b * log_ratio - 0.5 * log_ratio;
    }
    gap.delta_T = delta_T;
    const double log_n = std::log(nd);
    const double log_log_n = std::log(log_n);
    gap.growth_ratio = gap.delta_T / (std::sqrt(nd) * log_log_n * log_log_n / log_n);
    return gap;
}

}  // namespace ppt
