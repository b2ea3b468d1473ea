#include "ppt/laplace.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "ppt/special_functions.hpp"

namespace ppt {

namespace {

const double kLog2Pi = std::log(2.0 * std::numbers::pi);

void require_positive(std::span<const double> k, const char* who) {
    for (double ki : k) {
        if (!(ki > 0.0)) {
            throw std::domain_error(std::string(who) + ": coordinates must be > 0");
        }
    }
}

}  // namespace

double T_value(std::span<const double> k, const PoissonModel& model, Variant variant) {
    if (k.size() != model.size()) {
        throw std::invalid_argument("T_value: dimension mismatch");
    }
    require_positive(k, "T_value");
    double t = 0.0;
    for (std::size_t i = 0; i < k.size(); ++i) {
        t += -model[i] + k[i] * (std::log(model[i]) - std::log(k[i]) + 1.0);
        if (variant == Variant::refined) {
            t -= 0.5 * (kLog2Pi + std::log(k[i]));
        }
    }
    return t;
}

double constrained_hessian_logdet(std::span<const double> k, PrefactorMode mode) {
    if (k.size() < 2) {
        throw std::invalid_argument("constrained_hessian_logdet: requires m >= 2");
    }
    require_positive(k, "constrained_hessian_logdet");
    const std::size_t m = k.size();

    std::vector<double> log_k(m);
    double log_k_sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        log_k[i] = std::log(k[i]);
        log_k_sum += log_k[i];
    }

    double log_det_a = 0.0;
    std::vector<double> quad_terms(m);  // log(u_i^2 / a_ii)
    std::vector<double> norm_terms(m);  // log(u_i^2)
    for (std::size_t i = 0; i < m; ++i) {
        double diag = 1.0 / k[i];
        if (mode == PrefactorMode::exact_hessian) {
            diag -= 0.5 / (k[i] * k[i]);
        }
        if (!(diag > 0.0)) {
            throw std::domain_error("constrained_hessian_logdet: exact Hessian requires every k_i > 1/2");
        }
        const double log_diag = std::log(diag);
        const double log_u = log_k_sum - log_k[i];
        log_det_a += log_diag;
        quad_terms[i] = 2.0 * log_u - log_diag;
        norm_terms[i] = 2.0 * log_u;
    }
    return log_det_a + log_sum_exp(quad_terms) - log_sum_exp(norm_terms);
}

LaplaceEstimate laplace_tail(const PoissonModel& model, std::uint64_t n, Variant variant, PrefactorMode mode) {
    LaplaceEstimate est;
    est.saddle = solve_saddle_m(model, n, variant);
    est.prefactor_mode = mode;
    est.T_at_saddle = T_value(est.saddle.k, model, variant);

    const double dims = static_cast<double>(model.size() - 1);
    if (mode == PrefactorMode::exact_hessian) {
        est.log_prefactor = 0.5 * dims * kLog2Pi - 0.5 * constrained_hessian_logdet(est.saddle.k, mode);
    } else {
        const double md = static_cast<double>(model.size());
        est.log_prefactor = 0.5 * dims * kLog2Pi + dims / (2.0 * md) * std::log(static_cast<double>(n));
    }
    est.log_p = est.T_at_saddle + est.log_prefactor;
    return est;
}

}  // namespace ppt
