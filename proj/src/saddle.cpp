#include "ppt/saddle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ppt/special_functions.hpp"

namespace ppt {

namespace {

constexpr int kMaxRootIterations = 200;

double variant_shift(Variant v) { return v == Variant::refined ? 0.5 : 0.0; }

// Root of g(v) = sum_i [v - log W(e^v / lambda_i)] - log n, i.e.
// sum_i log k_i(u) = log n with u = e^v and k_i(u) = u / W(u / lambda_i).
// g is strictly increasing (g' = sum W_i / (1 + W_i) > 0) with
// g(-inf) = sum log lambda_i - log n, so a root exists iff n > prod lambda_i.
struct ScalarRoot {
    double u;
    int iterations;
};

ScalarRoot solve_u(std::span<const double> lambdas, std::uint64_t n, double s0, double shift) {
    if (n < 2) {
        throw std::domain_error("saddle solver: requires n >= 2");
    }
    const double log_n = std::log(static_cast<double>(n));
    double log_prod_lambda = 0.0;
    for (double l : lambdas) {
        log_prod_lambda += std::log(l);
    }
    if (!(log_n > log_prod_lambda)) {
        throw std::domain_error("saddle solver: no constrained saddle for n <= prod(lambda) (n = " +
                                std::to_string(n) + ")");
    }

    auto g_and_slope = [&](double v) {
        const double u = std::exp(v);
        double g = -log_n;
        double slope = 0.0;
        for (double l : lambdas) {
            const double w = lambert_w0(u / l);
            g += v - std::log(w);
            slope += w / (1.0 + w);
        }
        return std::pair{g, slope};
    };

    const double max_lambda = *std::max_element(lambdas.begin(), lambdas.end());
    double lo = std::log(max_lambda * std::numbers::e + 0.5 - shift);
    double hi = std::log(std::max(4.0 * s0 - shift, 1.0));
    if (hi <= lo) {
        hi = lo + 1.0;
    }
    // Widen the nominal bracket until it straddles the root.
    for (int i = 0; g_and_slope(lo).first > 0.0; ++i) {
        if (i > 2000) throw NoConvergence("saddle solver: could not bracket root from below");
        lo -= 1.0;
    }
    for (int i = 0; g_and_slope(hi).first < 0.0; ++i) {
        if (i > 2000) throw NoConvergence("saddle solver: could not bracket root from above");
        hi += 1.0;
    }

    const double v0 = std::log(std::max(s0 - shift, 1e-300));
    double v = (v0 > lo && v0 < hi) ? v0 : 0.5 * (lo + hi);
    for (int it = 1; it <= kMaxRootIterations; ++it) {
        const auto [g, slope] = g_and_slope(v);
        if (g == 0.0) {
            return {std::exp(v), it};
        }
        (g < 0.0 ? lo : hi) = v;
        double next = v - g / slope;
        if (!(next > lo && next < hi)) {
            next = 0.5 * (lo + hi);
        }
        const double step = next - v;
        v = next;
        if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(v)) || hi - lo <= 1e-15 * std::max(1.0, std::abs(v))) {
            return {std::exp(v), it};
        }
    }
    throw NoConvergence("saddle solver: no convergence after " + std::to_string(kMaxRootIterations) +
                        " iterations");
}

double default_initializer(std::size_t m, std::uint64_t n) {
    const double nd = static_cast<double>(n);
    const double md = static_cast<double>(m);
    const double root = std::pow(nd, 1.0 / md);
    if (n < 16) {
        return root;
    }
    const double log_n = std::log(nd);
    return root * (log_n - std::log(log_n)) / md;
}

SaddlePoint assemble(const PoissonModel& model, std::uint64_t n, Variant variant, ScalarRoot root) {
    SaddlePoint sp;
    sp.variant = variant;
    sp.iterations = root.iterations;
    sp.s = root.u + variant_shift(variant);
    sp.alpha = -sp.s / static_cast<double>(n);
    sp.k.reserve(model.size());
    for (double l : model.lambdas()) {
        sp.k.push_back(root.u / lambert_w0(root.u / l));
    }
    sp.residuals = stationarity_residuals(model, sp.k, sp.alpha, n, variant);
    return sp;
}

}  // namespace

double SaddlePoint::max_stationarity_residual() const {
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < residuals.size(); ++i) {
        worst = std::max(worst, residuals[i]);
    }
    return worst;
}

std::vector<double> stationarity_residuals(const PoissonModel& model, std::span<const double> k, double alpha,
                                           std::uint64_t n, Variant variant) {
    if (k.size() != model.size()) {
        throw std::invalid_argument("stationarity_residuals: dimension mismatch");
    }
    const std::size_t m = k.size();
    std::vector<double> out;
    out.reserve(m + 1);
    for (std::size_t i = 0; i < m; ++i) {
        double others = 1.0;
        for (std::size_t j = 0; j < m; ++j) {
            if (j != i) others *= k[j];
        }
        double r = std::log(model[i]) - std::log(k[i]) - alpha * others;
        if (variant == Variant::refined) {
            r -= 0.5 / k[i];
        }
        out.push_back(std::abs(r));
    }
    double product = 1.0;
    for (double ki : k) {
        product *= ki;
    }
    const double nd = static_cast<double>(n);
    out.push_back(std::abs(product - nd) / nd);
    return out;
}

double solve_s_2(double lambda1, double lambda2, std::uint64_t n) {
    const PoissonModel model({lambda1, lambda2});
    const double nd = static_cast<double>(n);
    const double s0 = 0.5 * std::sqrt(nd) * std::log(nd);
    return solve_u(model.lambdas(), n, s0, 0.5).u + 0.5;
}

std::pair<double, double> saddle_from_s_2(double s, double lambda1, double lambda2) {
    if (!(s > 0.5)) {
        throw std::domain_error("saddle_from_s_2: requires s > 1/2");
    }
    if (!(lambda1 > 0.0) || !(lambda2 > 0.0)) {
        throw std::invalid_argument("saddle_from_s_2: rates must be > 0");
    }
    const double u = s - 0.5;
    return {u / lambert_w0(u / lambda1), u / lambert_w0(u / lambda2)};
}

SaddlePoint solve_saddle_2(double lambda1, double lambda2, std::uint64_t n) {
    const PoissonModel model({lambda1, lambda2});
    const double nd = static_cast<double>(n);
    const double s0 = 0.5 * std::sqrt(nd) * std::log(nd);
    return assemble(model, n, Variant::refined, solve_u(model.lambdas(), n, s0, 0.5));
}

SaddlePoint solve_saddle_m(const PoissonModel& model, std::uint64_t n, Variant variant) {
    if (model.size() < 2) {
        throw std::invalid_argument("solve_saddle_m: requires m >= 2");
    }
    const double shift = variant_shift(variant);
    const double s0 = default_initializer(model.size(), n);
    return assemble(model, n, variant, solve_u(model.lambdas(), n, s0, shift));
}

SaddleAsymptotics saddle_asymptotics(const PoissonModel& model, std::uint64_t n) {
    if (n < 16) {
        throw std::domain_error("saddle_asymptotics: requires n >= 16");
    }
    const double nd = static_cast<double>(n);
    const double md = static_cast<double>(model.size());
    const double root = std::pow(nd, 1.0 / md);
    const double log_n = std::log(nd);
    SaddleAsymptotics out;
    out.k.assign(model.size(), root);
    out.s = root * (log_n - std::log(log_n)) / md;
    out.alpha = -out.s / nd;
    return out;
}

}  // namespace ppt
