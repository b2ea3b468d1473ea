#include "ppt/special_functions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ppt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint64_t kFactorialTableSize = 256;
constexpr int kMaxHalleyIterations = 50;
// Relative size of the omitted geometric tail at which summation stops.
constexpr double kSurvivalTailCutoff = 1e-18;

const std::array<double, kFactorialTableSize>& log_factorial_table() {
    // Function-local static: initialisation is thread-safe.
    static const std::array<double, kFactorialTableSize> table = [] {
        std::array<double, kFactorialTableSize> t{};
        double sum = 0.0;
        double comp = 0.0;
        t[0] = 0.0;
        for (std::uint64_t i = 1; i < kFactorialTableSize; ++i) {
            // Neumaier summation of log i.
            const double term = std::log(static_cast<double>(i));
            const double next = sum + term;
            if (std::abs(sum) >= std::abs(term)) {
                comp += (sum - next) + term;
            } else {
                comp += (term - next) + sum;
            }
            sum = next;
            t[i] = sum + comp;
        }
        return t;
    }();
    return table;
}

double lambert_seed(double x) {
    if (x > std::numbers::e) {
        return lambert_w0_asymptotic(x);
    }
    if (std::abs(x) <= 0.25) {
        return x * (1.0 - x);
    }
    if (x < 0.0) {
        // Branch-point series in p = sqrt(2(ex + 1)).
        const double p = std::sqrt(std::max(0.0, 2.0 * (std::numbers::e * x + 1.0)));
        return -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
    }
    return std::log1p(x);
}

}  // namespace

double lambert_w0(double x) {
    constexpr double branch_point = -1.0 / std::numbers::e;
    if (std::isnan(x) || x < branch_point - 1e-15) {
        throw std::domain_error("lambert_w0: argument below -1/e");
    }
    if (x == 0.0) {
        return 0.0;
    }
    if (x <= branch_point) {
        return -1.0;
    }
    if (std::isinf(x)) {
        return kInf;
    }

    double w = lambert_seed(x);
    for (int it = 0; it < kMaxHalleyIterations; ++it) {
        const double ew = std::exp(w);
        const double f = w * ew - x;
        if (f == 0.0) {
            return w;
        }
        const double wp1 = w + 1.0;
        const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        w -= step;
        if (std::abs(step) <= 1e-15 * (1.0 + std::abs(w))) {
            return w;
        }
    }
    throw NoConvergence("lambert_w0: Halley iteration did not converge for x = " + std::to_string(x));
}

double lambert_w0_asymptotic(double x) {
    if (!(x > std::numbers::e)) {
        throw std::domain_error("lambert_w0_asymptotic: requires x > e");
    }
    const double lx = std::log(x);
    return lx - std::log(lx);
}

double lambert_w0_derivative(double x) {
    if (!(x > 0.0)) {
        throw std::domain_error("lambert_w0_derivative: requires x > 0");
    }
    const double w = lambert_w0(x);
    return w / (x * (1.0 + w));
}

double log_factorial(std::uint64_t k) {
    if (k < kFactorialTableSize) {
        return log_factorial_table()[k];
    }
    const double kd = static_cast<double>(k);
    const double inv = 1.0 / kd;
    const double inv3 = inv * inv * inv;
    return kd * std::log(kd) - kd + 0.5 * std::log(2.0 * std::numbers::pi * kd) + inv / 12.0 - inv3 / 360.0;
}

LogProb log_poisson_pmf(std::uint64_t k, double lambda) {
    if (!(lambda > 0.0)) {
        throw std::invalid_argument("log_poisson_pmf: lambda must be > 0");
    }
    const double kd = static_cast<double>(k);
    const double head = k == 0 ? 0.0 : kd * std::log(lambda);
    return LogProb(head - lambda - log_factorial(k));
}

LogProb log_poisson_sf(std::uint64_t m, double lambda) {
    if (!(lambda > 0.0)) {
        throw std::invalid_argument("log_poisson_sf: lambda must be > 0");
    }
    if (m == 0) {
        return LogProb::one();
    }
    if (static_cast<double>(m) <= lambda) {
        // Complement of the (non-tiny) lower tail.
        std::vector<double> terms;
        terms.reserve(m);
        for (std::uint64_t k = 0; k < m; ++k) {
            terms.push_back(log_poisson_pmf(k, lambda).value());
        }
        return LogProb(log_diff_exp(0.0, log_sum_exp(terms)));
    }

    // m > lambda: terms decrease geometrically from k = m onward. Sum
    // relative to the first term so everything stays in [0, 1].
    const double first = log_poisson_pmf(m, lambda).value();
    double rel_sum = 1.0;
    double rel_term = 1.0;
    for (std::uint64_t k = m;; ++k) {
        const double ratio = lambda / static_cast<double>(k + 1);
        if (rel_term * ratio / (1.0 - ratio) < kSurvivalTailCutoff * rel_sum) {
            break;
        }
        rel_term *= ratio;
        rel_sum += rel_term;
        if (k - m > 100'000'000ULL) {
            throw NoConvergence("log_poisson_sf: tail summation did not terminate");
        }
    }
    return LogProb(first + std::log(rel_sum));
}

double chernoff_log_bound(double m, double lambda) {
    if (!(lambda > 0.0) || !(m > lambda)) {
        throw std::domain_error("chernoff_log_bound: requires m > lambda > 0");
    }
    return -m * std::log(m / lambda) + m - lambda;
}

double log_sum_exp(std::span<const double> values) {
    if (values.empty()) {
        throw std::invalid_argument("log_sum_exp: empty input");
    }
    const double top = *std::max_element(values.begin(), values.end());
    if (std::isinf(top)) {
        return top;
    }
    double sum = 0.0;
    for (double v : values) {
        sum += std::exp(v - top);
    }
    return top + std::log(sum);
}

double log_sum_exp(double a, double b) {
    const double top = std::max(a, b);
    if (std::isinf(top)) {
        return top;
    }
    return top + std::log1p(std::exp(std::min(a, b) - top));
}

double log_diff_exp(double a, double b) {
    if (b > a) {
        throw std::domain_error("log_diff_exp: requires a >= b");
    }
    if (std::isinf(b)) {
        return a;
    }
    const double d = b - a;
    // Pick the accurate branch of log(1 - e^d).
    return a + (d > -std::numbers::ln2 ? std::log(-std::expm1(d)) : std::log1p(-std::exp(d)));
}

}  // namespace ppt
