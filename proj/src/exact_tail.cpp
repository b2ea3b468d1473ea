#include "ppt/exact_tail.hpp"

#include <cmath>
#include <limits>
#include <unordered_map>
#include <vector>

#include "ppt/special_functions.hpp"

namespace ppt {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kBruteForceMaxOmitted = 1e-15;

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

void check_rel_tol(double rel_tol) {
    if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
        throw std::invalid_argument("rel_tol must lie in (0, 1)");
    }
}

// log of sum_{j>k} P(X = j) bounded by the geometric ratio lambda/(k+1).
// Only valid once k + 1 > lambda.
double log_pmf_tail_bound(std::uint64_t k, double lambda, double log_pmf_k) {
    const double ratio = lambda / static_cast<double>(k + 1);
    return log_pmf_k + std::log(ratio / (1.0 - ratio));
}

// log P(all factors >= 1) = sum log(1 - e^{-lambda_i}).
double log_all_positive(std::span<const double> lambdas) {
    double acc = 0.0;
    for (double l : lambdas) {
        acc += std::log(-std::expm1(-l));
    }
    return acc;
}

class ProductTailEvaluator {
public:
    ProductTailEvaluator(std::span<const double> lambdas, double rel_tol)
        : lambdas_(lambdas), rel_tol_(rel_tol) {}

    double eval(std::size_t depth, std::uint64_t threshold) {
        const auto suffix = lambdas_.subspan(depth);
        if (threshold <= 1) {
            return log_all_positive(suffix);
        }
        if (suffix.size() == 1) {
            return log_poisson_sf(threshold, suffix[0]).value();
        }
        const Key key{depth, threshold};
        if (auto it = memo_.find(key); it != memo_.end()) {
            return it->second;
        }

        const double lambda = suffix[0];
        double acc = kNegInf;
        bool truncated = false;
        for (std::uint64_t k = 1; k < threshold; ++k) {
            const double log_pmf = log_poisson_pmf(k, lambda).value();
            acc = log_sum_exp(acc, log_pmf + eval(depth + 1, ceil_div(threshold, k)));
            if (static_cast<double>(k + 1) > lambda && !std::isinf(acc) &&
                log_pmf_tail_bound(k, lambda, log_pmf) < std::log(rel_tol_) + acc) {
                truncated = true;
                break;
            }
        }
        if (!truncated) {
            // k >= threshold: every remaining factor only needs to be >= 1.
            acc = log_sum_exp(acc, log_poisson_sf(threshold, lambda).value() + eval(depth + 1, 1));
        }
        memo_.emplace(key, acc);
        return acc;
    }

private:
    struct Key {
        std::size_t depth;
        std::uint64_t threshold;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept {
            return std::hash<std::uint64_t>{}(k.threshold * 31 + k.depth);
        }
    };

    std::span<const double> lambdas_;
    double rel_tol_;
    std::unordered_map<Key, double, KeyHash> memo_;
};

}  // namespace

void TailQuery::validate() const {
    if (n < 1) {
        throw std::invalid_argument("threshold n must be >= 1");
    }
    check_rel_tol(rel_tol);
}

LogProb exact_tail_2(double lambda1, double lambda2, std::uint64_t n, double rel_tol) {
    if (n < 1) {
        throw std::invalid_argument("exact_tail_2: n must be >= 1");
    }
    if (!(lambda1 > 0.0) || !(lambda2 > 0.0)) {
        throw std::invalid_argument("exact_tail_2: rates must be > 0");
    }
    check_rel_tol(rel_tol);

    // The k = 0 term vanishes: 0 * X2 < n.
    double acc = kNegInf;
    const double log_tol = std::log(rel_tol);
    for (std::uint64_t k = 1;; ++k) {
        if (k >= n) {
            // Every k >= n has ceil(n/k) = 1: the rest of the sum is exactly
            // P(X1 >= k) P(X2 >= 1).
            acc = log_sum_exp(acc, log_poisson_sf(k, lambda1).value() + log_poisson_sf(1, lambda2).value());
            break;
        }
        const double log_pmf = log_poisson_pmf(k, lambda1).value();
        acc = log_sum_exp(acc, log_pmf + log_poisson_sf(ceil_div(n, k), lambda2).value());
        // The survival factor is <= 1, so the pmf tail bounds the remainder.
        if (static_cast<double>(k + 1) > lambda1 && log_pmf_tail_bound(k, lambda1, log_pmf) < log_tol + acc) {
            break;
        }
        if (k > 1'000'000'000ULL) {
            throw NoConvergence("exact_tail_2: outer sum did not terminate");
        }
    }
    return LogProb(acc);
}

LogProb exact_tail_m(const PoissonModel& model, std::uint64_t n, double rel_tol) {
    if (n < 1) {
        throw std::invalid_argument("exact_tail_m: n must be >= 1");
    }
    check_rel_tol(rel_tol);
    ProductTailEvaluator evaluator(model.lambdas(), rel_tol);
    return LogProb(evaluator.eval(0, n));
}

LogProb exact_tail(const TailQuery& q) {
    q.validate();
    return exact_tail_m(q.model, q.n, q.rel_tol);
}

double brute_force_omitted_mass_bound(const PoissonModel& model, std::uint64_t cap) {
    double total = 0.0;
    const double next = static_cast<double>(cap) + 1.0;
    for (double l : model.lambdas()) {
        if (!(next > l)) {
            return 1.0;
        }
        total += std::exp(chernoff_log_bound(next, l));
    }
    return total;
}

LogProb brute_force_tail(const PoissonModel& model, std::uint64_t n, std::uint64_t cap) {
    if (n < 1) {
        throw std::invalid_argument("brute_force_tail: n must be >= 1");
    }
    if (brute_force_omitted_mass_bound(model, cap) >= kBruteForceMaxOmitted) {
        throw std::invalid_argument("brute_force_tail: cap " + std::to_string(cap) +
                                    " leaves more than 1e-15 of probability mass uncovered");
    }

    const std::size_t m = model.size();
    std::vector<std::vector<double>> pmf(m, std::vector<double>(cap + 1));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::uint64_t k = 0; k <= cap; ++k) {
            pmf[i][k] = std::exp(log_poisson_pmf(k, model[i]).value());
        }
    }

    // Odometer over {0..cap}^m; Neumaier-compensated sum.
    std::vector<std::uint64_t> idx(m, 0);
    double sum = 0.0;
    double comp = 0.0;
    for (;;) {
        std::uint64_t product = 1;
        double weight = 1.0;
        for (std::size_t i = 0; i < m; ++i) {
            product = idx[i] == 0 ? 0 : (product >= n ? n : product * idx[i]);
            weight *= pmf[i][idx[i]];
        }
        if (product >= n) {
            const double next = sum + weight;
            comp += std::abs(sum) >= std::abs(weight) ? (sum - next) + weight : (weight - next) + sum;
            sum = next;
        }
        std::size_t d = 0;
        while (d < m && ++idx[d] > cap) {
            idx[d++] = 0;
        }
        if (d == m) {
            break;
        }
    }
    const double total = sum + comp;
    return total > 0.0 ? LogProb(std::log(total)) : LogProb::zero();
}

}  // namespace ppt
