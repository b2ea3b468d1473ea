#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ppt {

/// Root finder or iteration that failed to meet its tolerance.
class NoConvergence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A probability carried as its natural logarithm.
///
/// Values far below the double underflow threshold (exp(-745)) are common
/// here, so every module boundary exchanges probabilities in this form.
/// Negative infinity represents probability zero.
class LogProb {
public:
    constexpr LogProb() = default;

    /// Tiny positive values produced by rounding (e.g. log1p of -1e-17) are
    /// clamped to zero; anything clearly above zero is a bug upstream.
    explicit LogProb(double log_value) : value_(log_value) {
        if (std::isnan(log_value)) {
            throw std::domain_error("LogProb: NaN");
        }
        if (log_value > 0.0) {
            if (log_value > 1e-9) {
                throw std::domain_error("LogProb: log probability " + std::to_string(log_value) + " > 0");
            }
            value_ = 0.0;
        }
    }

    static LogProb zero() { return LogProb(-std::numeric_limits<double>::infinity()); }
    static LogProb one() { return LogProb(0.0); }

    [[nodiscard]] double value() const { return value_; }
    [[nodiscard]] double prob() const { return std::exp(value_); }
    [[nodiscard]] bool is_zero() const { return std::isinf(value_); }

    friend bool operator==(LogProb a, LogProb b) = default;
    friend auto operator<=>(LogProb a, LogProb b) = default;

private:
    double value_ = -std::numeric_limits<double>::infinity();
};

/// Parameter vector (lambda_1, ..., lambda_m) of independent Poisson factors.
class PoissonModel {
public:
    explicit PoissonModel(std::vector<double> lambdas);

    [[nodiscard]] std::size_t size() const { return lambdas_.size(); }
    [[nodiscard]] std::span<const double> lambdas() const { return lambdas_; }
    [[nodiscard]] double operator[](std::size_t i) const { return lambdas_[i]; }
    /// Model with the first factor removed; requires size() >= 2.
    [[nodiscard]] PoissonModel tail() const;

private:
    std::vector<double> lambdas_;
};

/// Which exponent surrogate of log P(X = k) is used.
///   refined: includes the -1/2 log(2 pi k) Stirling terms (and the 1/(2k)
///            terms in the stationarity equations)
///   plain:   the leading k(log lambda - log k + 1) form only
enum class Variant { refined, plain };

/// How the constrained Hessian feeding the Gaussian prefactor is formed.
enum class PrefactorMode { exact_hessian, asymptotic };

std::string to_string(Variant v);
std::string to_string(PrefactorMode p);
Variant parse_variant(const std::string& s);
PrefactorMode parse_prefactor_mode(const std::string& s);

}  // namespace ppt
