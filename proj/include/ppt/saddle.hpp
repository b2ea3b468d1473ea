#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ppt/types.hpp"

namespace ppt {

/// Solution of the constrained stationarity system
///
///   log lambda_i - log k_i [- 1/(2 k_i)] - alpha * prod_{j != i} k_j = 0,
///   prod_i k_i = n,
///
/// where the bracketed term is present for Variant::refined only.
/// `residuals` holds the m stationarity residuals (absolute) followed by the
/// relative constraint residual |prod k - n| / n.
struct SaddlePoint {
    std::vector<double> k;
    double s = 0.0;      // -alpha * n
    double alpha = 0.0;  // Lagrange multiplier
    std::vector<double> residuals;
    int iterations = 0;
    Variant variant = Variant::refined;

    [[nodiscard]] double max_stationarity_residual() const;
    [[nodiscard]] double constraint_residual() const { return residuals.back(); }
};

/// Root s of (s - 1/2)^2 = n W((s - 1/2)/lambda1) W((s - 1/2)/lambda2).
double solve_s_2(double lambda1, double lambda2, std::uint64_t n);

/// Saddle coordinates (k, l) = ((s-1/2)/W((s-1/2)/lambda1), (s-1/2)/W((s-1/2)/lambda2)).
std::pair<double, double> saddle_from_s_2(double s, double lambda1, double lambda2);

SaddlePoint solve_saddle_2(double lambda1, double lambda2, std::uint64_t n);

/// General m >= 2. Every coordinate is k_i = u / W(u / lambda_i) with
/// u = s - 1/2 (refined) or u = s (plain); s solves prod k_i = n.
SaddlePoint solve_saddle_m(const PoissonModel& model, std::uint64_t n, Variant variant = Variant::refined);

/// Leading-order saddle: k_i = n^{1/m}, s = n^{1/m} (log n - log log n) / m,
/// alpha = -s / n. Requires n >= 16.
struct SaddleAsymptotics {
    std::vector<double> k;
    double s = 0.0;
    double alpha = 0.0;
};
SaddleAsymptotics saddle_asymptotics(const PoissonModel& model, std::uint64_t n);

/// Stationarity residuals of an arbitrary point (k, alpha), laid out as in
/// SaddlePoint::residuals.
std::vector<double> stationarity_residuals(const PoissonModel& model, std::span<const double> k, double alpha,
                                           std::uint64_t n, Variant variant);

}  // namespace ppt
