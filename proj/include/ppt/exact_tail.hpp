#pragma once

#include <cstdint>

#include "ppt/types.hpp"

namespace ppt {

inline constexpr double kDefaultRelTol = 1e-12;

/// Threshold query against a model. rel_tol bounds the omitted remainder of
/// the outer sum relative to the accumulated value.
struct TailQuery {
    PoissonModel model;
    std::uint64_t n;
    double rel_tol = kDefaultRelTol;

    void validate() const;
};

/// log P(X1 X2 >= n) = log sum_{k>=1} P(X1 = k) P(X2 >= ceil(n/k)).
LogProb exact_tail_2(double lambda1, double lambda2, std::uint64_t n, double rel_tol = kDefaultRelTol);

/// log P(X1 ... Xm >= n) by recursion on the first factor with a per-call
/// memo keyed by (suffix depth, threshold).
LogProb exact_tail_m(const PoissonModel& model, std::uint64_t n, double rel_tol = kDefaultRelTol);
LogProb exact_tail(const TailQuery& q);

/// Naive nested sum over all tuples with every k_i <= cap. O(cap^m); test
/// oracle only. Throws if the Chernoff bound on the mass beyond cap is not
/// below 1e-15.
LogProb brute_force_tail(const PoissonModel& model, std::uint64_t n, std::uint64_t cap);

/// Upper bound on the probability mass of tuples with some k_i > cap.
double brute_force_omitted_mass_bound(const PoissonModel& model, std::uint64_t cap);

}  // namespace ppt
