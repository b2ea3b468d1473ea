#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ppt/types.hpp"

namespace ppt {

/// `points` log-spaced integers in [n_min, n_max], rounded and deduplicated;
/// strictly increasing.
std::vector<std::uint64_t> log_spaced_grid(std::uint64_t n_min, std::uint64_t n_max, std::size_t points);

/// Sweep description. n_values must be nonempty, strictly increasing and >= 1.
struct SweepSpec {
    PoissonModel model;
    std::vector<std::uint64_t> n_values;
    Variant variant = Variant::refined;
    PrefactorMode prefactor_mode = PrefactorMode::exact_hessian;
    double rel_tol = 1e-12;

    void validate() const;
};

/// One CSV table. Rows whose computation threw carry an error message; the
/// header gains a trailing `error` column only when some row failed.
struct SweepTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> errors;  // parallel to rows; empty = ok

    [[nodiscard]] std::size_t failed_rows() const;
    [[nodiscard]] std::string to_csv() const;
};

/// n,log_p_exact,log_p_laplace,abs_gap
SweepTable figure1_table(const SweepSpec& spec, unsigned threads = 0);
/// n,log_p_exact,L1,L2,L3
SweepTable figure2_table(const SweepSpec& spec, unsigned threads = 0);
/// m,n,log_p_laplace with equal rates; rows ordered by n, then m.
SweepTable figure3_table(double lambda, const std::vector<std::size_t>& m_values,
                         const std::vector<std::uint64_t>& n_values, Variant variant, PrefactorMode mode,
                         unsigned threads = 0);

/// Runs job(i) for i in [0, count) on up to `threads` workers (0 = default).
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& job);

}  // namespace ppt
