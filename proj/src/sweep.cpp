#include "ppt/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>
#include <thread>

#include "ppt/exact_tail.hpp"
#include "ppt/expansions.hpp"
#include "ppt/laplace.hpp"
#include "ppt/montecarlo.hpp"
#include "ppt/serialize.hpp"

namespace ppt {

namespace {

constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

bool is_integer_column(const std::string& name) { return name == "n" || name == "m"; }

// Fills row i via `compute`; a throw becomes an error row that keeps the
// leading key columns and blanks the rest.
template <typename Compute>
void fill_row(SweepTable& table, std::size_t i, const std::vector<double>& keys, Compute&& compute) {
    auto& row = table.rows[i];
    row = keys;
    try {
        const std::vector<double> values = compute();
        row.insert(row.end(), values.begin(), values.end());
    } catch (const std::exception& e) {
        row = keys;
        row.resize(table.columns.size(), kMissing);
        table.errors[i] = e.what();
    }
}

SweepTable make_table(std::vector<std::string> columns, std::size_t rows) {
    SweepTable t;
    t.columns = std::move(columns);
    t.rows.resize(rows);
    t.errors.resize(rows);
    return t;
}

}  // namespace

std::vector<std::uint64_t> log_spaced_grid(std::uint64_t n_min, std::uint64_t n_max, std::size_t points) {
    if (n_min < 1 || n_max < n_min || points == 0) {
        throw std::invalid_argument("log_spaced_grid: need 1 <= n_min <= n_max and points >= 1");
    }
    std::vector<std::uint64_t> grid;
    if (points == 1 || n_min == n_max) {
        grid.push_back(n_min);
        return grid;
    }
    const double lo = std::log(static_cast<double>(n_min));
    const double hi = std::log(static_cast<double>(n_max));
    for (std::size_t i = 0; i < points; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(points - 1);
        auto n = static_cast<std::uint64_t>(std::llround(std::exp(lo + t * (hi - lo))));
        n = std::clamp(n, n_min, n_max);
        if (grid.empty() || n > grid.back()) {
            grid.push_back(n);
        }
    }
    return grid;
}

void SweepSpec::validate() const {
    if (n_values.empty()) {
        throw std::invalid_argument("sweep: empty n grid");
    }
    for (std::size_t i = 0; i < n_values.size(); ++i) {
        if (n_values[i] < 1 || (i > 0 && n_values[i] <= n_values[i - 1])) {
            throw std::invalid_argument("sweep: n values must be >= 1 and strictly increasing");
        }
    }
}

std::size_t SweepTable::failed_rows() const {
    return static_cast<std::size_t>(std::count_if(errors.begin(), errors.end(), [](const auto& e) { return !e.empty(); }));
}

std::string SweepTable::to_csv() const {
    const bool with_errors = failed_rows() > 0;
    std::string out;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (c) out += ',';
        out += columns[c];
    }
    if (with_errors) out += ",error";
    out += '\n';
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (c) out += ',';
            const double v = rows[r][c];
            if (std::isnan(v) && !errors[r].empty()) {
                continue;
            }
            out += is_integer_column(columns[c]) ? std::to_string(static_cast<std::uint64_t>(v)) : format_double(v);
        }
        if (with_errors) {
            std::string msg = errors[r];
            std::replace(msg.begin(), msg.end(), ',', ';');
            std::replace(msg.begin(), msg.end(), '\n', ' ');
            out += ',' + msg;
        }
        out += '\n';
    }
    return out;
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& job) {
    if (threads == 0) {
        threads = default_thread_count();
    }
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            job(i);
        }
    };
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) {
        pool.emplace_back(worker);
    }
    worker();
}

SweepTable figure1_table(const SweepSpec& spec, unsigned threads) {
    spec.validate();
    if (spec.model.size() != 2) {
        throw std::invalid_argument("figure1: needs exactly two rates");
    }
    SweepTable table = make_table({"n", "log_p_exact", "log_p_laplace", "abs_gap"}, spec.n_values.size());
    parallel_for(spec.n_values.size(), threads, [&](std::size_t i) {
        const std::uint64_t n = spec.n_values[i];
        fill_row(table, i, {static_cast<double>(n)}, [&] {
            const double exact = exact_tail_2(spec.model[0], spec.model[1], n, spec.rel_tol).value();
            const double lap = laplace_tail(spec.model, n, spec.variant, spec.prefactor_mode).log_p;
            return std::vector<double>{exact, lap, std::abs(lap - exact)};
        });
    });
    return table;
}

SweepTable figure2_table(const SweepSpec& spec, unsigned threads) {
    spec.validate();
    if (spec.model.size() != 2) {
        throw std::invalid_argument("figure2: needs exactly two rates");
    }
    SweepTable table = make_table({"n", "log_p_exact", "L1", "L2", "L3"}, spec.n_values.size());
    const double l1 = spec.model[0];
    const double l2 = spec.model[1];
    parallel_for(spec.n_values.size(), threads, [&](std::size_t i) {
        const std::uint64_t n = spec.n_values[i];
        fill_row(table, i, {static_cast<double>(n)}, [&] {
            return std::vector<double>{exact_tail_2(l1, l2, n, spec.rel_tol).value(), expansion_log_tail(l1, l2, n, 1),
                                       expansion_log_tail(l1, l2, n, 2), expansion_log_tail(l1, l2, n, 3)};
        });
    });
    return table;
}

SweepTable figure3_table(double lambda, const std::vector<std::size_t>& m_values,
                         const std::vector<std::uint64_t>& n_values, Variant variant, PrefactorMode mode,
                         unsigned threads) {
    if (m_values.empty()) {
        throw std::invalid_argument("figure3: empty list of dimensions");
    }
    std::vector<std::size_t> ms = m_values;
    std::sort(ms.begin(), ms.end());
    ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
    if (ms.front() < 2) {
        throw std::invalid_argument("figure3: dimensions must be >= 2");
    }
    SweepSpec probe{PoissonModel({lambda}), n_values};
    probe.validate();

    SweepTable table = make_table({"m", "n", "log_p_laplace"}, n_values.size() * ms.size());
    parallel_for(table.rows.size(), threads, [&](std::size_t i) {
        const std::uint64_t n = n_values[i / ms.size()];
        const std::size_t m = ms[i % ms.size()];
        fill_row(table, i, {static_cast<double>(m), static_cast<double>(n)}, [&] {
            const PoissonModel model(std::vector<double>(m, lambda));
            return std::vector<double>{laplace_tail(model, n, variant, mode).log_p};
        });
    });
    return table;
}

}  // namespace ppt
