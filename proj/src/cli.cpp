#include "ppt/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "ppt/exact_tail.hpp"
#include "ppt/expansions.hpp"
#include "ppt/laplace.hpp"
#include "ppt/montecarlo.hpp"
#include "ppt/saddle.hpp"
#include "ppt/serialize.hpp"
#include "ppt/sweep.hpp"

namespace ppt {

namespace {

/// Raised for flag combinations that parse but make no sense (exit 2).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Options {
    std::string lambdas = "2,3";
    std::uint64_t n = 0;
    std::string method = "exact";
    std::string variant = "refined";
    std::string prefactor = "exact-hessian";
    double rel_tol = kDefaultRelTol;
    std::string format = "json";
    int order = 2;
    std::uint64_t samples = 1'000'000;
    std::optional<std::uint64_t> seed;

    // sweeps
    std::uint64_t n_min = 100;
    std::optional<std::uint64_t> n_max;  // per-figure default when unset
    std::uint64_t n_max_default = 3000;
    std::size_t points = 30;
    std::string n_values;
    std::string out_path = "-";
    double lambda = 2.0;
    std::string m_values = "2,3,4,5";
};

std::vector<std::uint64_t> parse_uint_list(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const unsigned long long v = std::stoull(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw UsageError("not a non-negative integer: '" + item + "'");
        }
    }
    if (out.empty()) {
        throw UsageError("empty integer list");
    }
    return out;
}

PoissonModel model_from(const Options& o) {
    try {
        return PoissonModel(parse_rate_list(o.lambdas));
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--lambdas: ") + e.what());
    }
}

Variant variant_from(const Options& o) {
    try {
        return parse_variant(o.variant);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

PrefactorMode prefactor_from(const Options& o) {
    try {
        return parse_prefactor_mode(o.prefactor);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

void require_two_rates(const PoissonModel& model, const std::string& what) {
    if (model.size() != 2) {
        throw UsageError(what + " is defined for two rates only");
    }
}

Record base_record(const std::string& method, const PoissonModel& model, std::uint64_t n) {
    Record r;
    r["method"] = method;
    r["m"] = model.size();
    r["n"] = n;
    return r;
}

Record tail_record(const std::string& method, const PoissonModel& model, std::uint64_t n, double log_p) {
    Record r = base_record(method, model, n);
    r["log_p"] = log_p;
    r["p"] = prob_from_log(log_p);
    return r;
}

Record mc_record(const PoissonModel& model, std::uint64_t n, const Options& o) {
    if (!o.seed) {
        throw UsageError("monte carlo requires --seed");
    }
    const McEstimate est = mc_tail(model, n, o.samples, *o.seed);
    Record r = tail_record("monte-carlo", model, n, std::log(est.p_hat));
    r["p_hat"] = est.p_hat;
    r["stderr"] = est.std_error;
    r["samples"] = est.samples;
    r["seed"] = est.seed;
    return r;
}

Record cmd_tail(const Options& o) {
    const PoissonModel model = model_from(o);
    const std::uint64_t n = o.n;
    const std::string& method = o.method;

    if (method == "exact") {
        const double log_p = model.size() == 2 ? exact_tail_2(model[0], model[1], n, o.rel_tol).value()
                                               : exact_tail_m(model, n, o.rel_tol).value();
        Record r = tail_record("exact", model, n, log_p);
        r["rel_tol"] = o.rel_tol;
        return r;
    }
    if (method == "laplace") {
        if (model.size() < 2) throw UsageError("laplace needs at least two rates");
        const LaplaceEstimate est = laplace_tail(model, n, variant_from(o), prefactor_from(o));
        Record r = tail_record("laplace", model, n, est.log_p);
        r["variant"] = to_string(est.saddle.variant);
        r["prefactor_mode"] = to_string(est.prefactor_mode);
        r["T_at_saddle"] = est.T_at_saddle;
        r["log_prefactor"] = est.log_prefactor;
        r["s"] = est.saddle.s;
        r["alpha"] = est.saddle.alpha;
        r["k"] = est.saddle.k;
        r["iterations"] = est.saddle.iterations;
        r["max_residual"] = std::max(est.saddle.max_stationarity_residual(), est.saddle.constraint_residual());
        return r;
    }
    if (method == "expansion-1" || method == "expansion-2" || method == "expansion-3") {
        require_two_rates(model, method);
        const int order = method.back() - '0';
        Record r = tail_record(method, model, n, expansion_log_tail(model[0], model[1], n, order));
        r["order"] = order;
        return r;
    }
    if (method == "coarse") {
        require_two_rates(model, method);
        if (o.order < 1 || o.order > 3) throw UsageError("--order must be 1, 2 or 3");
        Record r = tail_record("coarse", model, n, coarse_log_tail(model[0], model[1], n, o.order));
        r["order"] = o.order;
        return r;
    }
    if (method == "heuristic-m") {
        if (model.size() < 2) throw UsageError("heuristic-m needs at least two rates");
        return tail_record("heuristic-m", model, n, heuristic_two_term_m(model, n));
    }
    if (method == "mc" || method == "monte-carlo") {
        return mc_record(model, n, o);
    }
    throw UsageError("unknown --method '" + method + "'");
}

Record cmd_saddle(const Options& o) {
    const PoissonModel model = model_from(o);
    if (model.size() < 2) throw UsageError("saddle needs at least two rates");
    const SaddlePoint sp = solve_saddle_m(model, o.n, variant_from(o));
    Record r = base_record("saddle", model, o.n);
    r["variant"] = to_string(sp.variant);
    r["k"] = sp.k;
    r["s"] = sp.s;
    r["alpha"] = sp.alpha;
    r["residuals"] = sp.residuals;
    r["iterations"] = sp.iterations;
    return r;
}

Record cmd_regions(const Options& o) {
    const PoissonModel model = model_from(o);
    require_two_rates(model, "regions");
    const RegionBounds rb = region_bounds(model[0], model[1], o.n);
    Record r = base_record("regions", model, o.n);
    r["a_n"] = rb.a_n;
    r["m_n"] = rb.m_n;
    r["m_diag"] = rb.m_diag;
    r["log_ub_R1"] = rb.log_ub_R1;
    r["log_ub_R2"] = rb.log_ub_R2;
    r["log_lb_R3"] = rb.log_lb_R3;
    r["log_ratio"] = rb.log_ratio;
    return r;
}

Record cmd_truncation_gap(const Options& o) {
    const PoissonModel model = model_from(o);
    require_two_rates(model, "truncation-gap");
    const TruncationGap gap = truncation_gap(model[0], model[1], o.n);
    Record r = base_record("truncation-gap", model, o.n);
    r["k_star"] = gap.k_star;
    r["k_trunc"] = gap.k_trunc;
    r["delta_k"] = gap.delta_k;
    r["delta_T"] = gap.delta_T;
    r["growth_ratio"] = gap.growth_ratio;
    return r;
}

std::vector<std::uint64_t> sweep_grid(const Options& o) {
    if (!o.n_values.empty()) {
        return parse_uint_list(o.n_values);
    }
    try {
        return log_spaced_grid(o.n_min, o.n_max.value_or(o.n_max_default), o.points);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

void emit(const std::string& text, const Options& o, std::ostream& out) {
    if (o.out_path.empty() || o.out_path == "-") {
        out << text;
        return;
    }
    std::ofstream file(o.out_path, std::ios::binary);
    if (!file) {
        throw std::runtime_error("cannot open output file " + o.out_path);
    }
    file << text;
}

int emit_table(const SweepTable& table, const Options& o, std::ostream& out) {
    emit(table.to_csv(), o, out);
    return table.failed_rows() == table.rows.size() ? kExitComputeFailure : kExitOk;
}

SweepSpec sweep_spec(const Options& o) {
    SweepSpec spec{model_from(o), sweep_grid(o), variant_from(o), prefactor_from(o), o.rel_tol};
    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return spec;
}

std::string error_kind(const std::exception& e) {
    if (dynamic_cast<const NoConvergence*>(&e)) return "no_convergence";
    if (dynamic_cast<const std::domain_error*>(&e)) return "domain_error";
    if (dynamic_cast<const std::invalid_argument*>(&e)) return "invalid_argument";
    return "runtime_error";
}

void write_error(std::ostream& out, const std::exception& e) {
    Record r;
    r["error"] = error_kind(e);
    r["message"] = e.what();
    out << to_json_line(r) << '\n';
}

void add_point_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--lambdas", o.lambdas, "Comma-separated Poisson rates")->required();
    cmd->add_option("--n", o.n, "Threshold n")->required()->check(CLI::PositiveNumber);
    cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
}

void add_sweep_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--n-min", o.n_min, "Smallest n of the log-spaced grid")->check(CLI::PositiveNumber);
    cmd->add_option("--n-max", o.n_max, "Largest n of the log-spaced grid")->check(CLI::PositiveNumber);
    cmd->add_option("--points", o.points, "Number of grid points before rounding")->check(CLI::PositiveNumber);
    cmd->add_option("--n-values", o.n_values, "Explicit comma-separated n grid (overrides --n-min/--n-max)");
    cmd->add_option("--out", o.out_path, "Output CSV path ('-' for stdout)");
}

}  // namespace

std::vector<double> parse_rate_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("not a number: '" + item + "'");
        }
        if (used != item.size()) {
            throw std::invalid_argument("not a number: '" + item + "'");
        }
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument("rates must be finite and > 0, got '" + item + "'");
        }
        out.push_back(v);
    }
    if (out.empty()) {
        throw std::invalid_argument("no rates given");
    }
    return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Right tails of products of independent Poisson variables", "ppt"};
    app.require_subcommand(1);
    Options o;

    auto* tail = app.add_subcommand("tail", "Tail probability by one method");
    add_point_flags(tail, o);
    tail->add_option("--method", o.method,
                     "exact | laplace | expansion-1 | expansion-2 | expansion-3 | coarse | heuristic-m | mc");
    tail->add_option("--variant", o.variant, "refined | plain");
    tail->add_option("--prefactor", o.prefactor, "exact-hessian | asymptotic");
    tail->add_option("--rel-tol", o.rel_tol, "Relative truncation tolerance of the exact sum");
    tail->add_option("--order", o.order, "Expansion order used by --method coarse");
    tail->add_option("--samples", o.samples, "Monte Carlo sample count");
    tail->add_option("--seed", o.seed, "Monte Carlo seed");

    auto* saddle = app.add_subcommand("saddle", "Solve the constrained saddle-point system");
    add_point_flags(saddle, o);
    saddle->add_option("--variant", o.variant, "refined | plain");

    auto* regions = app.add_subcommand("regions", "Region bounds for R1/R2/R3");
    add_point_flags(regions, o);

    auto* gap = app.add_subcommand("truncation-gap", "Exponent loss of the truncated saddle");
    add_point_flags(gap, o);

    auto* mc = app.add_subcommand("mc", "Seeded direct Monte Carlo estimate");
    add_point_flags(mc, o);
    mc->add_option("--samples", o.samples, "Sample count (>= 10000)");
    mc->add_option("--seed", o.seed, "Seed")->required();

    auto* fig1 = app.add_subcommand("figure1", "Exact vs Laplace sweep (CSV)");
    auto* fig2 = app.add_subcommand("figure2", "Exact vs truncated expansions sweep (CSV)");
    for (auto* cmd : {fig1, fig2}) {
        cmd->add_option("--lambdas", o.lambdas, "Two comma-separated rates (default 2,3)");
        add_sweep_flags(cmd, o);
        cmd->add_option("--rel-tol", o.rel_tol, "Relative truncation tolerance of the exact sum");
    }
    fig1->add_option("--variant", o.variant, "refined | plain");
    fig1->add_option("--prefactor", o.prefactor, "exact-hessian | asymptotic");

    auto* fig3 = app.add_subcommand("figure3", "Laplace sweep over dimensions with equal rates (CSV)");
    fig3->add_option("--lambda", o.lambda, "Common rate (default 2)")->check(CLI::PositiveNumber);
    fig3->add_option("--m-values", o.m_values, "Comma-separated dimensions (default 2,3,4,5)");
    add_sweep_flags(fig3, o);
    fig3->add_option("--variant", o.variant, "refined | plain");
    fig3->add_option("--prefactor", o.prefactor, "exact-hessian | asymptotic");

    std::vector<const char*> argv{"ppt"};
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        auto print = [&](const Record& r) { out << (o.format == "csv" ? to_csv(r) : to_json_line(r) + "\n"); };
        if (tail->parsed()) {
            print(cmd_tail(o));
        } else if (saddle->parsed()) {
            print(cmd_saddle(o));
        } else if (regions->parsed()) {
            print(cmd_regions(o));
        } else if (gap->parsed()) {
            print(cmd_truncation_gap(o));
        } else if (mc->parsed()) {
            print(mc_record(model_from(o), o.n, o));
        } else if (fig1->parsed()) {
            const SweepSpec spec = sweep_spec(o);
            require_two_rates(spec.model, "figure1");
            return emit_table(figure1_table(spec), o, out);
        } else if (fig2->parsed()) {
            const SweepSpec spec = sweep_spec(o);
            require_two_rates(spec.model, "figure2");
            return emit_table(figure2_table(spec), o, out);
        } else if (fig3->parsed()) {
            o.n_max_default = 1'000'000;
            std::vector<std::size_t> ms;
            for (std::uint64_t m : parse_uint_list(o.m_values)) {
                if (m < 2) throw UsageError("--m-values entries must be >= 2");
                ms.push_back(static_cast<std::size_t>(m));
            }
            const auto grid = sweep_grid(o);
            try {
                SweepSpec{PoissonModel({o.lambda}), grid}.validate();
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            return emit_table(figure3_table(o.lambda, ms, grid, variant_from(o), prefactor_from(o)), o, out);
        }
    } catch (const UsageError& e) {
        write_error(out, e);
        err << "ppt: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        write_error(out, e);
        return kExitComputeFailure;
    }
    return kExitOk;
}

}  // namespace ppt
