// Acceptance suite: one PASS/FAIL line per criterion, exit 1 if any fails.
// Optional argv[1] is the path of the ppt executable, used to check that
// separate processes produce identical bytes.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "ppt/cli.hpp"
#include "ppt/exact_tail.hpp"
#include "ppt/expansions.hpp"
#include "ppt/laplace.hpp"
#include "ppt/montecarlo.hpp"
#include "ppt/saddle.hpp"
#include "ppt/special_functions.hpp"
#include "ppt/sweep.hpp"

using namespace ppt;

namespace {

// Tolerances pinned here.
constexpr double kOracleRelTol = 1e-10;      // 1: exact vs brute force, relative in log space
constexpr double kAnchorTol = 1e-12;         // 2: n = 1 identity
constexpr double kMcSigmas = 4.0;            // 3
constexpr std::uint64_t kMcSamples = 10'000'000;
constexpr std::uint64_t kMcSeed = 20240611;
constexpr double kStationarityTol = 1e-10;   // 4
constexpr double kConstraintTol = 1e-12;     // 4
constexpr double kSymmetricTol = 1e-10;      // 4
constexpr double kLambertTol = 1e-14;        // 5, scaled by (1 + x)
constexpr double kLambertExactTol = 1e-15;   // 5
constexpr double kHalfLogTol = 1e-12;        // 7, scaled by max(1, |L2|)
constexpr double kSymmetricGapTol = 1e-10;   // 9

struct Outcome {
    bool pass = true;
    std::string detail;
};

class Check {
public:
    void expect(bool ok, const std::string& what) {
        if (!ok && out_.pass) {
            out_.pass = false;
            out_.detail = what;
        }
    }
    Outcome result(std::string summary) {
        if (out_.pass) out_.detail = std::move(summary);
        return out_;
    }

private:
    Outcome out_;
};

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
}

Outcome oracle_equivalence() {
    Check c;
    const std::array<double, 4> rates{0.5, 1.0, 2.0, 3.0};
    const std::array<std::uint64_t, 4> caps{0, 200, 150, 40};
    double worst = 0.0;
    int models = 0;
    std::vector<std::vector<double>> sets;
    for (std::size_t a = 0; a < 4; ++a) {
        sets.push_back({rates[a]});
        for (std::size_t b = a; b < 4; ++b) {
            sets.push_back({rates[a], rates[b]});
            for (std::size_t d = b; d < 4; ++d) sets.push_back({rates[a], rates[b], rates[d]});
        }
    }
    for (const auto& lambdas : sets) {
        const PoissonModel model(lambdas);
        ++models;
        for (std::uint64_t n = 1; n <= 50; ++n) {
            const double ref = brute_force_tail(model, n, caps[model.size()]).value();
            const double got = exact_tail_m(model, n).value();
            const double rel = std::abs(got - ref) / std::abs(ref);
            worst = std::max(worst, rel);
            c.expect(rel <= kOracleRelTol, "m=" + std::to_string(model.size()) + " n=" + std::to_string(n) +
                                               " rel=" + fmt(rel));
        }
    }
    return c.result(std::to_string(models) + " models x 50 n, worst rel " + fmt(worst));
}

Outcome analytic_anchor() {
    Check c;
    const std::vector<std::array<double, 2>> pairs{{0.5, 0.5}, {0.5, 3.0}, {1.0, 1.0}, {1.0, 2.0}, {2.0, 3.0},
                                                   {3.0, 2.0}, {0.1, 7.5}, {4.0, 4.0}, {10.0, 0.25}, {1.5, 6.0}};
    double worst = 0.0;
    for (const auto& [l1, l2] : pairs) {
        const double want = std::log((1.0 - std::exp(-l1)) * (1.0 - std::exp(-l2)));
        const double err = std::abs(exact_tail_2(l1, l2, 1).value() - want);
        worst = std::max(worst, err);
        c.expect(err <= kAnchorTol, "pair (" + fmt(l1) + "," + fmt(l2) + ") err " + fmt(err));
    }
    return c.result("10 pairs, worst abs err " + fmt(worst));
}

Outcome monte_carlo() {
    Check c;
    const PoissonModel model({2.0, 3.0});
    double worst = 0.0;
    for (std::uint64_t n : {1u, 5u, 10u, 20u}) {
        const McEstimate est = mc_tail(model, n, kMcSamples, kMcSeed);
        const double p = std::exp(exact_tail_2(2.0, 3.0, n).value());
        const double z = std::abs(est.p_hat - p) / est.std_error;
        worst = std::max(worst, z);
        c.expect(z <= kMcSigmas, "n=" + std::to_string(n) + " z=" + fmt(z));
    }
    return c.result("max |z| " + fmt(worst) + " over n in {1,5,10,20}");
}

Outcome saddle_certificates() {
    Check c;
    for (std::uint64_t n : {100u, 1000u, 10000u, 1000000u}) {
        const SaddlePoint sp = solve_saddle_2(2.0, 3.0, n);
        c.expect(sp.max_stationarity_residual() <= kStationarityTol, "stationarity at n=" + std::to_string(n));
        c.expect(sp.constraint_residual() <= kConstraintTol, "constraint at n=" + std::to_string(n));
    }
    const SaddlePoint sym2 = solve_saddle_2(2.0, 2.0, 10000);
    for (double k : sym2.k) c.expect(std::abs(k - 100.0) <= kSymmetricTol, "(2,2) not on sqrt n");
    for (std::uint64_t n : {1000u, 1000000u}) {
        const SaddlePoint sym3 = solve_saddle_m(PoissonModel({2.0, 2.0, 2.0}), n);
        const double root = std::cbrt(double(n));
        for (double k : sym3.k) c.expect(std::abs(k - root) <= kSymmetricTol, "m=3 not on n^(1/3)");
    }
    return c.result("residuals within 1e-10 / 1e-12; symmetric cases on the diagonal");
}

Outcome lambert_suite() {
    Check c;
    double worst = 0.0;
    for (double x : {1e-3, 1.0, 10.0, 1e3, 1e6, 1e9}) {
        const double w = lambert_w0(x);
        const double res = std::abs(w * std::exp(w) - x) / (1.0 + x);
        worst = std::max(worst, res);
        c.expect(res <= kLambertTol, "identity at x=" + fmt(x));
    }
    c.expect(std::abs(lambert_w0(std::numbers::e) - 1.0) <= kLambertExactTol, "W(e) != 1");
    c.expect(std::abs(lambert_w0(0.0)) <= kLambertExactTol, "W(0) != 0");
    return c.result("worst scaled residual " + fmt(worst));
}

Outcome figure1_behavior() {
    Check c;
    const PoissonModel model({2.0, 3.0});
    std::vector<double> gaps;
    for (std::uint64_t n : {100u, 1000u, 10000u}) {
        const double exact = exact_tail_2(2.0, 3.0, n).value();
        const double lap = laplace_tail(model, n).log_p;
        gaps.push_back(std::abs(lap - exact) / std::abs(exact));
    }
    c.expect(gaps[0] > gaps[1] && gaps[1] > gaps[2], "relative gap not decreasing");
    return c.result("relative log gaps " + fmt(gaps[0]) + " > " + fmt(gaps[1]) + " > " + fmt(gaps[2]));
}

Outcome figure2_behavior() {
    Check c;
    const auto grid = log_spaced_grid(100, 3000, 30);
    for (std::uint64_t n : grid) {
        const double exact = exact_tail_2(2.0, 3.0, n).value();
        const double l1 = expansion_log_tail(2.0, 3.0, n, 1);
        const double l2 = expansion_log_tail(2.0, 3.0, n, 2);
        const double l3 = expansion_log_tail(2.0, 3.0, n, 3);
        c.expect(std::abs(l2 - exact) < std::abs(l1 - exact), "L2 not closer than L1 at n=" + std::to_string(n));
        c.expect(std::abs(std::abs(l3 - l2) - 0.5 * std::log(double(n))) <= kHalfLogTol * std::max(1.0, std::abs(l2)),
                 "|L3-L2| != log(n)/2 at n=" + std::to_string(n));
    }
    return c.result(std::to_string(grid.size()) + " grid points in [100, 3000]");
}

Outcome figure3_behavior() {
    Check c;
    std::vector<double> v;
    for (std::size_t m = 2; m <= 5; ++m) {
        v.push_back(laplace_tail(PoissonModel(std::vector<double>(m, 2.0)), 10000).log_p);
    }
    for (std::size_t i = 1; i < v.size(); ++i) c.expect(v[i] > v[i - 1], "not increasing in m");
    return c.result("log p = " + fmt(v[0]) + ", " + fmt(v[1]) + ", " + fmt(v[2]) + ", " + fmt(v[3]));
}

Outcome truncation_gap_check() {
    Check c;
    double prev = -1.0;
    std::string seq;
    for (std::uint64_t n : {10000u, 1000000u, 100000000u}) {
        const double dt = truncation_gap(2.0, 3.0, n).delta_T;
        c.expect(dt <= 0.0, "delta_T > 0 at n=" + std::to_string(n));
        c.expect(std::abs(dt) > prev, "|delta_T| not increasing at n=" + std::to_string(n));
        prev = std::abs(dt);
        seq += (seq.empty() ? "" : ", ") + fmt(dt);
    }
    const double sym = truncation_gap(2.0, 2.0, 10000).delta_T;
    c.expect(std::abs(sym) <= kSymmetricGapTol, "symmetric delta_T = " + fmt(sym));
    return c.result("delta_T = " + seq + "; symmetric " + fmt(sym));
}

Outcome region_bounds_check() {
    Check c;
    double prev = INFINITY;
    for (std::uint64_t n : {100u, 1000u, 10000u, 100000u}) {
        const double r = region_bounds(2.0, 3.0, n).log_ratio;
        c.expect(r < prev, "log_ratio not decreasing at n=" + std::to_string(n));
        prev = r;
    }
    int checked = 0;
    for (std::uint64_t n = 5; n <= 50; ++n) {
        const RegionBounds rb = region_bounds(2.0, 3.0, n);
        double r1 = 0.0, r2 = 0.0, r3 = 0.0;
        for (std::uint64_t k = 1; k <= 150; ++k) {
            for (std::uint64_t l = 1; l <= 150; ++l) {
                if (k * l < n) continue;
                const double p = std::exp(log_poisson_pmf(k, 2.0).value() + log_poisson_pmf(l, 3.0).value());
                if (double(k) <= rb.a_n) r1 += p;
                if (double(l) <= rb.a_n) r2 += p;
                if (double(k) > rb.a_n && double(l) > rb.a_n) r3 += p;
            }
        }
        c.expect(r1 <= std::exp(rb.log_ub_R1), "R1 bound fails at n=" + std::to_string(n));
        c.expect(r2 <= std::exp(rb.log_ub_R2), "R2 bound fails at n=" + std::to_string(n));
        c.expect(std::exp(rb.log_lb_R3) <= r3, "R3 bound fails at n=" + std::to_string(n));
        ++checked;
    }
    return c.result("log_ratio decreasing; region sums bounded for " + std::to_string(checked) + " n in [5, 50]");
}

std::string run_in_process(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return std::to_string(code) + "\n" + out.str();
}

std::string run_process(const std::string& exe, const std::vector<std::string>& args) {
    std::string cmd = "\"" + exe + "\"";
    for (const auto& a : args) cmd += " " + a;
    cmd += " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return "<popen failed>";
    std::string out;
    std::array<char, 4096> buf{};
    while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), got);
    const int status = pclose(pipe);
    return std::to_string(WIFEXITED(status) ? WEXITSTATUS(status) : -1) + "\n" + out;
}

Outcome determinism(const std::string& exe) {
    Check c;
    const std::vector<std::vector<std::string>> commands{
        {"tail", "--lambdas", "2,3", "--n", "500", "--method", "laplace"},
        {"tail", "--lambdas", "2,3", "--n", "50", "--method", "exact", "--format", "csv"},
        {"tail", "--lambdas", "2,3", "--n", "20", "--method", "mc", "--samples", "200000", "--seed", "7"},
        {"saddle", "--lambdas", "1,2,3", "--n", "1000000"},
        {"regions", "--lambdas", "2,3", "--n", "10000"},
        {"truncation-gap", "--lambdas", "2,3", "--n", "1000000"},
        {"mc", "--lambdas", "2,3", "--n", "10", "--samples", "1000000", "--seed", "42"},
        {"figure1"},
        {"figure2"},
        {"figure3", "--points", "10"},
        {"saddle", "--lambdas", "2,3", "--n", "1"},
    };
    for (const auto& cmd : commands) {
        c.expect(run_in_process(cmd) == run_in_process(cmd), "in-process output differs for " + cmd[0]);
        if (!exe.empty()) {
            const std::string a = run_process(exe, cmd);
            c.expect(a == run_process(exe, cmd), "process output differs for " + cmd[0]);
            c.expect(a == run_in_process(cmd) || a.rfind("<popen", 0) == 0,
                     "process and in-process differ for " + cmd[0]);
        }
    }
    return c.result(std::to_string(commands.size()) + " commands repeated" +
                    (exe.empty() ? " in-process" : " in-process and as separate processes"));
}

}  // namespace

int main(int argc, char** argv) {
    const std::string exe = argc > 1 ? argv[1] : "";
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"oracle equivalence (exact vs brute force)", oracle_equivalence},
        {"analytic anchor n=1", analytic_anchor},
        {"monte carlo cross-check", monte_carlo},
        {"saddle certificates", saddle_certificates},
        {"lambert W suite", lambert_suite},
        {"figure1: Laplace relative gap shrinks", figure1_behavior},
        {"figure2: L2 beats L1, |L3-L2| = log(n)/2", figure2_behavior},
        {"figure3: heavier tails with dimension", figure3_behavior},
        {"truncation gap", truncation_gap_check},
        {"region bounds", region_bounds_check},
        {"determinism", [&] { return determinism(exe); }},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!o.pass) ++failed;
        std::cout << (o.pass ? "PASS" : "FAIL") << " [" << (i + 1) << "] " << criteria[i].first << " -- " << o.detail
                  << " (" << fmt(secs) << " s)" << std::endl;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
