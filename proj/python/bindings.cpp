#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "ppt/cli.hpp"
#include "ppt/exact_tail.hpp"
#include "ppt/expansions.hpp"
#include "ppt/laplace.hpp"
#include "ppt/montecarlo.hpp"
#include "ppt/saddle.hpp"
#include "ppt/special_functions.hpp"

namespace py = pybind11;
using namespace ppt;

namespace {

py::dict saddle_dict(const SaddlePoint& sp) {
    py::dict d;
    d["k"] = sp.k;
    d["s"] = sp.s;
    d["alpha"] = sp.alpha;
    d["residuals"] = sp.residuals;
    d["iterations"] = sp.iterations;
    d["variant"] = to_string(sp.variant);
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Right tails of products of independent Poisson variables";

    static py::exception<NoConvergence> no_convergence(m, "NoConvergence", PyExc_RuntimeError);

    m.def("lambert_w0", &lambert_w0, py::arg("x"));
    m.def("log_factorial", &log_factorial, py::arg("k"));
    m.def(
        "log_poisson_pmf", [](std::uint64_t k, double lambda) { return log_poisson_pmf(k, lambda).value(); },
        py::arg("k"), py::arg("lam"));
    m.def(
        "log_poisson_sf", [](std::uint64_t k, double lambda) { return log_poisson_sf(k, lambda).value(); },
        py::arg("k"), py::arg("lam"));

    m.def(
        "exact_tail",
        [](std::vector<double> lambdas, std::uint64_t n, double rel_tol) {
            return exact_tail(TailQuery{PoissonModel(std::move(lambdas)), n, rel_tol}).value();
        },
        py::arg("lambdas"), py::arg("n"), py::arg("rel_tol") = kDefaultRelTol,
        "log P(X_1 ... X_m >= n), exact up to rel_tol.");
    m.def(
        "brute_force_tail",
        [](std::vector<double> lambdas, std::uint64_t n, std::uint64_t cap) {
            return brute_force_tail(PoissonModel(std::move(lambdas)), n, cap).value();
        },
        py::arg("lambdas"), py::arg("n"), py::arg("cap"));

    m.def(
        "solve_saddle",
        [](std::vector<double> lambdas, std::uint64_t n, const std::string& variant) {
            return saddle_dict(solve_saddle_m(PoissonModel(std::move(lambdas)), n, parse_variant(variant)));
        },
        py::arg("lambdas"), py::arg("n"), py::arg("variant") = "refined");

    m.def(
        "laplace_tail",
        [](std::vector<double> lambdas, std::uint64_t n, const std::string& variant, const std::string& prefactor) {
            const LaplaceEstimate est = laplace_tail(PoissonModel(std::move(lambdas)), n, parse_variant(variant),
                                                     parse_prefactor_mode(prefactor));
            py::dict d;
            d["log_p"] = est.log_p;
            d["T_at_saddle"] = est.T_at_saddle;
            d["log_prefactor"] = est.log_prefactor;
            d["prefactor_mode"] = to_string(est.prefactor_mode);
            d["saddle"] = saddle_dict(est.saddle);
            return d;
        },
        py::arg("lambdas"), py::arg("n"), py::arg("variant") = "refined", py::arg("prefactor") = "exact-hessian");

    m.def("expansion_log_tail", &expansion_log_tail, py::arg("lambda1"), py::arg("lambda2"), py::arg("n"),
          py::arg("order"));
    m.def("coarse_log_tail", &coarse_log_tail, py::arg("lambda1"), py::arg("lambda2"), py::arg("n"),
          py::arg("order") = 2);
    m.def(
        "heuristic_two_term_m",
        [](std::vector<double> lambdas, std::uint64_t n) { return heuristic_two_term_m(PoissonModel(std::move(lambdas)), n); },
        py::arg("lambdas"), py::arg("n"));

    m.def(
        "region_bounds",
        [](double l1, double l2, std::uint64_t n) {
            const RegionBounds rb = region_bounds(l1, l2, n);
            py::dict d;
            d["a_n"] = rb.a_n;
            d["m_n"] = rb.m_n;
            d["m_diag"] = rb.m_diag;
            d["log_ub_R1"] = rb.log_ub_R1;
            d["log_ub_R2"] = rb.log_ub_R2;
            d["log_lb_R3"] = rb.log_lb_R3;
            d["log_ratio"] = rb.log_ratio;
            return d;
        },
        py::arg("lambda1"), py::arg("lambda2"), py::arg("n"));

    m.def(
        "truncation_gap",
        [](double l1, double l2, std::uint64_t n) {
            const TruncationGap g = truncation_gap(l1, l2, n);
            py::dict d;
            d["k_star"] = g.k_star;
            d["k_trunc"] = g.k_trunc;
            d["delta_k"] = g.delta_k;
            d["delta_T"] = g.delta_T;
            d["growth_ratio"] = g.growth_ratio;
            return d;
        },
        py::arg("lambda1"), py::arg("lambda2"), py::arg("n"));

    m.def(
        "mc_tail",
        [](std::vector<double> lambdas, std::uint64_t n, std::uint64_t samples, std::uint64_t seed, unsigned threads) {
            McEstimate est;
            {
                py::gil_scoped_release release;
                est = mc_tail(PoissonModel(std::move(lambdas)), n, samples, seed, threads);
            }
            py::dict d;
            d["p_hat"] = est.p_hat;
            d["stderr"] = est.std_error;
            d["samples"] = est.samples;
            d["seed"] = est.seed;
            return d;
        },
        py::arg("lambdas"), py::arg("n"), py::arg("samples"), py::arg("seed"), py::arg("threads") = 0);

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            const int code = run_cli(args, out, err);
            return std::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the command line tool in-process; returns (exit_code, stdout, stderr).");
}
