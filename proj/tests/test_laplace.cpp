#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "ppt/exact_tail.hpp"
#include "ppt/laplace.hpp"
#include "ppt/special_functions.hpp"

using namespace ppt;

namespace {
const double kLog2Pi = std::log(2.0 * std::numbers::pi);
}

TEST_CASE("T_value by hand") {
    const PoissonModel ones({1.0, 1.0});
    const std::vector<double> k{1.0, 1.0};
    CHECK(T_value(k, ones, Variant::refined) == doctest::Approx(-kLog2Pi).epsilon(1e-15));

    const PoissonModel model({2.0, 3.0});
    const std::vector<double> pt{17.5, 42.0};
    const double diff = T_value(pt, model, Variant::plain) - T_value(pt, model, Variant::refined);
    CHECK(diff == doctest::Approx(0.5 * std::log(2 * std::numbers::pi * 17.5) + 0.5 * std::log(2 * std::numbers::pi * 42.0))
                      .epsilon(1e-14));
}

TEST_CASE("refined T is Stirling-close to the pmf product") {
    const PoissonModel model({2.0, 3.0});
    const std::vector<double> k{50.0, 50.0};
    const double pmf = log_poisson_pmf(50, 2.0).value() + log_poisson_pmf(50, 3.0).value();
    CHECK(std::abs(T_value(k, model, Variant::refined) - pmf) <= 1.0 / (6.0 * 50.0));
}

TEST_CASE("constrained Hessian determinant, symmetric cases") {
    for (double n : {1e4, 1e6}) {
        const double r = std::sqrt(n);
        const std::vector<double> k{r, r};
        CHECK(constrained_hessian_logdet(k, PrefactorMode::asymptotic) ==
              doctest::Approx(-0.5 * std::log(n)).epsilon(1e-13));
    }
    for (std::size_t m : {3u, 4u, 5u}) {
        const double n = 1e6;
        const std::vector<double> k(m, std::pow(n, 1.0 / double(m)));
        const double want = -(double(m) - 1.0) / double(m) * std::log(n);
        CHECK(constrained_hessian_logdet(k, PrefactorMode::asymptotic) == doctest::Approx(want).epsilon(1e-13));
    }
    const std::vector<double> k100{100.0, 100.0};
    CHECK(std::abs(constrained_hessian_logdet(k100, PrefactorMode::exact_hessian) -
                   constrained_hessian_logdet(k100, PrefactorMode::asymptotic)) <= 0.01);
    CHECK_THROWS_AS(constrained_hessian_logdet(std::vector<double>{5.0}, PrefactorMode::asymptotic),
                    std::invalid_argument);
}

TEST_CASE("prefactor modes converge") {
    double prev = 1e300;
    for (std::uint64_t n : {100u, 10000u, 1000000u, 100000000u}) {
        const auto a = laplace_tail(PoissonModel({2.0, 3.0}), n, Variant::refined, PrefactorMode::exact_hessian);
        const auto b = laplace_tail(PoissonModel({2.0, 3.0}), n, Variant::refined, PrefactorMode::asymptotic);
        const double gap = std::abs(a.log_prefactor - b.log_prefactor);
        CHECK(gap < prev);
        prev = gap;
    }
    const auto a = laplace_tail(PoissonModel({2.0, 2.0}), 10000, Variant::refined, PrefactorMode::exact_hessian);
    const auto b = laplace_tail(PoissonModel({2.0, 2.0}), 10000, Variant::refined, PrefactorMode::asymptotic);
    CHECK(std::abs(a.log_p - b.log_p) <= 1.0 / std::sqrt(10000.0));
}

TEST_CASE("Laplace tracks the exact tail") {
    double prev = 1e300;
    for (std::uint64_t n : {100u, 1000u, 10000u}) {
        const double exact = exact_tail_2(2.0, 3.0, n).value();
        const double lap = laplace_tail(PoissonModel({2.0, 3.0}), n).log_p;
        const double rel = std::abs(lap - exact) / std::abs(exact);
        CHECK(rel < prev);
        CHECK(rel < 0.1);
        prev = rel;
    }
}

TEST_CASE("frozen regression value") {
    // first verified run; the exact tail at the same point is -552.183077...
    const auto est = laplace_tail(PoissonModel({2.0, 3.0}), 10000, Variant::refined, PrefactorMode::exact_hessian);
    CHECK(est.log_p == doctest::Approx(-549.2026201353734).epsilon(1e-13));
    CHECK(est.log_p == doctest::Approx(est.T_at_saddle + est.log_prefactor).epsilon(1e-15));
    CHECK(est.saddle.k.size() == 2);
}

TEST_CASE("Laplace input errors") {
    CHECK_THROWS_AS(laplace_tail(PoissonModel({2.0}), 100), std::invalid_argument);
    CHECK_THROWS_AS(laplace_tail(PoissonModel({2.0, 3.0}), 3), std::domain_error);
}
