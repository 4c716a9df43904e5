// Microbenchmarks for the hot paths: one Monte Carlo Casimir trial, K-type
// enumeration, branching, the explicit ODE solver, a single expansion step,
// and the full iterated expansion at a production depth.

#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>
#include <utility>

#include "rank1/counting.hpp"
#include "rank1/exp_poly.hpp"
#include "rank1/expansion.hpp"
#include "rank1/group_ops.hpp"
#include "rank1/ode_solve.hpp"
#include "rank1/weights.hpp"

namespace {

using C = std::complex<double>;
using rank1::ode::ExpPoly;
using rank1::repn::Rat;

rank1::ode::ODEParams params_with_D(int n, double D) {
    const double rho2 = (n - 1) * (n - 1) / 4.0;
    return rank1::ode::make_ode_params(n, D - rho2, Rat(0), C(1.0), C(0.0));
}

rank1::ode::ThetaProvider geometric_theta() {
    return [](const rank1::ode::Word& w) {
        const double base = std::pow(0.5, double(w.size()));
        return std::make_pair(base * C(1.0 + 0.1 * rank1::ode::delta2(w), 0.0),
                              base * C(0.4 + 0.05 * rank1::ode::delta3(w), -0.15));
    };
}

void BM_casimir_verify_trial(benchmark::State& state) {
    std::uint64_t seed = 1;
    for (auto _ : state)
        benchmark::DoNotOptimize(rank1::grp::verify_casimir_formula(3, 1, seed++));
}
BENCHMARK(BM_casimir_verify_trial);

void BM_enumerate_K_types(benchmark::State& state) {
    const double W = static_cast<double>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(rank1::count::enumerate_K_types(5, W));
}
BENCHMARK(BM_enumerate_K_types)->Arg(100)->Arg(1000)->Arg(10000);

void BM_branch_K_to_M(benchmark::State& state) {
    const auto tau = rank1::repn::make_weight(6, {Rat(4), Rat(2), Rat(1)});
    for (auto _ : state)
        benchmark::DoNotOptimize(rank1::repn::branch_K_to_M(tau, 6));
}
BENCHMARK(BM_branch_K_to_M);

void BM_solve_ode_explicit(benchmark::State& state) {
    const auto p = params_with_D(5, -1.0);
    const ExpPoly forcing = ExpPoly::monomial(C(1.0), 0, C(-0.5)) +
                            ExpPoly::monomial(C(0.3), 1, C(-1.2)) +
                            ExpPoly::monomial(C(0.2, 0.1), 0, C(-0.8));
    for (auto _ : state)
        benchmark::DoNotOptimize(rank1::ode::solve_ode_explicit(p, forcing));
}
BENCHMARK(BM_solve_ode_explicit);

void BM_expansion_step(benchmark::State& state) {
    const auto p = params_with_D(5, -1.0);
    ExpPoly chain = ExpPoly::monomial(C(1.0), 0, p.lambda_minus);
    for (int k = 0; k < 4; ++k)
        chain = rank1::ode::expansion_step(2, rank1::ode::JVariant::finite, chain, p);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            rank1::ode::expansion_step(2, rank1::ode::JVariant::finite, chain, p));
}
BENCHMARK(BM_expansion_step);

void BM_expand_iterated(benchmark::State& state) {
    const auto p = params_with_D(5, -1.0);
    const auto theta = geometric_theta();
    const int ell = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(rank1::ode::expand_iterated(p, theta, ell));
}
BENCHMARK(BM_expand_iterated)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
