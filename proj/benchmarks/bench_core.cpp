#include <benchmark/benchmark.h>

#include "voa/verify.hpp"

using namespace voa;
using Gram = std::vector<std::vector<long>>;

namespace {

const Tower& tower_neg2() {
    static Tower tw(Gram{{-2}});
    return tw;
}

const Tower& tower_neg22() {
    static Tower tw(Gram{{-2, 0}, {0, -2}});
    return tw;
}

} // namespace

static void BM_scalar_inverse(benchmark::State& st) {
    Scalar x = Scalar(rat(3, 7)) + Scalar(rat(2, 5)) * Scalar::sqrt_int(2) +
               Scalar(rat(-1, 3)) * Scalar::sqrt_int(-6);
    for (auto _ : st) benchmark::DoNotOptimize(x.inverse());
}
BENCHMARK(BM_scalar_inverse);

static void BM_star_omega_omega(benchmark::State& st) {
    const Tower& tw = tower_neg22();
    ModuleCtx vl = tw.vl();
    Element w = omega_element(vl);
    for (auto _ : st) benchmark::DoNotOptimize(star(vl, w, w));
}
BENCHMARK(BM_star_omega_omega);

static void BM_twisted_zero_mode_J(benchmark::State& st) {
    const Tower& tw = tower_neg2();
    GenSet g(tw);
    Element J = g.J_a(0);
    TopLevel top = top_vt(tw, 0, -1);
    for (auto _ : st) benchmark::DoNotOptimize(zero_mode(top.ctx, J, top.basis[0]));
}
BENCHMARK(BM_twisted_zero_mode_J);

static void BM_twisted_E_alpha_matrix(benchmark::State& st) {
    const Tower& tw = tower_neg22();
    Element E = E_alpha(tw, IVec{1, 1});
    TopLevel top = top_vt(tw, 0, -1);
    for (auto _ : st) benchmark::DoNotOptimize(zero_mode_matrix(E, top));
}
BENCHMARK(BM_twisted_E_alpha_matrix);

static void BM_membership_cutoff6(benchmark::State& st) {
    Tower tw(Gram{{2}});
    ModuleCtx vl = tw.vl();
    Element h1 = creation(0, 2, vacuum(vl));
    Element x = virasoro(vl, -1, h1) + virasoro(vl, 0, h1);
    for (auto _ : st) benchmark::DoNotOptimize(o_span_membership(vl, x, 6));
}
BENCHMARK(BM_membership_cutoff6);

static void BM_commutator_check(benchmark::State& st) {
    const Tower& tw = tower_neg22();
    ModuleCtx vt = tw.vt(0);
    Element u = E_alpha(tw, IVec{1, 0});
    Element v = omega_element(tw.vl());
    Element w = creation(0, 1, twisted_ground(0));
    for (auto _ : st) benchmark::DoNotOptimize(commutator_check(vt, u, v, 2, -2, w).ok);
}
BENCHMARK(BM_commutator_check);

BENCHMARK_MAIN();
