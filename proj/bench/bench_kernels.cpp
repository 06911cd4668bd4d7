// Parallel kernels against their serial references.
#include "mqw/definable.hpp"
#include "mqw/enumerator.hpp"
#include "mqw/formula.hpp"
#include "mqw/units.hpp"

#include <benchmark/benchmark.h>

using namespace mqw;

namespace {

BoxQuery box_query(long t) { return {default_order(FieldSpec::make({2, 3}, false)), 0, t}; }

void BM_box_parallel(benchmark::State& st) {
    const auto q = box_query(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(totally_bounded_box(q));
}
void BM_box_serial(benchmark::State& st) {
    const auto q = box_query(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(totally_bounded_box_reference(q));
}
BENCHMARK(BM_box_parallel)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_box_serial)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

const std::vector<UnitWitness>& sample() {
    static const auto s = default_unit_sample();
    return s;
}

void BM_unit_powers_parallel(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(audit_unit_powers(sample(), 24));
}
void BM_unit_powers_serial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(audit_unit_powers_serial(sample(), 24));
}
BENCHMARK(BM_unit_powers_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_unit_powers_serial)->Unit(benchmark::kMillisecond);

void BM_hasse_parallel(benchmark::State& st) {
    const auto roots = roots_of_unity(200);
    for (auto _ : st) benchmark::DoNotOptimize(audit_hasse(sample(), roots));
}
void BM_hasse_serial(benchmark::State& st) {
    const auto roots = roots_of_unity(200);
    for (auto _ : st) benchmark::DoNotOptimize(audit_hasse_serial(sample(), roots));
}
BENCHMARK(BM_hasse_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_hasse_serial)->Unit(benchmark::kMillisecond);

void BM_x0_parallel(benchmark::State& st) {
    const auto pool = std::span(sample()).first(12);
    const Element target = Element::rational(2);
    for (auto _ : st) benchmark::DoNotOptimize(x0_witness(target, 1, pool));
}
void BM_x0_serial(benchmark::State& st) {
    const auto pool = std::span(sample()).first(12);
    const Element target = Element::rational(2);
    for (auto _ : st) benchmark::DoNotOptimize(x0_witness_serial(target, 1, pool));
}
BENCHMARK(BM_x0_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_x0_serial)->Unit(benchmark::kMillisecond);

const FormulaPtr& phi() {
    static const auto f = parse_formula(family_formula_source());
    return f;
}

template <class Fn>
void run_define(benchmark::State& st, Fn fn) {
    const long q = st.range(0);
    const auto pool = natural_range(0, q);
    const Assignment params{{"p", Element::integer(1)}, {"q", Element::integer(q)}};
    const Domains w{{"W", pool}};
    for (auto _ : st) benchmark::DoNotOptimize(fn(phi(), "x", params, pool, w));
}
void BM_define_set_parallel(benchmark::State& st) { run_define(st, define_set); }
void BM_define_set_serial(benchmark::State& st) { run_define(st, define_set_serial); }
BENCHMARK(BM_define_set_parallel)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_define_set_serial)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
