#include <benchmark/benchmark.h>

#include "ringlab/construct.hpp"
#include "ringlab/decompose.hpp"
#include "ringlab/dsl.hpp"
#include "ringlab/orbit.hpp"
#include "ringlab/properties.hpp"

using namespace ringlab;

namespace {

RingPtr fresh(const char* spec) { return construct(parse_ring(spec)); }

// Each iteration builds a new ring so the per-ring memo does not hide the work.
void BM_OrbitTable(benchmark::State& state, const char* spec) {
    for (auto _ : state) {
        auto r = fresh(spec);
        benchmark::DoNotOptimize(orbit_table(r->finite()).size());
    }
}
BENCHMARK_CAPTURE(BM_OrbitTable, M2_Z4, "M2(Z4)");
BENCHMARK_CAPTURE(BM_OrbitTable, Z2_S3, "Z2[S3]");
BENCHMARK_CAPTURE(BM_OrbitTable, T2_Z8, "T2(Z8)");

void BM_WeakSplitAll(benchmark::State& state, const char* spec) {
    auto r = fresh(spec);
    const FiniteRing& f = r->finite();
    for (auto _ : state) {
        for (ElemId id = 0; id < f.size(); ++id) benchmark::DoNotOptimize(weak_split(f, f.element(id)));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * f.size()));
}
BENCHMARK_CAPTURE(BM_WeakSplitAll, M2_Z4, "M2(Z4)");

void BM_SumSearchPair(benchmark::State& state, const char* spec) {
    auto r = fresh(spec);
    const FiniteRing& f = r->finite();
    auto unit = ElementClass::torsion_unit();
    for (auto _ : state) {
        for (ElemId id = 0; id < f.size(); ++id) benchmark::DoNotOptimize(sum_search(f, f.element(id), {unit, unit}));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * f.size()));
}
BENCHMARK_CAPTURE(BM_SumSearchPair, M2_Z3, "M2(Z3)");
BENCHMARK_CAPTURE(BM_SumSearchPair, M2_Z4, "M2(Z4)");

void BM_SumsetLayers(benchmark::State& state, const char* spec) {
    for (auto _ : state) {
        auto r = fresh(spec);
        benchmark::DoNotOptimize(sumset_layers(r->finite(), ElementClass::nilpotent()).layers.size());
    }
}
BENCHMARK_CAPTURE(BM_SumsetLayers, M2_Z4, "M2(Z4)");
BENCHMARK_CAPTURE(BM_SumsetLayers, T2_Z8, "T2(Z8)");

void BM_MatrixSplit(benchmark::State& state, const char* spec) {
    auto r = fresh(spec);
    auto elements = r->finite().elements();
    for (auto _ : state) {
        for (const auto& x : elements) benchmark::DoNotOptimize(matrix_split(*r, x));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * elements.size()));
}
BENCHMARK_CAPTURE(BM_MatrixSplit, M2_Z4, "M2(Z4)");
BENCHMARK_CAPTURE(BM_MatrixSplit, T3_Z2, "T3(Z2)");

void BM_Profile(benchmark::State& state, const char* spec) {
    for (auto _ : state) {
        auto r = fresh(spec);
        benchmark::DoNotOptimize(profile(r).size);
    }
}
BENCHMARK_CAPTURE(BM_Profile, M2_Z2, "M2(Z2)");
BENCHMARK_CAPTURE(BM_Profile, Z12, "Z12");

}  // namespace

BENCHMARK_MAIN();
