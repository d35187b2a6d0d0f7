#include "doctest.h"
#include "oracle.hpp"
#include "ringlab/census.hpp"
#include "ringlab/properties.hpp"

using namespace ringlab;
using oracle::el;
using oracle::ring;

namespace {

/// Every element is a sum of two units, by a double loop over inverse-search units.
std::optional<ElemId> slow_two_good_counterexample(const FiniteRing& f) {
    auto units = oracle::slow_units(f);
    for (ElemId x = 0; x < f.size(); ++x) {
        bool ok = false;
        for (ElemId u : units) {
            for (ElemId v : units) ok = ok || f.add(u, v) == x;
        }
        if (!ok) return x;
    }
    return std::nullopt;
}

}  // namespace

TEST_CASE("Z4 profile") {
    auto z4 = ring("Z4");
    RingProfile p = profile(z4);
    CHECK(p.periodic.value);
    CHECK(p.weakly_periodic.value);
    CHECK(p.additively_periodic.value);
    CHECK_FALSE(p.two_good.value);
    REQUIRE(p.two_good.counterexample);
    CHECK(*p.two_good.counterexample == el(z4, "1"));
    CHECK(p.has_tpp.value);
    CHECK(p.has_strong_tpp.value);
    CHECK(p.nil_ideals_checked == 2);
    CHECK(p.strong_tpp_complete);
    CHECK(p.commutative);
    CHECK_FALSE(p.field.value);
    CHECK(p.additive(ElementClass::periodic(), 1)->flag.value);
    CHECK_FALSE(p.additive(ElementClass::nilpotent(), 4)->flag.value);
    CHECK(implication_violation(p).empty());
}

TEST_CASE("two-good examples") {
    auto m = ring("M2(Z2)");
    CHECK(is_two_good(*m).value);
    auto z2 = ring("Z2");
    Flag f = is_two_good(*z2);
    CHECK_FALSE(f.value);
    CHECK(*f.counterexample == el(z2, "1"));
    CHECK(is_two_good(*ring("Z3")).value);
}

TEST_CASE("two-good agrees with the unit oracle") {
    for (const char* spec : {"Z2", "Z3", "Z4", "Z6", "Z9", "GF(2^2)", "GF(3^2)", "M2(Z2)", "T2(Z2)", "T2(Z3)", "Z2[C3]",
                             "Z3[C2]", "Z2[S3]", "Z3 x Z4", "Q(Z2, [0, 0, 1])"}) {
        CAPTURE(spec);
        auto r = ring(spec);
        auto expected = slow_two_good_counterexample(r->finite());
        Flag f = is_two_good(*r);
        CHECK(f.value == !expected.has_value());
        if (expected) CHECK(r->finite().id_of(*f.counterexample) == *expected);
    }
}

TEST_CASE("strong tpp counts nil ideals") {
    auto z8 = has_strong_tpp(ring("Z8"));
    CHECK(z8.flag.value);
    CHECK(z8.ideals == 3);
    CHECK_FALSE(z8.complete);
    auto z8_full = has_strong_tpp(ring("Z8"), 4);
    CHECK(z8_full.ideals == 3);
    CHECK(z8_full.complete);
    auto m = has_strong_tpp(ring("M2(Z2)"));
    CHECK(m.flag.value);
    CHECK(m.ideals == 1);
    CHECK(has_strong_tpp(ring("ZZ")).flag.value);
}

TEST_CASE("symbolic profiles") {
    auto zz = ring("ZZ");
    RingProfile z = profile(zz);
    CHECK_FALSE(z.periodic.value);
    CHECK(*z.periodic.counterexample == el(zz, "2"));
    CHECK(z.additively_periodic.value);
    for (const auto& a : z.additively_k) {
        CHECK_FALSE(a.flag.value);
        CHECK(*a.flag.counterexample == zz->from_integer(static_cast<std::int64_t>(a.k + 1)));
    }
    CHECK(z.has_tpp.value);
    CHECK(z.unit_group_torsion.value);
    CHECK_FALSE(z.two_good.value);

    for (const char* spec : {"POLY(Z2)", "POLY(Z3)", "POLY(Z4)"}) {
        CAPTURE(spec);
        auto r = ring(spec);
        RingProfile p = profile(r);
        CHECK_FALSE(p.periodic.value);
        CHECK(*p.periodic.counterexample == el(r, "[0, 1]"));
        CHECK_FALSE(p.additively_periodic.value);
        CHECK(p.unit_group_torsion.value);
        CHECK(p.has_tpp.value);
        CHECK(implication_violation(p).empty());
    }
}

TEST_CASE("additively_k flags match sumset brute force") {
    for (const char* spec : {"Z4", "Z6", "Z8", "M2(Z2)", "T2(Z2)", "Z2[C2]", "GF(2^3)"}) {
        CAPTURE(spec);
        auto r = ring(spec);
        const FiniteRing& f = r->finite();
        RingProfile p = profile(r);
        for (const auto& cls : profile_classes()) {
            std::vector<ElemId> s;
            for (ElemId x = 0; x < f.size(); ++x) {
                if (is_member(*r, f.element(x), cls)) s.push_back(x);
            }
            std::vector<char> layer(f.size(), 0);
            for (ElemId x : s) layer[x] = 1;
            for (std::uint64_t k = 1; k <= kProfileMaxK; ++k) {
                CAPTURE(k);
                bool full = std::all_of(layer.begin(), layer.end(), [](char c) { return c != 0; });
                const AdditiveFlag* a = p.additive(cls, k);
                REQUIRE(a);
                CHECK(a->flag.value == full);
                if (!full) CHECK(!layer[f.id_of(*a->flag.counterexample)]);
                std::vector<char> next(f.size(), 0);
                for (ElemId x = 0; x < f.size(); ++x) {
                    if (!layer[x]) continue;
                    for (ElemId y : s) next[f.add(x, y)] = 1;
                }
                layer = next;
            }
        }
    }
}

TEST_CASE("finite profiles satisfy the inclusion chain") {
    for (const char* spec : {"Z2", "Z9", "Z12", "GF(3^2)", "M2(Z3)", "T3(Z2)", "Z2[S3]", "Z2[D4]", "Z12 x Z7"}) {
        CAPTURE(spec);
        RingProfile p = profile(ring(spec));
        CHECK(p.periodic.value);
        CHECK(p.weakly_periodic.value);
        CHECK(p.additive(ElementClass::periodic(), 2)->flag.value);
        CHECK(p.has_tpp.value);
        CHECK(p.unit_group_torsion.value);
        CHECK(implication_violation(p).empty());
    }
    CHECK(profile(ring("GF(2^3)")).field.value);
    CHECK_FALSE(profile(ring("M2(Z2)")).field.value);
}

TEST_CASE("implication checker flags broken chains") {
    RingProfile p;
    p.periodic.value = true;
    CHECK_FALSE(implication_violation(p).empty());
}
