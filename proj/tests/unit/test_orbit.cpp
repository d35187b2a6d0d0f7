#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "ringlab/census.hpp"
#include "ringlab/error.hpp"
#include "ringlab/ideal.hpp"
#include "ringlab/orbit.hpp"

using namespace ringlab;
using oracle::el;
using oracle::ring;

namespace {

const char* const kSmallRings[] = {"Z2",     "Z3",     "Z4",     "Z6",      "Z7",     "Z8",     "Z9",
                                   "Z12",    "GF(2^2)", "GF(2^3)", "GF(3^2)", "Q(Z2, [0, 0, 1])", "M2(Z2)",
                                   "M2(Z3)", "M2(Z4)", "T2(Z2)", "T2(Z4)",  "T3(Z2)", "Z2[C2]", "Z2[C3]",
                                   "Z2[S3]", "Z2[D4]", "Z3 x Z4", "Z12 x Z7"};

}  // namespace

TEST_CASE("orbit witness examples") {
    auto z12 = ring("Z12");
    CHECK(orbit_witness(*z12, el(z12, "2")) == OrbitWitness{2, 2});
    auto z7 = ring("Z7");
    CHECK(orbit_witness(*z7, el(z7, "2")) == OrbitWitness{1, 3});
    for (const char* spec : {"Z5", "M2(Z3)", "Z2[S3]", "ZZ", "POLY(Z4)"}) {
        auto r = ring(spec);
        CHECK(orbit_witness(*r, r->one()) == OrbitWitness{1, 1});
    }
}

TEST_CASE("classify examples") {
    auto z4 = ring("Z4");
    auto three = classify(*z4, el(z4, "3"));
    CHECK(three.unit_order == 2u);
    CHECK(three.potent_exponent == 3u);
    CHECK(three.involution);
    CHECK_FALSE(three.nilpotency_index.has_value());

    auto two = classify(*z4, el(z4, "2"));
    CHECK(two.nilpotency_index == 2u);
    CHECK_FALSE(two.unit_order.has_value());
    CHECK_FALSE(two.potent_exponent.has_value());

    auto z12 = ring("Z12");
    CHECK(classify(*z12, el(z12, "6")).nilpotency_index == 2u);
    auto zero = classify(*z12, z12->zero());
    CHECK(zero.nilpotency_index == 1u);
    CHECK(zero.idempotent);
    CHECK(zero.potent_exponent == 2u);
}

TEST_CASE("class membership") {
    auto z4 = ring("Z4");
    CHECK(is_member(*z4, el(z4, "3"), ElementClass::potent(3)));
    CHECK_FALSE(is_member(*z4, el(z4, "3"), ElementClass::potent(2)));
    CHECK(is_member(*z4, el(z4, "3"), ElementClass::torsion_unit()));
    CHECK_FALSE(is_member(*z4, z4->zero(), ElementClass::torsion_unit()));
    CHECK(is_member(*z4, z4->zero(), ElementClass::nilpotent()));
    CHECK(is_member(*z4, z4->zero(), ElementClass::potent_any()));
    auto zz = ring("ZZ");
    CHECK(is_member(*zz, el(zz, "-1"), ElementClass::torsion_unit()));
    CHECK_FALSE(is_member(*zz, el(zz, "2"), ElementClass::periodic()));
    auto p = ring("POLY(Z4)");
    CHECK(is_member(*p, el(p, "[3, 2]"), ElementClass::torsion_unit()));
    CHECK_FALSE(is_member(*p, el(p, "[0, 1]"), ElementClass::periodic()));
    CHECK(ElementClass::parse("potent:4") == ElementClass::potent(4));
    CHECK(ElementClass::parse("unit") == ElementClass::torsion_unit());
    CHECK_THROWS_AS(ElementClass::parse("potent:1"), Error);
    CHECK(to_string(ElementClass::parse("torsion-unit")) == "torsion-unit");
}

TEST_CASE("idempotent_from examples") {
    auto z12 = ring("Z12");
    CHECK(idempotent_from(*z12, el(z12, "2")) == el(z12, "4"));
    auto z4 = ring("Z4");
    CHECK(idempotent_from(*z4, el(z4, "2")) == z4->zero());
    auto z7 = ring("Z7");
    CHECK(orbit_witness(*z7, el(z7, "3")) == OrbitWitness{1, 6});
    CHECK(idempotent_from(*z7, el(z7, "3")) == z7->one());
}

TEST_CASE("orbit witnesses are minimal and bounded") {
    for (const char* spec : kSmallRings) {
        CAPTURE(spec);
        auto r = ring(spec);
        const FiniteRing& f = r->finite();
        const auto& table = orbit_table(f);
        for (ElemId x = 0; x < f.size(); ++x) {
            auto [i, d] = oracle::slow_orbit(f, f.element(x), f.size());
            REQUIRE(table[x] == OrbitWitness{i, d});
            CHECK(i + d <= f.size());
            CHECK(orbit_witness(f, f.element(x)) == table[x]);
        }
    }
}

TEST_CASE("constant-memory fallback agrees") {
    OrbitOptions tiny;
    tiny.table_limit = 2;
    for (const char* spec : {"Z12", "M2(Z3)", "Z12 x Z7", "Z2[S3]"}) {
        auto r = ring(spec);
        const FiniteRing& f = r->finite();
        for (ElemId x = 0; x < f.size(); ++x) {
            CHECK(orbit_witness(f, f.element(x), tiny) == orbit_table(f)[x]);
        }
    }
    // Beyond the enumeration cap the search keys on coordinates.
    auto big = ring("M3(Z4)");
    Element a = el(big, "[[1,2,3],[0,1,1],[2,0,3]]");
    CHECK(orbit_witness(*big, a) == orbit_witness(*big, a, tiny));
    auto [i, d] = oracle::slow_orbit(*big, a, 100000);
    CHECK(orbit_witness(*big, a) == OrbitWitness{i, d});
}

TEST_CASE("idempotent_from is idempotent and commutes") {
    for (const char* spec : kSmallRings) {
        CAPTURE(spec);
        auto r = ring(spec);
        const FiniteRing& f = r->finite();
        for (ElemId x = 0; x < f.size(); ++x) {
            Element xe = f.element(x);
            Element e = idempotent_from(f, xe);
            CHECK(f.mul(e, e) == e);
            CHECK(f.commute(e, xe));
        }
    }
}

TEST_CASE("combine_product_witness examples") {
    CHECK(combine_product_witness({4, 2}, {4, 1}) == PowerRelation{8, 2});
    CHECK(combine_product_witness({2, 1}, {2, 1}) == PowerRelation{2, 1});
    CHECK(combine_product_witness({3, 1}, {2, 1}) == PowerRelation{3, 1});
    // 2^8 = 256 = 4 = 2^2 mod 12 and 256 = 4 = 2^2 mod 7.
    auto p = ring("Z12 x Z7");
    Element x = el(p, "(2, 2)");
    CHECK(p->pow(x, 8) == p->pow(x, 2));
    // 6 satisfies x^3 = x in Z7; 2 only satisfies x^4 = x, combining with (2, 1) into (4, 1).
    auto q = ring("Z7 x Z2");
    Element y = el(q, "(6, 1)");
    CHECK(q->pow(y, 3) == y);
    CHECK(combine_product_witness({4, 1}, {2, 1}) == PowerRelation{4, 1});
    Element w = el(q, "(2, 1)");
    CHECK(q->pow(w, 3) != w);
    CHECK(q->pow(w, 4) == w);
}

TEST_CASE("combine_product_witness validates on all pairs") {
    for (auto [left, right] : {std::pair{"Z12", "Z7"}, {"Z4", "Z9"}}) {
        auto a = ring(left);
        auto b = ring(right);
        auto p = ring(std::string(left) + " x " + right);
        for (ElemId x = 0; x < a->finite().size(); ++x) {
            for (ElemId y = 0; y < b->finite().size(); ++y) {
                auto wx = PowerRelation::from(orbit_table(a->finite())[x]);
                auto wy = PowerRelation::from(orbit_table(b->finite())[y]);
                auto w = combine_product_witness(wx, wy);
                Element pair = el(p, "(" + std::to_string(x) + ", " + std::to_string(y) + ")");
                CHECK(oracle::slow_pow(*p, pair, w.high) == oracle::slow_pow(*p, pair, w.low));
            }
        }
    }
}

TEST_CASE("frobenius_lift examples") {
    auto z4 = ring("Z4");
    ElemId two = 2;
    auto i4 = ideal_closure(z4, std::vector<ElemId>{two});
    auto lift = frobenius_lift(z4, i4, el(z4, "3"), {2, 1});
    CHECK(lift.relation == PowerRelation{4, 2});
    REQUIRE(lift.steps.size() == 1);
    CHECK(lift.steps[0].nil_exponent == 2);
    CHECK(lift.steps[0].l == 1);

    auto z8 = ring("Z8");
    auto i8 = ideal_closure(z8, std::vector<ElemId>{2});
    CHECK(i8.size() == 4);
    auto lift8 = frobenius_lift(z8, i8, el(z8, "3"), {2, 1});
    CHECK(lift8.relation == PowerRelation{8, 4});
    CHECK(lift8.steps[0].nil_exponent == 3);
    CHECK(lift8.steps[0].l == 2);
    CHECK(z8->pow(el(z8, "3"), 8) == z8->one());
    CHECK(z8->pow(el(z8, "3"), 4) == z8->one());
    CHECK(lift8.witness == orbit_witness(*z8, el(z8, "3")));

    auto zero = ideal_closure(z8, std::vector<ElemId>{});
    auto same = frobenius_lift(z8, zero, el(z8, "3"), {3, 1});
    CHECK(same.relation == PowerRelation{3, 1});
}

TEST_CASE("frobenius_lift errors") {
    auto z8 = ring("Z8");
    auto whole = ideal_closure(z8, std::vector<ElemId>{1});
    try {
        frobenius_lift(z8, whole, el(z8, "3"), {2, 1});
        FAIL("expected NotNilIdeal");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotNilIdeal);
    }
    auto four = ideal_closure(z8, std::vector<ElemId>{4});
    try {
        frobenius_lift(z8, four, el(z8, "3"), {2, 1});
        FAIL("expected WitnessInvalid");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::WitnessInvalid);
    }
}

TEST_CASE("frobenius_lift validates across nil ideals") {
    for (const char* spec : kSmallRings) {
        CAPTURE(spec);
        auto r = ring(spec);
        const FiniteRing& f = r->finite();
        for (const auto& ideal : nil_ideals(r).ideals) {
            auto q = quotient(ideal);
            for (ElemId a = 0; a < f.size(); ++a) {
                Element ae = f.element(a);
                auto w = PowerRelation::from(orbit_witness(*q, q->element(q->project(a))));
                auto lift = frobenius_lift(r, ideal, ae, w);
                CHECK(oracle::slow_pow(f, ae, lift.relation.high) == oracle::slow_pow(f, ae, lift.relation.low));
                CHECK(lift.witness == orbit_table(f)[a]);
            }
        }
    }
}

TEST_CASE("normalize") {
    auto z12 = ring("Z12");
    CHECK(normalize(*z12, el(z12, "2"), {10, 4}) == OrbitWitness{2, 2});
    CHECK_THROWS_AS(normalize(*z12, el(z12, "2"), {3, 2}), Error);
}

TEST_CASE("poly_periodicity examples") {
    auto z4t = ring("POLY(Z4)");
    auto a = poly_periodicity(*z4t, el(z4t, "[3, 2]"));
    CHECK(a.periodic);
    CHECK(a.witness == OrbitWitness{1, 2});
    CHECK(z4t->pow(el(z4t, "[3, 2]"), 3) == el(z4t, "[3, 2]"));

    auto t = poly_periodicity(*z4t, el(z4t, "[0, 1]"));
    CHECK_FALSE(t.periodic);
    REQUIRE(t.obstruction.has_value());
    CHECK(t.obstruction->degree == 1);
    CHECK(t.obstruction->coefficient == 1);
    CHECK(t.obstruction->prime == 2);
    CHECK(t.obstruction->residue_degree == 1);

    auto two = poly_periodicity(*z4t, el(z4t, "[2]"));
    CHECK(two.periodic);
    CHECK(two.witness == OrbitWitness{2, 1});

    try {
        orbit_witness(*z4t, el(z4t, "[0, 1]"));
        FAIL("expected NotPeriodic");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotPeriodic);
    }
}

TEST_CASE("poly_periodicity matches the power-expansion oracle") {
    std::mt19937 rng(2024);
    int agreements = 0;
    for (std::int64_t n : {4, 8, 9, 12}) {
        auto r = ring("POLY(Z" + std::to_string(n) + ")");
        std::int64_t rad = n == 4 || n == 8 ? 2 : n == 9 ? 3 : 6;
        for (int k = 0; k < 125; ++k) {
            std::size_t deg = rng() % 4;
            Coords c(deg + 1);
            bool nil_tail = rng() % 2 == 0;
            for (std::size_t j = 0; j <= deg; ++j) {
                auto v = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(n));
                c[j] = (j > 0 && nil_tail) ? (v * rad) % n : v;
            }
            std::string literal = "[";
            for (std::size_t j = 0; j < c.size(); ++j) literal += (j ? ", " : "") + std::to_string(c[j]);
            literal += "]";
            CAPTURE(literal);
            Element f = el(r, literal);
            std::uint64_t bound = 2 * static_cast<std::uint64_t>(n) * (deg + 1);
            auto [i, d] = oracle::slow_orbit(*r, f, bound);
            bool oracle_periodic = i != 0;
            auto decision = poly_periodicity(*r, f);
            CHECK(decision.periodic == oracle_periodic);
            if (decision.periodic && oracle_periodic) CHECK(decision.witness == OrbitWitness{i, d});
            agreements += decision.periodic == oracle_periodic;
        }
    }
    CHECK(agreements == 500);
}

TEST_CASE("integer_periodicity") {
    CHECK(integer_periodicity(1).witness == OrbitWitness{1, 1});
    CHECK(integer_periodicity(0).witness == OrbitWitness{1, 1});
    CHECK(integer_periodicity(-1).witness == OrbitWitness{1, 2});
    CHECK_FALSE(integer_periodicity(2).periodic);
    CHECK_FALSE(integer_periodicity(-7).periodic);
    CHECK_FALSE(integer_periodicity(2).obstruction.empty());
}
