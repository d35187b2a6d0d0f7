#include "doctest.h"
#include "oracle.hpp"
#include "ringlab/census.hpp"
#include "ringlab/decompose.hpp"
#include "ringlab/error.hpp"

using namespace ringlab;
using oracle::el;
using oracle::ring;

namespace {

const std::vector<std::string> kSmallRings = {"Z2",     "Z4",     "Z6",     "Z8",      "Z12",     "GF(2^2)", "M2(Z2)",
                                              "T2(Z4)", "T3(Z2)", "Z2[C3]", "Z2[S3]",  "Z3 x Z4", "GF(3^2)", "Q(Z2, [0, 0, 1])"};

std::vector<Element> summands_of(const RingPtr& r, std::initializer_list<const char*> lits) {
    std::vector<Element> out;
    for (const char* l : lits) out.push_back(el(r, l));
    return out;
}

void check_valid(const Ring& r, const DecompositionCertificate& cert) {
    auto v = verify_certificate(r, cert);
    CHECK_MESSAGE(v.ok, v.reason << " in " << serialize(r, cert));
}

}  // namespace

TEST_CASE("weak_split examples") {
    auto z12 = ring("Z12");
    auto cert = weak_split(*z12, el(z12, "2"));
    CHECK(cert.summands == summands_of(z12, {"8", "6"}));
    CHECK(cert.commuting);
    check_valid(*z12, cert);

    auto z6 = ring("Z6");
    CHECK(weak_split(*z6, el(z6, "5")).summands == summands_of(z6, {"5", "0"}));
    auto z8 = ring("Z8");
    CHECK(weak_split(*z8, el(z8, "2")).summands == summands_of(z8, {"0", "2"}));
}

TEST_CASE("weak_split holds on every element of small rings") {
    for (const auto& spec : kSmallRings) {
        CAPTURE(spec);
        auto r = ring(spec);
        for (const auto& x : r->finite().elements()) {
            auto cert = weak_split(*r, x);
            auto [i, d] = oracle::slow_orbit(*r, x, r->finite().size() + 1);
            std::uint64_t rr = (i + d - 1) / d * d;
            const Element& a = cert.summands[0];
            const Element& b = cert.summands[1];
            CHECK(oracle::slow_pow(*r, a, d + 1) == a);
            CHECK(oracle::slow_pow(*r, b, rr) == r->zero());
            CHECK(r->mul(a, b) == r->mul(b, a));
            CHECK(r->add(a, b) == x);
            check_valid(*r, cert);
        }
    }
}

TEST_CASE("sum_search examples") {
    auto m = ring("M2(Z2)");
    auto tu = ElementClass::torsion_unit();
    auto cert = sum_search(*m, el(m, "[[1,0],[0,0]]"), {tu, tu});
    REQUIRE(cert);
    CHECK(cert->summands == summands_of(m, {"[[0,1],[1,0]]", "[[1,1],[1,0]]"}));
    check_valid(*m, *cert);

    auto zz = ring("ZZ");
    auto p = ElementClass::periodic();
    CHECK_FALSE(sum_search(*zz, el(zz, "3"), {p, p}));
    auto three = sum_search(*zz, el(zz, "3"), {p, p, p});
    REQUIRE(three);
    check_valid(*zz, *three);

    auto z7 = ring("Z7");
    auto c = sum_search(*z7, el(z7, "5"), {ElementClass::potent_any(), ElementClass::nilpotent()}, true);
    REQUIRE(c);
    CHECK(c->summands == summands_of(z7, {"5", "0"}));
    CHECK(c->commuting);
}

TEST_CASE("sum_search with two classes agrees with a double loop") {
    std::vector<ElementClass> classes = {ElementClass::periodic(), ElementClass::potent_any(), ElementClass::torsion_unit()};
    for (const auto& spec : kSmallRings) {
        auto r = ring(spec);
        const FiniteRing& f = r->finite();
        for (const auto& cls : classes) {
            CAPTURE(spec);
            CAPTURE(to_string(cls));
            for (ElemId x = 0; x < f.size(); ++x) {
                std::optional<std::pair<ElemId, ElemId>> expected;
                for (ElemId s = 0; s < f.size() && !expected; ++s) {
                    if (!is_member(*r, f.element(s), cls)) continue;
                    ElemId t = f.sub(x, s);
                    if (is_member(*r, f.element(t), cls)) expected = std::pair{s, t};
                }
                auto got = sum_search(*r, f.element(x), {cls, cls});
                REQUIRE(got.has_value() == expected.has_value());
                if (got) {
                    CHECK(f.id_of(got->summands[0]) == expected->first);
                    CHECK(f.id_of(got->summands[1]) == expected->second);
                    check_valid(*r, *got);
                }
            }
        }
    }
}

TEST_CASE("sum_search with three and four classes agrees with brute force") {
    for (const char* spec : {"Z8", "M2(Z2)", "Z2[S3]", "T2(Z4)"}) {
        CAPTURE(spec);
        auto r = ring(spec);
        const FiniteRing& f = r->finite();
        std::vector<ElementClass> cls = {ElementClass::torsion_unit(), ElementClass::idempotent(), ElementClass::nilpotent()};
        auto in = [&](ElemId x, const ElementClass& c) { return is_member(*r, f.element(x), c); };
        for (ElemId x = 0; x < f.size(); ++x) {
            bool exists = false;
            for (ElemId a = 0; a < f.size() && !exists; ++a) {
                if (!in(a, cls[0])) continue;
                for (ElemId b = 0; b < f.size() && !exists; ++b) {
                    if (in(b, cls[1]) && in(f.sub(f.sub(x, a), b), cls[2])) exists = true;
                }
            }
            auto got = sum_search(*r, f.element(x), cls);
            CHECK(got.has_value() == exists);
            if (got) check_valid(*r, *got);
            auto four = sum_search(*r, f.element(x), {cls[0], cls[0], cls[0], cls[0]}, true);
            if (four) check_valid(*r, *four);
        }
    }
}

TEST_CASE("commuting constraint filters tuples") {
    auto m = ring("M2(Z2)");
    const FiniteRing& f = m->finite();
    auto tu = ElementClass::torsion_unit();
    for (ElemId x = 0; x < f.size(); ++x) {
        bool exists = false;
        for (ElemId a = 0; a < f.size() && !exists; ++a) {
            ElemId b = f.sub(x, a);
            exists = is_member(*m, f.element(a), tu) && is_member(*m, f.element(b), tu) && f.commute(a, b);
        }
        auto got = sum_search(*m, f.element(x), {tu, tu}, true);
        CHECK(got.has_value() == exists);
        if (got) {
            CHECK(got->commuting);
            check_valid(*m, *got);
        }
    }
}

TEST_CASE("additive_rank examples") {
    auto zz = ring("ZZ");
    auto r3 = additive_rank(*zz, el(zz, "3"), ElementClass::periodic());
    REQUIRE(r3.rank);
    CHECK(*r3.rank == 3);
    check_valid(*zz, *r3.certificate);
    CHECK_FALSE(additive_rank(*zz, el(zz, "9"), ElementClass::periodic()).rank);

    auto m = ring("M2(Z2)");
    auto e11 = additive_rank(*m, el(m, "[[1,0],[0,0]]"), ElementClass::torsion_unit());
    REQUIRE(e11.rank);
    CHECK(*e11.rank == 2);
    check_valid(*m, *e11.certificate);

    for (const char* spec : {"Z12", "T2(Z4)", "Z2[S3]"}) {
        auto r = ring(spec);
        for (const auto& x : r->finite().elements()) CHECK(additive_rank(*r, x, ElementClass::periodic()).rank == 1u);
    }

    // 0 = 1 + 1 in Z2 and 0 is never a torsion unit.
    auto z2 = ring("Z2");
    CHECK(additive_rank(*z2, el(z2, "0"), ElementClass::torsion_unit()).rank == 2u);
    CHECK(additive_rank(*z2, el(z2, "1"), ElementClass::torsion_unit()).rank == 1u);
}

TEST_CASE("additive_rank matches brute-force layering") {
    for (const char* spec : {"Z4", "Z6", "M2(Z2)", "T3(Z2)"}) {
        CAPTURE(spec);
        auto r = ring(spec);
        const FiniteRing& f = r->finite();
        auto tu = ElementClass::torsion_unit();
        std::vector<ElemId> s;
        for (ElemId x = 0; x < f.size(); ++x) {
            if (is_member(*r, f.element(x), tu)) s.push_back(x);
        }
        std::vector<std::optional<std::uint64_t>> expected(f.size());
        std::vector<ElemId> layer = s;
        for (std::uint64_t k = 1; k <= 4; ++k) {
            std::vector<char> next(f.size(), 0);
            for (ElemId x : layer) {
                if (!expected[x]) expected[x] = k;
                for (ElemId y : s) next[f.add(x, y)] = 1;
            }
            layer.clear();
            for (ElemId x = 0; x < f.size(); ++x) {
                if (next[x]) layer.push_back(x);
            }
        }
        for (ElemId x = 0; x < f.size(); ++x) {
            auto got = additive_rank(*r, f.element(x), tu, 4);
            CHECK(got.rank == expected[x]);
            if (got.certificate) {
                CHECK(got.certificate->summands.size() == *got.rank);
                check_valid(*r, *got.certificate);
            }
        }
    }
}

TEST_CASE("matrix_split examples") {
    auto t = ring("T2(Z4)");
    auto cert = matrix_split(*t, el(t, "[[1,2],[0,3]]"));
    REQUIRE(cert.summands.size() == 2);
    CHECK(cert.summands[0] == el(t, "[[0,2],[0,0]]"));
    CHECK(cert.witnesses[0] == ClassWitness::zero(2));
    CHECK(cert.summands[1] == el(t, "[[1,0],[0,3]]"));
    CHECK(cert.witnesses[1] == ClassWitness::relation(3, 1));
    check_valid(*t, cert);

    auto m = ring("M2(Z2)");
    auto ones = matrix_split(*m, el(m, "[[1,1],[1,1]]"));
    CHECK(ones.summands == summands_of(m, {"[[0,1],[0,0]]", "[[0,0],[1,0]]", "[[1,0],[0,1]]"}));
    check_valid(*m, ones);

    auto zero = matrix_split(*m, m->zero());
    CHECK(zero.summands == std::vector<Element>{m->zero()});
    check_valid(*m, zero);

    auto z4 = ring("Z4");
    CHECK_THROWS_AS(matrix_split(*z4, el(z4, "1")), Error);
}

TEST_CASE("matrix_split certificates on whole rings") {
    for (const char* spec : {"T2(Z4)", "T3(Z2)", "M2(Z2)", "M2(Z3)", "M2(GF(2^2))"}) {
        CAPTURE(spec);
        auto r = ring(spec);
        for (const auto& x : r->finite().elements()) {
            auto cert = matrix_split(*r, x);
            CHECK(cert.summands.size() <= 3);
            check_valid(*r, cert);
        }
    }
}

TEST_CASE("torsion_sum_witness examples") {
    auto z7 = ring("Z7");
    auto r = torsion_sum_witness(*z7, el(z7, "2"), el(z7, "3"));
    CHECK(r.status == TorsionSumStatus::Ok);
    CHECK(*r.c == el(z7, "5"));
    CHECK(r.m == 1u);
    CHECK(r.one_plus_c_unit);
    CHECK(r.frobenius_identity);
    CHECK(r.order == 6u);

    auto m = ring("M2(Z2)");
    auto s = torsion_sum_witness(*m, el(m, "[[0,1],[1,0]]"), el(m, "[[1,1],[1,0]]"));
    CHECK(s.status == TorsionSumStatus::NoFrobeniusFixpoint);
    CHECK(*s.c == el(m, "[[1,0],[1,1]]"));
    CHECK(*s.one_plus_c == el(m, "[[0,0],[1,0]]"));
    CHECK(s.one_plus_c_nilpotent);
    CHECK_FALSE(s.one_plus_c_unit);

    auto z3 = ring("Z3");
    auto t = torsion_sum_witness(*z3, el(z3, "1"), el(z3, "1"));
    CHECK(t.status == TorsionSumStatus::Ok);
    CHECK(t.m == 1u);
    CHECK(t.order == 2u);

    CHECK(torsion_sum_witness(*z7, el(z7, "0"), el(z7, "1")).status == TorsionSumStatus::NotTorsionUnits);
    CHECK(torsion_sum_witness(*z7, el(z7, "1"), el(z7, "6")).status == TorsionSumStatus::NonUnitSum);
    auto z4 = ring("Z4");
    CHECK(torsion_sum_witness(*z4, el(z4, "1"), el(z4, "1")).status == TorsionSumStatus::NotPrimeChar);
}

TEST_CASE("torsion_sum_witness orders match the orbit oracle in commutative rings") {
    for (const char* spec : {"GF(2^3)", "GF(3^2)", "Z2[C3]", "Z3[C2xC2]", "Z5"}) {
        CAPTURE(spec);
        auto r = ring(spec);
        const FiniteRing& f = r->finite();
        auto units = oracle::slow_units(f);
        for (ElemId a : units) {
            for (ElemId b : units) {
                auto res = torsion_sum_witness(*r, f.element(a), f.element(b));
                ElemId sum = f.add(a, b);
                bool unit = std::binary_search(units.begin(), units.end(), sum);
                CHECK(res.status == (unit ? TorsionSumStatus::Ok : TorsionSumStatus::NonUnitSum));
                if (unit) {
                    CHECK(res.frobenius_identity);
                    auto [i, d] = oracle::slow_orbit(*r, f.element(sum), f.size() + 1);
                    CHECK(i == 1);
                    CHECK(res.order == d);
                }
            }
        }
    }
}

TEST_CASE("poly_additive_decision examples") {
    auto z4t = ring("POLY(Z4)");
    auto t = poly_additive_decision(*z4t, el(z4t, "[0, 1]"));
    CHECK_FALSE(t.decomposable);
    REQUIRE(t.obstruction);
    CHECK(t.obstruction->degree == 1);
    auto f = poly_additive_decision(*z4t, el(z4t, "[3, 2]"));
    CHECK(f.decomposable);
    CHECK(f.rank == 1u);
    REQUIRE(f.witness);
    auto z2t = ring("POLY(Z2)");
    CHECK_FALSE(poly_additive_decision(*z2t, el(z2t, "[1, 1]")).decomposable);

    auto rank = additive_rank(*z4t, el(z4t, "[3, 2]"), ElementClass::periodic());
    CHECK(rank.rank == 1u);
    CHECK_FALSE(additive_rank(*z4t, el(z4t, "[0, 1]"), ElementClass::periodic()).rank);
}

TEST_CASE("periodic pairs with central sum commute") {
    for (const char* spec : {"M2(Z2)", "T2(Z4)", "T3(Z2)", "Z2[S3]", "Z3[Q8]"}) {
        CAPTURE(spec);
        auto r = ring(spec);
        const FiniteRing& f = r->finite();
        // Pairs with a central sum are exactly (u, c - u) for central c.
        for (ElemId c = 0; c < f.size(); ++c) {
            if (!is_central(f, c)) continue;
            for (ElemId u = 0; u < f.size(); ++u) CHECK(f.commute(u, f.sub(c, u)));
        }
    }
}

TEST_CASE("verifier rejects tampered certificates") {
    auto z12 = ring("Z12");
    auto good = weak_split(*z12, el(z12, "2"));
    REQUIRE(verify_certificate(*z12, good).ok);

    auto wrong_sum = good;
    wrong_sum.summands[1] = el(z12, "5");
    CHECK_FALSE(verify_certificate(*z12, wrong_sum).ok);

    auto wrong_witness = good;
    wrong_witness.witnesses[1] = ClassWitness::zero(1);
    CHECK_FALSE(verify_certificate(*z12, wrong_witness).ok);

    auto wrong_shape = good;
    wrong_shape.witnesses[0] = ClassWitness::one(2);
    CHECK_FALSE(verify_certificate(*z12, wrong_shape).ok);

    auto m = ring("M2(Z2)");
    DecompositionCertificate noncommuting;
    noncommuting.target = el(m, "[[1,1],[1,1]]");
    noncommuting.summands = summands_of(m, {"[[0,1],[0,0]]", "[[1,0],[1,1]]"});
    noncommuting.classes = {ElementClass::nilpotent(), ElementClass::periodic()};
    noncommuting.witnesses = {ClassWitness::zero(2), witness_for(*m, noncommuting.summands[1], ElementClass::periodic())};
    CHECK(verify_certificate(*m, noncommuting).ok);
    noncommuting.commuting = true;
    CHECK_FALSE(verify_certificate(*m, noncommuting).ok);

    CHECK_THROWS_AS(witness_for(*z12, el(z12, "2"), ElementClass::torsion_unit()), Error);
}

TEST_CASE("serialize") {
    auto z12 = ring("Z12");
    CHECK(serialize(*z12, weak_split(*z12, el(z12, "2"))) == "2 = 8 + 6 [potent: x^3 = x^1; nilpotent: x^2 = 0] commuting");
}
