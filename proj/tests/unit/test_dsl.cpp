#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "ringlab/error.hpp"
#include "support/random_descriptor.hpp"

using namespace ringlab;
using oracle::el;
using oracle::ring;

namespace {

ErrorCode parse_code(const std::string& text) {
    try {
        parse_ring(text);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected a parse error for " << text);
    return ErrorCode::Unsupported;
}

}  // namespace

TEST_CASE("parse_ring examples") {
    CHECK(parse_ring("M2(Z4)") == RingDescriptor::matrix(2, RingDescriptor::zn(4)));
    CHECK(parse_ring("Z2[S3] x T2(Z4)") ==
          RingDescriptor::product(RingDescriptor::group_ring(RingDescriptor::zn(2), GroupSpec::s3()),
                                  RingDescriptor::triangular(2, RingDescriptor::zn(4))));
    CHECK(parse_code("M0(Z2)") == ErrorCode::SemanticError);
    CHECK(parse_code("  z2 [ s3 ]") == ErrorCode::SyntaxError);
    CHECK(parse_code("GF(4^2)") == ErrorCode::SemanticError);
    CHECK(parse_code("Z1") == ErrorCode::SemanticError);
    CHECK(parse_code("Z2 x") == ErrorCode::SyntaxError);
    CHECK(parse_code("Q(Z2, [1, 1, 2])") == ErrorCode::SemanticError);
    CHECK(parse_code("M2(ZZ)") == ErrorCode::SemanticError);
    CHECK(parse_ring("Z2 x Z3 x Z4") ==
          RingDescriptor::product(RingDescriptor::product(RingDescriptor::zn(2), RingDescriptor::zn(3)),
                                  RingDescriptor::zn(4)));
    CHECK(parse_ring("GF(2^2)") == RingDescriptor::poly_quotient(2, {1, 1, 1}));
    CHECK(parse_ring("Z3[C2xC2]") == RingDescriptor::group_ring(RingDescriptor::zn(3), GroupSpec::cyclic_product(2, 2)));
}

TEST_CASE("syntax errors carry positions inside the input") {
    for (const char* text : {"", "M2(", "Z2[", "Z2[C]", "GF(2^)", "Z2 x x", "POLY(Z)", "Q(Z2,[])", "((Z2)", "Z2)"}) {
        CAPTURE(text);
        try {
            parse_ring(text);
            FAIL("expected failure");
        } catch (const ParseError& e) {
            CHECK(e.code() == ErrorCode::SyntaxError);
            std::size_t len = std::string(text).size();
            CHECK(e.position() < std::max<std::size_t>(len, 1));
        }
    }
    try {
        parse_ring("M2(Z4) x T2(");
    } catch (const ParseError& e) {
        CHECK(e.position() == 11);
        CHECK(e.expected().find("ring") != std::string::npos);
    }
}

TEST_CASE("print canonical forms") {
    CHECK(print(RingDescriptor::matrix(2, RingDescriptor::zn(4))) == "M2(Z4)");
    CHECK(print(parse_ring("Z3xZ4")) == "Z3 x Z4");
    CHECK(print(parse_ring("Z2[S3]x M2( Z4 )")) == "Z2[S3] x M2(Z4)");
    CHECK(print(parse_ring("GF(3^2)")) == "GF(3^2)");
    CHECK(print(parse_ring("Q(Z3,[1,0,1])")) == "GF(3^2)");
    CHECK(print(parse_ring("Q(Z2,[0,0,1])")) == "Q(Z2, [0, 0, 1])");
    CHECK(print(parse_ring("Z2 x (Z3 x Z4)")) == "Z2 x (Z3 x Z4)");
    CHECK(print(parse_ring("(Z2 x Z3)[C2]")) == "(Z2 x Z3)[C2]");
    CHECK(print(parse_ring("(Z2[C2])[C3]")) == "(Z2[C2])[C3]");
    CHECK(print(parse_ring("POLY( Z4 )")) == "POLY(Z4)");
    CHECK(print(parse_ring("ZZ")) == "ZZ");
}

TEST_CASE("round trip on random descriptors") {
    std::mt19937 rng(99);
    for (int k = 0; k < 1000; ++k) {
        RingDescriptor d = test_support::random_descriptor(rng, 3);
        std::string text = print(d);
        CAPTURE(text);
        REQUIRE(parse_ring(text) == d);
        CHECK(print(parse_ring(text)) == text);
    }
}

TEST_CASE("no crash on arbitrary bytes") {
    std::mt19937 rng(5);
    const std::string alphabet = "ZMTQGFPOLYCSDxX0123456789()[],^ \t\n-";
    for (int k = 0; k < 3000; ++k) {
        std::size_t len = rng() % 64;
        if (k % 100 == 0) len = 4096;
        std::string s;
        for (std::size_t j = 0; j < len; ++j) {
            s.push_back(k % 2 == 0 ? alphabet[rng() % alphabet.size()] : static_cast<char>(rng() % 256));
        }
        try {
            parse_ring(s);
        } catch (const ParseError& e) {
            CHECK(e.position() < std::max<std::size_t>(s.size(), 1));
        } catch (const Error&) {
        }
    }
}

TEST_CASE("element literals") {
    auto z12 = ring("Z12");
    CHECK(el(z12, "14") == el(z12, "2"));
    CHECK(el(z12, "-1") == el(z12, "11"));
    CHECK(print(*z12, el(z12, "14")) == "2");

    auto t = ring("T2(Z4)");
    CHECK_NOTHROW(el(t, "[[1,2],[0,3]]"));
    try {
        el(t, "[[1,0],[2,3]]");
        FAIL("expected WrongShape");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::WrongShape);
    }
    try {
        el(t, "[[1,0]]");
        FAIL("expected WrongShape");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::WrongShape);
    }

    auto g = ring("Z2[S3]");
    Element x = el(g, "{e:1, r:1}");
    CHECK(print(*g, x) == "{e: 1, r: 1}");
    CHECK(print(*g, g->zero()) == "{}");
    try {
        el(g, "{q: 1}");
        FAIL("expected WrongShape");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::WrongShape);
    }

    auto q8 = ring("Z3[Q8]");
    CHECK(print(*q8, el(q8, "{-1: 2, k: 1}")) == "{-1: 2, k: 1}");

    auto p = ring("Z3 x M2(Z2)");
    CHECK(print(*p, el(p, "(4, [[1,0],[1,1]])")) == "(1, [[1, 0], [1, 1]])");

    auto gf = ring("GF(2^2)");
    // t^2 = t + 1.
    CHECK(el(gf, "[0, 0, 1]") == el(gf, "[1, 1]"));
    CHECK(print(*gf, gf->zero()) == "[0]");

    auto zz = ring("ZZ");
    CHECK(print(*zz, el(zz, "-123456789012345678901234567890")) == "-123456789012345678901234567890");

    auto poly = ring("POLY(Z4)");
    CHECK(print(*poly, el(poly, "[3, 6, 0, 4]")) == "[3, 2]");
    CHECK(print(*poly, el(poly, "[4]")) == "[0]");

    CHECK_THROWS_AS(el(z12, "1 2"), ParseError);
    CHECK_THROWS_AS(el(z12, "abc"), ParseError);
}

TEST_CASE("element literal round trip") {
    for (const char* spec : {"Z6", "M2(Z3)", "T3(Z2)", "Z2[D4]", "GF(3^2)", "Z3 x (Z2 x Z2)", "(Z2 x Z3)[C2]"}) {
        CAPTURE(spec);
        auto r = ring(spec);
        for (const auto& x : r->finite().elements()) {
            CHECK(el(r, print(*r, x)) == x);
        }
    }
}
