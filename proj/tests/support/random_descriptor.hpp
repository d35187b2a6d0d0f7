#pragma once

#include <random>

#include "ringlab/descriptor.hpp"

namespace test_support {

/// Random valid descriptor of nesting depth at most `depth`; symbolic rings only at the top.
inline ringlab::RingDescriptor random_descriptor(std::mt19937& rng, int depth, bool top = true) {
    using ringlab::GroupSpec;
    using ringlab::RingDescriptor;
    auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };
    int leaf_kinds = top ? 5 : 3;
    int kind = depth <= 1 ? pick(leaf_kinds) : pick(leaf_kinds + 4);
    if (!top && kind >= 3) kind += 2;
    auto modulus = [&] { return static_cast<std::int64_t>(2 + pick(30)); };
    switch (kind) {
        case 0: return RingDescriptor::zn(modulus());
        case 1: {
            std::int64_t n = modulus();
            std::vector<std::int64_t> f(static_cast<std::size_t>(2 + pick(3)));
            for (auto& c : f) c = pick(static_cast<int>(n));
            f.back() = 1;
            return RingDescriptor::poly_quotient(n, f);
        }
        case 2: {
            const std::int64_t primes[] = {2, 3, 5, 7};
            std::int64_t p = primes[pick(4)];
            std::vector<std::int64_t> f(static_cast<std::size_t>(2 + pick(2)), 0);
            f[0] = pick(static_cast<int>(p));
            f.back() = 1;
            return RingDescriptor::poly_quotient(p, f);
        }
        case 3: return RingDescriptor::integers();
        case 4: return RingDescriptor::poly(modulus());
        default: break;
    }
    int inner_kind = kind - 5;
    RingDescriptor inner = random_descriptor(rng, depth - 1, false);
    switch (inner_kind) {
        case 0: return RingDescriptor::product(std::move(inner), random_descriptor(rng, depth - 1, false));
        case 1: return RingDescriptor::matrix(1 + pick(4), std::move(inner));
        case 2: return RingDescriptor::triangular(1 + pick(4), std::move(inner));
        default: {
            GroupSpec g;
            switch (pick(5)) {
                case 0: g = GroupSpec::cyclic(1 + pick(8)); break;
                case 1: g = GroupSpec::cyclic_product(1 + pick(4), 1 + pick(4)); break;
                case 2: g = GroupSpec::s3(); break;
                case 3: g = GroupSpec::d4(); break;
                default: g = GroupSpec::q8(); break;
            }
            return RingDescriptor::group_ring(std::move(inner), std::move(g));
        }
    }
}

}  // namespace test_support
