#include "ringlab/construct.hpp"

#include <fmt/format.h>

#include <algorithm>

#include "ringlab/dsl.hpp"
#include "ringlab/error.hpp"
#include "rings_impl.hpp"

namespace ringlab {

namespace {

constexpr std::int64_t kMaxModulus = std::int64_t{1} << 62;

void validate_node(const RingDescriptor& d, bool top_level) {
    std::visit(
        [top_level](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, desc::Zn>) {
                if (node.n < 2 || node.n > kMaxModulus) {
                    fail(ErrorCode::InvalidDescriptor, fmt::format("Z{} needs 2 <= n <= 2^62", node.n));
                }
            } else if constexpr (std::is_same_v<T, desc::Integers> || std::is_same_v<T, desc::Poly>) {
                if constexpr (std::is_same_v<T, desc::Poly>) {
                    if (node.n < 2 || node.n > kMaxModulus) {
                        fail(ErrorCode::InvalidDescriptor, fmt::format("POLY(Z{}) needs 2 <= n <= 2^62", node.n));
                    }
                }
                if (!top_level) {
                    fail(ErrorCode::InvalidDescriptor, "symbolic rings (ZZ, POLY) are only supported at the top level");
                }
            } else if constexpr (std::is_same_v<T, desc::Product>) {
                validate_node(*node.left, false);
                validate_node(*node.right, false);
            } else if constexpr (std::is_same_v<T, desc::Matrix> || std::is_same_v<T, desc::Triangular>) {
                if (node.size < 1 || node.size > 4) {
                    fail(ErrorCode::InvalidDescriptor, fmt::format("matrix size {} outside 1..4", node.size));
                }
                validate_node(*node.inner, false);
            } else if constexpr (std::is_same_v<T, desc::GroupRing>) {
                validate_node(*node.inner, false);
                const GroupSpec& g = node.group;
                if (g.kind == GroupSpec::Kind::Custom ? g.custom == nullptr : (g.n < 1 || g.m < 1)) {
                    fail(ErrorCode::InvalidDescriptor, "invalid group parameters");
                }
                if ((g.kind == GroupSpec::Kind::Cyclic || g.kind == GroupSpec::Kind::CyclicProduct) &&
                    static_cast<std::int64_t>(g.n) * g.m > 4096) {
                    fail(ErrorCode::InvalidDescriptor, "cyclic group order above 4096");
                }
            } else if constexpr (std::is_same_v<T, desc::PolyQuotient>) {
                if (node.n < 2 || node.n > kMaxModulus) {
                    fail(ErrorCode::InvalidDescriptor, fmt::format("Q(Z{}, ...) needs 2 <= n <= 2^62", node.n));
                }
                if (node.modulus.size() < 2) {
                    fail(ErrorCode::InvalidDescriptor, "polynomial modulus must have degree >= 1");
                }
                for (std::int64_t c : node.modulus) {
                    if (c < 0 || c >= node.n) {
                        fail(ErrorCode::InvalidDescriptor, "polynomial modulus coefficients must be reduced mod n");
                    }
                }
                if (node.modulus.back() != 1) fail(ErrorCode::InvalidDescriptor, "polynomial modulus must be monic");
            }
        },
        d.node());
}

// Polynomials over Z_p, low-to-high, trimmed.
using Poly = std::vector<std::int64_t>;

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t p) {
    // p is prime.
    std::int64_t result = 1, base = detail::mod_reduce(a, p), e = p - 2;
    while (e > 0) {
        if (e & 1) result = detail::mul_mod(result, base, p);
        base = detail::mul_mod(base, base, p);
        e >>= 1;
    }
    return result;
}

Poly poly_mod(Poly a, const Poly& f, std::int64_t p) {
    trim(a);
    std::int64_t lead_inv = inverse_mod(f.back(), p);
    while (a.size() >= f.size()) {
        std::int64_t c = detail::mul_mod(a.back(), lead_inv, p);
        std::size_t shift = a.size() - f.size();
        for (std::size_t k = 0; k < f.size(); ++k) {
            a[shift + k] = detail::mod_reduce(a[shift + k] - detail::mul_mod(c, f[k], p), p);
        }
        trim(a);
    }
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::int64_t p) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            c[i + j] = (c[i + j] + detail::mul_mod(a[i], b[j], p)) % p;
        }
    }
    return poly_mod(std::move(c), f, p);
}

Poly poly_powmod(Poly base, std::int64_t e, const Poly& f, std::int64_t p) {
    Poly result{1};
    base = poly_mod(std::move(base), f, p);
    while (e > 0) {
        if (e & 1) result = poly_mulmod(result, base, f, p);
        base = poly_mulmod(base, base, f, p);
        e >>= 1;
    }
    return result;
}

Poly poly_gcd(Poly a, Poly b, std::int64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// t^(p^j) mod f.
Poly frobenius_power(int j, const Poly& f, std::int64_t p) {
    Poly x{0, 1};
    for (int i = 0; i < j; ++i) x = poly_powmod(x, p, f, p);
    return x;
}

Poly minus_t(Poly a, std::int64_t p) {
    if (a.size() < 2) a.resize(2, 0);
    a[1] = detail::mod_reduce(a[1] - 1, p);
    trim(a);
    return a;
}

// Rabin's test.
bool irreducible(const Poly& f, std::int64_t p) {
    int k = static_cast<int>(f.size()) - 1;
    if (!minus_t(frobenius_power(k, f, p), p).empty()) return false;
    for (int q = 2; q <= k; ++q) {
        if (k % q != 0 || !is_prime(q)) continue;
        Poly g = poly_gcd(f, minus_t(frobenius_power(k / q, f, p), p), p);
        if (g.size() != 1) return false;
    }
    return true;
}

}  // namespace

bool RingDescriptor::finite() const {
    return std::visit(
        [](const auto& node) -> bool {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, desc::Integers> || std::is_same_v<T, desc::Poly>) {
                return false;
            } else if constexpr (std::is_same_v<T, desc::Product>) {
                return node.left->finite() && node.right->finite();
            } else if constexpr (std::is_same_v<T, desc::Matrix> || std::is_same_v<T, desc::Triangular> ||
                                 std::is_same_v<T, desc::GroupRing>) {
                return node.inner->finite();
            } else {
                return true;
            }
        },
        node_);
}

DescriptorBox::DescriptorBox(RingDescriptor d) : ptr_(std::make_shared<const RingDescriptor>(std::move(d))) {}

bool operator==(const DescriptorBox& a, const DescriptorBox& b) { return a.ptr_ == b.ptr_ || *a.ptr_ == *b.ptr_; }

void validate(const RingDescriptor& d) { validate_node(d, true); }

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    std::int64_t d = n - 1;
    int r = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++r;
    }
    for (std::int64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::int64_t x = 1, base = a % n, e = d;
        while (e > 0) {
            if (e & 1) x = detail::mul_mod(x, base, n);
            base = detail::mul_mod(base, base, n);
            e >>= 1;
        }
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < r && composite; ++i) {
            x = detail::mul_mod(x, x, n);
            if (x == n - 1) composite = false;
        }
        if (composite) return false;
    }
    return true;
}

std::vector<std::int64_t> least_irreducible(std::int64_t p, int k) {
    if (!is_prime(p)) fail(ErrorCode::InvalidDescriptor, fmt::format("GF base {} is not prime", p));
    if (k < 1) fail(ErrorCode::InvalidDescriptor, "GF exponent must be at least 1");
    if (k == 1) return {0, 1};
    // Lexicographic order on (c0, ..., c_{k-1}); every candidate with c0 = 0 is divisible by t.
    Poly digits(static_cast<std::size_t>(k), 0);
    digits[0] = 1;
    while (true) {
        Poly f = digits;
        f.push_back(1);
        if (irreducible(f, p)) return f;
        std::size_t pos = digits.size();
        while (pos-- > 0) {
            if (++digits[pos] < p) break;
            digits[pos] = 0;
            if (pos == 0) fail(ErrorCode::InvalidDescriptor, "no irreducible polynomial found");
        }
    }
}

std::vector<std::int64_t> coordinate_moduli(const RingDescriptor& d) { return detail::make_arith(d)->moduli(); }

RingPtr construct(const RingDescriptor& d, std::uint64_t cap) {
    validate(d);
    if (d.get<desc::Integers>()) return std::make_shared<const detail::IntegerRing>();
    if (const auto* poly = d.get<desc::Poly>()) {
        return std::make_shared<const detail::PolynomialRing>(poly->n, print(d), d);
    }
    return std::make_shared<const detail::CoordRing>(print(d), d, detail::make_arith(d), cap);
}

Element augment(const Ring& group_ring, const Ring& coefficient_ring, const Element& x) {
    const auto* gr = group_ring.descriptor() ? group_ring.descriptor()->get<desc::GroupRing>() : nullptr;
    if (gr == nullptr) fail(ErrorCode::Unsupported, fmt::format("{} is not a group ring", group_ring.name()));
    std::size_t w = coefficient_ring.zero().coords().size();
    Element sum = coefficient_ring.zero();
    const Coords& c = x.coords();
    for (std::size_t g = 0; g * w < c.size(); ++g) {
        Coords block(c.begin() + static_cast<std::ptrdiff_t>(g * w), c.begin() + static_cast<std::ptrdiff_t>((g + 1) * w));
        sum = coefficient_ring.add(sum, Element(coefficient_ring.id(), std::move(block)));
    }
    return sum;
}

Element Augmentation::apply(const Ring& group_ring, const Element& x) const {
    return augment(group_ring, *coefficient_ring, x);
}

Augmentation augmentation(const RingPtr& group_ring) {
    const auto* gr = group_ring->descriptor() ? group_ring->descriptor()->get<desc::GroupRing>() : nullptr;
    if (gr == nullptr) fail(ErrorCode::Unsupported, fmt::format("{} is not a group ring", group_ring->name()));
    const FiniteRing& rg = group_ring->finite();
    rg.require_enumerable();
    RingPtr inner = construct(*gr->inner, rg.cap());
    const FiniteRing& r = inner->finite();
    std::vector<ElemId> map(static_cast<std::size_t>(rg.size()));
    std::vector<ElemId> kernel;
    for (ElemId x = 0; x < rg.size(); ++x) {
        map[x] = r.id_of(augment(rg, r, rg.element(x)));
        if (map[x] == 0) kernel.push_back(x);
    }
    // g - e for every non-identity g generates the kernel as an ideal.
    std::vector<ElemId> generators;
    auto table = gr->group.table();
    Element one_inner = r.one();
    std::size_t w = one_inner.coords().size();
    for (int g = 1; g < table->order(); ++g) {
        Coords c(rg.zero().coords().size(), 0);
        Element minus_one = r.neg(one_inner);
        std::copy(one_inner.coords().begin(), one_inner.coords().end(), c.begin() + static_cast<std::ptrdiff_t>(g * w));
        std::copy(minus_one.coords().begin(), minus_one.coords().end(), c.begin());
        generators.push_back(rg.id_of(Element(rg.id(), std::move(c))));
    }
    if (!is_ideal(rg, kernel)) fail(ErrorCode::NotAnIdeal, "augmentation kernel failed ideal verification");
    return Augmentation{inner, std::move(map), IdealHandle(group_ring, std::move(kernel), std::move(generators))};
}

}  // namespace ringlab
