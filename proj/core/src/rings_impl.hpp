#pragma once

#include <memory>
#include <span>
#include <vector>

#include "ringlab/group.hpp"
#include "ringlab/ring.hpp"

namespace ringlab::detail {

inline std::int64_t mod_reduce(std::int64_t v, std::int64_t n) {
    std::int64_t r = v % n;
    return r < 0 ? r + n : r;
}

__extension__ using Int128 = __int128;

inline std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t n) {
    return static_cast<std::int64_t>((static_cast<Int128>(a) * b) % n);
}

/// Multiplication on coordinate vectors. Addition is componentwise modulo moduli() for every constructor.
class Arith {
public:
    virtual ~Arith() = default;

    std::size_t dim() const { return moduli_.size(); }
    const Coords& moduli() const { return moduli_; }

    void add(std::span<const std::int64_t> a, std::span<const std::int64_t> b, std::span<std::int64_t> out) const;
    void neg(std::span<const std::int64_t> a, std::span<std::int64_t> out) const;
    /// out must not alias a or b.
    virtual void mul(std::span<const std::int64_t> a, std::span<const std::int64_t> b,
                     std::span<std::int64_t> out) const = 0;
    virtual void one(std::span<std::int64_t> out) const = 0;

protected:
    Coords moduli_;
};

std::unique_ptr<Arith> make_arith(const RingDescriptor& d);

/// Finite ring over a coordinate arithmetic tree.
class CoordRing : public FiniteRing {
public:
    CoordRing(std::string name, RingDescriptor descriptor, std::unique_ptr<Arith> arith, std::uint64_t cap);

    const Arith& arith() const { return *arith_; }

    Element zero() const override;
    Element one() const override;
    Element add(const Element& a, const Element& b) const override;
    Element neg(const Element& a) const override;
    Element mul(const Element& a, const Element& b) const override;
    std::uint64_t additive_order(const Element& e) const override;
    std::vector<Element> additive_basis() const override;

    using FiniteRing::add;
    using FiniteRing::mul;
    using FiniteRing::neg;

protected:
    ElemId add_direct(ElemId a, ElemId b) const override;
    ElemId mul_direct(ElemId a, ElemId b) const override;
    ElemId neg_direct(ElemId a) const override;
    Element element_direct(ElemId id) const override;
    ElemId id_of_direct(const Element& e) const override;

private:
    void check(const Element& e) const;
    Coords decode(ElemId id) const;
    ElemId encode(std::span<const std::int64_t> c) const;

    std::unique_ptr<Arith> arith_;
    std::vector<std::uint64_t> strides_;
};

/// The integers, with arbitrary-precision elements.
class IntegerRing : public Ring {
public:
    IntegerRing();

    Kind kind() const override { return Kind::Integers; }
    std::uint64_t characteristic() const override { return 0; }
    bool is_commutative() const override { return true; }
    Element zero() const override;
    Element one() const override;
    Element add(const Element& a, const Element& b) const override;
    Element neg(const Element& a) const override;
    Element mul(const Element& a, const Element& b) const override;

    Element make(BigInt v) const { return Element(id(), std::move(v)); }
};

/// Z_n[t]; elements are coefficient lists low-to-high with no trailing zeros (zero is the empty list).
class PolynomialRing : public Ring {
public:
    PolynomialRing(std::int64_t n, std::string name, RingDescriptor descriptor);

    Kind kind() const override { return Kind::Polynomial; }
    std::uint64_t characteristic() const override { return static_cast<std::uint64_t>(n_); }
    bool is_commutative() const override { return true; }
    Element zero() const override;
    Element one() const override;
    Element add(const Element& a, const Element& b) const override;
    Element neg(const Element& a) const override;
    Element mul(const Element& a, const Element& b) const override;

    std::int64_t modulus() const { return n_; }
    /// Reduces and trims the coefficients.
    Element make(Coords coefficients) const;

private:
    std::int64_t n_;
};

}  // namespace ringlab::detail
