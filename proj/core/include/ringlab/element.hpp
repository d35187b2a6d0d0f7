#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <variant>
#include <vector>

namespace ringlab {

using BigInt = boost::multiprecision::cpp_int;
using RingId = std::uint64_t;
/// Position of an element in the canonical enumeration of a finite ring (0 is the zero element).
using ElemId = std::uint32_t;
using Coords = std::vector<std::int64_t>;

/// Canonical coordinates of a ring element, tagged with the ring it belongs to. Finite rings and Z_n[t]
/// store reduced integer coordinates; the integers store one arbitrary-precision value.
class Element {
public:
    Element() = default;
    Element(RingId owner, Coords coords) : owner_(owner), value_(std::move(coords)) {}
    Element(RingId owner, BigInt value) : owner_(owner), value_(std::move(value)) {}

    RingId owner() const { return owner_; }
    bool is_integer() const { return std::holds_alternative<BigInt>(value_); }
    const Coords& coords() const { return std::get<Coords>(value_); }
    const BigInt& integer() const { return std::get<BigInt>(value_); }

    friend bool operator==(const Element& a, const Element& b) = default;

    /// Lexicographic on coordinates; the integers order by value.
    friend bool operator<(const Element& a, const Element& b) {
        if (a.owner_ != b.owner_) return a.owner_ < b.owner_;
        return a.value_ < b.value_;
    }

private:
    RingId owner_ = 0;
    std::variant<Coords, BigInt> value_;
};

}  // namespace ringlab
