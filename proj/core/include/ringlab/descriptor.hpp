#pragma once

#include <cstdint>
#include <memory>
#include <type_traits>
#include <variant>
#include <vector>

#include "ringlab/group.hpp"

namespace ringlab {

class RingDescriptor;

/// Immutable shared child pointer with value equality.
class DescriptorBox {
public:
    explicit DescriptorBox(RingDescriptor d);

    const RingDescriptor& operator*() const { return *ptr_; }
    const RingDescriptor* operator->() const { return ptr_.get(); }

    friend bool operator==(const DescriptorBox& a, const DescriptorBox& b);

private:
    std::shared_ptr<const RingDescriptor> ptr_;
};

namespace desc {

struct Zn {
    std::int64_t n;
    friend bool operator==(const Zn&, const Zn&) = default;
};
struct Integers {
    friend bool operator==(const Integers&, const Integers&) = default;
};
struct Product {
    DescriptorBox left;
    DescriptorBox right;
    friend bool operator==(const Product&, const Product&) = default;
};
struct Matrix {
    int size;
    DescriptorBox inner;
    friend bool operator==(const Matrix&, const Matrix&) = default;
};
struct Triangular {
    int size;
    DescriptorBox inner;
    friend bool operator==(const Triangular&, const Triangular&) = default;
};
struct GroupRing {
    DescriptorBox inner;
    GroupSpec group;
    friend bool operator==(const GroupRing&, const GroupRing&) = default;
};
/// Z_n[t]/(f) with f monic, coefficients low-to-high.
struct PolyQuotient {
    std::int64_t n;
    std::vector<std::int64_t> modulus;
    friend bool operator==(const PolyQuotient&, const PolyQuotient&) = default;
};
/// The symbolic polynomial ring Z_n[t].
struct Poly {
    std::int64_t n;
    friend bool operator==(const Poly&, const Poly&) = default;
};

}  // namespace desc

/// How a ring is built from base rings and constructors.
class RingDescriptor {
public:
    using Node = std::variant<desc::Zn, desc::Integers, desc::Product, desc::Matrix, desc::Triangular,
                              desc::GroupRing, desc::PolyQuotient, desc::Poly>;

    template <class T>
        requires std::is_constructible_v<Node, T>
    RingDescriptor(T node) : node_(std::move(node)) {}

    static RingDescriptor zn(std::int64_t n) { return desc::Zn{n}; }
    static RingDescriptor integers() { return desc::Integers{}; }
    static RingDescriptor product(RingDescriptor a, RingDescriptor b) {
        return desc::Product{DescriptorBox(std::move(a)), DescriptorBox(std::move(b))};
    }
    static RingDescriptor matrix(int size, RingDescriptor inner) {
        return desc::Matrix{size, DescriptorBox(std::move(inner))};
    }
    static RingDescriptor triangular(int size, RingDescriptor inner) {
        return desc::Triangular{size, DescriptorBox(std::move(inner))};
    }
    static RingDescriptor group_ring(RingDescriptor inner, GroupSpec group) {
        return desc::GroupRing{DescriptorBox(std::move(inner)), std::move(group)};
    }
    static RingDescriptor poly_quotient(std::int64_t n, std::vector<std::int64_t> modulus) {
        return desc::PolyQuotient{n, std::move(modulus)};
    }
    static RingDescriptor poly(std::int64_t n) { return desc::Poly{n}; }

    const Node& node() const { return node_; }

    template <class T>
    const T* get() const {
        return std::get_if<T>(&node_);
    }

    /// Finite unless the tree contains Integers or Poly.
    bool finite() const;

    friend bool operator==(const RingDescriptor&, const RingDescriptor&) = default;

private:
    Node node_;
};

/// Throws InvalidDescriptor when a parameter is out of range (n >= 2, matrix size 1..4, monic modulus of
/// degree >= 1, symbolic rings only at the top level).
void validate(const RingDescriptor& d);

}  // namespace ringlab
