#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ringlab/descriptor.hpp"
#include "ringlab/ideal.hpp"
#include "ringlab/ring.hpp"

namespace ringlab {

/// Builds the ring a descriptor describes. Throws InvalidDescriptor.
RingPtr construct(const RingDescriptor& d, std::uint64_t cap = kDefaultEnumerationCap);

/// Coordinate layout of a finite ring built from a descriptor: the number of integer coordinates of one
/// element and the modulus of each.
std::vector<std::int64_t> coordinate_moduli(const RingDescriptor& d);

/// Least monic irreducible of degree k over Z_p, comparing coefficient lists low-to-high lexicographically.
/// Coefficients are returned low-to-high and include the leading 1.
std::vector<std::int64_t> least_irreducible(std::int64_t p, int k);

bool is_prime(std::int64_t n);

/// Coefficient-sum map of a group ring and its kernel.
struct Augmentation {
    RingPtr coefficient_ring;
    /// Indexed by group-ring element id; values are coefficient-ring ids.
    std::vector<ElemId> map;
    /// The augmentation ideal, verified to be an ideal.
    IdealHandle kernel;

    Element apply(const Ring& group_ring, const Element& x) const;
};

/// Requires a group-ring ring within the cap; throws Unsupported otherwise.
Augmentation augmentation(const RingPtr& group_ring);

/// Coefficient-sum of one group-ring element (works beyond the enumeration cap).
Element augment(const Ring& group_ring, const Ring& coefficient_ring, const Element& x);

}  // namespace ringlab
