#pragma once

#include <cstdint>
#include <vector>

#include "ringlab/ring.hpp"

namespace ringlab {

/// Count of one element class with its members, retained up to a limit.
struct ClassSet {
    std::uint64_t count = 0;
    std::vector<ElemId> members;
    bool truncated = false;
};

struct Census {
    std::uint64_t size = 0;
    ClassSet units;
    ClassSet torsion_units;
    ClassSet nilpotents;
    ClassSet idempotents;
    ClassSet potents;
    ClassSet periodic;
};

/// Exhaustive classification through the orbit table. Units are the elements with orbit index 1 whose period
/// power is 1; each is checked against its inverse x^(d-1) on both sides.
Census census(const FiniteRing& ring, std::size_t retain = 4096);

/// Ids of the units, ascending.
std::vector<ElemId> unit_ids(const FiniteRing& ring);

/// Elements commuting with the additive basis, hence with everything.
std::vector<ElemId> center(const FiniteRing& ring);

bool is_central(const FiniteRing& ring, ElemId x);

bool is_field(const FiniteRing& ring);

struct CrtComponent {
    std::int64_t prime = 0;
    int exponent = 0;
    std::int64_t prime_power = 0;
    /// Central idempotent k * 1 cutting out the component of characteristic prime_power.
    Element idempotent;
};

/// One component per prime power dividing the characteristic, primes ascending. e_i = (n / q_i) * u_i where
/// u_i inverts n / q_i modulo q_i. Throws CharZero.
std::vector<CrtComponent> crt_split(const Ring& ring);

/// |R e| for a central idempotent e.
std::uint64_t component_size(const FiniteRing& ring, const Element& e);

}  // namespace ringlab
