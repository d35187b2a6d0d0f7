#include "ringlab/census.hpp"

#include <fmt/format.h>

#include <set>

#include "ringlab/error.hpp"
#include "ringlab/numeric.hpp"
#include "ringlab/orbit.hpp"
#include "rings_impl.hpp"

namespace ringlab {

namespace {

void note(ClassSet& set, ElemId x, std::size_t retain) {
    ++set.count;
    if (set.members.size() < retain) {
        set.members.push_back(x);
    } else {
        set.truncated = true;
    }
}

}  // namespace

Census census(const FiniteRing& ring, std::size_t retain) {
    const auto& orbits = orbit_table(ring);
    ElemId one = ring.one_id();
    Census c;
    c.size = ring.size();
    for (ElemId x = 0; x < ring.size(); ++x) {
        const OrbitWitness& w = orbits[x];
        note(c.periodic, x, retain);
        if (w.index == 1) note(c.potents, x, retain);
        if (w.index == 1 && w.period == 1) note(c.idempotents, x, retain);
        if (w.period == 1 && ring.pow(x, w.index) == 0) note(c.nilpotents, x, retain);
        if (w.index == 1 && ring.pow(x, w.period) == one) {
            ElemId inverse = ring.pow(x, w.period - 1);
            if (ring.mul(x, inverse) != one || ring.mul(inverse, x) != one) {
                fail(ErrorCode::WitnessInvalid, "unit inverse check failed");
            }
            note(c.units, x, retain);
            note(c.torsion_units, x, retain);
        }
    }
    return c;
}

std::vector<ElemId> unit_ids(const FiniteRing& ring) {
    auto ids = ring.memo<std::vector<ElemId>>("unit-ids", [&ring] {
        const auto& orbits = orbit_table(ring);
        ElemId one = ring.one_id();
        std::vector<ElemId> out;
        for (ElemId x = 0; x < ring.size(); ++x) {
            if (orbits[x].index == 1 && ring.pow(x, orbits[x].period) == one) out.push_back(x);
        }
        return out;
    });
    return *ids;
}

bool is_central(const FiniteRing& ring, ElemId x) {
    for (ElemId b : ring.additive_generators()) {
        if (!ring.commute(x, b)) return false;
    }
    return true;
}

std::vector<ElemId> center(const FiniteRing& ring) {
    ring.require_enumerable();
    std::vector<ElemId> out;
    for (ElemId x = 0; x < ring.size(); ++x) {
        if (is_central(ring, x)) out.push_back(x);
    }
    return out;
}

bool is_field(const FiniteRing& ring) {
    ring.require_enumerable();
    return ring.is_commutative() && unit_ids(ring).size() + 1 == ring.size();
}

std::vector<CrtComponent> crt_split(const Ring& ring) {
    std::uint64_t n = ring.characteristic();
    if (n == 0) fail(ErrorCode::CharZero, fmt::format("{} has characteristic 0", ring.name()));
    auto nn = static_cast<std::int64_t>(n);
    std::vector<CrtComponent> out;
    for (auto [p, e] : factorize(nn)) {
        std::int64_t q = 1;
        for (int k = 0; k < e; ++k) q *= p;
        std::int64_t cofactor = nn / q;
        std::int64_t k = detail::mul_mod(cofactor, inverse_mod(cofactor, q), nn);
        out.push_back({p, e, q, ring.from_integer(k)});
    }
    return out;
}

std::uint64_t component_size(const FiniteRing& ring, const Element& e) {
    ring.require_enumerable();
    ElemId eid = ring.id_of(e);
    std::set<ElemId> image;
    for (ElemId x = 0; x < ring.size(); ++x) image.insert(ring.mul(x, eid));
    return image.size();
}

}  // namespace ringlab
