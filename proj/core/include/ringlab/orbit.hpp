#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ringlab/ideal.hpp"
#include "ringlab/ring.hpp"

namespace ringlab {

/// x^(index + period) = x^index with both values minimal.
struct OrbitWitness {
    std::uint64_t index = 1;
    std::uint64_t period = 1;

    friend bool operator==(const OrbitWitness&, const OrbitWitness&) = default;
};

/// x^high = x^low with high > low >= 1; not necessarily minimal.
struct PowerRelation {
    std::uint64_t high = 2;
    std::uint64_t low = 1;

    static PowerRelation from(const OrbitWitness& w) { return {w.index + w.period, w.index}; }
    friend bool operator==(const PowerRelation&, const PowerRelation&) = default;
};

enum class ClassTag { Periodic, Potent, PotentAny, Nilpotent, Idempotent, TorsionUnit, Involution };

/// Summand class used by decompositions. Potent carries its exponent q >= 2.
struct ElementClass {
    ClassTag tag = ClassTag::Periodic;
    std::uint64_t q = 0;

    static ElementClass periodic() { return {ClassTag::Periodic, 0}; }
    static ElementClass potent(std::uint64_t q) { return {ClassTag::Potent, q}; }
    static ElementClass potent_any() { return {ClassTag::PotentAny, 0}; }
    static ElementClass nilpotent() { return {ClassTag::Nilpotent, 0}; }
    static ElementClass idempotent() { return {ClassTag::Idempotent, 0}; }
    static ElementClass torsion_unit() { return {ClassTag::TorsionUnit, 0}; }
    static ElementClass involution() { return {ClassTag::Involution, 0}; }

    /// Accepts periodic, potent, potent:Q, nilpotent, idempotent, torsion-unit (or unit), involution.
    static ElementClass parse(const std::string& text);

    friend bool operator==(const ElementClass&, const ElementClass&) = default;
};

std::string to_string(const ElementClass& c);

struct ClassRecord {
    OrbitWitness orbit;
    /// Least q >= 2 with x^q = x.
    std::optional<std::uint64_t> potent_exponent;
    /// Least k with x^k = 0.
    std::optional<std::uint64_t> nilpotency_index;
    /// Multiplicative order when x is a unit.
    std::optional<std::uint64_t> unit_order;
    bool idempotent = false;
    bool involution = false;
};

struct OrbitOptions {
    /// Above this many stored powers the search switches to constant-memory cycle finding.
    std::size_t table_limit = 1'000'000;
};

/// Finite rings use power iteration; the integers and Z_n[t] use the decision procedures below.
/// Throws NotPeriodic for symbolic elements with an infinite power orbit.
OrbitWitness orbit_witness(const Ring& ring, const Element& x, const OrbitOptions& options = {});

/// Orbit witnesses of every element of an enumerable finite ring, indexed by id; memoized per ring.
const std::vector<OrbitWitness>& orbit_table(const FiniteRing& ring);

ClassRecord classify(const Ring& ring, const Element& x);

/// Membership test for one class.
bool is_member(const Ring& ring, const Element& x, const ElementClass& c);

/// Least multiple of the period that is at least the index.
std::uint64_t idempotent_exponent(const OrbitWitness& w);

/// e = x^r with r = idempotent_exponent(orbit of x).
Element idempotent_from(const Ring& ring, const Element& x);

/// For x^k = x^l and y^m = y^n returns (s + t, t) with s = (k - l)(m - n) and t = max(l, n).
PowerRelation combine_product_witness(const PowerRelation& x, const PowerRelation& y);

/// Smallest (index, period) compatible with a verified relation: the least period dividing high - low, then the
/// least index, found by bisection on the monotone predicate x^(i+d) = x^i.
OrbitWitness normalize(const Ring& ring, const Element& x, const PowerRelation& relation);

/// One prime-power component of a Frobenius lift.
struct LiftStep {
    std::uint64_t prime_power = 0;
    std::uint64_t prime = 0;
    /// Nilpotency exponent of e(a^m - a^n) for the component idempotent e.
    std::uint64_t nil_exponent = 0;
    std::uint64_t l = 0;
    PowerRelation relation;
};

struct LiftResult {
    /// a^high = a^low in R, verified by direct powers.
    PowerRelation relation;
    OrbitWitness witness;
    std::vector<LiftStep> steps;
};

/// Lifts a relation a^m = a^n that holds modulo the nil ideal I to one that holds in R. Composite characteristic
/// is split into prime-power components first. Throws NotNilIdeal, WitnessInvalid, CharZero.
LiftResult frobenius_lift(const RingPtr& ring, const IdealHandle& ideal, const Element& a, const PowerRelation& w);

/// Offending coefficient of a polynomial that is not periodic.
struct PolyObstruction {
    std::size_t degree = 0;
    std::int64_t coefficient = 0;
    /// Least prime p dividing n with p not dividing the coefficient; f mod p keeps degree >= 1.
    std::int64_t prime = 0;
    std::size_t residue_degree = 0;
};

struct PolyDecision {
    bool periodic = false;
    std::optional<OrbitWitness> witness;
    std::optional<PolyObstruction> obstruction;
};

/// Z_n[t]: f is periodic iff every non-constant coefficient is nilpotent mod n.
PolyDecision poly_periodicity(const Ring& poly_ring, const Element& f);

struct IntegerDecision {
    bool periodic = false;
    std::optional<OrbitWitness> witness;
    /// Set when |a| >= 2: |a^k| strictly increases.
    std::string obstruction;
};

IntegerDecision integer_periodicity(const BigInt& a);

/// rad(n) divides c.
bool nilpotent_mod(std::int64_t c, std::int64_t n);

}  // namespace ringlab
