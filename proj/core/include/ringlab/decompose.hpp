#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ringlab/orbit.hpp"
#include "ringlab/ring.hpp"

namespace ringlab {

/// Evidence for one class membership: x^high = x^low, x^high = 0, or x^high = 1.
struct ClassWitness {
    enum class Form { Relation, Zero, One };

    Form form = Form::Relation;
    std::uint64_t high = 2;
    std::uint64_t low = 1;

    static ClassWitness relation(std::uint64_t high, std::uint64_t low) { return {Form::Relation, high, low}; }
    static ClassWitness zero(std::uint64_t k) { return {Form::Zero, k, 0}; }
    static ClassWitness one(std::uint64_t k) { return {Form::One, k, 0}; }

    friend bool operator==(const ClassWitness&, const ClassWitness&) = default;
};

std::string to_string(const ClassWitness& w);

/// Evidence that x belongs to c; throws WitnessInvalid when it does not.
ClassWitness witness_for(const Ring& ring, const Element& x, const ElementClass& c);

struct DecompositionCertificate {
    Element target;
    std::vector<Element> summands;
    std::vector<ElementClass> classes;
    std::vector<ClassWitness> witnesses;
    /// Every pair of summands commutes.
    bool commuting = false;
};

/// Canonical single-line form: "target = s1 + s2 [class1: witness1; class2: witness2] commuting".
std::string serialize(const Ring& ring, const DecompositionCertificate& cert);

struct VerifyOutcome {
    bool ok = true;
    std::string reason;
};

/// Re-checks a certificate from scratch: sum, per-summand witness equations and class shapes, pairwise
/// commuting when flagged.
VerifyOutcome verify_certificate(const Ring& ring, const DecompositionCertificate& cert);

/// x = a + b with a = x e potent, b = x (1 - e) nilpotent, e = idempotent_from(x).
DecompositionCertificate weak_split(const Ring& ring, const Element& x);

/// Lexicographically least (in enumeration order) x = s1 + ... + sk with s_j in classes[j], k <= 4.
/// Finite rings and the integers only; std::nullopt means no decomposition exists.
std::optional<DecompositionCertificate> sum_search(const Ring& ring, const Element& x,
                                                   const std::vector<ElementClass>& classes, bool commuting = false);

/// Sorted ids of the members of a class in an enumerable finite ring; memoized per ring.
const std::vector<ElemId>& class_members(const FiniteRing& ring, const ElementClass& c);

struct RankResult {
    /// Least k with x a sum of k class members, when k <= cap.
    std::optional<std::uint64_t> rank;
    std::uint64_t cap = 0;
    std::optional<DecompositionCertificate> certificate;
};

/// Sumset layering L1 = S, L(j+1) = L(j) + S. Exhaustive for finite rings and the integers; for Z_n[t] only the
/// periodic class is supported (rank 1 or never).
RankResult additive_rank(const Ring& ring, const Element& x, const ElementClass& c, std::uint64_t cap = 4);

/// Sumset layers of a class in an enumerable finite ring, computed until the sequence of layers repeats.
struct SumsetLayers {
    std::vector<std::vector<bool>> layers;
    /// Index of the first layer equal to the final computed successor; later layers cycle from there.
    std::size_t cycle_start = 0;
};

const SumsetLayers& sumset_layers(const FiniteRing& ring, const ElementClass& c);

/// Strictly upper, strictly lower and diagonal parts of a full or triangular matrix; the diagonal part gets a
/// witness assembled from the entry witnesses with combine_product_witness. Zero parts are dropped.
DecompositionCertificate matrix_split(const Ring& ring, const Element& m);

enum class TorsionSumStatus { Ok, NoFrobeniusFixpoint, NonUnitSum, NotTorsionUnits, NotPrimeChar };

std::string to_string(TorsionSumStatus s);

struct TorsionSumResult {
    TorsionSumStatus status = TorsionSumStatus::Ok;
    std::uint64_t prime = 0;
    /// c = a^-1 b.
    std::optional<Element> c;
    std::optional<std::uint64_t> c_order;
    std::uint64_t m_cap = 0;
    /// Least m <= m_cap with c^(p^m) = c.
    std::optional<std::uint64_t> m;
    std::optional<Element> one_plus_c;
    bool one_plus_c_unit = false;
    bool one_plus_c_nilpotent = false;
    /// (1 + c)^(p^m) = 1 + c, checked when m exists.
    bool frobenius_identity = false;
    /// Multiplicative order of a + b = a (1 + c) when the construction succeeds.
    std::optional<std::uint64_t> order;
};

/// The constructive step for a sum of two torsion units in prime characteristic. Statuses report where the
/// construction stops; diagnostics are filled in as far as they make sense.
TorsionSumResult torsion_sum_witness(const Ring& ring, const Element& a, const Element& b,
                                     std::optional<std::uint64_t> m_cap = std::nullopt);

struct PolyAdditiveDecision {
    bool decomposable = false;
    std::optional<std::uint64_t> rank;
    std::optional<OrbitWitness> witness;
    std::optional<PolyObstruction> obstruction;
};

/// f in Z_n[t] is a finite sum of periodic elements iff it is periodic itself (the periodic elements are the
/// constants plus nilpotent tails, a set closed under addition).
PolyAdditiveDecision poly_additive_decision(const Ring& poly_ring, const Element& f);

}  // namespace ringlab
