#include "ringlab/orbit.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <map>
#include <unordered_map>

#include "ringlab/census.hpp"
#include "ringlab/error.hpp"
#include "ringlab/numeric.hpp"

namespace ringlab {

namespace {

// Constant-memory cycle finding on the power sequence x, x^2, x^3, ...
template <class T, class Mul>
OrbitWitness brent(const T& x, Mul mul) {
    std::uint64_t power = 1, lambda = 1;
    T tortoise = x;
    T hare = mul(x, x);
    while (!(tortoise == hare)) {
        if (power == lambda) {
            tortoise = hare;
            power *= 2;
            lambda = 0;
        }
        hare = mul(hare, x);
        ++lambda;
    }
    tortoise = x;
    hare = x;
    for (std::uint64_t k = 0; k < lambda; ++k) hare = mul(hare, x);
    std::uint64_t mu = 0;
    while (!(tortoise == hare)) {
        tortoise = mul(tortoise, x);
        hare = mul(hare, x);
        ++mu;
    }
    return {mu + 1, lambda};
}

template <class Map, class T, class Mul>
OrbitWitness first_occurrence(const T& x, Mul mul, std::size_t limit) {
    Map first;
    T p = x;
    for (std::uint64_t k = 1;; ++k) {
        auto [it, inserted] = first.emplace(p, k);
        if (!inserted) return {it->second, k - it->second};
        if (first.size() > limit) return brent(x, mul);
        p = mul(p, x);
    }
}

OrbitWitness finite_orbit(const FiniteRing& ring, const Element& x, const OrbitOptions& options) {
    if (ring.enumerable()) {
        ElemId id = ring.id_of(x);
        return first_occurrence<std::unordered_map<ElemId, std::uint64_t>>(
            id, [&](ElemId a, ElemId b) { return ring.mul(a, b); }, options.table_limit);
    }
    return first_occurrence<std::map<Element, std::uint64_t>>(
        x, [&](const Element& a, const Element& b) { return ring.mul(a, b); }, options.table_limit);
}

std::optional<OrbitWitness> try_orbit(const Ring& ring, const Element& x) {
    try {
        return orbit_witness(ring, x);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::NotPeriodic) return std::nullopt;
        throw;
    }
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    if (b != 0 && a > UINT64_MAX / b) fail(ErrorCode::Unsupported, "exponent overflow");
    return a * b;
}

std::uint64_t ipow(std::uint64_t p, std::uint64_t l) {
    std::uint64_t r = 1;
    for (std::uint64_t k = 0; k < l; ++k) r = checked_mul(r, p);
    return r;
}

// Least s >= 1 with u^s = 0.
std::uint64_t nil_exponent(const FiniteRing& ring, const Element& u) {
    Element p = u;
    for (std::uint64_t s = 1; s <= ring.size(); ++s) {
        if (ring.is_zero(p)) return s;
        p = ring.mul(p, u);
    }
    fail(ErrorCode::NotNilIdeal, "element of the ideal is not nilpotent");
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out{1};
    for (auto [p, e] : factorize(static_cast<std::int64_t>(n))) {
        std::size_t base = out.size();
        std::uint64_t pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= static_cast<std::uint64_t>(p);
            for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

ElementClass ElementClass::parse(const std::string& text) {
    if (text == "periodic") return periodic();
    if (text == "potent") return potent_any();
    if (text == "nilpotent") return nilpotent();
    if (text == "idempotent") return idempotent();
    if (text == "torsion-unit" || text == "unit") return torsion_unit();
    if (text == "involution") return involution();
    if (text.rfind("potent:", 0) == 0) {
        std::string digits = text.substr(7);
        if (!digits.empty() && digits.size() < 19 && std::all_of(digits.begin(), digits.end(), ::isdigit)) {
            std::uint64_t q = std::stoull(digits);
            if (q >= 2) return potent(q);
        }
    }
    fail(ErrorCode::SyntaxError, fmt::format("unknown element class '{}'", text));
}

std::string to_string(const ElementClass& c) {
    switch (c.tag) {
        case ClassTag::Periodic: return "periodic";
        case ClassTag::Potent: return fmt::format("potent:{}", c.q);
        case ClassTag::PotentAny: return "potent";
        case ClassTag::Nilpotent: return "nilpotent";
        case ClassTag::Idempotent: return "idempotent";
        case ClassTag::TorsionUnit: return "torsion-unit";
        case ClassTag::Involution: return "involution";
    }
    return "?";
}

OrbitWitness orbit_witness(const Ring& ring, const Element& x, const OrbitOptions& options) {
    switch (ring.kind()) {
        case Ring::Kind::Integers: {
            auto d = integer_periodicity(x.integer());
            if (!d.periodic) fail(ErrorCode::NotPeriodic, fmt::format("{} has an infinite power orbit", x.integer().str()));
            return *d.witness;
        }
        case Ring::Kind::Polynomial: {
            auto d = poly_periodicity(ring, x);
            if (!d.periodic) {
                fail(ErrorCode::NotPeriodic,
                     fmt::format("coefficient {} at degree {} is not nilpotent mod {}", d.obstruction->coefficient,
                                 d.obstruction->degree, ring.characteristic()));
            }
            return *d.witness;
        }
        case Ring::Kind::Finite: break;
    }
    return finite_orbit(ring.finite(), x, options);
}

const std::vector<OrbitWitness>& orbit_table(const FiniteRing& ring) {
    ring.require_enumerable();
    auto table = ring.memo<std::vector<OrbitWitness>>("orbit-table", [&ring] {
        auto n = static_cast<std::size_t>(ring.size());
        std::vector<OrbitWitness> out(n);
        std::vector<std::uint32_t> seen(n, 0);
        std::vector<ElemId> visited;
        for (ElemId x = 0; x < n; ++x) {
            ElemId p = x;
            std::uint32_t k = 1;
            while (seen[p] == 0) {
                seen[p] = k++;
                visited.push_back(p);
                p = ring.mul(p, x);
            }
            out[x] = {seen[p], k - seen[p]};
            for (ElemId v : visited) seen[v] = 0;
            visited.clear();
        }
        return out;
    });
    return *table;
}

ClassRecord classify(const Ring& ring, const Element& x) {
    ClassRecord r;
    r.orbit = orbit_witness(ring, x);
    Element one = ring.one();
    if (r.orbit.index == 1) r.potent_exponent = 1 + r.orbit.period;
    if (r.orbit.period == 1 && ring.is_zero(ring.pow(x, r.orbit.index))) r.nilpotency_index = r.orbit.index;
    if (r.orbit.index == 1 && ring.pow(x, r.orbit.period) == one) r.unit_order = r.orbit.period;
    r.idempotent = r.orbit.index == 1 && r.orbit.period == 1;
    r.involution = ring.mul(x, x) == one;
    return r;
}

bool is_member(const Ring& ring, const Element& x, const ElementClass& c) {
    switch (c.tag) {
        case ClassTag::Potent: return c.q >= 2 && ring.pow(x, c.q) == x;
        case ClassTag::Idempotent: return ring.mul(x, x) == x;
        case ClassTag::Involution: return ring.mul(x, x) == ring.one();
        default: break;
    }
    auto w = ring.is_finite() ? std::optional(orbit_witness(ring, x)) : try_orbit(ring, x);
    if (!w) return false;
    switch (c.tag) {
        case ClassTag::Periodic: return true;
        case ClassTag::PotentAny: return w->index == 1;
        case ClassTag::Nilpotent: return w->period == 1 && ring.is_zero(ring.pow(x, w->index));
        case ClassTag::TorsionUnit: return w->index == 1 && ring.pow(x, w->period) == ring.one();
        default: return false;
    }
}

std::uint64_t idempotent_exponent(const OrbitWitness& w) { return w.period * ((w.index + w.period - 1) / w.period); }

Element idempotent_from(const Ring& ring, const Element& x) {
    return ring.pow(x, idempotent_exponent(orbit_witness(ring, x)));
}

PowerRelation combine_product_witness(const PowerRelation& x, const PowerRelation& y) {
    std::uint64_t s = checked_mul(x.high - x.low, y.high - y.low);
    std::uint64_t t = std::max(x.low, y.low);
    return {s + t, t};
}

OrbitWitness normalize(const Ring& ring, const Element& x, const PowerRelation& relation) {
    if (relation.high <= relation.low || relation.low < 1 || ring.pow(x, relation.high) != ring.pow(x, relation.low)) {
        fail(ErrorCode::WitnessInvalid, fmt::format("x^{} = x^{} does not hold", relation.high, relation.low));
    }
    Element at_low = ring.pow(x, relation.low);
    std::uint64_t d = relation.high - relation.low;
    for (std::uint64_t candidate : divisors(relation.high - relation.low)) {
        if (ring.mul(at_low, ring.pow(x, candidate)) == at_low) {
            d = candidate;
            break;
        }
    }
    std::uint64_t lo = 1, hi = relation.low;
    while (lo < hi) {
        std::uint64_t mid = lo + (hi - lo) / 2;
        if (ring.pow(x, mid + d) == ring.pow(x, mid)) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return {lo, d};
}

LiftResult frobenius_lift(const RingPtr& ring_ptr, const IdealHandle& ideal, const Element& a, const PowerRelation& w) {
    const FiniteRing& ring = ring_ptr->finite();
    if (ideal.owner()->id() != ring.id()) fail(ErrorCode::OwnerMismatch, "ideal belongs to another ring");
    if (!ideal.nil()) fail(ErrorCode::NotNilIdeal, "ideal contains a non-nilpotent element");
    if (w.high <= w.low || w.low < 1) fail(ErrorCode::WitnessInvalid, "relation needs high > low >= 1");
    Element diff = ring.sub(ring.pow(a, w.high), ring.pow(a, w.low));
    if (!ideal.contains(ring.id_of(diff))) {
        fail(ErrorCode::WitnessInvalid, fmt::format("a^{} - a^{} is not in the ideal", w.high, w.low));
    }
    LiftResult result;
    if (ideal.size() == 1) {
        result.relation = w;
        result.witness = normalize(ring, a, w);
        return result;
    }

    std::vector<CrtComponent> components = crt_split(ring);
    for (const auto& comp : components) {
        Element ae = ring.mul(a, comp.idempotent);
        Element u = ring.mul(diff, comp.idempotent);
        LiftStep step;
        step.prime_power = static_cast<std::uint64_t>(comp.prime_power);
        step.prime = static_cast<std::uint64_t>(comp.prime);
        step.nil_exponent = nil_exponent(ring, u);
        std::uint64_t l0 = 0;
        while (ipow(step.prime, l0) < step.nil_exponent) ++l0;
        bool lifted = false;
        for (std::uint64_t l = l0; l < l0 + static_cast<std::uint64_t>(comp.exponent); ++l) {
            std::uint64_t q = ipow(step.prime, l);
            PowerRelation candidate{checked_mul(w.high, q), checked_mul(w.low, q)};
            if (ring.pow(ae, candidate.high) == ring.pow(ae, candidate.low)) {
                step.l = l;
                step.relation = candidate;
                lifted = true;
                break;
            }
        }
        if (!lifted) fail(ErrorCode::WitnessInvalid, fmt::format("no lift found in the {}-component", comp.prime_power));
        result.steps.push_back(step);
    }
    result.relation = result.steps.front().relation;
    for (std::size_t k = 1; k < result.steps.size(); ++k) {
        result.relation = combine_product_witness(result.relation, result.steps[k].relation);
    }
    result.witness = normalize(ring, a, result.relation);
    return result;
}

bool nilpotent_mod(std::int64_t c, std::int64_t n) {
    std::int64_t r = c % n;
    if (r < 0) r += n;
    return r % radical(n) == 0;
}

PolyDecision poly_periodicity(const Ring& poly_ring, const Element& f) {
    if (poly_ring.kind() != Ring::Kind::Polynomial) fail(ErrorCode::Unsupported, "not a polynomial ring");
    auto n = static_cast<std::int64_t>(poly_ring.characteristic());
    const Coords& c = f.coords();
    PolyDecision out;
    for (std::size_t deg = 1; deg < c.size(); ++deg) {
        if (nilpotent_mod(c[deg], n)) continue;
        PolyObstruction ob;
        ob.degree = deg;
        ob.coefficient = c[deg];
        for (auto [p, e] : factorize(n)) {
            if (c[deg] % p != 0) {
                ob.prime = p;
                break;
            }
        }
        for (std::size_t j = c.size(); j-- > 0;) {
            if (c[j] % ob.prime != 0) {
                ob.residue_degree = j;
                break;
            }
        }
        out.obstruction = ob;
        return out;
    }
    // Constant plus a nilpotent tail: the powers stay in a finite subring, so the first repeat arrives.
    constexpr std::uint64_t kLimit = 4'000'000;
    std::map<Coords, std::uint64_t> first;
    Element p = f;
    for (std::uint64_t k = 1; k <= kLimit; ++k) {
        auto [it, inserted] = first.emplace(p.coords(), k);
        if (!inserted) {
            out.periodic = true;
            out.witness = OrbitWitness{it->second, k - it->second};
            return out;
        }
        p = poly_ring.mul(p, f);
    }
    fail(ErrorCode::Unsupported, "power orbit longer than the iteration limit");
}

IntegerDecision integer_periodicity(const BigInt& a) {
    IntegerDecision out;
    if (a == 0 || a == 1) {
        out.periodic = true;
        out.witness = OrbitWitness{1, 1};
    } else if (a == -1) {
        out.periodic = true;
        out.witness = OrbitWitness{1, 2};
    } else {
        out.obstruction = fmt::format("|{}^k| strictly increases with k", a.str());
    }
    return out;
}

}  // namespace ringlab
