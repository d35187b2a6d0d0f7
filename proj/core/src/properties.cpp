#include "ringlab/properties.hpp"

#include <fmt/format.h>

#include <algorithm>

#include "ringlab/census.hpp"
#include "ringlab/decompose.hpp"
#include "ringlab/dsl.hpp"
#include "ringlab/error.hpp"
#include "ringlab/ideal.hpp"

namespace ringlab {

namespace {

Flag yes(std::string evidence) { return Flag{true, std::move(evidence), std::nullopt}; }

Flag no(const Ring& ring, const Element& x, const std::string& why) {
    return Flag{false, fmt::format("{}: {}", print(ring, x), why), x};
}

Element poly_t(const Ring& ring) { return parse_element(ring, "[0, 1]"); }

// Exhaustive product check below this many units; above it the finite-group argument stands alone.
constexpr std::size_t kTppPairLimit = 2048;

Flag finite_tpp(const FiniteRing& ring) {
    std::vector<ElemId> units = unit_ids(ring);
    if (units.size() > kTppPairLimit) {
        return yes(fmt::format("{} units form a finite group, so every unit is torsion", units.size()));
    }
    std::vector<char> in(static_cast<std::size_t>(ring.size()), 0);
    for (ElemId u : units) in[u] = 1;
    for (ElemId a : units) {
        for (ElemId b : units) {
            ElemId ab = ring.mul(a, b);
            if (!in[ab]) {
                return no(ring, ring.element(ab),
                          fmt::format("product of torsion units {} and {} is not one", print(ring, ring.element(a)),
                                      print(ring, ring.element(b))));
            }
        }
    }
    return yes(fmt::format("{} torsion units closed under products (checked {} pairs)", units.size(),
                           units.size() * units.size()));
}

std::size_t wrap_layer(const SumsetLayers& s, std::size_t j) {
    if (j < s.layers.size()) return j;
    std::size_t cycle = s.layers.size() - s.cycle_start;
    return s.cycle_start + (j - s.cycle_start) % cycle;
}

AdditiveFlag finite_additive(const FiniteRing& ring, const ElementClass& cls, std::uint64_t k) {
    const SumsetLayers& s = sumset_layers(ring, cls);
    const auto& layer = s.layers[wrap_layer(s, static_cast<std::size_t>(k - 1))];
    auto miss = std::find(layer.begin(), layer.end(), false);
    if (miss == layer.end()) {
        return {cls, k, yes(fmt::format("sumset layer {} is the whole ring", k))};
    }
    Element x = ring.element(static_cast<ElemId>(miss - layer.begin()));
    return {cls, k, no(ring, x, fmt::format("not a sum of {} {} elements", k, to_string(cls)))};
}

RingProfile finite_profile(const RingPtr& ptr, std::size_t nil_gen_cap) {
    const FiniteRing& ring = ptr->finite();
    ring.require_enumerable();
    RingProfile p;
    p.size = ring.size();
    p.commutative = ring.is_commutative();
    p.field = is_field(ring) ? yes("every nonzero element is a unit and the ring is commutative")
                             : Flag{false, "has a nonzero non-unit or is not commutative", std::nullopt};
    if (!p.field.value) {
        for (ElemId x = 1; x < ring.size(); ++x) {
            if (!is_member(ring, ring.element(x), ElementClass::torsion_unit())) {
                p.field = no(ring, ring.element(x), "nonzero non-unit");
                break;
            }
        }
    }
    const auto& orbits = orbit_table(ring);
    p.periodic = yes(fmt::format("orbit witnesses for all {} elements", orbits.size()));
    for (ElemId x = 0; x < ring.size(); ++x) {
        auto cert = weak_split(ring, ring.element(x));
        if (auto v = verify_certificate(ring, cert); !v.ok) {
            p.weakly_periodic = no(ring, ring.element(x), v.reason);
            break;
        }
    }
    if (p.weakly_periodic.evidence.empty()) {
        p.weakly_periodic = yes(fmt::format("verified potent + nilpotent split of all {} elements", ring.size()));
    }
    p.additively_periodic = yes("every element is periodic");
    for (const auto& cls : profile_classes()) {
        for (std::uint64_t k = 1; k <= kProfileMaxK; ++k) p.additively_k.push_back(finite_additive(ring, cls, k));
    }
    p.has_tpp = finite_tpp(ring);
    StrongTpp strong = has_strong_tpp(ptr, nil_gen_cap);
    p.has_strong_tpp = strong.flag;
    p.strong_tpp_complete = strong.complete;
    p.nil_ideals_checked = strong.ideals;
    p.two_good = is_two_good(ring);
    p.unit_group_torsion = yes("finite unit group");
    return p;
}

RingProfile integer_profile(const Ring& ring) {
    RingProfile p;
    p.commutative = true;
    Element two = ring.from_integer(2);
    p.field = no(ring, two, "not a unit");
    p.periodic = no(ring, two, "powers of 2 are distinct");
    p.weakly_periodic = no(ring, two, "potents are -1, 0, 1 and the only nilpotent is 0");
    p.additively_periodic = yes("n is a sum of |n| periodic elements from {-1, 0, 1}; the rank is unbounded");
    for (const auto& cls : profile_classes()) {
        for (std::uint64_t k = 1; k <= kProfileMaxK; ++k) {
            Element x = ring.from_integer(static_cast<std::int64_t>(k + 1));
            p.additively_k.push_back(
                {cls, k, no(ring, x, fmt::format("class members have absolute value at most 1, so k summands reach at most {}", k))});
        }
    }
    p.has_tpp = yes("commutative, so torsion units form a subgroup; here they are {-1, 1}");
    p.has_strong_tpp = yes("every quotient is commutative, so its torsion units form a subgroup");
    p.strong_tpp_complete = true;
    p.two_good = no(ring, ring.one(), "unit sums are -2, 0, 2");
    p.unit_group_torsion = yes("units are {-1, 1}");
    return p;
}

RingProfile poly_profile(const Ring& ring) {
    RingProfile p;
    p.commutative = true;
    Element t = poly_t(ring);
    p.field = no(ring, t, "not a unit");
    p.periodic = no(ring, t, "degree grows under powers");
    p.weakly_periodic = no(ring, t, "potents and nilpotents are periodic, and sums of periodic elements stay periodic");
    auto d = poly_additive_decision(ring, t);
    p.additively_periodic = no(ring, t, d.obstruction ? fmt::format("obstruction at degree {}", d.obstruction->degree)
                                                      : std::string("not periodic"));
    for (const auto& cls : profile_classes()) {
        for (std::uint64_t k = 1; k <= kProfileMaxK; ++k) {
            p.additively_k.push_back({cls, k, no(ring, t, "the class lies inside the additively closed periodic set")});
        }
    }
    p.has_tpp = yes("commutative, so torsion units form a subgroup");
    p.has_strong_tpp = yes("every quotient is commutative, so its torsion units form a subgroup");
    p.strong_tpp_complete = true;
    p.two_good = no(ring, t, "unit sums are constant plus nilpotent tail");
    p.unit_group_torsion = yes("units are a unit constant times 1 + nilpotent, both torsion");
    return p;
}

}  // namespace

const AdditiveFlag* RingProfile::additive(const ElementClass& cls, std::uint64_t k) const {
    for (const auto& a : additively_k) {
        if (a.cls == cls && a.k == k) return &a;
    }
    return nullptr;
}

const std::vector<ElementClass>& profile_classes() {
    static const std::vector<ElementClass> classes = {ElementClass::periodic(), ElementClass::potent_any(),
                                                      ElementClass::nilpotent(), ElementClass::torsion_unit()};
    return classes;
}

Flag has_tpp(const Ring& ring) {
    switch (ring.kind()) {
        case Ring::Kind::Integers: return yes("torsion units are {-1, 1}");
        case Ring::Kind::Polynomial: return yes("commutative, so torsion units form a subgroup");
        case Ring::Kind::Finite: break;
    }
    return finite_tpp(ring.finite());
}

StrongTpp has_strong_tpp(const RingPtr& ring, std::size_t gen_cap) {
    StrongTpp out;
    if (!ring->is_finite()) {
        out.flag = yes("every quotient is commutative, so its torsion units form a subgroup");
        out.complete = true;
        return out;
    }
    NilIdealList list = nil_ideals(ring, gen_cap);
    out.complete = list.complete;
    out.ideals = list.ideals.size();
    for (const auto& ideal : list.ideals) {
        auto q = quotient(ideal);
        Flag f = finite_tpp(*q);
        if (!f.value) {
            out.flag = Flag{false, fmt::format("R/I with |I| = {}: {}", ideal.size(), f.evidence), std::nullopt};
            return out;
        }
    }
    out.flag = yes(fmt::format("t.p.p on R/I for {} nil ideals{}", out.ideals, out.complete ? "" : " (partial list)"));
    return out;
}

Flag is_two_good(const Ring& ring) {
    switch (ring.kind()) {
        case Ring::Kind::Integers: return no(ring, ring.one(), "unit sums are -2, 0, 2");
        case Ring::Kind::Polynomial: return no(ring, poly_t(ring), "unit sums are constant plus nilpotent tail");
        case Ring::Kind::Finite: break;
    }
    const FiniteRing& f = ring.finite();
    std::vector<ElemId> units = unit_ids(f);
    std::vector<char> in(static_cast<std::size_t>(f.size()), 0);
    for (ElemId u : units) in[u] = 1;
    for (ElemId x = 0; x < f.size(); ++x) {
        bool found = std::any_of(units.begin(), units.end(), [&](ElemId u) { return in[f.sub(x, u)] != 0; });
        if (!found) return no(ring, f.element(x), "not a sum of two units");
    }
    return yes(fmt::format("all {} elements are sums of two of the {} units", f.size(), units.size()));
}

Flag unit_group_torsion(const Ring& ring) {
    switch (ring.kind()) {
        case Ring::Kind::Integers: return yes("units are {-1, 1}");
        case Ring::Kind::Polynomial: return yes("units are a unit constant times 1 + nilpotent, both torsion");
        case Ring::Kind::Finite: break;
    }
    return yes("finite unit group");
}

RingProfile profile(const RingPtr& ring, std::size_t nil_gen_cap) {
    RingProfile p;
    switch (ring->kind()) {
        case Ring::Kind::Integers: p = integer_profile(*ring); break;
        case Ring::Kind::Polynomial: p = poly_profile(*ring); break;
        case Ring::Kind::Finite: p = finite_profile(ring, nil_gen_cap); break;
    }
    p.ring = ring->name();
    if (auto why = implication_violation(p); !why.empty()) fail(ErrorCode::WitnessInvalid, why);
    return p;
}

std::string implication_violation(const RingProfile& p) {
    const AdditiveFlag* two = p.additive(ElementClass::periodic(), 2);
    if (p.periodic.value && !p.weakly_periodic.value) return "periodic but not weakly periodic";
    if (p.weakly_periodic.value && two && !two->flag.value) return "weakly periodic but not additively 2-periodic";
    if (two && two->flag.value && !p.additively_periodic.value) return "additively 2-periodic but not additively periodic";
    return "";
}

}  // namespace ringlab
