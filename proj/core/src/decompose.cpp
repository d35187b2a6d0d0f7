#include "ringlab/decompose.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "ringlab/census.hpp"
#include "ringlab/construct.hpp"
#include "ringlab/dsl.hpp"
#include "ringlab/error.hpp"
#include "ringlab/numeric.hpp"

namespace ringlab {

namespace {

using Mask = std::vector<char>;

bool all_commute(const Ring& ring, const std::vector<Element>& xs) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = i + 1; j < xs.size(); ++j) {
            if (!ring.commute(xs[i], xs[j])) return false;
        }
    }
    return true;
}

DecompositionCertificate make_certificate(const Ring& ring, const Element& target, std::vector<Element> summands,
                                          std::vector<ElementClass> classes) {
    DecompositionCertificate cert;
    cert.target = target;
    for (std::size_t i = 0; i < summands.size(); ++i) cert.witnesses.push_back(witness_for(ring, summands[i], classes[i]));
    cert.commuting = all_commute(ring, summands);
    cert.summands = std::move(summands);
    cert.classes = std::move(classes);
    return cert;
}

std::string class_key(const ElementClass& c) { return to_string(c); }

Mask to_mask(const FiniteRing& ring, const std::vector<ElemId>& ids) {
    Mask m(static_cast<std::size_t>(ring.size()), 0);
    for (ElemId x : ids) m[x] = 1;
    return m;
}

Mask sumset(const FiniteRing& ring, const std::vector<ElemId>& a, const Mask& b) {
    auto n = static_cast<std::size_t>(ring.size());
    Mask out(n, 0);
    std::vector<ElemId> bs;
    for (ElemId y = 0; y < n; ++y) {
        if (b[y]) bs.push_back(y);
    }
    if (a.empty() || bs.empty()) return out;
    if (bs.size() == n) return Mask(n, 1);
    std::size_t count = 0;
    for (ElemId x : a) {
        for (ElemId y : bs) {
            ElemId s = ring.add(x, y);
            if (!out[s]) {
                out[s] = 1;
                if (++count == n) return out;
            }
        }
    }
    return out;
}

// Sumset of classes[from..] as a membership mask.
const Mask& suffix_sumset(const FiniteRing& ring, const std::vector<ElementClass>& classes, std::size_t from) {
    std::string key = "suffix";
    for (std::size_t j = from; j < classes.size(); ++j) key += "|" + class_key(classes[j]);
    auto mask = ring.memo<Mask>(key, [&] {
        const auto& first = class_members(ring, classes[from]);
        if (from + 1 == classes.size()) return to_mask(ring, first);
        return sumset(ring, first, suffix_sumset(ring, classes, from + 1));
    });
    return *mask;
}

std::vector<BigInt> integer_class(const ElementClass& c) {
    switch (c.tag) {
        case ClassTag::Periodic:
        case ClassTag::PotentAny: return {-1, 0, 1};
        case ClassTag::Potent: return c.q % 2 == 1 ? std::vector<BigInt>{-1, 0, 1} : std::vector<BigInt>{0, 1};
        case ClassTag::Nilpotent: return {0};
        case ClassTag::Idempotent: return {0, 1};
        case ClassTag::TorsionUnit:
        case ClassTag::Involution: return {-1, 1};
    }
    return {};
}

std::optional<DecompositionCertificate> integer_sum_search(const Ring& ring, const Element& x,
                                                           const std::vector<ElementClass>& classes) {
    std::vector<std::vector<BigInt>> sets;
    for (const auto& c : classes) sets.push_back(integer_class(c));
    std::vector<BigInt> chosen;
    std::optional<DecompositionCertificate> found;
    auto dfs = [&](auto&& self, std::size_t depth, const BigInt& rest) -> bool {
        if (depth + 1 == sets.size()) {
            if (std::find(sets[depth].begin(), sets[depth].end(), rest) == sets[depth].end()) return false;
            chosen.push_back(rest);
            return true;
        }
        for (const BigInt& s : sets[depth]) {
            chosen.push_back(s);
            if (self(self, depth + 1, rest - s)) return true;
            chosen.pop_back();
        }
        return false;
    };
    if (!dfs(dfs, 0, x.integer())) return std::nullopt;
    std::vector<Element> summands;
    for (const auto& v : chosen) summands.push_back(Element(ring.id(), v));
    return make_certificate(ring, x, std::move(summands), classes);
}

RankResult integer_rank(const Ring& ring, const Element& x, const ElementClass& c, std::uint64_t cap) {
    RankResult out;
    out.cap = cap;
    std::vector<BigInt> s = integer_class(c);
    std::vector<std::set<BigInt>> layers{std::set<BigInt>(s.begin(), s.end())};
    const BigInt& target = x.integer();
    for (std::uint64_t k = 1; k <= cap; ++k) {
        if (k > layers.size()) {
            std::set<BigInt> next;
            for (const auto& a : layers.back())
                for (const auto& b : s) next.insert(a + b);
            layers.push_back(std::move(next));
        }
        if (!layers[k - 1].count(target)) continue;
        out.rank = k;
        std::vector<Element> summands;
        BigInt rest = target;
        for (std::uint64_t j = k; j > 1; --j) {
            for (const BigInt& v : s) {
                if (layers[j - 2].count(rest - v)) {
                    summands.push_back(Element(ring.id(), v));
                    rest -= v;
                    break;
                }
            }
        }
        summands.push_back(Element(ring.id(), rest));
        out.certificate = make_certificate(ring, x, std::move(summands), std::vector<ElementClass>(k, c));
        return out;
    }
    return out;
}

// x^e for an exponent that may exceed 64 bits.
Element pow_big(const Ring& ring, const Element& x, BigInt e) {
    Element result = ring.one();
    Element base = x;
    while (e > 0) {
        if ((e & 1) != 0) result = ring.mul(result, base);
        e >>= 1;
        if (e > 0) base = ring.mul(base, base);
    }
    return result;
}

}  // namespace

std::string to_string(const ClassWitness& w) {
    switch (w.form) {
        case ClassWitness::Form::Relation: return fmt::format("x^{} = x^{}", w.high, w.low);
        case ClassWitness::Form::Zero: return fmt::format("x^{} = 0", w.high);
        case ClassWitness::Form::One: return fmt::format("x^{} = 1", w.high);
    }
    return "?";
}

ClassWitness witness_for(const Ring& ring, const Element& x, const ElementClass& c) {
    if (!is_member(ring, x, c)) {
        fail(ErrorCode::WitnessInvalid, fmt::format("{} is not {}", print(ring, x), to_string(c)));
    }
    switch (c.tag) {
        case ClassTag::Potent: return ClassWitness::relation(c.q, 1);
        case ClassTag::Idempotent: return ClassWitness::relation(2, 1);
        case ClassTag::Involution: return ClassWitness::one(2);
        default: break;
    }
    OrbitWitness w = orbit_witness(ring, x);
    switch (c.tag) {
        case ClassTag::Periodic: return ClassWitness::relation(w.index + w.period, w.index);
        case ClassTag::PotentAny: return ClassWitness::relation(w.period + 1, 1);
        case ClassTag::Nilpotent: return ClassWitness::zero(w.index);
        case ClassTag::TorsionUnit: return ClassWitness::one(w.period);
        default: break;
    }
    fail(ErrorCode::Unsupported, "unknown class");
}

std::string serialize(const Ring& ring, const DecompositionCertificate& cert) {
    std::string sum;
    std::string evidence;
    for (std::size_t i = 0; i < cert.summands.size(); ++i) {
        if (i > 0) {
            sum += " + ";
            evidence += "; ";
        }
        sum += print(ring, cert.summands[i]);
        evidence += to_string(cert.classes[i]) + ": " + to_string(cert.witnesses[i]);
    }
    return fmt::format("{} = {} [{}]{}", print(ring, cert.target), sum, evidence, cert.commuting ? " commuting" : "");
}

DecompositionCertificate weak_split(const Ring& ring, const Element& x) {
    OrbitWitness w = orbit_witness(ring, x);
    std::uint64_t r = idempotent_exponent(w);
    Element e = ring.pow(x, r);
    Element a = ring.mul(x, e);
    Element b = ring.sub(x, a);
    DecompositionCertificate cert;
    cert.target = x;
    cert.summands = {a, b};
    cert.classes = {ElementClass::potent_any(), ElementClass::nilpotent()};
    // a^(d+1) = a and b^r = 0 by construction; the verifier re-checks both.
    cert.witnesses = {ClassWitness::relation(w.period + 1, 1), ClassWitness::zero(r)};
    cert.commuting = ring.commute(a, b);
    return cert;
}

const std::vector<ElemId>& class_members(const FiniteRing& ring, const ElementClass& c) {
    ring.require_enumerable();
    auto members = ring.memo<std::vector<ElemId>>("members|" + class_key(c), [&] {
        const auto& orbits = orbit_table(ring);
        ElemId one = ring.one_id();
        std::vector<ElemId> out;
        if (c.tag == ClassTag::TorsionUnit) return unit_ids(ring);
        for (ElemId x = 0; x < ring.size(); ++x) {
            const OrbitWitness& w = orbits[x];
            bool in = false;
            switch (c.tag) {
                case ClassTag::Periodic: in = true; break;
                case ClassTag::Potent: in = c.q >= 2 && w.index == 1 && (c.q - 1) % w.period == 0; break;
                case ClassTag::PotentAny: in = w.index == 1; break;
                case ClassTag::Nilpotent: in = w.period == 1 && ring.pow(x, w.index) == 0; break;
                case ClassTag::Idempotent: in = w.index == 1 && w.period == 1; break;
                case ClassTag::Involution: in = ring.mul(x, x) == one; break;
                case ClassTag::TorsionUnit: break;
            }
            if (in) out.push_back(x);
        }
        return out;
    });
    return *members;
}

std::optional<DecompositionCertificate> sum_search(const Ring& ring, const Element& x,
                                                   const std::vector<ElementClass>& classes, bool commuting) {
    if (classes.empty() || classes.size() > 4) fail(ErrorCode::Unsupported, "sum_search takes 1 to 4 classes");
    if (ring.kind() == Ring::Kind::Integers) return integer_sum_search(ring, x, classes);
    if (ring.kind() == Ring::Kind::Polynomial) {
        fail(ErrorCode::Unsupported, "sum_search over Z_n[t] is not exhaustive; use poly_additive_decision");
    }
    const FiniteRing& f = ring.finite();
    f.require_enumerable();
    ElemId target = f.id_of(x);
    std::size_t k = classes.size();
    std::vector<const std::vector<ElemId>*> sets;
    for (const auto& c : classes) sets.push_back(&class_members(f, c));
    std::vector<const Mask*> suffix(k, nullptr);
    for (std::size_t j = 1; j < k; ++j) suffix[j] = &suffix_sumset(f, classes, j);

    std::vector<ElemId> chosen;
    auto compatible = [&](ElemId s) {
        if (!commuting) return true;
        return std::all_of(chosen.begin(), chosen.end(), [&](ElemId c) { return f.commute(c, s); });
    };
    auto dfs = [&](auto&& self, std::size_t depth, ElemId rest) -> bool {
        if (depth + 1 == k) {
            const auto& last = *sets[depth];
            if (!std::binary_search(last.begin(), last.end(), rest) || !compatible(rest)) return false;
            chosen.push_back(rest);
            return true;
        }
        for (ElemId s : *sets[depth]) {
            ElemId next = f.sub(rest, s);
            if (!(*suffix[depth + 1])[next] || !compatible(s)) continue;
            chosen.push_back(s);
            if (self(self, depth + 1, next)) return true;
            chosen.pop_back();
        }
        return false;
    };
    if (!dfs(dfs, 0, target)) return std::nullopt;
    std::vector<Element> summands;
    for (ElemId s : chosen) summands.push_back(f.element(s));
    return make_certificate(ring, x, std::move(summands), classes);
}

const SumsetLayers& sumset_layers(const FiniteRing& ring, const ElementClass& c) {
    auto layers = ring.memo<SumsetLayers>("layers|" + class_key(c), [&] {
        constexpr std::size_t kMaxLayers = 4096;
        const auto& s = class_members(ring, c);
        SumsetLayers out;
        Mask first = to_mask(ring, s);
        out.layers.emplace_back(first.begin(), first.end());
        while (out.layers.size() < kMaxLayers) {
            Mask prev(out.layers.back().begin(), out.layers.back().end());
            Mask next = sumset(ring, s, prev);
            std::vector<bool> as_bits(next.begin(), next.end());
            auto it = std::find(out.layers.begin(), out.layers.end(), as_bits);
            if (it != out.layers.end()) {
                out.cycle_start = static_cast<std::size_t>(it - out.layers.begin());
                return out;
            }
            out.layers.push_back(std::move(as_bits));
        }
        fail(ErrorCode::Unsupported, "sumset layers did not settle");
    });
    return *layers;
}

RankResult additive_rank(const Ring& ring, const Element& x, const ElementClass& c, std::uint64_t cap) {
    if (ring.kind() == Ring::Kind::Integers) return integer_rank(ring, x, c, cap);
    RankResult out;
    out.cap = cap;
    if (ring.kind() == Ring::Kind::Polynomial) {
        if (c.tag != ClassTag::Periodic) fail(ErrorCode::Unsupported, "Z_n[t] ranks are decided for the periodic class only");
        auto d = poly_additive_decision(ring, x);
        if (d.decomposable && cap >= 1) {
            out.rank = 1;
            out.certificate = make_certificate(ring, x, {x}, {c});
        }
        return out;
    }
    const FiniteRing& f = ring.finite();
    ElemId target = f.id_of(x);
    const auto& layers = sumset_layers(f, c).layers;
    std::uint64_t k = 0;
    for (std::size_t j = 0; j < layers.size(); ++j) {
        if (layers[j][target]) {
            k = j + 1;
            break;
        }
    }
    if (k == 0 || k > cap) return out;
    out.rank = k;
    const auto& s = class_members(f, c);
    std::vector<Element> summands;
    ElemId rest = target;
    for (std::uint64_t j = k; j > 1; --j) {
        for (ElemId v : s) {
            if (layers[j - 2][f.sub(rest, v)]) {
                summands.push_back(f.element(v));
                rest = f.sub(rest, v);
                break;
            }
        }
    }
    summands.push_back(f.element(rest));
    out.certificate = make_certificate(ring, x, std::move(summands), std::vector<ElementClass>(k, c));
    return out;
}

DecompositionCertificate matrix_split(const Ring& ring, const Element& m) {
    if (!ring.descriptor()) fail(ErrorCode::Unsupported, "matrix_split needs a matrix ring");
    const RingDescriptor& d = *ring.descriptor();
    int n = 0;
    const RingDescriptor* inner_desc = nullptr;
    if (const auto* full = d.get<desc::Matrix>()) {
        n = full->size;
        inner_desc = &*full->inner;
    } else if (const auto* tri = d.get<desc::Triangular>()) {
        n = tri->size;
        inner_desc = &*tri->inner;
    } else {
        fail(ErrorCode::Unsupported, fmt::format("{} is not a matrix ring", ring.name()));
    }
    RingPtr inner = construct(*inner_desc, 0);
    std::size_t w = coordinate_moduli(*inner_desc).size();
    const Coords& c = m.coords();
    auto un = static_cast<std::size_t>(n);
    Coords upper(c.size(), 0), lower(c.size(), 0), diag(c.size(), 0);
    std::optional<PowerRelation> diag_relation;
    for (std::size_t i = 0; i < un; ++i) {
        for (std::size_t j = 0; j < un; ++j) {
            std::size_t at = (i * un + j) * w;
            Coords& part = i < j ? upper : i > j ? lower : diag;
            std::copy(c.begin() + static_cast<std::ptrdiff_t>(at), c.begin() + static_cast<std::ptrdiff_t>(at + w),
                      part.begin() + static_cast<std::ptrdiff_t>(at));
            if (i == j) {
                Element entry(inner->id(), Coords(c.begin() + static_cast<std::ptrdiff_t>(at),
                                                  c.begin() + static_cast<std::ptrdiff_t>(at + w)));
                auto rel = PowerRelation::from(orbit_witness(*inner, entry));
                diag_relation = diag_relation ? combine_product_witness(*diag_relation, rel) : rel;
            }
        }
    }
    DecompositionCertificate cert;
    cert.target = m;
    auto nonzero = [](const Coords& v) { return std::any_of(v.begin(), v.end(), [](std::int64_t x) { return x != 0; }); };
    if (nonzero(upper)) {
        cert.summands.push_back(Element(ring.id(), upper));
        cert.classes.push_back(ElementClass::nilpotent());
        cert.witnesses.push_back(ClassWitness::zero(static_cast<std::uint64_t>(n)));
    }
    if (nonzero(lower)) {
        cert.summands.push_back(Element(ring.id(), lower));
        cert.classes.push_back(ElementClass::nilpotent());
        cert.witnesses.push_back(ClassWitness::zero(static_cast<std::uint64_t>(n)));
    }
    if (nonzero(diag)) {
        cert.summands.push_back(Element(ring.id(), diag));
        cert.classes.push_back(ElementClass::periodic());
        cert.witnesses.push_back(ClassWitness::relation(diag_relation->high, diag_relation->low));
    }
    if (cert.summands.empty()) {
        cert.summands.push_back(ring.zero());
        cert.classes.push_back(ElementClass::nilpotent());
        cert.witnesses.push_back(ClassWitness::zero(1));
    }
    cert.commuting = all_commute(ring, cert.summands);
    return cert;
}

std::string to_string(TorsionSumStatus s) {
    switch (s) {
        case TorsionSumStatus::Ok: return "ok";
        case TorsionSumStatus::NoFrobeniusFixpoint: return "NoFrobeniusFixpoint";
        case TorsionSumStatus::NonUnitSum: return "NonUnitSum";
        case TorsionSumStatus::NotTorsionUnits: return "NotTorsionUnits";
        case TorsionSumStatus::NotPrimeChar: return "NotPrimeChar";
    }
    return "?";
}

TorsionSumResult torsion_sum_witness(const Ring& ring, const Element& a, const Element& b,
                                     std::optional<std::uint64_t> m_cap) {
    TorsionSumResult out;
    std::uint64_t p = ring.characteristic();
    if (p == 0 || !is_prime(static_cast<std::int64_t>(p))) {
        out.status = TorsionSumStatus::NotPrimeChar;
        return out;
    }
    out.prime = p;
    if (!is_member(ring, a, ElementClass::torsion_unit()) || !is_member(ring, b, ElementClass::torsion_unit())) {
        out.status = TorsionSumStatus::NotTorsionUnits;
        return out;
    }
    std::uint64_t order_a = *classify(ring, a).unit_order;
    Element a_inv = ring.pow(a, order_a - 1);
    Element c = ring.mul(a_inv, b);
    out.c = c;
    std::uint64_t order_c = *classify(ring, c).unit_order;
    out.c_order = order_c;
    if (m_cap) {
        out.m_cap = *m_cap;
    } else if (std::gcd(p, order_c) == 1) {
        out.m_cap = multiplicative_order(static_cast<std::int64_t>(p % order_c), static_cast<std::int64_t>(order_c));
    } else {
        out.m_cap = 32;
    }
    // c^(p^m) depends only on p^m mod ord(c).
    std::uint64_t pm = 1 % order_c;
    for (std::uint64_t m = 1; m <= out.m_cap; ++m) {
        pm = static_cast<std::uint64_t>((static_cast<BigInt>(pm) * p) % order_c);
        if (ring.pow(c, pm == 0 ? order_c : pm) == c) {
            out.m = m;
            break;
        }
    }
    Element one_plus_c = ring.add(ring.one(), c);
    out.one_plus_c = one_plus_c;
    ClassRecord rec = classify(ring, one_plus_c);
    out.one_plus_c_unit = rec.unit_order.has_value();
    out.one_plus_c_nilpotent = rec.nilpotency_index.has_value();
    if (!out.m) {
        out.status = TorsionSumStatus::NoFrobeniusFixpoint;
        return out;
    }
    BigInt exponent = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(*out.m));
    out.frobenius_identity = pow_big(ring, one_plus_c, exponent) == one_plus_c;
    if (!out.one_plus_c_unit) {
        out.status = TorsionSumStatus::NonUnitSum;
        return out;
    }
    Element sum = ring.add(a, b);
    if (ring.mul(a, one_plus_c) != sum) fail(ErrorCode::WitnessInvalid, "a (1 + c) differs from a + b");
    out.order = classify(ring, sum).unit_order;
    out.status = TorsionSumStatus::Ok;
    return out;
}

PolyAdditiveDecision poly_additive_decision(const Ring& poly_ring, const Element& f) {
    PolyDecision d = poly_periodicity(poly_ring, f);
    PolyAdditiveDecision out;
    out.decomposable = d.periodic;
    if (d.periodic) out.rank = 1;
    out.witness = d.witness;
    out.obstruction = d.obstruction;
    return out;
}

}  // namespace ringlab
