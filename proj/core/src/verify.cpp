#include <fmt/format.h>

#include "ringlab/decompose.hpp"
#include "ringlab/dsl.hpp"

namespace ringlab {

namespace {

// Deliberately local: the verifier does not touch the orbit engine or Ring::pow.
Element power(const Ring& ring, const Element& x, std::uint64_t k) {
    Element result = ring.one();
    Element base = x;
    while (k > 0) {
        if (k & 1U) result = ring.mul(result, base);
        k >>= 1U;
        if (k > 0) base = ring.mul(base, base);
    }
    return result;
}

std::string shape_error(const ElementClass& c, const ClassWitness& w) {
    auto rel = [&] { return w.form == ClassWitness::Form::Relation; };
    switch (c.tag) {
        case ClassTag::Periodic:
            if (rel() && w.high > w.low && w.low >= 1) return "";
            break;
        case ClassTag::Potent:
            if (rel() && w.high == c.q && w.low == 1 && c.q >= 2) return "";
            break;
        case ClassTag::PotentAny:
            if (rel() && w.high >= 2 && w.low == 1) return "";
            break;
        case ClassTag::Nilpotent:
            if (w.form == ClassWitness::Form::Zero && w.high >= 1) return "";
            break;
        case ClassTag::Idempotent:
            if (rel() && w.high == 2 && w.low == 1) return "";
            break;
        case ClassTag::TorsionUnit:
            if (w.form == ClassWitness::Form::One && w.high >= 1) return "";
            break;
        case ClassTag::Involution:
            if (w.form == ClassWitness::Form::One && w.high == 2) return "";
            break;
    }
    return fmt::format("witness {} does not certify class {}", to_string(w), to_string(c));
}

}  // namespace

VerifyOutcome verify_certificate(const Ring& ring, const DecompositionCertificate& cert) {
    auto bad = [](std::string why) { return VerifyOutcome{false, std::move(why)}; };
    std::size_t k = cert.summands.size();
    if (k == 0) return bad("no summands");
    if (cert.classes.size() != k || cert.witnesses.size() != k) return bad("summand, class and witness counts differ");
    if (cert.target.owner() != ring.id()) return bad("target belongs to another ring");
    Element sum = ring.zero();
    for (std::size_t i = 0; i < k; ++i) {
        const Element& x = cert.summands[i];
        if (x.owner() != ring.id()) return bad(fmt::format("summand {} belongs to another ring", i + 1));
        sum = ring.add(sum, x);
        const ClassWitness& w = cert.witnesses[i];
        if (auto why = shape_error(cert.classes[i], w); !why.empty()) return bad(fmt::format("summand {}: {}", i + 1, why));
        bool holds = false;
        switch (w.form) {
            case ClassWitness::Form::Relation: holds = power(ring, x, w.high) == power(ring, x, w.low); break;
            case ClassWitness::Form::Zero: holds = power(ring, x, w.high) == ring.zero(); break;
            case ClassWitness::Form::One: holds = power(ring, x, w.high) == ring.one(); break;
        }
        if (!holds) return bad(fmt::format("summand {} = {}: {} fails", i + 1, print(ring, x), to_string(w)));
    }
    if (sum != cert.target) return bad(fmt::format("summands add up to {}, not {}", print(ring, sum), print(ring, cert.target)));
    if (cert.commuting) {
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = i + 1; j < k; ++j) {
                const Element& a = cert.summands[i];
                const Element& b = cert.summands[j];
                if (ring.mul(a, b) != ring.mul(b, a)) return bad(fmt::format("summands {} and {} do not commute", i + 1, j + 1));
            }
        }
    }
    return {};
}

}  // namespace ringlab
