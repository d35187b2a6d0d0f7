#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ringlab/orbit.hpp"
#include "ringlab/ring.hpp"

namespace ringlab {

/// A ring-level yes/no answer. Negative answers carry a counterexample element; evidence is a short canonical
/// description of the witness set or the argument used.
struct Flag {
    bool value = false;
    std::string evidence;
    std::optional<Element> counterexample;
};

/// Every element is a sum of at most k members of cls.
struct AdditiveFlag {
    ElementClass cls;
    std::uint64_t k = 1;
    Flag flag;
};

struct RingProfile {
    std::string ring;
    /// Element count of a finite ring.
    std::optional<std::uint64_t> size;
    bool commutative = false;
    Flag field;
    Flag periodic;
    Flag weakly_periodic;
    /// Each element is a finite sum of periodic elements, with no uniform bound required.
    Flag additively_periodic;
    std::vector<AdditiveFlag> additively_k;
    Flag has_tpp;
    Flag has_strong_tpp;
    /// The nil ideals examined for has_strong_tpp are all of them.
    bool strong_tpp_complete = false;
    std::size_t nil_ideals_checked = 0;
    Flag two_good;
    Flag unit_group_torsion;

    /// The additively_k entry for (cls, k), if computed.
    const AdditiveFlag* additive(const ElementClass& cls, std::uint64_t k) const;
};

/// Summand classes and the largest k covered by additively_k.
const std::vector<ElementClass>& profile_classes();
constexpr std::uint64_t kProfileMaxK = 4;

/// Torsion units closed under products and inverses.
Flag has_tpp(const Ring& ring);

struct StrongTpp {
    Flag flag;
    bool complete = false;
    std::size_t ideals = 0;
};

/// has_tpp on R/I for every nil ideal I that nil_ideals(gen_cap) produces.
StrongTpp has_strong_tpp(const RingPtr& ring, std::size_t gen_cap = 2);

/// Every element is a sum of two units.
Flag is_two_good(const Ring& ring);

/// Every unit has finite multiplicative order.
Flag unit_group_torsion(const Ring& ring);

RingProfile profile(const RingPtr& ring, std::size_t nil_gen_cap = 2);

/// periodic => weakly periodic => additively 2-periodic for class Periodic; empty string when it holds.
std::string implication_violation(const RingProfile& p);

}  // namespace ringlab
