#include "ringlab/ideal.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <set>

#include "ringlab/dsl.hpp"
#include "ringlab/error.hpp"

namespace ringlab {

namespace {

// Additive subgroup grown one generator at a time: M <- M + <g> adds the cosets M + jg until jg falls back into M.
class SubgroupBuilder {
public:
    explicit SubgroupBuilder(const FiniteRing& ring)
        : ring_(ring), in_(static_cast<std::size_t>(ring.size()), false), members_{0} {
        in_[0] = true;
    }

    bool contains(ElemId x) const { return in_[x]; }
    const std::vector<ElemId>& members() const { return members_; }
    const std::vector<ElemId>& generators() const { return generators_; }

    /// Returns false as soon as an element outside `allowed` would be added (when allowed is non-null).
    bool add_generator(ElemId g, const std::vector<bool>* allowed = nullptr) {
        if (in_[g]) return true;
        std::vector<ElemId> base = members_;
        ElemId c = g;
        while (!in_[c]) {
            for (ElemId m : base) {
                ElemId s = ring_.add(m, c);
                if (allowed != nullptr && !(*allowed)[s]) return false;
                in_[s] = true;
                members_.push_back(s);
            }
            c = ring_.add(c, g);
        }
        generators_.push_back(g);
        return true;
    }

private:
    const FiniteRing& ring_;
    std::vector<bool> in_;
    std::vector<ElemId> members_;
    std::vector<ElemId> generators_;
};

}  // namespace

IdealHandle::IdealHandle(RingPtr owner, std::vector<ElemId> members, std::vector<ElemId> generators)
    : owner_(std::move(owner)), members_(std::move(members)), generators_(std::move(generators)) {
    const FiniteRing& r = owner_->finite();
    r.require_enumerable();
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    in_.assign(static_cast<std::size_t>(r.size()), false);
    for (ElemId m : members_) {
        in_.at(m) = true;
        if (nil_ && !is_nilpotent(r, m)) nil_ = false;
    }
}

bool is_nilpotent(const FiniteRing& ring, ElemId x) { return ring.pow(x, ring.size()) == 0; }

IdealHandle ideal_closure(const RingPtr& ring_ptr, std::span<const ElemId> gens) {
    const FiniteRing& ring = ring_ptr->finite();
    ring.require_enumerable();
    SubgroupBuilder group(ring);
    for (ElemId g : gens) group.add_generator(g);
    const auto& basis = ring.additive_generators();
    // Absorbing multiplication on additive generators of both sides covers the whole two-sided ideal.
    for (std::size_t i = 0; i < group.generators().size(); ++i) {
        ElemId s = group.generators()[i];
        for (ElemId b : basis) {
            group.add_generator(ring.mul(b, s));
            group.add_generator(ring.mul(s, b));
        }
    }
    return IdealHandle(ring_ptr, group.members(), std::vector<ElemId>(gens.begin(), gens.end()));
}

bool is_ideal(const FiniteRing& ring, std::span<const ElemId> members) {
    ring.require_enumerable();
    std::vector<bool> allowed(static_cast<std::size_t>(ring.size()), false);
    for (ElemId m : members) {
        if (m >= ring.size()) return false;
        allowed[m] = true;
    }
    if (!allowed[0]) return false;
    SubgroupBuilder group(ring);
    for (ElemId m : members) {
        if (!group.add_generator(m, &allowed)) return false;
    }
    for (ElemId s : group.generators()) {
        for (ElemId b : ring.additive_generators()) {
            if (!allowed[ring.mul(b, s)] || !allowed[ring.mul(s, b)]) return false;
        }
    }
    return true;
}

NilIdealList nil_ideals(const RingPtr& ring_ptr, std::size_t gen_cap) {
    const FiniteRing& ring = ring_ptr->finite();
    ring.require_enumerable();
    std::vector<ElemId> nilpotents;
    for (ElemId x = 1; x < ring.size(); ++x) {
        if (is_nilpotent(ring, x)) nilpotents.push_back(x);
    }
    std::set<std::vector<ElemId>> seen;
    std::vector<IdealHandle> found;
    auto record = [&](const IdealHandle& ideal) {
        if (seen.insert(ideal.members()).second) found.push_back(ideal);
    };
    IdealHandle zero_ideal = ideal_closure(ring_ptr, {});
    record(zero_ideal);
    // Generator subsets in lexicographic order. A generator already inside the prefix ideal adds nothing, and
    // every ideal containing a non-nil ideal is non-nil.
    std::vector<ElemId> chosen;
    auto extend = [&](auto&& self, std::size_t start, const IdealHandle& current) -> void {
        if (chosen.size() == gen_cap) return;
        for (std::size_t i = start; i < nilpotents.size(); ++i) {
            if (current.contains(nilpotents[i])) continue;
            chosen.push_back(nilpotents[i]);
            IdealHandle next = ideal_closure(ring_ptr, chosen);
            if (next.nil()) {
                record(next);
                self(self, i + 1, next);
            }
            chosen.pop_back();
        }
    };
    extend(extend, 0, zero_ideal);
    std::stable_sort(found.begin(), found.end(), [](const IdealHandle& a, const IdealHandle& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a.members() < b.members();
    });
    return NilIdealList{std::move(found), gen_cap >= nilpotents.size()};
}

namespace {

std::uint64_t quotient_size(const IdealHandle& ideal) {
    const FiniteRing& r = ideal.ring();
    if (ideal.size() == 0 || r.size() % ideal.size() != 0) {
        fail(ErrorCode::NotAnIdeal, "ideal size does not divide the ring size");
    }
    return r.size() / ideal.size();
}

std::string quotient_name(const IdealHandle& ideal) {
    const FiniteRing& r = ideal.ring();
    std::string gens;
    const auto& list = ideal.generators().empty() && ideal.size() == 1 ? std::vector<ElemId>{0} : ideal.generators();
    for (std::size_t i = 0; i < list.size(); ++i) {
        if (i > 0) gens += ", ";
        gens += print(r, r.element(list[i]));
    }
    if (list.empty()) gens = fmt::format("{} elements", ideal.size());
    return fmt::format("{} / <{}>", r.name(), gens);
}

}  // namespace

QuotientRing::QuotientRing(RingPtr parent, const IdealHandle& ideal)
    : FiniteRing(quotient_name(ideal), std::nullopt, quotient_size(ideal), parent->finite().cap()),
      parent_(std::move(parent)) {
    const FiniteRing& r = parent_->finite();
    constexpr ElemId unset = ~ElemId{0};
    projection_.assign(static_cast<std::size_t>(r.size()), unset);
    for (ElemId x = 0; x < r.size(); ++x) {
        if (projection_[x] != unset) continue;
        auto cls = static_cast<ElemId>(reps_.size());
        reps_.push_back(x);
        for (ElemId m : ideal.members()) projection_[r.add(x, m)] = cls;
    }
}

Element QuotientRing::project(const Element& x) const { return element(project(parent().id_of(x))); }

Element QuotientRing::zero() const { return element_direct(0); }

Element QuotientRing::one() const { return element_direct(project(parent().one_id())); }

Element QuotientRing::add(const Element& a, const Element& b) const {
    return element_direct(add_direct(id_of_direct(a), id_of_direct(b)));
}

Element QuotientRing::neg(const Element& a) const { return element_direct(neg_direct(id_of_direct(a))); }

Element QuotientRing::mul(const Element& a, const Element& b) const {
    return element_direct(mul_direct(id_of_direct(a), id_of_direct(b)));
}

std::uint64_t QuotientRing::additive_order(const Element& e) const {
    ElemId x = id_of_direct(e);
    ElemId acc = x;
    std::uint64_t order = 1;
    while (acc != 0) {
        acc = add_direct(acc, x);
        ++order;
    }
    return order;
}

std::vector<Element> QuotientRing::additive_basis() const {
    std::vector<ElemId> ids;
    for (ElemId b : parent().additive_generators()) {
        ElemId q = project(b);
        if (q != 0 && std::find(ids.begin(), ids.end(), q) == ids.end()) ids.push_back(q);
    }
    std::vector<Element> basis;
    for (ElemId q : ids) basis.push_back(element_direct(q));
    return basis;
}

ElemId QuotientRing::add_direct(ElemId a, ElemId b) const { return project(parent().add(reps_[a], reps_[b])); }

ElemId QuotientRing::mul_direct(ElemId a, ElemId b) const { return project(parent().mul(reps_[a], reps_[b])); }

ElemId QuotientRing::neg_direct(ElemId a) const { return project(parent().neg(reps_[a])); }

Element QuotientRing::element_direct(ElemId id) const {
    return Element(this->id(), parent().element(reps_[id]).coords());
}

ElemId QuotientRing::id_of_direct(const Element& e) const {
    check_owner(e);
    ElemId pid = parent().id_of(Element(parent().id(), e.coords()));
    ElemId q = project(pid);
    if (reps_[q] != pid) fail(ErrorCode::WrongShape, "element is not a canonical coset representative");
    return q;
}

std::shared_ptr<const QuotientRing> quotient(const IdealHandle& ideal) {
    if (!is_ideal(ideal.ring(), ideal.members())) {
        fail(ErrorCode::NotAnIdeal, fmt::format("the given set is not an ideal of {}", ideal.ring().name()));
    }
    return std::make_shared<const QuotientRing>(ideal.owner(), ideal);
}

}  // namespace ringlab
