#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "ringlab/ring.hpp"

namespace ringlab {

/// A two-sided ideal of a finite ring, stored as its sorted member ids.
class IdealHandle {
public:
    /// Members need not be sorted; they are not checked for ideal closure here (quotient() checks).
    IdealHandle(RingPtr owner, std::vector<ElemId> members, std::vector<ElemId> generators);

    const RingPtr& owner() const { return owner_; }
    const FiniteRing& ring() const { return owner_->finite(); }
    const std::vector<ElemId>& members() const { return members_; }
    const std::vector<ElemId>& generators() const { return generators_; }
    std::size_t size() const { return members_.size(); }
    bool contains(ElemId x) const { return x < in_.size() && in_[x]; }
    /// Every member is nilpotent.
    bool nil() const { return nil_; }

    friend bool operator==(const IdealHandle& a, const IdealHandle& b) {
        return a.owner_->id() == b.owner_->id() && a.members_ == b.members_;
    }

private:
    RingPtr owner_;
    std::vector<ElemId> members_;
    std::vector<ElemId> generators_;
    std::vector<bool> in_;
    bool nil_ = true;
};

/// x^|R| = 0.
bool is_nilpotent(const FiniteRing& ring, ElemId x);

/// Smallest two-sided ideal containing gens.
IdealHandle ideal_closure(const RingPtr& ring, std::span<const ElemId> gens);

/// True when members form a two-sided ideal (additive subgroup absorbing both multiplications).
bool is_ideal(const FiniteRing& ring, std::span<const ElemId> members);

struct NilIdealList {
    std::vector<IdealHandle> ideals;
    /// gen_cap reached the number of nilpotent elements, so every nil ideal was generated.
    bool complete = false;
};

/// Nil ideals generated by at most gen_cap nilpotent elements, zero ideal first, then by size and members.
NilIdealList nil_ideals(const RingPtr& ring, std::size_t gen_cap = 2);

/// Coset ring R/I. Each coset is represented by its least member in R's enumeration order, and quotient ids
/// follow the order of those representatives.
class QuotientRing : public FiniteRing {
public:
    QuotientRing(RingPtr parent, const IdealHandle& ideal);

    const FiniteRing& parent() const { return parent_->finite(); }
    const RingPtr& parent_ptr() const { return parent_; }
    /// Natural projection R -> R/I on ids.
    ElemId project(ElemId parent_id) const { return projection_[parent_id]; }
    Element project(const Element& x) const;
    ElemId representative(ElemId id) const { return reps_[id]; }

    Element zero() const override;
    Element one() const override;
    Element add(const Element& a, const Element& b) const override;
    Element neg(const Element& a) const override;
    Element mul(const Element& a, const Element& b) const override;
    std::uint64_t additive_order(const Element& e) const override;
    std::vector<Element> additive_basis() const override;

    using FiniteRing::add;
    using FiniteRing::mul;
    using FiniteRing::neg;

protected:
    ElemId add_direct(ElemId a, ElemId b) const override;
    ElemId mul_direct(ElemId a, ElemId b) const override;
    ElemId neg_direct(ElemId a) const override;
    Element element_direct(ElemId id) const override;
    ElemId id_of_direct(const Element& e) const override;

private:
    RingPtr parent_;
    std::vector<ElemId> reps_;
    std::vector<ElemId> projection_;
};

/// Throws NotAnIdeal when the handle is not a verified ideal of its owner.
std::shared_ptr<const QuotientRing> quotient(const IdealHandle& ideal);

}  // namespace ringlab
