#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "ringlab/descriptor.hpp"
#include "ringlab/element.hpp"

namespace ringlab {

inline constexpr std::uint64_t kDefaultEnumerationCap = 20000;
/// Rings up to this size get memoized addition and multiplication tables.
inline constexpr std::uint64_t kTableThreshold = 4096;

class FiniteRing;

/// Abstract ring. Instances are immutable after construction and shared through RingPtr.
class Ring {
public:
    enum class Kind { Finite, Integers, Polynomial };

    Ring(const Ring&) = delete;
    Ring& operator=(const Ring&) = delete;
    virtual ~Ring() = default;

    RingId id() const { return id_; }
    /// Canonical text form (the DSL spelling for descriptor-built rings).
    const std::string& name() const { return name_; }
    /// Absent for rings built through the library only, such as quotients.
    const std::optional<RingDescriptor>& descriptor() const { return descriptor_; }

    virtual Kind kind() const = 0;
    bool is_finite() const { return kind() == Kind::Finite; }
    /// Additive order of 1; 0 when it is infinite.
    virtual std::uint64_t characteristic() const = 0;
    virtual bool is_commutative() const = 0;

    virtual Element zero() const = 0;
    virtual Element one() const = 0;
    virtual Element add(const Element& a, const Element& b) const = 0;
    virtual Element neg(const Element& a) const = 0;
    virtual Element mul(const Element& a, const Element& b) const = 0;

    Element sub(const Element& a, const Element& b) const { return add(a, neg(b)); }
    /// x^0 = 1.
    Element pow(const Element& x, std::uint64_t exponent) const;
    /// k * 1.
    Element from_integer(std::int64_t k) const;
    bool commute(const Element& a, const Element& b) const { return mul(a, b) == mul(b, a); }
    bool is_zero(const Element& a) const { return a == zero(); }

    /// Throws InfiniteRing for symbolic rings.
    const FiniteRing& finite() const;

protected:
    Ring(std::string name, std::optional<RingDescriptor> descriptor);
    void check_owner(const Element& e) const;

private:
    RingId id_;
    std::string name_;
    std::optional<RingDescriptor> descriptor_;
};

using RingPtr = std::shared_ptr<const Ring>;

/// Finite ring with a canonical enumeration: element ids follow the lexicographic order of coordinate vectors,
/// so id 0 is the zero element. Id-level arithmetic requires size() <= cap().
class FiniteRing : public Ring {
public:
    Kind kind() const override { return Kind::Finite; }
    std::uint64_t characteristic() const override;
    bool is_commutative() const override;

    /// Cardinality, saturated at UINT64_MAX.
    std::uint64_t size() const { return size_; }
    std::uint64_t cap() const { return cap_; }
    bool enumerable() const { return size_ <= cap_; }
    /// Throws CapExceeded.
    void require_enumerable() const;

    using Ring::add;
    using Ring::mul;
    using Ring::neg;
    using Ring::pow;
    using Ring::sub;

    ElemId one_id() const;
    ElemId add(ElemId a, ElemId b) const;
    ElemId neg(ElemId a) const;
    ElemId sub(ElemId a, ElemId b) const { return add(a, neg(b)); }
    ElemId mul(ElemId a, ElemId b) const;
    ElemId pow(ElemId x, std::uint64_t exponent) const;
    bool commute(ElemId a, ElemId b) const { return mul(a, b) == mul(b, a); }
    using Ring::commute;

    Element element(ElemId id) const;
    /// Throws WrongShape for coordinates that are not a canonical element of this ring.
    ElemId id_of(const Element& e) const;
    /// All elements in canonical order; throws CapExceeded.
    std::vector<Element> elements() const;
    /// Elements whose integer combinations give the whole ring; used to test centrality and ideal closure.
    virtual std::vector<Element> additive_basis() const = 0;
    /// Ids of additive_basis(); throws CapExceeded.
    const std::vector<ElemId>& additive_generators() const;
    /// Additive order of an element.
    virtual std::uint64_t additive_order(const Element& e) const = 0;

    /// Per-ring cache for derived data (orbit tables, sumset layers). Builders may nest.
    template <class T>
    std::shared_ptr<const T> memo(const std::string& key, const std::function<T()>& build) const {
        std::lock_guard lock(memo_mutex_);
        auto it = memo_.find(key);
        if (it != memo_.end()) return std::static_pointer_cast<const T>(it->second);
        auto value = std::make_shared<const T>(build());
        memo_.emplace(key, value);
        return value;
    }

protected:
    FiniteRing(std::string name, std::optional<RingDescriptor> descriptor, std::uint64_t size, std::uint64_t cap);

    virtual ElemId add_direct(ElemId a, ElemId b) const = 0;
    virtual ElemId mul_direct(ElemId a, ElemId b) const = 0;
    virtual ElemId neg_direct(ElemId a) const = 0;
    virtual Element element_direct(ElemId id) const = 0;
    virtual ElemId id_of_direct(const Element& e) const = 0;

private:
    void ensure_tables() const;

    std::uint64_t size_;
    std::uint64_t cap_;
    mutable std::once_flag tables_once_;
    mutable std::vector<std::uint16_t> add_table_;
    mutable std::vector<std::uint16_t> mul_table_;
    mutable std::once_flag generators_once_;
    mutable std::vector<ElemId> generators_;
    mutable std::once_flag one_once_;
    mutable ElemId one_id_ = 0;
    mutable std::recursive_mutex memo_mutex_;
    mutable std::map<std::string, std::shared_ptr<const void>> memo_;
};

}  // namespace ringlab
