#include "ringlab/ring.hpp"

#include <fmt/format.h>

#include <limits>

#include "ringlab/error.hpp"

namespace ringlab {

namespace {

std::atomic<RingId> next_ring_id{1};

}  // namespace

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::CapExceeded: return "CapExceeded";
        case ErrorCode::InfiniteRing: return "InfiniteRing";
        case ErrorCode::CharZero: return "CharZero";
        case ErrorCode::NotAnIdeal: return "NotAnIdeal";
        case ErrorCode::NotNilIdeal: return "NotNilIdeal";
        case ErrorCode::WitnessInvalid: return "WitnessInvalid";
        case ErrorCode::NotPeriodic: return "NotPeriodic";
        case ErrorCode::InvalidDescriptor: return "InvalidDescriptor";
        case ErrorCode::InvalidGroup: return "InvalidGroup";
        case ErrorCode::OwnerMismatch: return "OwnerMismatch";
        case ErrorCode::SyntaxError: return "SyntaxError";
        case ErrorCode::SemanticError: return "SemanticError";
        case ErrorCode::WrongShape: return "WrongShape";
        case ErrorCode::Unsupported: return "Unsupported";
    }
    return "Unknown";
}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

Ring::Ring(std::string name, std::optional<RingDescriptor> descriptor)
    : id_(next_ring_id.fetch_add(1)), name_(std::move(name)), descriptor_(std::move(descriptor)) {}

void Ring::check_owner(const Element& e) const {
    if (e.owner() != id_) {
        fail(ErrorCode::OwnerMismatch, fmt::format("element does not belong to {}", name_));
    }
}

Element Ring::pow(const Element& x, std::uint64_t exponent) const {
    Element result = one();
    Element base = x;
    while (exponent > 0) {
        if (exponent & 1U) result = mul(result, base);
        exponent >>= 1U;
        if (exponent > 0) base = mul(base, base);
    }
    return result;
}

Element Ring::from_integer(std::int64_t k) const {
    Element result = zero();
    Element step = k < 0 ? neg(one()) : one();
    auto magnitude = static_cast<std::uint64_t>(k < 0 ? -(k + 1) : k) + (k < 0 ? 1U : 0U);
    while (magnitude > 0) {
        if (magnitude & 1U) result = add(result, step);
        magnitude >>= 1U;
        if (magnitude > 0) step = add(step, step);
    }
    return result;
}

const FiniteRing& Ring::finite() const {
    const auto* f = dynamic_cast<const FiniteRing*>(this);
    if (f == nullptr) {
        fail(ErrorCode::InfiniteRing, fmt::format("{} is infinite", name_));
    }
    return *f;
}

FiniteRing::FiniteRing(std::string name, std::optional<RingDescriptor> descriptor, std::uint64_t size,
                       std::uint64_t cap)
    : Ring(std::move(name), std::move(descriptor)), size_(size), cap_(cap) {}

void FiniteRing::require_enumerable() const {
    if (!enumerable()) {
        fail(ErrorCode::CapExceeded,
             fmt::format("{} has {} elements, above the enumeration cap {}", name(),
                         size_ == std::numeric_limits<std::uint64_t>::max() ? std::string("too many")
                                                                            : std::to_string(size_),
                         cap_));
    }
}

std::uint64_t FiniteRing::characteristic() const { return additive_order(one()); }

bool FiniteRing::is_commutative() const {
    // Bilinearity: commuting on an additive generating set is enough.
    auto basis = additive_basis();
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            if (!Ring::commute(basis[i], basis[j])) return false;
        }
    }
    return true;
}

void FiniteRing::ensure_tables() const {
    std::call_once(tables_once_, [this] {
        if (size_ > kTableThreshold) return;
        auto n = static_cast<std::size_t>(size_);
        add_table_.resize(n * n);
        mul_table_.resize(n * n);
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                add_table_[a * n + b] = static_cast<std::uint16_t>(add_direct(static_cast<ElemId>(a), static_cast<ElemId>(b)));
                mul_table_[a * n + b] = static_cast<std::uint16_t>(mul_direct(static_cast<ElemId>(a), static_cast<ElemId>(b)));
            }
        }
    });
}

ElemId FiniteRing::one_id() const {
    std::call_once(one_once_, [this] { one_id_ = id_of_direct(one()); });
    return one_id_;
}

ElemId FiniteRing::add(ElemId a, ElemId b) const {
    ensure_tables();
    if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * size_ + b];
    return add_direct(a, b);
}

ElemId FiniteRing::neg(ElemId a) const { return neg_direct(a); }

ElemId FiniteRing::mul(ElemId a, ElemId b) const {
    ensure_tables();
    if (!mul_table_.empty()) return mul_table_[static_cast<std::size_t>(a) * size_ + b];
    return mul_direct(a, b);
}

ElemId FiniteRing::pow(ElemId x, std::uint64_t exponent) const {
    ElemId result = one_id();
    ElemId base = x;
    while (exponent > 0) {
        if (exponent & 1U) result = mul(result, base);
        exponent >>= 1U;
        if (exponent > 0) base = mul(base, base);
    }
    return result;
}

Element FiniteRing::element(ElemId id) const {
    require_enumerable();
    if (id >= size_) fail(ErrorCode::WrongShape, fmt::format("element id {} out of range for {}", id, name()));
    return element_direct(id);
}

ElemId FiniteRing::id_of(const Element& e) const {
    require_enumerable();
    check_owner(e);
    return id_of_direct(e);
}

std::vector<Element> FiniteRing::elements() const {
    require_enumerable();
    std::vector<Element> out;
    out.reserve(static_cast<std::size_t>(size_));
    for (std::uint64_t i = 0; i < size_; ++i) out.push_back(element_direct(static_cast<ElemId>(i)));
    return out;
}

const std::vector<ElemId>& FiniteRing::additive_generators() const {
    require_enumerable();
    std::call_once(generators_once_, [this] {
        for (const Element& b : additive_basis()) generators_.push_back(id_of_direct(b));
    });
    return generators_;
}

}  // namespace ringlab
