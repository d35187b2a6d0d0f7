#include <fmt/format.h>

#include <algorithm>
#include <limits>
#include <numeric>

#include "ringlab/error.hpp"
#include "rings_impl.hpp"

namespace ringlab::detail {

void Arith::add(std::span<const std::int64_t> a, std::span<const std::int64_t> b, std::span<std::int64_t> out) const {
    for (std::size_t j = 0; j < moduli_.size(); ++j) {
        std::int64_t s = a[j] + b[j];
        out[j] = s >= moduli_[j] ? s - moduli_[j] : s;
    }
}

void Arith::neg(std::span<const std::int64_t> a, std::span<std::int64_t> out) const {
    for (std::size_t j = 0; j < moduli_.size(); ++j) out[j] = a[j] == 0 ? 0 : moduli_[j] - a[j];
}

namespace {

class ZnArith final : public Arith {
public:
    explicit ZnArith(std::int64_t n) : n_(n) { moduli_ = {n}; }

    void mul(std::span<const std::int64_t> a, std::span<const std::int64_t> b, std::span<std::int64_t> out) const override {
        out[0] = mul_mod(a[0], b[0], n_);
    }
    void one(std::span<std::int64_t> out) const override { out[0] = 1 % n_; }

private:
    std::int64_t n_;
};

class ProductArith final : public Arith {
public:
    ProductArith(std::unique_ptr<Arith> left, std::unique_ptr<Arith> right)
        : left_(std::move(left)), right_(std::move(right)) {
        moduli_ = left_->moduli();
        moduli_.insert(moduli_.end(), right_->moduli().begin(), right_->moduli().end());
    }

    void mul(std::span<const std::int64_t> a, std::span<const std::int64_t> b, std::span<std::int64_t> out) const override {
        std::size_t k = left_->dim();
        left_->mul(a.first(k), b.first(k), out.first(k));
        right_->mul(a.subspan(k), b.subspan(k), out.subspan(k));
    }
    void one(std::span<std::int64_t> out) const override {
        std::size_t k = left_->dim();
        left_->one(out.first(k));
        right_->one(out.subspan(k));
    }

private:
    std::unique_ptr<Arith> left_;
    std::unique_ptr<Arith> right_;
};

// Row-major blocks; a triangular carrier pins the below-diagonal coordinates to modulus 1.
class MatrixArith final : public Arith {
public:
    MatrixArith(int size, std::unique_ptr<Arith> inner, bool triangular)
        : size_(static_cast<std::size_t>(size)), inner_(std::move(inner)), triangular_(triangular) {
        for (std::size_t i = 0; i < size_; ++i) {
            for (std::size_t j = 0; j < size_; ++j) {
                if (triangular_ && i > j) {
                    moduli_.insert(moduli_.end(), inner_->dim(), 1);
                } else {
                    moduli_.insert(moduli_.end(), inner_->moduli().begin(), inner_->moduli().end());
                }
            }
        }
    }

    void mul(std::span<const std::int64_t> a, std::span<const std::int64_t> b, std::span<std::int64_t> out) const override {
        std::size_t w = inner_->dim();
        Coords term(w), acc(w);
        for (std::size_t i = 0; i < size_; ++i) {
            for (std::size_t j = 0; j < size_; ++j) {
                auto target = out.subspan((i * size_ + j) * w, w);
                std::fill(target.begin(), target.end(), 0);
                if (triangular_ && i > j) continue;
                std::fill(acc.begin(), acc.end(), 0);
                std::size_t lo = triangular_ ? i : 0;
                std::size_t hi = triangular_ ? j + 1 : size_;
                for (std::size_t l = lo; l < hi; ++l) {
                    inner_->mul(a.subspan((i * size_ + l) * w, w), b.subspan((l * size_ + j) * w, w), term);
                    inner_->add(acc, term, acc);
                }
                std::copy(acc.begin(), acc.end(), target.begin());
            }
        }
    }
    void one(std::span<std::int64_t> out) const override {
        std::size_t w = inner_->dim();
        std::fill(out.begin(), out.end(), 0);
        for (std::size_t i = 0; i < size_; ++i) inner_->one(out.subspan((i * size_ + i) * w, w));
    }

private:
    std::size_t size_;
    std::unique_ptr<Arith> inner_;
    bool triangular_;
};

class GroupRingArith final : public Arith {
public:
    GroupRingArith(std::unique_ptr<Arith> inner, std::shared_ptr<const GroupTable> group)
        : inner_(std::move(inner)), group_(std::move(group)) {
        for (int g = 0; g < group_->order(); ++g) {
            moduli_.insert(moduli_.end(), inner_->moduli().begin(), inner_->moduli().end());
        }
    }

    void mul(std::span<const std::int64_t> a, std::span<const std::int64_t> b, std::span<std::int64_t> out) const override {
        std::size_t w = inner_->dim();
        std::fill(out.begin(), out.end(), 0);
        Coords term(w);
        int order = group_->order();
        for (int g = 0; g < order; ++g) {
            auto ag = a.subspan(static_cast<std::size_t>(g) * w, w);
            if (std::all_of(ag.begin(), ag.end(), [](std::int64_t v) { return v == 0; })) continue;
            for (int h = 0; h < order; ++h) {
                auto bh = b.subspan(static_cast<std::size_t>(h) * w, w);
                inner_->mul(ag, bh, term);
                auto target = out.subspan(static_cast<std::size_t>(group_->mul(g, h)) * w, w);
                inner_->add(target, term, target);
            }
        }
    }
    void one(std::span<std::int64_t> out) const override {
        std::fill(out.begin(), out.end(), 0);
        inner_->one(out.first(inner_->dim()));
    }

private:
    std::unique_ptr<Arith> inner_;
    std::shared_ptr<const GroupTable> group_;
};

class PolyQuotientArith final : public Arith {
public:
    PolyQuotientArith(std::int64_t n, Coords modulus) : n_(n), modulus_(std::move(modulus)) {
        moduli_.assign(modulus_.size() - 1, n);
    }

    void mul(std::span<const std::int64_t> a, std::span<const std::int64_t> b, std::span<std::int64_t> out) const override {
        std::size_t d = moduli_.size();
        Coords prod(2 * d - 1, 0);
        for (std::size_t i = 0; i < d; ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < d; ++j) {
                prod[i + j] = (prod[i + j] + mul_mod(a[i], b[j], n_)) % n_;
            }
        }
        for (std::size_t deg = prod.size(); deg-- > d;) {
            std::int64_t c = prod[deg];
            if (c == 0) continue;
            for (std::size_t k = 0; k <= d; ++k) {
                std::size_t pos = deg - d + k;
                prod[pos] = mod_reduce(prod[pos] - mul_mod(c, modulus_[k], n_), n_);
            }
        }
        std::copy(prod.begin(), prod.begin() + static_cast<std::ptrdiff_t>(d), out.begin());
    }
    void one(std::span<std::int64_t> out) const override {
        std::fill(out.begin(), out.end(), 0);
        out[0] = 1 % n_;
    }

private:
    std::int64_t n_;
    Coords modulus_;
};

}  // namespace

std::unique_ptr<Arith> make_arith(const RingDescriptor& d) {
    return std::visit(
        [](const auto& node) -> std::unique_ptr<Arith> {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, desc::Zn>) {
                return std::make_unique<ZnArith>(node.n);
            } else if constexpr (std::is_same_v<T, desc::Product>) {
                return std::make_unique<ProductArith>(make_arith(*node.left), make_arith(*node.right));
            } else if constexpr (std::is_same_v<T, desc::Matrix>) {
                return std::make_unique<MatrixArith>(node.size, make_arith(*node.inner), false);
            } else if constexpr (std::is_same_v<T, desc::Triangular>) {
                return std::make_unique<MatrixArith>(node.size, make_arith(*node.inner), true);
            } else if constexpr (std::is_same_v<T, desc::GroupRing>) {
                return std::make_unique<GroupRingArith>(make_arith(*node.inner), node.group.table());
            } else if constexpr (std::is_same_v<T, desc::PolyQuotient>) {
                return std::make_unique<PolyQuotientArith>(node.n, node.modulus);
            } else {
                fail(ErrorCode::InvalidDescriptor, "symbolic rings have no coordinate arithmetic");
            }
        },
        d.node());
}

namespace {

std::uint64_t saturating_product(const Coords& moduli) {
    std::uint64_t size = 1;
    for (std::int64_t m : moduli) {
        auto um = static_cast<std::uint64_t>(m);
        if (size > std::numeric_limits<std::uint64_t>::max() / um) return std::numeric_limits<std::uint64_t>::max();
        size *= um;
    }
    return size;
}

}  // namespace

CoordRing::CoordRing(std::string name, RingDescriptor descriptor, std::unique_ptr<Arith> arith, std::uint64_t cap)
    : FiniteRing(std::move(name), std::move(descriptor), saturating_product(arith->moduli()), cap),
      arith_(std::move(arith)) {
    const Coords& m = arith_->moduli();
    strides_.assign(m.size(), 0);
    if (enumerable()) {
        std::uint64_t stride = 1;
        for (std::size_t j = m.size(); j-- > 0;) {
            strides_[j] = stride;
            stride *= static_cast<std::uint64_t>(m[j]);
        }
    }
}

void CoordRing::check(const Element& e) const {
    check_owner(e);
    if (e.is_integer() || e.coords().size() != arith_->dim()) {
        fail(ErrorCode::WrongShape, fmt::format("element has the wrong coordinate shape for {}", name()));
    }
}

Element CoordRing::zero() const { return Element(id(), Coords(arith_->dim(), 0)); }

Element CoordRing::one() const {
    Coords c(arith_->dim(), 0);
    arith_->one(c);
    return Element(id(), std::move(c));
}

Element CoordRing::add(const Element& a, const Element& b) const {
    check(a);
    check(b);
    Coords c(arith_->dim());
    arith_->add(a.coords(), b.coords(), c);
    return Element(id(), std::move(c));
}

Element CoordRing::neg(const Element& a) const {
    check(a);
    Coords c(arith_->dim());
    arith_->neg(a.coords(), c);
    return Element(id(), std::move(c));
}

Element CoordRing::mul(const Element& a, const Element& b) const {
    check(a);
    check(b);
    Coords c(arith_->dim());
    arith_->mul(a.coords(), b.coords(), c);
    return Element(id(), std::move(c));
}

std::uint64_t CoordRing::additive_order(const Element& e) const {
    check(e);
    std::uint64_t order = 1;
    const Coords& m = arith_->moduli();
    for (std::size_t j = 0; j < m.size(); ++j) {
        auto part = static_cast<std::uint64_t>(m[j] / std::gcd(m[j], e.coords()[j]));
        order = std::lcm(order, part);
    }
    return order;
}

std::vector<Element> CoordRing::additive_basis() const {
    std::vector<Element> basis;
    const Coords& m = arith_->moduli();
    for (std::size_t j = 0; j < m.size(); ++j) {
        if (m[j] == 1) continue;
        Coords c(m.size(), 0);
        c[j] = 1;
        basis.emplace_back(id(), std::move(c));
    }
    return basis;
}

Coords CoordRing::decode(ElemId id) const {
    const Coords& m = arith_->moduli();
    Coords c(m.size(), 0);
    std::uint64_t rest = id;
    for (std::size_t j = 0; j < m.size(); ++j) {
        if (m[j] == 1) continue;
        c[j] = static_cast<std::int64_t>(rest / strides_[j]);
        rest %= strides_[j];
    }
    return c;
}

ElemId CoordRing::encode(std::span<const std::int64_t> c) const {
    std::uint64_t id = 0;
    for (std::size_t j = 0; j < c.size(); ++j) id += static_cast<std::uint64_t>(c[j]) * strides_[j];
    return static_cast<ElemId>(id);
}

ElemId CoordRing::add_direct(ElemId a, ElemId b) const {
    Coords ca = decode(a), cb = decode(b), c(arith_->dim());
    arith_->add(ca, cb, c);
    return encode(c);
}

ElemId CoordRing::mul_direct(ElemId a, ElemId b) const {
    Coords ca = decode(a), cb = decode(b), c(arith_->dim());
    arith_->mul(ca, cb, c);
    return encode(c);
}

ElemId CoordRing::neg_direct(ElemId a) const {
    Coords ca = decode(a), c(arith_->dim());
    arith_->neg(ca, c);
    return encode(c);
}

Element CoordRing::element_direct(ElemId id) const { return Element(this->id(), decode(id)); }

ElemId CoordRing::id_of_direct(const Element& e) const {
    check(e);
    const Coords& m = arith_->moduli();
    for (std::size_t j = 0; j < m.size(); ++j) {
        if (e.coords()[j] < 0 || e.coords()[j] >= m[j]) {
            fail(ErrorCode::WrongShape, fmt::format("coordinate {} out of range in {}", j, name()));
        }
    }
    return encode(e.coords());
}

IntegerRing::IntegerRing() : Ring("ZZ", RingDescriptor::integers()) {}

Element IntegerRing::zero() const { return make(0); }
Element IntegerRing::one() const { return make(1); }

Element IntegerRing::add(const Element& a, const Element& b) const {
    check_owner(a);
    check_owner(b);
    return make(a.integer() + b.integer());
}

Element IntegerRing::neg(const Element& a) const {
    check_owner(a);
    return make(-a.integer());
}

Element IntegerRing::mul(const Element& a, const Element& b) const {
    check_owner(a);
    check_owner(b);
    return make(a.integer() * b.integer());
}

PolynomialRing::PolynomialRing(std::int64_t n, std::string name, RingDescriptor descriptor)
    : Ring(std::move(name), std::move(descriptor)), n_(n) {}

Element PolynomialRing::make(Coords coefficients) const {
    for (auto& c : coefficients) c = mod_reduce(c, n_);
    while (!coefficients.empty() && coefficients.back() == 0) coefficients.pop_back();
    return Element(id(), std::move(coefficients));
}

Element PolynomialRing::zero() const { return make({}); }
Element PolynomialRing::one() const { return make({1}); }

Element PolynomialRing::add(const Element& a, const Element& b) const {
    check_owner(a);
    check_owner(b);
    Coords c(std::max(a.coords().size(), b.coords().size()), 0);
    for (std::size_t i = 0; i < a.coords().size(); ++i) c[i] += a.coords()[i];
    for (std::size_t i = 0; i < b.coords().size(); ++i) c[i] = (c[i] + b.coords()[i]) % n_;
    return make(std::move(c));
}

Element PolynomialRing::neg(const Element& a) const {
    check_owner(a);
    Coords c = a.coords();
    for (auto& v : c) v = -v;
    return make(std::move(c));
}

Element PolynomialRing::mul(const Element& a, const Element& b) const {
    check_owner(a);
    check_owner(b);
    if (a.coords().empty() || b.coords().empty()) return zero();
    Coords c(a.coords().size() + b.coords().size() - 1, 0);
    for (std::size_t i = 0; i < a.coords().size(); ++i) {
        for (std::size_t j = 0; j < b.coords().size(); ++j) {
            c[i + j] = (c[i + j] + mul_mod(a.coords()[i], b.coords()[j], n_)) % n_;
        }
    }
    return make(std::move(c));
}

}  // namespace ringlab::detail
