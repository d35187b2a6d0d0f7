#include "ringlab/dsl.hpp"

#include <fmt/format.h>

#include <cctype>

#include "ringlab/construct.hpp"
#include "ringlab/error.hpp"
#include "ringlab/ideal.hpp"
#include "rings_impl.hpp"

namespace ringlab {

namespace {

constexpr std::int64_t kMaxInt = std::int64_t{1} << 62;

class Cursor {
public:
    explicit Cursor(std::string_view text) : text_(text) {}

    std::size_t pos() const { return pos_; }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool at_end() {
        skip_ws();
        return pos_ >= text_.size();
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool accept(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool accept(std::string_view word) {
        skip_ws();
        if (text_.substr(pos_, word.size()) == word) {
            pos_ += word.size();
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) syntax(fmt::format("'{}'", c));
    }

    [[noreturn]] void syntax(const std::string& expected) {
        skip_ws();
        std::size_t at = std::min(pos_, text_.empty() ? 0 : text_.size() - 1);
        std::string found = pos_ < text_.size() ? fmt::format("'{}'", text_[pos_]) : std::string("end of input");
        throw ParseError(ErrorCode::SyntaxError, at, expected,
                         fmt::format("syntax error at position {}: expected {}, found {}", pos_, expected, found));
    }

    [[noreturn]] void semantic(std::size_t at, const std::string& message) {
        at = std::min(at, text_.empty() ? 0 : text_.size() - 1);
        throw ParseError(ErrorCode::SemanticError, at, "", fmt::format("at position {}: {}", at, message));
    }

    [[noreturn]] void shape(std::size_t at, const std::string& message) {
        at = std::min(at, text_.empty() ? 0 : text_.size() - 1);
        throw ParseError(ErrorCode::WrongShape, at, "", fmt::format("at position {}: {}", at, message));
    }

    /// Unsigned decimal.
    std::int64_t integer(bool allow_zero = false) {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) syntax("integer");
        BigInt value = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            value = value * 10 + (text_[pos_] - '0');
            ++pos_;
            if (value > kMaxInt) semantic(start, "integer too large");
        }
        if (value == 0 && !allow_zero) semantic(start, "integer must be at least 1");
        return static_cast<std::int64_t>(value);
    }

    /// Signed decimal of any length.
    BigInt signed_integer() {
        skip_ws();
        bool negative = false;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
            negative = text_[pos_] == '-';
            ++pos_;
        }
        skip_ws();
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) syntax("integer");
        BigInt value = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            value = value * 10 + (text_[pos_] - '0');
            ++pos_;
        }
        return negative ? BigInt(-value) : value;
    }

    /// Group element names: anything up to a separator.
    std::string name() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (std::isspace(static_cast<unsigned char>(c)) || c == ':' || c == ',' || c == '{' || c == '}') break;
            ++pos_;
        }
        if (start == pos_) syntax("group element name");
        return std::string(text_.substr(start, pos_ - start));
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

RingDescriptor parse_ring_expr(Cursor& in);

GroupSpec parse_group(Cursor& in) {
    if (in.accept("S3")) return GroupSpec::s3();
    if (in.accept("D4")) return GroupSpec::d4();
    if (in.accept("Q8")) return GroupSpec::q8();
    if (in.accept('C')) {
        std::size_t at = in.pos();
        std::int64_t n = in.integer();
        if (in.accept('x')) {
            in.expect('C');
            std::int64_t m = in.integer();
            if (n * m > 4096) in.semantic(at, "cyclic group order above 4096");
            return GroupSpec::cyclic_product(static_cast<int>(n), static_cast<int>(m));
        }
        if (n > 4096) in.semantic(at, "cyclic group order above 4096");
        return GroupSpec::cyclic(static_cast<int>(n));
    }
    in.syntax("group (Cn, Cn x Cm, S3, D4, Q8)");
}

std::int64_t modulus_arg(Cursor& in, std::size_t at) {
    std::int64_t n = in.integer(true);
    if (n < 2) in.semantic(at, fmt::format("Z{} needs n >= 2", n));
    return n;
}

RingDescriptor parse_atom(Cursor& in) {
    in.skip_ws();
    std::size_t at = in.pos();
    if (in.accept('(')) {
        RingDescriptor inner = parse_ring_expr(in);
        in.expect(')');
        return inner;
    }
    if (in.accept("ZZ")) return RingDescriptor::integers();
    if (in.accept("GF")) {
        in.expect('(');
        std::size_t base_at = in.pos();
        std::int64_t p = in.integer();
        in.expect('^');
        std::int64_t k = in.integer();
        in.expect(')');
        if (!is_prime(p)) in.semantic(base_at, fmt::format("GF base {} is not prime", p));
        if (k > 64) in.semantic(base_at, "GF exponent above 64");
        return RingDescriptor::poly_quotient(p, least_irreducible(p, static_cast<int>(k)));
    }
    if (in.accept("POLY")) {
        in.expect('(');
        in.expect('Z');
        std::int64_t n = modulus_arg(in, at);
        in.expect(')');
        return RingDescriptor::poly(n);
    }
    if (in.accept('Z')) return RingDescriptor::zn(modulus_arg(in, at));
    if (in.peek() == 'M' || in.peek() == 'T') {
        bool triangular = in.peek() == 'T';
        in.accept(triangular ? 'T' : 'M');
        std::int64_t k = in.integer(true);
        if (k < 1 || k > 4) in.semantic(at, fmt::format("matrix size {} outside 1..4", k));
        in.expect('(');
        RingDescriptor inner = parse_ring_expr(in);
        in.expect(')');
        return triangular ? RingDescriptor::triangular(static_cast<int>(k), std::move(inner))
                          : RingDescriptor::matrix(static_cast<int>(k), std::move(inner));
    }
    if (in.accept('Q')) {
        in.expect('(');
        in.expect('Z');
        std::int64_t n = modulus_arg(in, at);
        in.expect(',');
        in.expect('[');
        std::vector<std::int64_t> coefficients{in.integer(true)};
        while (in.accept(',')) coefficients.push_back(in.integer(true));
        in.expect(']');
        in.expect(')');
        if (coefficients.size() < 2) in.semantic(at, "polynomial modulus must have degree >= 1");
        for (auto& c : coefficients) c %= n;
        if (coefficients.back() != 1) in.semantic(at, "polynomial modulus must be monic");
        return RingDescriptor::poly_quotient(n, std::move(coefficients));
    }
    in.syntax("ring (Zn, ZZ, Mk(..), Tk(..), GF(p^k), POLY(Zn), Q(Zn, [..]) or parenthesised ring)");
}

RingDescriptor parse_term(Cursor& in) {
    RingDescriptor atom = parse_atom(in);
    if (in.accept('[')) {
        GroupSpec g = parse_group(in);
        in.expect(']');
        return RingDescriptor::group_ring(std::move(atom), std::move(g));
    }
    return atom;
}

RingDescriptor parse_ring_expr(Cursor& in) {
    RingDescriptor result = parse_term(in);
    while (in.accept('x')) result = RingDescriptor::product(std::move(result), parse_term(in));
    return result;
}

std::string print_group(const GroupSpec& g) {
    switch (g.kind) {
        case GroupSpec::Kind::Cyclic: return fmt::format("C{}", g.n);
        case GroupSpec::Kind::CyclicProduct: return fmt::format("C{} x C{}", g.n, g.m);
        case GroupSpec::Kind::S3: return "S3";
        case GroupSpec::Kind::D4: return "D4";
        case GroupSpec::Kind::Q8: return "Q8";
        case GroupSpec::Kind::Custom: return fmt::format("<{}:{}>", g.custom ? g.custom->name() : "custom", g.n);
    }
    return "?";
}

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) out += ", ";
        out += parts[i];
    }
    return out;
}

std::size_t dim_of(const RingDescriptor& d) {
    return std::visit(
        [](const auto& node) -> std::size_t {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, desc::Zn>) {
                return 1;
            } else if constexpr (std::is_same_v<T, desc::Product>) {
                return dim_of(*node.left) + dim_of(*node.right);
            } else if constexpr (std::is_same_v<T, desc::Matrix> || std::is_same_v<T, desc::Triangular>) {
                return static_cast<std::size_t>(node.size * node.size) * dim_of(*node.inner);
            } else if constexpr (std::is_same_v<T, desc::GroupRing>) {
                return static_cast<std::size_t>(node.group.table()->order()) * dim_of(*node.inner);
            } else if constexpr (std::is_same_v<T, desc::PolyQuotient>) {
                return node.modulus.size() - 1;
            } else {
                return 0;
            }
        },
        d.node());
}

std::int64_t reduce_big(const BigInt& v, std::int64_t n) {
    BigInt r = v % n;
    if (r < 0) r += n;
    return static_cast<std::int64_t>(r);
}

// Appends the coordinates of one finite-ring literal.
void parse_value(const RingDescriptor& d, Cursor& in, Coords& out) {
    std::visit(
        [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, desc::Zn>) {
                out.push_back(reduce_big(in.signed_integer(), node.n));
            } else if constexpr (std::is_same_v<T, desc::Product>) {
                in.expect('(');
                parse_value(*node.left, in, out);
                in.expect(',');
                parse_value(*node.right, in, out);
                in.expect(')');
            } else if constexpr (std::is_same_v<T, desc::Matrix> || std::is_same_v<T, desc::Triangular>) {
                constexpr bool triangular = std::is_same_v<T, desc::Triangular>;
                std::size_t k = static_cast<std::size_t>(node.size);
                std::size_t w = dim_of(*node.inner);
                std::size_t start = in.pos();
                in.expect('[');
                for (std::size_t i = 0; i < k; ++i) {
                    if (i > 0 && !in.accept(',')) in.shape(in.pos(), fmt::format("matrix needs {} rows", k));
                    in.expect('[');
                    for (std::size_t j = 0; j < k; ++j) {
                        if (j > 0 && !in.accept(',')) in.shape(in.pos(), fmt::format("row needs {} entries", k));
                        std::size_t entry_at = in.pos();
                        std::size_t before = out.size();
                        parse_value(*node.inner, in, out);
                        if (triangular && i > j) {
                            for (std::size_t c = before; c < before + w; ++c) {
                                if (out[c] != 0) in.shape(entry_at, "triangular matrix has a nonzero entry below the diagonal");
                            }
                        }
                    }
                    if (in.peek() == ',') in.shape(in.pos(), fmt::format("row has more than {} entries", k));
                    in.expect(']');
                }
                if (in.peek() == ',') in.shape(start, fmt::format("matrix has more than {} rows", k));
                in.expect(']');
            } else if constexpr (std::is_same_v<T, desc::GroupRing>) {
                auto table = node.group.table();
                std::size_t w = dim_of(*node.inner);
                RingPtr inner = construct(*node.inner, 0);
                std::vector<Element> coeffs(static_cast<std::size_t>(table->order()), inner->zero());
                in.expect('{');
                if (!in.accept('}')) {
                    do {
                        std::size_t name_at = in.pos();
                        std::string name = in.name();
                        auto g = table->find(name);
                        if (!g) in.shape(name_at, fmt::format("unknown element '{}' of {}", name, table->name()));
                        in.expect(':');
                        Coords c;
                        parse_value(*node.inner, in, c);
                        auto& slot = coeffs[static_cast<std::size_t>(*g)];
                        slot = inner->add(slot, Element(inner->id(), std::move(c)));
                    } while (in.accept(','));
                    in.expect('}');
                }
                for (const auto& c : coeffs) {
                    out.insert(out.end(), c.coords().begin(), c.coords().end());
                }
                (void)w;
            } else if constexpr (std::is_same_v<T, desc::PolyQuotient>) {
                in.expect('[');
                Coords c{reduce_big(in.signed_integer(), node.n)};
                while (in.accept(',')) c.push_back(reduce_big(in.signed_integer(), node.n));
                in.expect(']');
                std::size_t deg = node.modulus.size() - 1;
                for (std::size_t top = c.size(); top-- > deg;) {
                    std::int64_t lead = c[top];
                    if (lead == 0) continue;
                    for (std::size_t k = 0; k <= deg; ++k) {
                        std::size_t pos = top - deg + k;
                        c[pos] = detail::mod_reduce(c[pos] - detail::mul_mod(lead, node.modulus[k], node.n), node.n);
                    }
                }
                c.resize(deg, 0);
                out.insert(out.end(), c.begin(), c.end());
            } else {
                in.semantic(in.pos(), "symbolic ring inside a finite constructor");
            }
        },
        d.node());
}

std::string print_value(const RingDescriptor& d, std::span<const std::int64_t> c) {
    return std::visit(
        [&](const auto& node) -> std::string {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, desc::Zn>) {
                return std::to_string(c[0]);
            } else if constexpr (std::is_same_v<T, desc::Product>) {
                std::size_t k = dim_of(*node.left);
                return fmt::format("({}, {})", print_value(*node.left, c.first(k)), print_value(*node.right, c.subspan(k)));
            } else if constexpr (std::is_same_v<T, desc::Matrix> || std::is_same_v<T, desc::Triangular>) {
                std::size_t k = static_cast<std::size_t>(node.size);
                std::size_t w = dim_of(*node.inner);
                std::vector<std::string> rows;
                for (std::size_t i = 0; i < k; ++i) {
                    std::vector<std::string> entries;
                    for (std::size_t j = 0; j < k; ++j) {
                        entries.push_back(print_value(*node.inner, c.subspan((i * k + j) * w, w)));
                    }
                    rows.push_back("[" + join(entries) + "]");
                }
                return "[" + join(rows) + "]";
            } else if constexpr (std::is_same_v<T, desc::GroupRing>) {
                auto table = node.group.table();
                std::size_t w = dim_of(*node.inner);
                std::vector<std::string> terms;
                for (int g = 0; g < table->order(); ++g) {
                    auto block = c.subspan(static_cast<std::size_t>(g) * w, w);
                    if (std::all_of(block.begin(), block.end(), [](std::int64_t v) { return v == 0; })) continue;
                    terms.push_back(fmt::format("{}: {}", table->element_name(g), print_value(*node.inner, block)));
                }
                return "{" + join(terms) + "}";
            } else if constexpr (std::is_same_v<T, desc::PolyQuotient> || std::is_same_v<T, desc::Poly>) {
                std::size_t len = c.size();
                while (len > 1 && c[len - 1] == 0) --len;
                std::vector<std::string> parts;
                for (std::size_t i = 0; i < len; ++i) parts.push_back(std::to_string(c[i]));
                if (parts.empty()) parts.push_back("0");
                return "[" + join(parts) + "]";
            } else {
                return "?";
            }
        },
        d.node());
}

bool needs_parens_as_term(const RingDescriptor& d) { return d.get<desc::Product>() != nullptr; }

bool needs_parens_as_group_base(const RingDescriptor& d) {
    return d.get<desc::Product>() != nullptr || d.get<desc::GroupRing>() != nullptr;
}

}  // namespace

RingDescriptor parse_ring(std::string_view text) {
    Cursor in(text);
    RingDescriptor d = parse_ring_expr(in);
    if (!in.at_end()) in.syntax("'x' or end of input");
    try {
        validate(d);
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(ErrorCode::SemanticError, 0, "", e.what());
    }
    return d;
}

std::string print(const RingDescriptor& d) {
    return std::visit(
        [](const auto& node) -> std::string {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, desc::Zn>) {
                return fmt::format("Z{}", node.n);
            } else if constexpr (std::is_same_v<T, desc::Integers>) {
                return "ZZ";
            } else if constexpr (std::is_same_v<T, desc::Product>) {
                std::string right = print(*node.right);
                if (needs_parens_as_term(*node.right)) right = "(" + right + ")";
                return print(*node.left) + " x " + right;
            } else if constexpr (std::is_same_v<T, desc::Matrix>) {
                return fmt::format("M{}({})", node.size, print(*node.inner));
            } else if constexpr (std::is_same_v<T, desc::Triangular>) {
                return fmt::format("T{}({})", node.size, print(*node.inner));
            } else if constexpr (std::is_same_v<T, desc::GroupRing>) {
                std::string base = print(*node.inner);
                if (needs_parens_as_group_base(*node.inner)) base = "(" + base + ")";
                return fmt::format("{}[{}]", base, print_group(node.group));
            } else if constexpr (std::is_same_v<T, desc::PolyQuotient>) {
                int k = static_cast<int>(node.modulus.size()) - 1;
                if (k <= 64 && is_prime(node.n) && least_irreducible(node.n, k) == node.modulus) {
                    return fmt::format("GF({}^{})", node.n, k);
                }
                std::vector<std::string> parts;
                for (std::int64_t c : node.modulus) parts.push_back(std::to_string(c));
                return fmt::format("Q(Z{}, [{}])", node.n, join(parts));
            } else {
                return fmt::format("POLY(Z{})", node.n);
            }
        },
        d.node());
}

Element parse_element(const Ring& ring, std::string_view text) {
    if (const auto* q = dynamic_cast<const QuotientRing*>(&ring)) {
        return q->project(parse_element(q->parent(), text));
    }
    if (!ring.descriptor()) fail(ErrorCode::Unsupported, "ring has no literal syntax");
    const RingDescriptor& d = *ring.descriptor();
    Cursor in(text);
    Element result;
    if (d.get<desc::Integers>()) {
        result = Element(ring.id(), in.signed_integer());
    } else if (const auto* poly = d.get<desc::Poly>()) {
        in.expect('[');
        Coords c{reduce_big(in.signed_integer(), poly->n)};
        while (in.accept(',')) c.push_back(reduce_big(in.signed_integer(), poly->n));
        in.expect(']');
        while (!c.empty() && c.back() == 0) c.pop_back();
        result = Element(ring.id(), std::move(c));
    } else {
        Coords c;
        parse_value(d, in, c);
        result = Element(ring.id(), std::move(c));
    }
    if (!in.at_end()) in.syntax("end of literal");
    return result;
}

std::string print(const Ring& ring, const Element& e) {
    if (const auto* q = dynamic_cast<const QuotientRing*>(&ring)) {
        return print(q->parent(), Element(q->parent().id(), e.coords()));
    }
    if (!ring.descriptor()) return "?";
    if (e.is_integer()) return e.integer().str();
    return print_value(*ring.descriptor(), e.coords());
}

}  // namespace ringlab
