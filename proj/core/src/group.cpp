#include "ringlab/group.hpp"

#include <fmt/format.h>

#include <array>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#include "ringlab/error.hpp"

namespace ringlab {

GroupTable::GroupTable(std::string name, std::vector<std::vector<int>> table, std::vector<std::string> element_names,
                       std::optional<bool> nilpotent)
    : name_(std::move(name)), order_(static_cast<int>(table.size())), names_(std::move(element_names)),
      nilpotent_(nilpotent) {
    if (order_ < 1) {
        fail(ErrorCode::InvalidGroup, "group table is empty");
    }
    if (names_.size() != table.size()) {
        fail(ErrorCode::InvalidGroup, "group element name list does not match the order");
    }
    table_.reserve(static_cast<std::size_t>(order_ * order_));
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (table[i].size() != table.size()) {
            fail(ErrorCode::InvalidGroup, fmt::format("row {} has {} entries, expected {}", i, table[i].size(), order_));
        }
        for (int v : table[i]) {
            if (v < 0 || v >= order_) {
                fail(ErrorCode::InvalidGroup, fmt::format("row {} has out-of-range entry {}", i, v));
            }
            table_.push_back(v);
        }
    }
    for (int a = 0; a < order_; ++a) {
        if (mul(0, a) != a || mul(a, 0) != a) {
            fail(ErrorCode::InvalidGroup, "index 0 is not the identity");
        }
    }
    inverse_.assign(static_cast<std::size_t>(order_), -1);
    for (int a = 0; a < order_; ++a) {
        for (int b = 0; b < order_; ++b) {
            if (mul(a, b) == 0 && mul(b, a) == 0) {
                inverse_[static_cast<std::size_t>(a)] = b;
                break;
            }
        }
        if (inverse_[static_cast<std::size_t>(a)] < 0) {
            fail(ErrorCode::InvalidGroup, fmt::format("element {} has no two-sided inverse", a));
        }
    }
    for (int a = 0; a < order_; ++a) {
        for (int b = 0; b < order_; ++b) {
            for (int c = 0; c < order_; ++c) {
                if (mul(mul(a, b), c) != mul(a, mul(b, c))) {
                    fail(ErrorCode::InvalidGroup, fmt::format("associativity fails on ({}, {}, {})", a, b, c));
                }
            }
        }
    }
    if (abelian()) {
        nilpotent_ = true;
    }
}

namespace {

std::vector<std::vector<int>> table_from(int order, auto&& product) {
    std::vector<std::vector<int>> rows(static_cast<std::size_t>(order), std::vector<int>(static_cast<std::size_t>(order)));
    for (int a = 0; a < order; ++a) {
        for (int b = 0; b < order; ++b) {
            rows[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = product(a, b);
        }
    }
    return rows;
}

// Elements s^a r^b, stored at index a*n + b, with r s = s r^-1.
GroupTable dihedral(int n, std::string name, std::optional<bool> nilpotent) {
    auto product = [n](int x, int y) {
        int a1 = x / n, b1 = x % n, a2 = y / n, b2 = y % n;
        int b = ((a2 != 0 ? -b1 : b1) + b2) % n;
        if (b < 0) b += n;
        return ((a1 + a2) % 2) * n + b;
    };
    std::vector<std::string> names;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < n; ++b) {
            std::string s = a == 0 ? "" : "s";
            if (b == 1) s += "r";
            if (b > 1) s += fmt::format("r{}", b);
            names.push_back(s.empty() ? "e" : s);
        }
    }
    return GroupTable(std::move(name), table_from(2 * n, product), std::move(names), nilpotent);
}

}  // namespace

GroupTable GroupTable::cyclic(int n) {
    if (n < 1) fail(ErrorCode::InvalidGroup, "cyclic group order must be at least 1");
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back(fmt::format("g{}", i));
    return GroupTable(fmt::format("C{}", n), table_from(n, [n](int a, int b) { return (a + b) % n; }),
                      std::move(names), true);
}

GroupTable GroupTable::cyclic_product(int n, int m) {
    if (n < 1 || m < 1) fail(ErrorCode::InvalidGroup, "cyclic group order must be at least 1");
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) names.push_back(fmt::format("g{}_{}", i, j));
    }
    auto product = [n, m](int a, int b) { return ((a / m + b / m) % n) * m + (a % m + b % m) % m; };
    return GroupTable(fmt::format("C{}xC{}", n, m), table_from(n * m, product), std::move(names), true);
}

GroupTable GroupTable::symmetric3() { return dihedral(3, "S3", false); }

GroupTable GroupTable::dihedral4() { return dihedral(4, "D4", true); }

GroupTable GroupTable::quaternion8() {
    // Index layout: 1, -1, i, -i, j, -j, k, -k; unit u with sign s sits at 2*u + s.
    static constexpr std::array<std::array<int, 4>, 4> unit_product{{
        {0, 1, 2, 3},  // 1 * {1, i, j, k}
        {1, 0, 3, 2},  // i * ...: i*i = -1, i*j = k, i*k = -j
        {2, 3, 0, 1},  // j * ...: j*i = -k, j*j = -1, j*k = i
        {3, 2, 1, 0},
    }};
    static constexpr std::array<std::array<int, 4>, 4> unit_sign{{
        {0, 0, 0, 0},
        {0, 1, 0, 1},
        {0, 1, 1, 0},
        {0, 0, 1, 1},
    }};
    auto product = [](int x, int y) {
        int ux = x / 2, sx = x % 2, uy = y / 2, sy = y % 2;
        int u = unit_product[static_cast<std::size_t>(ux)][static_cast<std::size_t>(uy)];
        int s = (sx + sy + unit_sign[static_cast<std::size_t>(ux)][static_cast<std::size_t>(uy)]) % 2;
        return 2 * u + s;
    };
    return GroupTable("Q8", table_from(8, product), {"1", "-1", "i", "-i", "j", "-j", "k", "-k"}, true);
}

GroupTable GroupTable::parse(const std::string& text, std::string name) {
    std::istringstream in(text);
    int k = 0;
    if (!(in >> k) || k < 1) {
        fail(ErrorCode::InvalidGroup, "group file must start with a positive order");
    }
    std::vector<std::vector<int>> rows(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(k)));
    for (auto& row : rows) {
        for (auto& v : row) {
            if (!(in >> v)) fail(ErrorCode::InvalidGroup, "group file has fewer than k*k entries");
        }
    }
    std::string rest;
    if (in >> rest) fail(ErrorCode::InvalidGroup, "group file has trailing data");
    std::vector<std::string> names;
    for (int i = 0; i < k; ++i) names.push_back(fmt::format("g{}", i));
    return GroupTable(std::move(name), std::move(rows), std::move(names), std::nullopt);
}

GroupTable GroupTable::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::InvalidGroup, fmt::format("cannot open group file {}", path.string()));
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str(), path.stem().string());
}

std::optional<int> GroupTable::find(const std::string& element_name) const {
    for (int i = 0; i < order_; ++i) {
        if (names_[static_cast<std::size_t>(i)] == element_name) return i;
    }
    return std::nullopt;
}

bool GroupTable::abelian() const {
    for (int a = 0; a < order_; ++a) {
        for (int b = a + 1; b < order_; ++b) {
            if (mul(a, b) != mul(b, a)) return false;
        }
    }
    return true;
}

std::vector<int> group_center(const GroupTable& group) {
    std::vector<int> center;
    for (int a = 0; a < group.order(); ++a) {
        bool central = true;
        for (int b = 0; b < group.order() && central; ++b) {
            central = group.mul(a, b) == group.mul(b, a);
        }
        if (central) center.push_back(a);
    }
    return center;
}

GroupSpec GroupSpec::from_table(GroupTable table) {
    GroupSpec spec;
    spec.kind = Kind::Custom;
    spec.n = table.order();
    spec.custom = std::make_shared<const GroupTable>(std::move(table));
    return spec;
}

std::shared_ptr<const GroupTable> GroupSpec::table() const {
    static std::mutex mutex;
    static std::map<std::tuple<int, int, int>, std::shared_ptr<const GroupTable>> presets;
    if (kind == Kind::Custom) return custom;
    std::lock_guard lock(mutex);
    auto key = std::make_tuple(static_cast<int>(kind), n, m);
    auto it = presets.find(key);
    if (it != presets.end()) return it->second;
    std::shared_ptr<const GroupTable> built;
    switch (kind) {
        case Kind::Cyclic: built = std::make_shared<const GroupTable>(GroupTable::cyclic(n)); break;
        case Kind::CyclicProduct: built = std::make_shared<const GroupTable>(GroupTable::cyclic_product(n, m)); break;
        case Kind::S3: built = std::make_shared<const GroupTable>(GroupTable::symmetric3()); break;
        case Kind::D4: built = std::make_shared<const GroupTable>(GroupTable::dihedral4()); break;
        case Kind::Q8: built = std::make_shared<const GroupTable>(GroupTable::quaternion8()); break;
        case Kind::Custom: break;
    }
    presets.emplace(key, built);
    return built;
}

bool operator==(const GroupSpec& a, const GroupSpec& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case GroupSpec::Kind::Cyclic: return a.n == b.n;
        case GroupSpec::Kind::CyclicProduct: return a.n == b.n && a.m == b.m;
        case GroupSpec::Kind::Custom: return a.custom && b.custom && *a.custom == *b.custom;
        default: return true;
    }
}

}  // namespace ringlab
