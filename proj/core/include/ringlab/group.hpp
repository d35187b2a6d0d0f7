#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ringlab {

/// Finite group given by its Cayley table. Index 0 is the identity.
class GroupTable {
public:
    /// Validates identity, inverses and associativity exhaustively; throws InvalidGroup.
    GroupTable(std::string name, std::vector<std::vector<int>> table, std::vector<std::string> element_names,
               std::optional<bool> nilpotent);

    static GroupTable cyclic(int n);
    static GroupTable cyclic_product(int n, int m);
    static GroupTable symmetric3();
    static GroupTable dihedral4();
    static GroupTable quaternion8();

    /// Plain-text table: first line the order k, then k rows of k 0-based product indices.
    static GroupTable load(const std::filesystem::path& path);
    static GroupTable parse(const std::string& text, std::string name = "custom");

    const std::string& name() const { return name_; }
    int order() const { return order_; }
    int identity() const { return 0; }
    int mul(int a, int b) const { return table_[static_cast<std::size_t>(a * order_ + b)]; }
    int inverse(int a) const { return inverse_[static_cast<std::size_t>(a)]; }
    const std::string& element_name(int a) const { return names_[static_cast<std::size_t>(a)]; }
    const std::vector<std::string>& element_names() const { return names_; }
    std::optional<int> find(const std::string& element_name) const;
    bool abelian() const;
    /// Declared for presets (abelian groups, D4 and Q8 are nilpotent, S3 is not); unknown for custom tables.
    std::optional<bool> nilpotent() const { return nilpotent_; }

    friend bool operator==(const GroupTable& a, const GroupTable& b) {
        return a.order_ == b.order_ && a.table_ == b.table_;
    }

private:
    std::string name_;
    int order_ = 0;
    std::vector<int> table_;
    std::vector<int> inverse_;
    std::vector<std::string> names_;
    std::optional<bool> nilpotent_;
};

std::vector<int> group_center(const GroupTable& group);

/// Group argument of a group-ring descriptor.
struct GroupSpec {
    enum class Kind { Cyclic, CyclicProduct, S3, D4, Q8, Custom };

    Kind kind = Kind::Cyclic;
    int n = 1;
    int m = 1;
    std::shared_ptr<const GroupTable> custom;

    static GroupSpec cyclic(int n) { return {Kind::Cyclic, n, 1, nullptr}; }
    static GroupSpec cyclic_product(int n, int m) { return {Kind::CyclicProduct, n, m, nullptr}; }
    static GroupSpec s3() { return {Kind::S3, 1, 1, nullptr}; }
    static GroupSpec d4() { return {Kind::D4, 1, 1, nullptr}; }
    static GroupSpec q8() { return {Kind::Q8, 1, 1, nullptr}; }
    static GroupSpec from_table(GroupTable table);

    /// Builds (or returns) the Cayley table. Preset tables are shared immutable instances.
    std::shared_ptr<const GroupTable> table() const;

    friend bool operator==(const GroupSpec& a, const GroupSpec& b);
};

}  // namespace ringlab
