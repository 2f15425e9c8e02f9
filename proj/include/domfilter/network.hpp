#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace domfilter {

using Var = int;
// Position of a value in its variable's initial domain (0..d_i-1).
using ValueIndex = int;

struct ValueRef {
    Var var = 0;
    ValueIndex value = 0;

    auto operator<=>(const ValueRef&) const = default;
};

struct PairRef {
    ValueRef first;
    ValueRef second;

    auto operator<=>(const PairRef&) const = default;
};

// Incremented once per allowed-pair query.
struct CheckCounter {
    std::uint64_t count = 0;
};

class NetworkError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input description of one binary constraint, in external values.
struct ConstraintSpec {
    Var first = 0;
    Var second = 0;
    std::vector<std::pair<int, int>> allowed;
};

// Index-swapped accessor into a shared relation matrix.
struct RelationView {
    const std::uint8_t* data = nullptr;
    int row_stride = 0;
    int col_stride = 0;

    bool operator()(ValueIndex a, ValueIndex b) const noexcept {
        return data[a * row_stride + b * col_stride] != 0;
    }
    bool check(ValueIndex a, ValueIndex b, CheckCounter& counter) const noexcept {
        ++counter.count;
        return (*this)(a, b);
    }
};

struct Neighbor {
    Var var = 0;
    int constraint = 0;
    // Directed arc ids: arc is (owner -> var), reverse_arc is (var -> owner).
    int arc = 0;
    int reverse_arc = 0;
};

struct Arc {
    Var source = 0;
    Var target = 0;
    int constraint = 0;
    // Offset of (arc, value 0) in per-arc-value tables; values of `source` follow.
    int value_offset = 0;
};

class ConstraintNetwork {
public:
    struct Constraint {
        Var lo = 0;
        Var hi = 0;
        // Row-major, rows indexed by lo's values.
        std::vector<std::uint8_t> allowed;
    };

    ConstraintNetwork() = default;

    int var_count() const noexcept { return static_cast<int>(domains_.size()); }
    int domain_size(Var i) const { return static_cast<int>(domains_.at(i).size()); }
    int max_domain_size() const noexcept { return max_domain_; }
    int constraint_count() const noexcept { return static_cast<int>(constraints_.size()); }
    int max_degree() const noexcept;
    std::size_t total_values() const noexcept { return total_values_; }

    const std::vector<int>& domain_values(Var i) const { return domains_.at(i); }
    int external_value(Var i, ValueIndex a) const { return domains_.at(i).at(a); }
    // Index of `value` in D_i, or -1.
    ValueIndex value_index(Var i, int value) const;

    const std::vector<Constraint>& constraints() const noexcept { return constraints_; }
    const std::vector<Neighbor>& neighbors(Var i) const { return adjacency_.at(i); }
    int degree(Var i) const { return static_cast<int>(adjacency_.at(i).size()); }

    // Constraint id linking i and j, or -1.
    int constraint_id(Var i, Var j) const noexcept {
        return pair_index_[static_cast<std::size_t>(i) * var_count() + j];
    }
    bool has_constraint(Var i, Var j) const noexcept { return i != j && constraint_id(i, j) >= 0; }

    // View oriented so that the first index is i's value. Throws NetworkError if unconstrained.
    RelationView relation(Var i, Var j) const;

    // Constraint check; throws NetworkError when no constraint links i and j.
    bool allows(Var i, ValueIndex a, Var j, ValueIndex b, CheckCounter& counter) const;

    const std::vector<Arc>& arcs() const noexcept { return arcs_; }
    int arc_value_slots() const noexcept { return arc_value_slots_; }

    friend bool operator==(const ConstraintNetwork&, const ConstraintNetwork&);

private:
    friend ConstraintNetwork build_network(int, std::vector<std::vector<int>>,
                                           const std::vector<ConstraintSpec>&);

    std::vector<std::vector<int>> domains_;
    std::vector<Constraint> constraints_;
    std::vector<std::vector<Neighbor>> adjacency_;
    std::vector<int> pair_index_;
    std::vector<Arc> arcs_;
    int arc_value_slots_ = 0;
    int max_domain_ = 0;
    std::size_t total_values_ = 0;
};

// Validates and builds a network. Domains must be non-empty and strictly increasing.
ConstraintNetwork build_network(int var_count, std::vector<std::vector<int>> domains,
                                const std::vector<ConstraintSpec>& constraints);

// Network over the surviving values only, with `removed_pairs` additionally forbidden.
// Pairs between unconstrained variables become new constraints.
class DomainState;
ConstraintNetwork restrict_network(const ConstraintNetwork& net, const DomainState& state,
                                   std::span<const PairRef> removed_pairs = {});

}  // namespace domfilter
