#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "domfilter/network.hpp"

namespace domfilter {

// Current value sets, one fixed-capacity bit vector per variable.
class DomainState {
public:
    DomainState() = default;
    // Full initial domains of `net`.
    explicit DomainState(const ConstraintNetwork& net);
    explicit DomainState(std::span<const int> capacities);

    int var_count() const noexcept { return static_cast<int>(sizes_.size()); }
    int capacity(Var i) const noexcept { return capacities_[i]; }
    int size(Var i) const noexcept { return sizes_[i]; }
    std::size_t total_size() const noexcept;

    bool contains(Var i, ValueIndex a) const noexcept {
        return (words_[offsets_[i] + (a >> 6)] >> (a & 63)) & 1u;
    }

    // Returns false if the value was already absent.
    bool remove(Var i, ValueIndex a) noexcept;
    // Reduces D_i to {a}; a must be present.
    void assign(Var i, ValueIndex a) noexcept;
    void clear(Var i) noexcept;

    // First present value >= from, or -1.
    ValueIndex lower_bound(Var i, ValueIndex from) const noexcept;
    ValueIndex first(Var i) const noexcept { return lower_bound(i, 0); }
    ValueIndex next(Var i, ValueIndex after) const noexcept { return lower_bound(i, after + 1); }
    std::vector<ValueIndex> values(Var i) const;

    // True iff some domain is empty.
    bool wipeout() const noexcept { return empty_count_ > 0; }

    bool is_subset_of(const DomainState& other) const noexcept;
    std::uint64_t hash() const noexcept;

    friend bool operator==(const DomainState& a, const DomainState& b) noexcept {
        return a.capacities_ == b.capacities_ && a.words_ == b.words_;
    }

private:
    std::vector<std::uint64_t> words_;
    std::vector<int> offsets_;
    std::vector<int> capacities_;
    std::vector<int> sizes_;
    int empty_count_ = 0;
};

// Copy of `state` with D_i = {a}. Throws std::invalid_argument if a is not in D_i.
DomainState restrict_to_singleton(const ConstraintNetwork& net, const DomainState& state, Var i,
                                  ValueIndex a);

// Values of `before` missing from `after`, in ascending (var, value) order.
std::vector<ValueRef> removed_values(const DomainState& before, const DomainState& after);

}  // namespace domfilter
