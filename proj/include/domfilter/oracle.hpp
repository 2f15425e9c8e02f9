#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "domfilter/consistency.hpp"
#include "domfilter/domain_state.hpp"
#include "domfilter/generator.hpp"
#include "domfilter/network.hpp"

// Brute-force ground truth for small networks. The definitional checks share no code
// with the filters; witness_search only uses the filters to screen candidates.
namespace domfilter::oracle {

struct SolutionSet {
    // One value index per variable.
    std::vector<std::vector<ValueIndex>> solutions;
    bool truncated = false;
};

// Solutions within the current domains, in lexicographic order; at most `limit` of them.
SolutionSet enumerate_solutions(const ConstraintNetwork& net, const DomainState& state,
                                std::size_t limit = SIZE_MAX);

struct Closure {
    // All domains empty when the consistency detects inconsistency.
    DomainState domains;
    // Strong PC only: allowed pairs between surviving values that were removed, ascending.
    std::vector<PairRef> deleted_pairs;

    bool wipeout() const noexcept { return domains.wipeout(); }
};

// Deletes values violating the definition of `lc` under the current domains until none does.
Closure definitional_closure(const ConstraintNetwork& net, ConsistencyId lc);
Closure definitional_closure(const ConstraintNetwork& net, const DomainState& state, ConsistencyId lc);

// Keeps exactly the values occurring in some solution.
DomainState variable_completability(const ConstraintNetwork& net, const DomainState& state);

enum class InstanceFamily {
    ModelB,       // density from `densities`, tightness m/d² with 0 < m < d²
    Mixed,        // random edge count; each relation a permutation or its own random tightness
    Permutation,  // random edge count; each relation forbids one random permutation
};

struct WitnessParams {
    int max_n = 6;
    int max_d = 3;
    int attempts = 100000;
    std::vector<double> densities{0.3, 0.5, 0.7, 0.85, 1.0};
    // Attempt t draws from families[t % size].
    std::vector<InstanceFamily> families{InstanceFamily::ModelB, InstanceFamily::Mixed, InstanceFamily::Permutation};
};

struct Witness {
    ConstraintNetwork net;
    InstanceFamily family = InstanceFamily::ModelB;  // of the instance it was restricted from
    int attempt = 0;
};

// A network on which `weak` deletes nothing (no pairs either, for strong PC) while `strong`
// deletes at least one value. Attempt t draws an instance seeded from (seed, t) and restricts
// it to its weak closure; the result is a candidate whenever weak does not wipe out. Candidates
// are screened with the filters and confirmed with definitional_closure.
std::optional<Witness> witness_search(ConsistencyId strong, ConsistencyId weak, const WitnessParams& params,
                                      std::uint64_t seed);

// The product of the current domain sizes, saturating at UINT64_MAX.
std::uint64_t search_space(const DomainState& state);

}  // namespace domfilter::oracle
