#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "domfilter/cliques.hpp"
#include "domfilter/consistency.hpp"
#include "domfilter/domain_state.hpp"
#include "domfilter/network.hpp"

namespace domfilter {

// Wall-clock budget for a filter run.
class Deadline {
public:
    using Clock = std::chrono::steady_clock;

    static Deadline unbounded() { return Deadline{}; }
    static Deadline after(std::chrono::milliseconds budget) { return Deadline{Clock::now() + budget}; }

    bool bounded() const noexcept { return at_.has_value(); }
    bool expired() const noexcept { return at_ && Clock::now() >= *at_; }

private:
    Deadline() = default;
    explicit Deadline(Clock::time_point at) : at_(at) {}
    std::optional<Clock::time_point> at_;
};

struct FilterResult {
    // Deleted values in deletion order. On wipeout every remaining value is
    // deleted too, so the final state has all domains empty.
    std::vector<ValueRef> deleted;
    bool wipeout = false;
    std::uint64_t checks = 0;
    std::chrono::nanoseconds elapsed{0};
    bool timed_out = false;
    // Strong PC only: allowed pairs between surviving values that path consistency
    // removed, ascending. Pairs between unconstrained variables are included.
    std::vector<PairRef> deleted_pairs;
    // SAC/SRPC only: constraint checks spent by each singleton probe, in probe order.
    std::vector<std::uint64_t> probe_checks;

    double elapsed_ms() const noexcept { return std::chrono::duration<double, std::milli>(elapsed).count(); }
};

// Smallest b >= from in the current D_j that supports (i,a) and is path consistent:
// for every w forming a 3-clique with i and j, some c in D_w is compatible with both.
std::optional<ValueIndex> find_pc_support(const ConstraintNetwork& net, const CliqueIndex& cliques,
                                          const DomainState& state, Var i, ValueIndex a, Var j,
                                          ValueIndex from, CheckCounter& counter);

// Each enforce_* call filters `state` in place to the greatest sub-domain satisfying its
// consistency, or detects inconsistency (wipeout).
FilterResult enforce_ac(const ConstraintNetwork& net, DomainState& state,
                        const Deadline& deadline = Deadline::unbounded());
FilterResult enforce_rpc(const ConstraintNetwork& net, DomainState& state,
                         const Deadline& deadline = Deadline::unbounded());
// Throws std::invalid_argument when k < 1.
FilterResult enforce_k_rpc(const ConstraintNetwork& net, DomainState& state, int k,
                           const Deadline& deadline = Deadline::unbounded());
FilterResult enforce_max_rpc(const ConstraintNetwork& net, DomainState& state,
                             const Deadline& deadline = Deadline::unbounded());
// Networks with fewer than three variables are left untouched.
FilterResult enforce_pic(const ConstraintNetwork& net, DomainState& state,
                         const Deadline& deadline = Deadline::unbounded());
FilterResult enforce_nic(const ConstraintNetwork& net, DomainState& state,
                         const Deadline& deadline = Deadline::unbounded());
// Works on the completed constraint graph; `net` itself is never modified.
FilterResult enforce_strong_pc(const ConstraintNetwork& net, DomainState& state,
                               const Deadline& deadline = Deadline::unbounded());

// Dispatches to the filter for `lc` (including SAC and SRPC).
FilterResult enforce(const ConstraintNetwork& net, DomainState& state, ConsistencyId lc,
                     const Deadline& deadline = Deadline::unbounded());

}  // namespace domfilter
