#pragma once

#include "domfilter/filters.hpp"

namespace domfilter {

// True iff enforcing `inner` (AC or RPC) on the state with D_i = {a} leaves every domain
// non-empty. `state` is not modified. Throws std::invalid_argument for other inner kinds
// or when a is not in D_i.
bool singleton_test(const ConstraintNetwork& net, const DomainState& state, Var i, ValueIndex a,
                    ConsistencyId inner);

FilterResult enforce_sac(const ConstraintNetwork& net, DomainState& state,
                         const Deadline& deadline = Deadline::unbounded());
FilterResult enforce_srpc(const ConstraintNetwork& net, DomainState& state,
                          const Deadline& deadline = Deadline::unbounded());

}  // namespace domfilter
