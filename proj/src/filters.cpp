#include "domfilter/filters.hpp"

#include "domfilter/singleton.hpp"

namespace domfilter {

FilterResult enforce(const ConstraintNetwork& net, DomainState& state, ConsistencyId lc, const Deadline& deadline) {
    switch (lc.kind()) {
        case ConsistencyKind::AC: return enforce_ac(net, state, deadline);
        case ConsistencyKind::RPC: return enforce_rpc(net, state, deadline);
        case ConsistencyKind::KRPC: return enforce_k_rpc(net, state, *lc.k(), deadline);
        case ConsistencyKind::MaxRPC: return enforce_max_rpc(net, state, deadline);
        case ConsistencyKind::PIC: return enforce_pic(net, state, deadline);
        case ConsistencyKind::NIC: return enforce_nic(net, state, deadline);
        case ConsistencyKind::StrongPC: return enforce_strong_pc(net, state, deadline);
        case ConsistencyKind::SAC: return enforce_sac(net, state, deadline);
        case ConsistencyKind::SRPC: return enforce_srpc(net, state, deadline);
    }
    return {};
}

}  // namespace domfilter
