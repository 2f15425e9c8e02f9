#include "domfilter/singleton.hpp"

#include <stdexcept>

#include "propagation.hpp"

namespace domfilter {

namespace {

using detail::Propagator;
using detail::Status;

// SAC1-style outer loop. The outer state is kept at the inner fixpoint so a probe only
// has to propagate from the probed variable, rolling the engine caches back afterwards.
template <class Engine>
Status singleton_loop(const ConstraintNetwork& net, DomainState& state, Engine& engine, CheckCounter& counter,
                      const Deadline& deadline, FilterResult& result) {
    Propagator outer(net, state, counter, deadline, &result.deleted);
    Status status = engine.initialize(outer);
    if (status != Status::Fixpoint) return status;

    bool changed = true;
    while (changed) {
        changed = false;
        for (Var i = 0; i < net.var_count(); ++i) {
            for (ValueIndex a = state.first(i); a >= 0; a = state.next(i, a)) {
                const std::uint64_t before = counter.count;
                DomainState probe_state = state;
                probe_state.assign(i, a);
                engine.start_trail();
                Propagator probe(net, probe_state, counter, deadline, nullptr);
                probe.queue.push(i);
                const Status verdict = engine.propagate(probe);
                engine.rollback();
                result.probe_checks.push_back(counter.count - before);
                if (verdict == Status::TimedOut) return Status::TimedOut;
                if (verdict == Status::Fixpoint) continue;

                outer.remove(i, a);
                changed = true;
                status = engine.propagate(outer);
                if (status != Status::Fixpoint) return status;
            }
        }
    }
    return Status::Fixpoint;
}

}  // namespace

bool singleton_test(const ConstraintNetwork& net, const DomainState& state, Var i, ValueIndex a,
                    ConsistencyId inner) {
    if (inner.kind() != ConsistencyKind::AC && inner.kind() != ConsistencyKind::RPC)
        throw std::invalid_argument("singleton inner consistency must be AC or RPC");
    DomainState restricted = restrict_to_singleton(net, state, i, a);
    const FilterResult r = inner.kind() == ConsistencyKind::AC ? enforce_ac(net, restricted) : enforce_rpc(net, restricted);
    return !r.wipeout;
}

FilterResult enforce_sac(const ConstraintNetwork& net, DomainState& state, const Deadline& deadline) {
    detail::ScopedTimer timer;
    FilterResult result;
    CheckCounter counter;
    Status status = Status::Wipeout;
    if (!state.wipeout()) {
        detail::ArcConsistencyEngine engine(net);
        status = singleton_loop(net, state, engine, counter, deadline, result);
    }
    detail::finalize(result, state, status, counter, timer);
    return result;
}

FilterResult enforce_srpc(const ConstraintNetwork& net, DomainState& state, const Deadline& deadline) {
    detail::ScopedTimer timer;
    FilterResult result;
    CheckCounter counter;
    Status status = Status::Wipeout;
    if (!state.wipeout()) {
        const CliqueIndex cliques = three_cliques(net);
        detail::PathSupportEngine engine(net, cliques, 1);
        status = singleton_loop(net, state, engine, counter, deadline, result);
    }
    detail::finalize(result, state, status, counter, timer);
    return result;
}

}  // namespace domfilter
