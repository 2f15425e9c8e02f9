#include "propagation.hpp"

namespace domfilter {

namespace detail {

ArcConsistencyEngine::ArcConsistencyEngine(const ConstraintNetwork& net)
    : last_(static_cast<std::size_t>(net.arc_value_slots()), -1) {
    views_.reserve(net.arcs().size());
    for (const Arc& arc : net.arcs()) views_.push_back(net.relation(arc.source, arc.target));
}

bool ArcConsistencyEngine::revise(int arc_id, Propagator& p) {
    const Arc& arc = p.net.arcs()[arc_id];
    const Var i = arc.source;
    const Var j = arc.target;
    const RelationView view = views_[arc_id];
    DomainState& state = p.state;
    for (ValueIndex a = state.first(i); a >= 0; a = state.next(i, a)) {
        const std::size_t slot = static_cast<std::size_t>(arc.value_offset) + a;
        const int last = last_[slot];
        if (last >= 0 && state.contains(j, last)) continue;
        // Values before `last` were already rejected and domains only shrink.
        ValueIndex b = state.lower_bound(j, last + 1);
        while (b >= 0 && !view.check(a, b, p.counter)) b = state.next(j, b);
        if (b >= 0) {
            last_.set(slot, b);
        } else {
            p.remove(i, a);
        }
    }
    return state.size(i) > 0;
}

Status ArcConsistencyEngine::propagate(Propagator& p) {
    while (!p.queue.empty()) {
        if (p.deadline.expired()) return Status::TimedOut;
        const Var w = p.queue.pop();
        for (const Neighbor& nb : p.net.neighbors(w))
            if (!revise(nb.reverse_arc, p)) return Status::Wipeout;
    }
    return Status::Fixpoint;
}

void finalize(FilterResult& result, DomainState& state, Status status, const CheckCounter& counter,
              const ScopedTimer& timer) {
    if (status == Status::Wipeout) {
        for (Var i = 0; i < state.var_count(); ++i) {
            for (ValueIndex a = state.first(i); a >= 0; a = state.next(i, a)) result.deleted.push_back({i, a});
            state.clear(i);
        }
    }
    result.wipeout = state.wipeout();
    result.timed_out = status == Status::TimedOut;
    result.checks = counter.count;
    result.elapsed = timer.elapsed();
}

}  // namespace detail

FilterResult enforce_ac(const ConstraintNetwork& net, DomainState& state, const Deadline& deadline) {
    detail::ScopedTimer timer;
    FilterResult result;
    CheckCounter counter;
    detail::Propagator p(net, state, counter, deadline, &result.deleted);
    detail::ArcConsistencyEngine engine(net);
    detail::Status status = detail::Status::Wipeout;
    if (!state.wipeout()) {
        p.queue.push_all();
        status = engine.propagate(p);
    }
    detail::finalize(result, state, status, counter, timer);
    return result;
}

}  // namespace domfilter
