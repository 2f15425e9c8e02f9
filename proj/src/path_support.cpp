#include "propagation.hpp"

#include <algorithm>
#include <stdexcept>

namespace domfilter {

namespace detail {

PathSupportEngine::PathSupportEngine(const ConstraintNetwork& net, const CliqueIndex& cliques, int k)
    : net_(net), cliques_(cliques), k_(k) {
    const auto& arcs = net.arcs();
    views_.reserve(arcs.size());
    constraint_arcs_.assign(net.constraint_count(), {-1, -1});
    third_offset_.reserve(arcs.size() + 1);
    witness_offset_.reserve(arcs.size());
    int witness_slots = 0;
    for (int id = 0; id < static_cast<int>(arcs.size()); ++id) {
        const Arc& arc = arcs[id];
        views_.push_back(net.relation(arc.source, arc.target));
        auto& pair = constraint_arcs_[arc.constraint];
        (arc.source < arc.target ? pair.first : pair.second) = id;

        third_offset_.push_back(static_cast<int>(thirds_.size()));
        witness_offset_.push_back(witness_slots);
        const auto& ws = cliques.by_constraint[arc.constraint];
        for (Var w : ws) thirds_.push_back({w, net.relation(arc.source, w), net.relation(arc.target, w)});
        witness_slots += net.domain_size(arc.source) * static_cast<int>(ws.size());
    }
    third_offset_.push_back(static_cast<int>(thirds_.size()));

    const auto slots = static_cast<std::size_t>(net.arc_value_slots());
    pc_ = TrailedArray<int>(slots, -1);
    witness_ = TrailedArray<int>(static_cast<std::size_t>(witness_slots), -1);
    if (k_ > 0) {
        supports_ = TrailedArray<int>(slots * static_cast<std::size_t>(k_ + 1), -1);
        support_count_ = TrailedArray<int>(slots, 0);
        scan_ = TrailedArray<int>(slots, 0);
    }
}

void PathSupportEngine::start_trail() {
    pc_.start_trail();
    witness_.start_trail();
    supports_.start_trail();
    support_count_.start_trail();
    scan_.start_trail();
}

void PathSupportEngine::rollback() {
    pc_.rollback();
    witness_.rollback();
    supports_.rollback();
    support_count_.rollback();
    scan_.rollback();
}

bool PathSupportEngine::seek_witnesses(int arc_id, ValueIndex a, ValueIndex b, Propagator& p) {
    const int begin = third_offset_[arc_id];
    const int count = third_offset_[arc_id + 1] - begin;
    const std::size_t base = static_cast<std::size_t>(witness_offset_[arc_id]) + static_cast<std::size_t>(a) * count;
    for (int t = 0; t < count; ++t) {
        const Third& third = thirds_[begin + t];
        ValueIndex c = p.state.first(third.w);
        while (c >= 0 &&
               !(third.from_source.check(a, c, p.counter) && third.from_target.check(b, c, p.counter)))
            c = p.state.next(third.w, c);
        if (c < 0) return false;
        witness_.set(base + t, c);
    }
    return true;
}

bool PathSupportEngine::revalidate_witnesses(int arc_id, ValueIndex a, ValueIndex b, Propagator& p) {
    const int begin = third_offset_[arc_id];
    const int count = third_offset_[arc_id + 1] - begin;
    const std::size_t base = static_cast<std::size_t>(witness_offset_[arc_id]) + static_cast<std::size_t>(a) * count;
    for (int t = 0; t < count; ++t) {
        const Third& third = thirds_[begin + t];
        const int old = witness_[base + t];
        if (p.state.contains(third.w, old)) continue;
        // Earlier witnesses for this (a, b) were rejected already.
        ValueIndex c = p.state.lower_bound(third.w, old + 1);
        while (c >= 0 &&
               !(third.from_source.check(a, c, p.counter) && third.from_target.check(b, c, p.counter)))
            c = p.state.next(third.w, c);
        if (c < 0) return false;
        witness_.set(base + t, c);
    }
    return true;
}

bool PathSupportEngine::has_pc_support(int arc_id, ValueIndex a, Propagator& p, bool from_list) {
    const Arc& arc = net_.arcs()[arc_id];
    const std::size_t slot = static_cast<std::size_t>(arc.value_offset) + a;
    const int cached = pc_[slot];
    if (cached >= 0 && cached < p.state.capacity(arc.target) && p.state.contains(arc.target, cached) &&
        revalidate_witnesses(arc_id, a, cached, p))
        return true;
    return seek_pc_support(arc_id, a, cached + 1, p, from_list);
}

bool PathSupportEngine::seek_pc_support(int arc_id, ValueIndex a, ValueIndex start, Propagator& p, bool from_list) {
    const Arc& arc = net_.arcs()[arc_id];
    const Var j = arc.target;
    const std::size_t slot = static_cast<std::size_t>(arc.value_offset) + a;
    if (from_list) {
        const std::size_t base = slot * static_cast<std::size_t>(k_ + 1);
        const int count = support_count_[slot];
        for (int s = 0; s < count; ++s) {
            const ValueIndex b = supports_[base + s];
            if (b < start || !p.state.contains(j, b)) continue;
            if (seek_witnesses(arc_id, a, b, p)) {
                pc_.set(slot, b);
                return true;
            }
        }
    } else {
        const RelationView view = views_[arc_id];
        for (ValueIndex b = p.state.lower_bound(j, start); b >= 0; b = p.state.next(j, b)) {
            if (view.check(a, b, p.counter) && seek_witnesses(arc_id, a, b, p)) {
                pc_.set(slot, b);
                return true;
            }
        }
    }
    pc_.set(slot, p.state.capacity(j));
    return false;
}

bool PathSupportEngine::viable_through(int arc_id, ValueIndex a, Var w, Propagator& p) {
    const Arc& arc = net_.arcs()[arc_id];
    const std::size_t slot = static_cast<std::size_t>(arc.value_offset) + a;
    if (k_ > 0 && support_count_[slot] > k_) return true;
    const int cached = pc_[slot];
    if (cached < 0 || cached >= p.state.capacity(arc.target) || !p.state.contains(arc.target, cached))
        return has_pc_support(arc_id, a, p, k_ > 0);

    // Only the witness on w can have been invalidated by this event.
    const int begin = third_offset_[arc_id];
    const int count = third_offset_[arc_id + 1] - begin;
    const auto it = std::lower_bound(thirds_.begin() + begin, thirds_.begin() + begin + count, w,
                                     [](const Third& t, Var v) { return t.w < v; });
    const int t = static_cast<int>(it - thirds_.begin()) - begin;
    const std::size_t at = static_cast<std::size_t>(witness_offset_[arc_id]) + static_cast<std::size_t>(a) * count + t;
    const int old = witness_[at];
    if (p.state.contains(w, old)) return true;
    ValueIndex c = p.state.lower_bound(w, old + 1);
    while (c >= 0 && !(it->from_source.check(a, c, p.counter) && it->from_target.check(cached, c, p.counter)))
        c = p.state.next(w, c);
    if (c >= 0) {
        witness_.set(at, c);
        return true;
    }
    return seek_pc_support(arc_id, a, cached + 1, p, k_ > 0);
}

bool PathSupportEngine::revise_through(int arc_id, Var w, Propagator& p) {
    const Var i = net_.arcs()[arc_id].source;
    for (ValueIndex a = p.state.first(i); a >= 0; a = p.state.next(i, a))
        if (!viable_through(arc_id, a, w, p)) p.remove(i, a);
    return p.state.size(i) > 0;
}

bool PathSupportEngine::viable(int arc_id, ValueIndex a, Propagator& p) {
    if (k_ == 0) return has_pc_support(arc_id, a, p, false);

    const Arc& arc = net_.arcs()[arc_id];
    const Var j = arc.target;
    const std::size_t slot = static_cast<std::size_t>(arc.value_offset) + a;
    const std::size_t base = slot * static_cast<std::size_t>(k_ + 1);

    // Drop deleted supports, then scan for more until k+1 are known.
    const int old_count = support_count_[slot];
    int count = 0;
    for (int s = 0; s < old_count; ++s) {
        const ValueIndex b = supports_[base + s];
        if (!p.state.contains(j, b)) continue;
        if (count != s) supports_.set(base + count, b);
        ++count;
    }
    int scan = scan_[slot];
    const int cap = p.state.capacity(j);
    const RelationView view = views_[arc_id];
    while (count < k_ + 1 && scan < cap) {
        if (p.state.contains(j, scan) && view.check(a, scan, p.counter)) supports_.set(base + count++, scan);
        ++scan;
    }
    if (scan != scan_[slot]) scan_.set(slot, scan);
    if (count != old_count) support_count_.set(slot, count);

    if (count == 0) return false;
    if (count > k_) return true;
    return has_pc_support(arc_id, a, p, true);
}

bool PathSupportEngine::revise(int arc_id, Propagator& p) {
    const Var i = net_.arcs()[arc_id].source;
    for (ValueIndex a = p.state.first(i); a >= 0; a = p.state.next(i, a))
        if (!viable(arc_id, a, p)) p.remove(i, a);
    return p.state.size(i) > 0;
}

Status PathSupportEngine::propagate(Propagator& p) {
    while (!p.queue.empty()) {
        if (p.deadline.expired()) return Status::TimedOut;
        const Var w = p.queue.pop();
        for (const Neighbor& nb : net_.neighbors(w))
            if (!revise(nb.reverse_arc, p)) return Status::Wipeout;
        // Values of w witness the path consistency of supports on the opposite edge.
        for (int t : cliques_.by_var[w]) {
            const auto& tri = cliques_.triangles[t];
            Var x = -1;
            Var y = -1;
            for (Var v : tri) {
                if (v == w) continue;
                (x < 0 ? x : y) = v;
            }
            if (!revise_through(arc_between(x, y), w, p) || !revise_through(arc_between(y, x), w, p))
                return Status::Wipeout;
        }
    }
    return Status::Fixpoint;
}

Status PathSupportEngine::initialize(Propagator& p) {
    for (int arc_id = 0; arc_id < static_cast<int>(net_.arcs().size()); ++arc_id)
        if (!revise(arc_id, p)) return Status::Wipeout;
    return propagate(p);
}

Status run_path_support(const ConstraintNetwork& net, DomainState& state, int k, const Deadline& deadline,
                        FilterResult& result, CheckCounter& counter) {
    if (state.wipeout()) return Status::Wipeout;
    const CliqueIndex cliques = three_cliques(net);
    PathSupportEngine engine(net, cliques, k);
    Propagator p(net, state, counter, deadline, &result.deleted);
    return engine.initialize(p);
}

}  // namespace detail

FilterResult enforce_k_rpc(const ConstraintNetwork& net, DomainState& state, int k, const Deadline& deadline) {
    if (k < 1) throw std::invalid_argument("k-RPC requires k >= 1");
    detail::ScopedTimer timer;
    FilterResult result;
    CheckCounter counter;
    auto status = detail::run_path_support(net, state, k, deadline, result, counter);
    detail::finalize(result, state, status, counter, timer);
    return result;
}

FilterResult enforce_rpc(const ConstraintNetwork& net, DomainState& state, const Deadline& deadline) {
    return enforce_k_rpc(net, state, 1, deadline);
}

FilterResult enforce_max_rpc(const ConstraintNetwork& net, DomainState& state, const Deadline& deadline) {
    detail::ScopedTimer timer;
    FilterResult result;
    CheckCounter counter;
    auto status = detail::run_path_support(net, state, 0, deadline, result, counter);
    detail::finalize(result, state, status, counter, timer);
    return result;
}

std::optional<ValueIndex> find_pc_support(const ConstraintNetwork& net, const CliqueIndex& cliques,
                                          const DomainState& state, Var i, ValueIndex a, Var j,
                                          ValueIndex from, CheckCounter& counter) {
    const RelationView ij = net.relation(i, j);
    const auto& thirds = cliques.by_constraint.at(net.constraint_id(i, j));
    for (ValueIndex b = state.lower_bound(j, std::max(from, 0)); b >= 0; b = state.next(j, b)) {
        if (!ij.check(a, b, counter)) continue;
        bool path_consistent = true;
        for (Var w : thirds) {
            const RelationView iw = net.relation(i, w);
            const RelationView jw = net.relation(j, w);
            ValueIndex c = state.first(w);
            while (c >= 0 && !(iw.check(a, c, counter) && jw.check(b, c, counter))) c = state.next(w, c);
            if (c < 0) {
                path_consistent = false;
                break;
            }
        }
        if (path_consistent) return b;
    }
    return std::nullopt;
}

}  // namespace domfilter
