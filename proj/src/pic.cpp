#include "propagation.hpp"

#include <array>

namespace domfilter {

namespace {

using detail::Propagator;
using detail::Status;

// Path inverse consistency restricted to 3-cliques, on top of arc consistency.
class PathInverseEngine {
public:
    PathInverseEngine(const ConstraintNetwork& net, const CliqueIndex& cliques)
        : net_(net), cliques_(cliques), ac_(net) {
        const int n = net.var_count();
        slot_offset_.resize(n);
        int slots = 0;
        for (Var i = 0; i < n; ++i) {
            slot_offset_[i] = slots;
            slots += static_cast<int>(cliques.by_var[i].size()) * net.domain_size(i);
        }
        // Position of triangle t in by_var of each of its vertices.
        position_.assign(cliques.triangles.size(), {0, 0, 0});
        for (Var i = 0; i < n; ++i) {
            const auto& ids = cliques.by_var[i];
            for (int s = 0; s < static_cast<int>(ids.size()); ++s) {
                const auto& tri = cliques.triangles[ids[s]];
                for (int v = 0; v < 3; ++v)
                    if (tri[v] == i) position_[ids[s]][v] = s;
            }
        }
        extension_.assign(static_cast<std::size_t>(slots), {-1, -1});
    }

    Status propagate(Propagator& p) {
        while (!p.queue.empty()) {
            if (p.deadline.expired()) return Status::TimedOut;
            const Var w = p.queue.pop();
            for (const Neighbor& nb : net_.neighbors(w))
                if (!ac_.revise(nb.reverse_arc, p)) return Status::Wipeout;
            for (int t : cliques_.by_var[w]) {
                const auto& tri = cliques_.triangles[t];
                for (int v = 0; v < 3; ++v) {
                    if (tri[v] == w) continue;
                    if (!revise(tri[v], position_[t][v], p)) return Status::Wipeout;
                }
            }
        }
        return Status::Fixpoint;
    }

    detail::ArcConsistencyEngine& arc_consistency() { return ac_; }

private:
    // Checks every value of i against the triangle at `slot` of by_var[i].
    bool revise(Var i, int slot, Propagator& p) {
        const auto& tri = cliques_.triangles[cliques_.by_var[i][slot]];
        Var j = -1;
        Var k = -1;
        for (Var v : tri) {
            if (v == i) continue;
            (j < 0 ? j : k) = v;
        }
        const RelationView ij = net_.relation(i, j);
        const RelationView ik = net_.relation(i, k);
        const RelationView jk = net_.relation(j, k);
        const std::size_t base = static_cast<std::size_t>(slot_offset_[i]) +
                                 static_cast<std::size_t>(slot) * p.state.capacity(i);
        for (ValueIndex a = p.state.first(i); a >= 0; a = p.state.next(i, a))
            if (!extends(a, j, k, ij, ik, jk, extension_[base + a], p)) p.remove(i, a);
        return p.state.size(i) > 0;
    }

    // Pairs (b, c) are scanned in lexicographic order; the cached pair is the resume point.
    static bool extends(ValueIndex a, Var j, Var k, RelationView ij, RelationView ik, RelationView jk,
                        std::pair<int, int>& cached, Propagator& p) {
        const DomainState& s = p.state;
        auto [b0, c0] = cached;
        bool b0_supports = false;
        if (b0 >= 0 && s.contains(j, b0)) {
            if (s.contains(k, c0)) return true;
            b0_supports = true;
        } else {
            b0 = b0 < 0 ? 0 : b0 + 1;
            c0 = -1;
        }
        for (ValueIndex b = s.lower_bound(j, b0); b >= 0; b = s.next(j, b)) {
            const bool resumed = b == b0 && b0_supports;
            if (!resumed && !ij.check(a, b, p.counter)) continue;
            for (ValueIndex c = s.lower_bound(k, resumed ? c0 + 1 : 0); c >= 0; c = s.next(k, c)) {
                if (ik.check(a, c, p.counter) && jk.check(b, c, p.counter)) {
                    cached = {b, c};
                    return true;
                }
            }
        }
        return false;
    }

    const ConstraintNetwork& net_;
    const CliqueIndex& cliques_;
    detail::ArcConsistencyEngine ac_;
    std::vector<int> slot_offset_;
    std::vector<std::array<int, 3>> position_;
    std::vector<std::pair<int, int>> extension_;
};

}  // namespace

FilterResult enforce_pic(const ConstraintNetwork& net, DomainState& state, const Deadline& deadline) {
    detail::ScopedTimer timer;
    FilterResult result;
    CheckCounter counter;
    // Fewer than three variables: vacuously path inverse consistent.
    if (net.var_count() < 3) {
        detail::finalize(result, state, Status::Fixpoint, counter, timer);
        return result;
    }
    Status status = Status::Wipeout;
    if (!state.wipeout()) {
        const CliqueIndex cliques = three_cliques(net);
        PathInverseEngine engine(net, cliques);
        Propagator p(net, state, counter, deadline, &result.deleted);
        p.queue.push_all();
        status = engine.arc_consistency().propagate(p);
        if (status == Status::Fixpoint) {
            p.queue.push_all();
            status = engine.propagate(p);
        }
    }
    detail::finalize(result, state, status, counter, timer);
    return result;
}

}  // namespace domfilter
