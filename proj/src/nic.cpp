#include "propagation.hpp"

#include <optional>

namespace domfilter {

namespace {

using detail::Propagator;
using detail::Status;

enum class Outcome { Found, None, TimedOut };

// The sub-network on {i} ∪ neighbors(i), positions following the neighbor list.
struct Neighborhood {
    std::vector<Var> vars;
    std::vector<RelationView> from_center;
    // m×m, index into `views` or -1 when the two neighbors are unconstrained.
    std::vector<int> link;
    std::vector<RelationView> views;
    std::vector<int> inner_degree;
};

class NeighborhoodSearch {
public:
    NeighborhoodSearch(const ConstraintNetwork& net, const DomainState& state, const Deadline& deadline,
                       CheckCounter& counter)
        : net_(net), state_(state), deadline_(deadline), counter_(counter), hoods_(net.var_count()) {}

    // On success `tuple` holds a value per neighbor.
    Outcome extend(Var i, ValueIndex a, std::vector<int>& tuple) {
        const Neighborhood& h = hood(i);
        const int m = static_cast<int>(h.vars.size());
        stride_ = net_.max_domain_size();
        alive_.assign(static_cast<std::size_t>(m) * stride_, 0);
        sizes_.assign(m, 0);
        assigned_.assign(m, -1);
        trail_.clear();
        for (int p = 0; p < m; ++p) {
            const Var v = h.vars[p];
            for (ValueIndex b = state_.first(v); b >= 0; b = state_.next(v, b)) {
                if (h.from_center[p].check(a, b, counter_)) {
                    alive_[p * stride_ + b] = 1;
                    ++sizes_[p];
                }
            }
            if (sizes_[p] == 0) return Outcome::None;
        }
        const Outcome out = dfs(h, 0);
        if (out == Outcome::Found) tuple = assigned_;
        return out;
    }

private:
    const Neighborhood& hood(Var i) {
        auto& slot = hoods_[i];
        if (slot) return *slot;
        Neighborhood h;
        for (const Neighbor& nb : net_.neighbors(i)) {
            h.vars.push_back(nb.var);
            h.from_center.push_back(net_.relation(i, nb.var));
        }
        const int m = static_cast<int>(h.vars.size());
        h.link.assign(static_cast<std::size_t>(m) * m, -1);
        h.inner_degree.assign(m, 0);
        for (int p = 0; p < m; ++p) {
            for (int q = 0; q < m; ++q) {
                if (p == q || !net_.has_constraint(h.vars[p], h.vars[q])) continue;
                h.link[p * m + q] = static_cast<int>(h.views.size());
                h.views.push_back(net_.relation(h.vars[p], h.vars[q]));
                ++h.inner_degree[p];
            }
        }
        slot = std::move(h);
        return *slot;
    }

    Outcome dfs(const Neighborhood& h, int depth) {
        if (deadline_.expired()) return Outcome::TimedOut;
        const int m = static_cast<int>(h.vars.size());
        if (depth == m) return Outcome::Found;

        // dom+deg: smallest live domain, then most constrained, then lowest position.
        int p = -1;
        for (int q = 0; q < m; ++q) {
            if (assigned_[q] >= 0) continue;
            if (p < 0 || sizes_[q] < sizes_[p] ||
                (sizes_[q] == sizes_[p] && h.inner_degree[q] > h.inner_degree[p]))
                p = q;
        }

        const int cap = net_.domain_size(h.vars[p]);
        for (ValueIndex b = 0; b < cap; ++b) {
            if (!alive_[p * stride_ + b]) continue;
            const std::size_t mark = trail_.size();
            assigned_[p] = b;
            bool consistent = true;
            for (int q = 0; q < m && consistent; ++q) {
                if (assigned_[q] >= 0 || h.link[p * m + q] < 0) continue;
                const RelationView view = h.views[h.link[p * m + q]];
                const int qcap = net_.domain_size(h.vars[q]);
                for (ValueIndex c = 0; c < qcap; ++c) {
                    if (alive_[q * stride_ + c] && !view.check(b, c, counter_)) {
                        alive_[q * stride_ + c] = 0;
                        --sizes_[q];
                        trail_.emplace_back(q, c);
                    }
                }
                consistent = sizes_[q] > 0;
            }
            if (consistent) {
                const Outcome out = dfs(h, depth + 1);
                if (out != Outcome::None) return out;
            }
            while (trail_.size() > mark) {
                auto [q, c] = trail_.back();
                trail_.pop_back();
                alive_[q * stride_ + c] = 1;
                ++sizes_[q];
            }
            assigned_[p] = -1;
        }
        return Outcome::None;
    }

    const ConstraintNetwork& net_;
    const DomainState& state_;
    const Deadline& deadline_;
    CheckCounter& counter_;
    std::vector<std::optional<Neighborhood>> hoods_;

    int stride_ = 0;
    std::vector<char> alive_;
    std::vector<int> sizes_;
    std::vector<int> assigned_;
    std::vector<std::pair<int, int>> trail_;
};

class NeighborhoodEngine {
public:
    NeighborhoodEngine(const ConstraintNetwork& net, Propagator& p)
        : net_(net), search_(net, p.state, p.deadline, p.counter) {
        offset_.resize(net.var_count() + 1, 0);
        for (Var i = 0; i < net.var_count(); ++i) offset_[i + 1] = offset_[i] + net.domain_size(i);
        tuples_.resize(offset_.back());
    }

    Status propagate(Propagator& p) {
        while (!p.queue.empty()) {
            if (p.deadline.expired()) return Status::TimedOut;
            const Var w = p.queue.pop();
            for (const Neighbor& nb : net_.neighbors(w)) {
                const Var x = nb.var;
                for (ValueIndex a = p.state.first(x); a >= 0; a = p.state.next(x, a)) {
                    const Outcome out = check(x, a, p);
                    if (out == Outcome::TimedOut) return Status::TimedOut;
                    if (out == Outcome::None) p.remove(x, a);
                }
                if (p.state.size(x) == 0) return Status::Wipeout;
            }
        }
        return Status::Fixpoint;
    }

private:
    Outcome check(Var i, ValueIndex a, Propagator& p) {
        auto& tuple = tuples_[offset_[i] + a];
        if (!tuple.empty()) {
            const auto& nbs = net_.neighbors(i);
            bool valid = true;
            for (std::size_t q = 0; q < nbs.size() && valid; ++q) valid = p.state.contains(nbs[q].var, tuple[q]);
            if (valid) return Outcome::Found;
        }
        return search_.extend(i, a, tuple);
    }

    const ConstraintNetwork& net_;
    NeighborhoodSearch search_;
    std::vector<int> offset_;
    std::vector<std::vector<int>> tuples_;
};

}  // namespace

FilterResult enforce_nic(const ConstraintNetwork& net, DomainState& state, const Deadline& deadline) {
    detail::ScopedTimer timer;
    FilterResult result;
    CheckCounter counter;
    Status status = Status::Wipeout;
    if (!state.wipeout()) {
        Propagator p(net, state, counter, deadline, &result.deleted);
        NeighborhoodEngine engine(net, p);
        p.queue.push_all();
        status = engine.propagate(p);
    }
    detail::finalize(result, state, status, counter, timer);
    return result;
}

}  // namespace domfilter
