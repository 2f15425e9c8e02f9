#include "propagation.hpp"

#include <algorithm>
#include <deque>

namespace domfilter {

namespace {

using detail::Status;

// Relations of the completed graph, one matrix per unordered pair.
class CompletedGraph {
public:
    explicit CompletedGraph(const ConstraintNetwork& net) : n_(net.var_count()) {
        offset_.assign(static_cast<std::size_t>(n_) * n_, 0);
        std::size_t total = 0;
        for (Var i = 0; i < n_; ++i)
            for (Var j = i + 1; j < n_; ++j) {
                offset_[index(i, j)] = total;
                total += static_cast<std::size_t>(net.domain_size(i)) * net.domain_size(j);
            }
        cols_.resize(n_);
        for (Var i = 0; i < n_; ++i) cols_[i] = net.domain_size(i);
        data_.assign(total, 1);
        for (const auto& c : net.constraints())
            std::copy(c.allowed.begin(), c.allowed.end(), data_.begin() + static_cast<std::ptrdiff_t>(offset_[index(c.lo, c.hi)]));
    }

    std::uint8_t& at(Var i, ValueIndex a, Var j, ValueIndex b) {
        if (i > j) {
            std::swap(i, j);
            std::swap(a, b);
        }
        return data_[offset_[index(i, j)] + static_cast<std::size_t>(a) * cols_[j] + b];
    }
    bool check(Var i, ValueIndex a, Var j, ValueIndex b, CheckCounter& counter) {
        ++counter.count;
        return at(i, a, j, b) != 0;
    }

private:
    std::size_t index(Var i, Var j) const { return static_cast<std::size_t>(i) * n_ + j; }

    int n_;
    std::vector<std::size_t> offset_;
    std::vector<int> cols_;
    std::vector<std::uint8_t> data_;
};

class PairQueue {
public:
    explicit PairQueue(int n) : n_(n), queued_(static_cast<std::size_t>(n) * n, 0) {}

    void push(Var i, Var j) {
        if (i > j) std::swap(i, j);
        auto& q = queued_[static_cast<std::size_t>(i) * n_ + j];
        if (!q) {
            q = 1;
            items_.emplace_back(i, j);
        }
    }
    std::pair<Var, Var> pop() {
        auto item = items_.front();
        items_.pop_front();
        queued_[static_cast<std::size_t>(item.first) * n_ + item.second] = 0;
        return item;
    }
    bool empty() const noexcept { return items_.empty(); }

private:
    int n_;
    std::vector<char> queued_;
    std::deque<std::pair<Var, Var>> items_;
};

class StrongPathEngine {
public:
    StrongPathEngine(const ConstraintNetwork& net, DomainState& state, CheckCounter& counter,
                     const Deadline& deadline, std::vector<ValueRef>& deleted)
        : n_(net.var_count()), graph_(net), state_(state), counter_(counter), deadline_(deadline),
          deleted_(deleted), queue_(n_) {}

    Status run() {
        for (Var i = 0; i < n_; ++i)
            for (Var j = i + 1; j < n_; ++j) queue_.push(i, j);
        while (!queue_.empty()) {
            if (deadline_.expired()) return Status::TimedOut;
            auto [i, j] = queue_.pop();
            if (!revise_values(i, j) || !revise_values(j, i)) return Status::Wipeout;
            for (Var k = 0; k < n_; ++k) {
                if (k == i || k == j) continue;
                if (!revise_pairs(i, k, j) || !revise_pairs(j, k, i)) return Status::Wipeout;
            }
        }
        return Status::Fixpoint;
    }

    CompletedGraph& graph() { return graph_; }

private:
    // Arc consistency of D_i on R_ij.
    bool revise_values(Var i, Var j) {
        for (ValueIndex a = state_.first(i); a >= 0; a = state_.next(i, a)) {
            ValueIndex b = state_.first(j);
            while (b >= 0 && !graph_.check(i, a, j, b, counter_)) b = state_.next(j, b);
            if (b < 0) {
                state_.remove(i, a);
                deleted_.push_back({i, a});
                for (Var x = 0; x < n_; ++x)
                    if (x != i) queue_.push(i, x);
            }
        }
        return state_.size(i) > 0;
    }

    // Path consistency of R_ik through j.
    bool revise_pairs(Var i, Var k, Var j) {
        bool changed = false;
        for (ValueIndex a = state_.first(i); a >= 0; a = state_.next(i, a)) {
            for (ValueIndex c = state_.first(k); c >= 0; c = state_.next(k, c)) {
                if (!graph_.check(i, a, k, c, counter_)) continue;
                ValueIndex b = state_.first(j);
                while (b >= 0 && !(graph_.check(i, a, j, b, counter_) && graph_.check(j, b, k, c, counter_)))
                    b = state_.next(j, b);
                if (b < 0) {
                    graph_.at(i, a, k, c) = 0;
                    changed = true;
                }
            }
        }
        if (!changed) return true;
        queue_.push(i, k);
        return revise_values(i, k) && revise_values(k, i);
    }

    int n_;
    CompletedGraph graph_;
    DomainState& state_;
    CheckCounter& counter_;
    const Deadline& deadline_;
    std::vector<ValueRef>& deleted_;
    PairQueue queue_;
};

}  // namespace

FilterResult enforce_strong_pc(const ConstraintNetwork& net, DomainState& state, const Deadline& deadline) {
    detail::ScopedTimer timer;
    FilterResult result;
    CheckCounter counter;
    Status status = Status::Wipeout;
    if (!state.wipeout()) {
        StrongPathEngine engine(net, state, counter, deadline, result.deleted);
        status = engine.run();
        if (status != Status::Wipeout) {
            auto& graph = engine.graph();
            const int n = net.var_count();
            for (Var i = 0; i < n; ++i)
                for (Var j = i + 1; j < n; ++j) {
                    const bool constrained = net.has_constraint(i, j);
                    const RelationView original = constrained ? net.relation(i, j) : RelationView{};
                    for (ValueIndex a = state.first(i); a >= 0; a = state.next(i, a))
                        for (ValueIndex b = state.first(j); b >= 0; b = state.next(j, b))
                            if ((!constrained || original(a, b)) && !graph.at(i, a, j, b))
                                result.deleted_pairs.push_back({{i, a}, {j, b}});
                }
        }
    }
    detail::finalize(result, state, status, counter, timer);
    return result;
}

}  // namespace domfilter
