#pragma once

// Internal machinery shared by the filtering engines.

#include <chrono>
#include <cstdint>
#include <deque>
#include <utility>
#include <vector>

#include "domfilter/domain_state.hpp"
#include "domfilter/filters.hpp"
#include "domfilter/network.hpp"

namespace domfilter::detail {

enum class Status { Fixpoint, Wipeout, TimedOut };

// Array whose writes can be rolled back to the last start_trail().
template <class T>
class TrailedArray {
public:
    TrailedArray() = default;
    TrailedArray(std::size_t size, T init) : data_(size, init) {}

    T operator[](std::size_t i) const noexcept { return data_[i]; }
    void set(std::size_t i, T value) {
        if (recording_) trail_.emplace_back(static_cast<std::uint32_t>(i), data_[i]);
        data_[i] = value;
    }
    void start_trail() {
        trail_.clear();
        recording_ = true;
    }
    void rollback() {
        for (auto it = trail_.rbegin(); it != trail_.rend(); ++it) data_[it->first] = it->second;
        trail_.clear();
        recording_ = false;
    }

private:
    std::vector<T> data_;
    std::vector<std::pair<std::uint32_t, T>> trail_;
    bool recording_ = false;
};

// FIFO of variables whose domains changed; a variable is queued at most once.
class VarQueue {
public:
    explicit VarQueue(int var_count) : queued_(var_count, 0) {}

    void push(Var v) {
        if (!queued_[v]) {
            queued_[v] = 1;
            items_.push_back(v);
        }
    }
    void push_all() {
        for (Var v = 0; v < static_cast<Var>(queued_.size()); ++v) push(v);
    }
    Var pop() {
        Var v = items_.front();
        items_.pop_front();
        queued_[v] = 0;
        return v;
    }
    bool empty() const noexcept { return items_.empty(); }
    void clear() {
        for (Var v : items_) queued_[v] = 0;
        items_.clear();
    }

private:
    std::deque<Var> items_;
    std::vector<char> queued_;
};

// One filtering run: the state being pruned plus its bookkeeping.
struct Propagator {
    Propagator(const ConstraintNetwork& net_, DomainState& state_, CheckCounter& counter_,
               const Deadline& deadline_, std::vector<ValueRef>* deleted_)
        : net(net_), state(state_), counter(counter_), deadline(deadline_), deleted(deleted_),
          queue(net_.var_count()) {}

    const ConstraintNetwork& net;
    DomainState& state;
    CheckCounter& counter;
    const Deadline& deadline;
    std::vector<ValueRef>* deleted;  // null for probes
    VarQueue queue;

    void remove(Var i, ValueIndex a) {
        if (state.remove(i, a)) {
            if (deleted) deleted->push_back({i, a});
            queue.push(i);
        }
    }
};

// Arc consistency with resumable support pointers (one per arc and value).
class ArcConsistencyEngine {
public:
    explicit ArcConsistencyEngine(const ConstraintNetwork& net);

    // Revises the source's values on `arc`; false if the source domain became empty.
    bool revise(int arc, Propagator& p);
    Status propagate(Propagator& p);
    // Full run from scratch on p.state.
    Status initialize(Propagator& p) {
        p.queue.push_all();
        return propagate(p);
    }

    void start_trail() { last_.start_trail(); }
    void rollback() { last_.rollback(); }

private:
    std::vector<RelationView> views_;
    TrailedArray<int> last_;
};

class ScopedTimer {
public:
    ScopedTimer() : start_(std::chrono::steady_clock::now()) {}
    std::chrono::nanoseconds elapsed() const {
        return std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start_);
    }

private:
    std::chrono::steady_clock::time_point start_;
};

// Applies the wipeout convention (all remaining values deleted) and fills the summary fields.
void finalize(FilterResult& result, DomainState& state, Status status, const CheckCounter& counter,
              const ScopedTimer& timer);

// Restricted path consistency family: k-RPC for k >= 1, Max-RPC for k == 0.
class PathSupportEngine {
public:
    PathSupportEngine(const ConstraintNetwork& net, const CliqueIndex& cliques, int k);

    bool revise(int arc, Propagator& p);
    Status propagate(Propagator& p);
    // Revises every arc once, then propagates.
    Status initialize(Propagator& p);

    void start_trail();
    void rollback();

private:
    struct Third {
        Var w;
        RelationView from_source;
        RelationView from_target;
    };

    bool viable(int arc, ValueIndex a, Propagator& p);
    bool has_pc_support(int arc, ValueIndex a, Propagator& p, bool from_list);
    bool seek_pc_support(int arc, ValueIndex a, ValueIndex start, Propagator& p, bool from_list);
    // Recheck of (source, a) after a deletion on w, a third variable of the arc's constraint.
    bool viable_through(int arc, ValueIndex a, Var w, Propagator& p);
    bool revise_through(int arc, Var w, Propagator& p);
    bool seek_witnesses(int arc, ValueIndex a, ValueIndex b, Propagator& p);
    bool revalidate_witnesses(int arc, ValueIndex a, ValueIndex b, Propagator& p);

    const ConstraintNetwork& net_;
    const CliqueIndex& cliques_;
    int k_;
    std::vector<RelationView> views_;
    std::vector<std::pair<int, int>> constraint_arcs_;  // (lo->hi, hi->lo)
    std::vector<int> third_offset_;                     // per arc, into thirds_
    std::vector<Third> thirds_;
    std::vector<int> witness_offset_;                   // per arc

    TrailedArray<int> pc_;
    TrailedArray<int> witness_;
    // k-RPC: the first k+1 supports found, their count, and the scan position.
    TrailedArray<int> supports_;
    TrailedArray<int> support_count_;
    TrailedArray<int> scan_;

    int arc_between(Var x, Var y) const {
        const auto& pair = constraint_arcs_[net_.constraint_id(x, y)];
        return x < y ? pair.first : pair.second;
    }
};

}  // namespace domfilter::detail
