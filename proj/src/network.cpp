#include "domfilter/network.hpp"

#include <algorithm>
#include <map>

#include "domfilter/domain_state.hpp"

namespace domfilter {

int ConstraintNetwork::max_degree() const noexcept {
    int g = 0;
    for (const auto& adj : adjacency_) g = std::max(g, static_cast<int>(adj.size()));
    return g;
}

ValueIndex ConstraintNetwork::value_index(Var i, int value) const {
    const auto& dom = domains_.at(i);
    auto it = std::lower_bound(dom.begin(), dom.end(), value);
    if (it == dom.end() || *it != value) return -1;
    return static_cast<ValueIndex>(it - dom.begin());
}

RelationView ConstraintNetwork::relation(Var i, Var j) const {
    if (i < 0 || j < 0 || i >= var_count() || j >= var_count() || !has_constraint(i, j))
        throw NetworkError("no constraint between variables " + std::to_string(i) + " and " +
                           std::to_string(j));
    const Constraint& c = constraints_[constraint_id(i, j)];
    int hi_size = static_cast<int>(domains_[c.hi].size());
    if (c.lo == i) return {c.allowed.data(), hi_size, 1};
    return {c.allowed.data(), 1, hi_size};
}

bool ConstraintNetwork::allows(Var i, ValueIndex a, Var j, ValueIndex b, CheckCounter& counter) const {
    RelationView view = relation(i, j);
    if (a < 0 || a >= domain_size(i) || b < 0 || b >= domain_size(j))
        throw NetworkError("value index out of range in constraint check");
    return view.check(a, b, counter);
}

bool operator==(const ConstraintNetwork& x, const ConstraintNetwork& y) {
    if (x.domains_ != y.domains_ || x.constraints_.size() != y.constraints_.size()) return false;
    for (std::size_t c = 0; c < x.constraints_.size(); ++c) {
        const auto& a = x.constraints_[c];
        const auto& b = y.constraints_[c];
        if (a.lo != b.lo || a.hi != b.hi || a.allowed != b.allowed) return false;
    }
    return true;
}

ConstraintNetwork build_network(int var_count, std::vector<std::vector<int>> domains,
                                const std::vector<ConstraintSpec>& constraints) {
    if (var_count < 0) throw NetworkError("negative variable count");
    if (static_cast<int>(domains.size()) != var_count)
        throw NetworkError("expected " + std::to_string(var_count) + " domains, got " +
                           std::to_string(domains.size()));
    for (int i = 0; i < var_count; ++i) {
        if (domains[i].empty()) throw NetworkError("empty initial domain for variable " + std::to_string(i));
        if (!std::is_sorted(domains[i].begin(), domains[i].end()) ||
            std::adjacent_find(domains[i].begin(), domains[i].end()) != domains[i].end())
            throw NetworkError("domain of variable " + std::to_string(i) + " is not strictly increasing");
    }

    ConstraintNetwork net;
    net.domains_ = std::move(domains);
    net.pair_index_.assign(static_cast<std::size_t>(var_count) * var_count, -1);

    // Sorted by (lo, hi) so constraint ids do not depend on input order.
    std::map<std::pair<Var, Var>, const ConstraintSpec*> ordered;
    for (const ConstraintSpec& spec : constraints) {
        if (spec.first < 0 || spec.first >= var_count || spec.second < 0 || spec.second >= var_count)
            throw NetworkError("constraint references unknown variable");
        if (spec.first == spec.second)
            throw NetworkError("self-loop constraint on variable " + std::to_string(spec.first));
        auto key = std::minmax(spec.first, spec.second);
        if (!ordered.emplace(key, &spec).second)
            throw NetworkError("duplicate constraint between " + std::to_string(key.first) + " and " +
                               std::to_string(key.second));
    }

    for (const auto& [key, spec] : ordered) {
        ConstraintNetwork::Constraint c;
        c.lo = key.first;
        c.hi = key.second;
        const int rows = static_cast<int>(net.domains_[c.lo].size());
        const int cols = static_cast<int>(net.domains_[c.hi].size());
        c.allowed.assign(static_cast<std::size_t>(rows) * cols, 0);
        const bool swapped = spec->first != c.lo;
        for (auto [va, vb] : spec->allowed) {
            if (swapped) std::swap(va, vb);
            ValueIndex a = net.value_index(c.lo, va);
            ValueIndex b = net.value_index(c.hi, vb);
            if (a < 0 || b < 0)
                throw NetworkError("allowed pair " + std::to_string(va) + ":" + std::to_string(vb) +
                                   " outside the domains of " + std::to_string(c.lo) + "," +
                                   std::to_string(c.hi));
            c.allowed[static_cast<std::size_t>(a) * cols + b] = 1;
        }
        int id = static_cast<int>(net.constraints_.size());
        net.pair_index_[static_cast<std::size_t>(c.lo) * var_count + c.hi] = id;
        net.pair_index_[static_cast<std::size_t>(c.hi) * var_count + c.lo] = id;
        net.constraints_.push_back(std::move(c));
    }

    net.adjacency_.assign(var_count, {});
    for (Var i = 0; i < var_count; ++i)
        for (Var j = 0; j < var_count; ++j)
            if (i != j && net.constraint_id(i, j) >= 0) net.adjacency_[i].push_back({j, net.constraint_id(i, j), 0, 0});

    int slot_offset = 0;
    for (Var i = 0; i < var_count; ++i) {
        for (Neighbor& nb : net.adjacency_[i]) {
            nb.arc = static_cast<int>(net.arcs_.size());
            net.arcs_.push_back({i, nb.var, nb.constraint, slot_offset});
            slot_offset += static_cast<int>(net.domains_[i].size());
        }
    }
    net.arc_value_slots_ = slot_offset;
    for (Var i = 0; i < var_count; ++i) {
        for (Neighbor& nb : net.adjacency_[i]) {
            const auto& back = net.adjacency_[nb.var];
            auto it = std::find_if(back.begin(), back.end(), [&](const Neighbor& x) { return x.var == i; });
            nb.reverse_arc = it->arc;
        }
    }

    for (const auto& dom : net.domains_) {
        net.max_domain_ = std::max(net.max_domain_, static_cast<int>(dom.size()));
        net.total_values_ += dom.size();
    }
    return net;
}

ConstraintNetwork restrict_network(const ConstraintNetwork& net, const DomainState& state,
                                   std::span<const PairRef> removed_pairs) {
    const int n = net.var_count();
    std::vector<std::vector<int>> domains(n);
    for (Var i = 0; i < n; ++i) {
        for (ValueIndex a = state.first(i); a >= 0; a = state.next(i, a))
            domains[i].push_back(net.external_value(i, a));
        if (domains[i].empty())
            throw NetworkError("cannot restrict network: domain of " + std::to_string(i) + " is empty");
    }

    std::map<std::pair<Var, Var>, std::vector<PairRef>> forbidden;
    for (const PairRef& p : removed_pairs) {
        PairRef q = p.first.var < p.second.var ? p : PairRef{p.second, p.first};
        forbidden[{q.first.var, q.second.var}].push_back(q);
    }

    std::vector<ConstraintSpec> specs;
    CheckCounter scratch;
    for (Var i = 0; i < n; ++i) {
        for (Var j = i + 1; j < n; ++j) {
            auto fit = forbidden.find({i, j});
            const bool constrained = net.has_constraint(i, j);
            if (!constrained && fit == forbidden.end()) continue;
            ConstraintSpec spec{i, j, {}};
            for (ValueIndex a = state.first(i); a >= 0; a = state.next(i, a)) {
                for (ValueIndex b = state.first(j); b >= 0; b = state.next(j, b)) {
                    bool ok = !constrained || net.allows(i, a, j, b, scratch);
                    if (ok && fit != forbidden.end()) {
                        PairRef key{{i, a}, {j, b}};
                        ok = std::find(fit->second.begin(), fit->second.end(), key) == fit->second.end();
                    }
                    if (ok) spec.allowed.emplace_back(net.external_value(i, a), net.external_value(j, b));
                }
            }
            specs.push_back(std::move(spec));
        }
    }
    return build_network(n, std::move(domains), specs);
}

}  // namespace domfilter
