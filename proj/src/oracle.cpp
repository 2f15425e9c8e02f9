#include "domfilter/oracle.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "domfilter/filters.hpp"
#include "domfilter/rng.hpp"

namespace domfilter::oracle {

namespace {

// Oracle checks are not part of any filter's cost.
bool ok(const ConstraintNetwork& net, Var i, ValueIndex a, Var j, ValueIndex b) {
    CheckCounter scratch;
    return net.allows(i, a, j, b, scratch);
}

// True unless a constraint between i and j forbids the pair.
bool compatible(const ConstraintNetwork& net, Var i, ValueIndex a, Var j, ValueIndex b) {
    return !net.has_constraint(i, j) || ok(net, i, a, j, b);
}

std::vector<ValueIndex> supports(const ConstraintNetwork& net, const DomainState& s, Var i, ValueIndex a, Var j) {
    std::vector<ValueIndex> out;
    for (ValueIndex b : s.values(j))
        if (ok(net, i, a, j, b)) out.push_back(b);
    return out;
}

bool path_consistent(const ConstraintNetwork& net, const DomainState& s, Var i, ValueIndex a, Var j, ValueIndex b) {
    for (Var w = 0; w < net.var_count(); ++w) {
        if (w == i || w == j || !net.has_constraint(i, w) || !net.has_constraint(j, w)) continue;
        bool found = false;
        for (ValueIndex c : s.values(w))
            if (ok(net, i, a, w, c) && ok(net, j, b, w, c)) {
                found = true;
                break;
            }
        if (!found) return false;
    }
    return true;
}

// At most `limit` supports (0 = no limit) checked for a path-consistent one.
bool restricted_path(const ConstraintNetwork& net, const DomainState& s, Var i, ValueIndex a, int limit) {
    for (Var j = 0; j < net.var_count(); ++j) {
        if (j == i || !net.has_constraint(i, j)) continue;
        const auto sup = supports(net, s, i, a, j);
        if (sup.empty()) return false;
        if (limit > 0 && static_cast<int>(sup.size()) > limit) continue;
        if (std::none_of(sup.begin(), sup.end(), [&](ValueIndex b) { return path_consistent(net, s, i, a, j, b); }))
            return false;
    }
    return true;
}

bool arc_consistent(const ConstraintNetwork& net, const DomainState& s, Var i, ValueIndex a) {
    for (Var j = 0; j < net.var_count(); ++j)
        if (j != i && net.has_constraint(i, j) && supports(net, s, i, a, j).empty()) return false;
    return true;
}

bool path_inverse(const ConstraintNetwork& net, const DomainState& s, Var i, ValueIndex a) {
    const int n = net.var_count();
    for (Var j = 0; j < n; ++j) {
        if (j == i) continue;
        for (Var k = j + 1; k < n; ++k) {
            if (k == i) continue;
            bool found = false;
            for (ValueIndex b : s.values(j)) {
                if (!compatible(net, i, a, j, b)) continue;
                for (ValueIndex c : s.values(k))
                    if (compatible(net, i, a, k, c) && compatible(net, j, b, k, c)) {
                        found = true;
                        break;
                    }
                if (found) break;
            }
            if (!found) return false;
        }
    }
    return true;
}

// Consistent instantiation of `vars` in order, extending `fixed`.
bool extendable(const ConstraintNetwork& net, const DomainState& s, const std::vector<Var>& vars, std::size_t depth,
                std::vector<std::pair<Var, ValueIndex>>& fixed) {
    if (depth == vars.size()) return true;
    const Var v = vars[depth];
    for (ValueIndex b : s.values(v)) {
        bool consistent = true;
        for (auto [u, c] : fixed)
            if (!compatible(net, v, b, u, c)) {
                consistent = false;
                break;
            }
        if (!consistent) continue;
        fixed.emplace_back(v, b);
        if (extendable(net, s, vars, depth + 1, fixed)) return true;
        fixed.pop_back();
    }
    return false;
}

bool neighborhood_inverse(const ConstraintNetwork& net, const DomainState& s, Var i, ValueIndex a) {
    std::vector<Var> hood;
    for (Var j = 0; j < net.var_count(); ++j)
        if (j != i && net.has_constraint(i, j)) hood.push_back(j);
    std::vector<std::pair<Var, ValueIndex>> fixed{{i, a}};
    return extendable(net, s, hood, 0, fixed);
}

using Predicate = std::function<bool(const DomainState&, Var, ValueIndex)>;

// Sweeps in ascending (variable, value) order, deleting violators, until a sweep deletes nothing.
DomainState fixpoint(const ConstraintNetwork& net, DomainState s, const Predicate& holds) {
    bool changed = true;
    while (changed && !s.wipeout()) {
        changed = false;
        for (Var i = 0; i < net.var_count(); ++i)
            for (ValueIndex a : s.values(i))
                if (!holds(s, i, a)) {
                    s.remove(i, a);
                    changed = true;
                }
    }
    if (s.wipeout())
        for (Var i = 0; i < s.var_count(); ++i) s.clear(i);
    return s;
}

Predicate predicate_for(const ConstraintNetwork& net, ConsistencyId lc) {
    switch (lc.kind()) {
        case ConsistencyKind::AC:
            return [&net](const DomainState& s, Var i, ValueIndex a) { return arc_consistent(net, s, i, a); };
        case ConsistencyKind::RPC:
            return [&net](const DomainState& s, Var i, ValueIndex a) { return restricted_path(net, s, i, a, 1); };
        case ConsistencyKind::KRPC: {
            const int k = *lc.k();
            return [&net, k](const DomainState& s, Var i, ValueIndex a) { return restricted_path(net, s, i, a, k); };
        }
        case ConsistencyKind::MaxRPC:
            return [&net](const DomainState& s, Var i, ValueIndex a) { return restricted_path(net, s, i, a, 0); };
        case ConsistencyKind::PIC:
            return [&net](const DomainState& s, Var i, ValueIndex a) { return path_inverse(net, s, i, a); };
        case ConsistencyKind::NIC:
            return [&net](const DomainState& s, Var i, ValueIndex a) { return neighborhood_inverse(net, s, i, a); };
        case ConsistencyKind::SAC:
        case ConsistencyKind::SRPC: {
            const Predicate inner = predicate_for(net, lc.kind() == ConsistencyKind::SAC ? ConsistencyKind::AC
                                                                                       : ConsistencyKind::RPC);
            return [&net, inner](const DomainState& s, Var i, ValueIndex a) {
                DomainState restricted = s;
                restricted.assign(i, a);
                return !fixpoint(net, restricted, inner).wipeout();
            };
        }
        case ConsistencyKind::StrongPC:
            break;
    }
    return {};
}

Closure strong_path_closure(const ConstraintNetwork& net, DomainState s) {
    const int n = net.var_count();
    // rel[i][j] on the completed graph, rows indexed by i's values.
    std::vector<std::vector<std::vector<char>>> rel(n, std::vector<std::vector<char>>(n));
    for (Var i = 0; i < n; ++i)
        for (Var j = 0; j < n; ++j) {
            if (i == j) continue;
            rel[i][j].assign(static_cast<std::size_t>(net.domain_size(i)) * net.domain_size(j), 1);
            for (ValueIndex a = 0; a < net.domain_size(i); ++a)
                for (ValueIndex b = 0; b < net.domain_size(j); ++b)
                    rel[i][j][a * net.domain_size(j) + b] = compatible(net, i, a, j, b);
        }
    auto r = [&](Var i, ValueIndex a, Var j, ValueIndex b) -> char& {
        return rel[i][j][a * net.domain_size(j) + b];
    };

    bool changed = true;
    while (changed && !s.wipeout()) {
        changed = false;
        for (Var i = 0; i < n; ++i)
            for (ValueIndex a : s.values(i))
                for (Var j = 0; j < n; ++j) {
                    if (j == i) continue;
                    const auto dj = s.values(j);
                    if (std::none_of(dj.begin(), dj.end(), [&](ValueIndex b) { return r(i, a, j, b); })) {
                        s.remove(i, a);
                        changed = true;
                        break;
                    }
                }
        for (Var i = 0; i < n; ++i)
            for (Var j = i + 1; j < n; ++j)
                for (ValueIndex a : s.values(i))
                    for (ValueIndex b : s.values(j)) {
                        if (!r(i, a, j, b)) continue;
                        for (Var k = 0; k < n; ++k) {
                            if (k == i || k == j) continue;
                            const auto dk = s.values(k);
                            if (std::none_of(dk.begin(), dk.end(),
                                             [&](ValueIndex c) { return r(i, a, k, c) && r(j, b, k, c); })) {
                                r(i, a, j, b) = 0;
                                r(j, b, i, a) = 0;
                                changed = true;
                                break;
                            }
                        }
                    }
    }

    Closure out;
    if (s.wipeout()) {
        for (Var i = 0; i < n; ++i) s.clear(i);
    } else {
        for (Var i = 0; i < n; ++i)
            for (Var j = i + 1; j < n; ++j)
                for (ValueIndex a : s.values(i))
                    for (ValueIndex b : s.values(j))
                        if (compatible(net, i, a, j, b) && !r(i, a, j, b)) out.deleted_pairs.push_back({{i, a}, {j, b}});
    }
    out.domains = std::move(s);
    return out;
}

bool first_solution(const ConstraintNetwork& net, const DomainState& s, std::vector<ValueIndex>& out) {
    std::vector<Var> order(net.var_count());
    for (Var i = 0; i < net.var_count(); ++i) order[i] = i;
    std::vector<std::pair<Var, ValueIndex>> fixed;
    if (!extendable(net, s, order, 0, fixed)) return false;
    out.assign(net.var_count(), -1);
    for (auto [v, b] : fixed) out[v] = b;
    return true;
}

void enumerate(const ConstraintNetwork& net, const DomainState& s, Var depth, std::vector<ValueIndex>& current,
               SolutionSet& out, std::size_t limit) {
    if (out.truncated) return;
    if (depth == net.var_count()) {
        if (out.solutions.size() >= limit) {
            out.truncated = true;
            return;
        }
        out.solutions.push_back(current);
        return;
    }
    for (ValueIndex b : s.values(depth)) {
        bool consistent = true;
        for (Var u = 0; u < depth && consistent; ++u) consistent = compatible(net, depth, b, u, current[u]);
        if (!consistent) continue;
        current[depth] = b;
        enumerate(net, s, depth + 1, current, out, limit);
        if (out.truncated) return;
    }
}

bool deletes_nothing(const ConstraintNetwork& net, ConsistencyId lc, bool strict_pairs) {
    DomainState s(net);
    const FilterResult r = enforce(net, s, lc);
    return r.deleted.empty() && (!strict_pairs || r.deleted_pairs.empty());
}

// Random graph with a uniform number of edges; each relation forbids a random permutation
// (coloring-like) or, in the mixed family, possibly a random set of its own size.
ConstraintNetwork structured_instance(int n, int d, bool mixed, SplitMix64& rng) {
    std::vector<std::pair<Var, Var>> pairs;
    for (Var i = 0; i < n; ++i)
        for (Var j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    const auto e = static_cast<std::size_t>(1 + rng.below(pairs.size()));
    for (std::size_t t = 0; t < e; ++t) std::swap(pairs[t], pairs[t + rng.below(pairs.size() - t)]);
    pairs.resize(e);
    std::sort(pairs.begin(), pairs.end());

    const int cells = d * d;
    std::vector<ConstraintSpec> specs;
    for (auto [i, j] : pairs) {
        std::vector<char> forbidden(static_cast<std::size_t>(cells), 0);
        if (!mixed || rng.below(2) == 0) {
            std::vector<int> perm(d);
            std::iota(perm.begin(), perm.end(), 0);
            for (int a = d - 1; a > 0; --a) std::swap(perm[a], perm[rng.below(static_cast<std::uint64_t>(a) + 1)]);
            for (int a = 0; a < d; ++a) forbidden[a * d + perm[a]] = 1;
        } else {
            const int f = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(cells - 1)));
            std::vector<int> pool(cells);
            std::iota(pool.begin(), pool.end(), 0);
            for (int t = 0; t < f; ++t) {
                std::swap(pool[t], pool[t + rng.below(static_cast<std::uint64_t>(cells - t))]);
                forbidden[pool[t]] = 1;
            }
        }
        ConstraintSpec c{i, j, {}};
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b)
                if (!forbidden[a * d + b]) c.allowed.emplace_back(a, b);
        specs.push_back(std::move(c));
    }
    std::vector<std::vector<int>> domains(n, std::vector<int>(d));
    for (auto& dom : domains) std::iota(dom.begin(), dom.end(), 0);
    return build_network(n, std::move(domains), specs);
}

ConstraintNetwork draw_instance(InstanceFamily family, const WitnessParams& params, SplitMix64& rng) {
    const int n = 3 + static_cast<int>(rng.below(static_cast<std::uint64_t>(params.max_n - 2)));
    const int d = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(params.max_d - 1)));
    if (family != InstanceFamily::ModelB) return structured_instance(n, d, family == InstanceFamily::Mixed, rng);
    GenSpec spec;
    spec.n = n;
    spec.d = d;
    spec.p1 = params.densities[rng.below(params.densities.size())];
    const int cells = d * d;
    spec.p2 = static_cast<double>(1 + rng.below(static_cast<std::uint64_t>(cells - 1))) / cells;
    spec.seed = rng.next();
    return generate_model_b(spec);
}

}  // namespace

SolutionSet enumerate_solutions(const ConstraintNetwork& net, const DomainState& state, std::size_t limit) {
    SolutionSet out;
    if (state.wipeout()) return out;
    std::vector<ValueIndex> current(net.var_count(), -1);
    enumerate(net, state, 0, current, out, limit);
    return out;
}

Closure definitional_closure(const ConstraintNetwork& net, ConsistencyId lc) {
    return definitional_closure(net, DomainState(net), lc);
}

Closure definitional_closure(const ConstraintNetwork& net, const DomainState& state, ConsistencyId lc) {
    if (lc.kind() == ConsistencyKind::StrongPC) return strong_path_closure(net, state);
    Closure out;
    out.domains = fixpoint(net, state, predicate_for(net, lc));
    return out;
}

DomainState variable_completability(const ConstraintNetwork& net, const DomainState& state) {
    const int n = net.var_count();
    std::vector<std::vector<char>> seen(n);
    for (Var i = 0; i < n; ++i) seen[i].assign(state.capacity(i), 0);
    bool satisfiable = false;
    for (Var i = 0; i < n; ++i)
        for (ValueIndex a : state.values(i)) {
            if (seen[i][a]) continue;
            DomainState restricted = state;
            restricted.assign(i, a);
            std::vector<ValueIndex> sol;
            if (!first_solution(net, restricted, sol)) continue;
            satisfiable = true;
            for (Var v = 0; v < n; ++v) seen[v][sol[v]] = 1;
        }
    DomainState kept = state;
    for (Var i = 0; i < n; ++i)
        for (ValueIndex a : state.values(i))
            if (!satisfiable || !seen[i][a]) kept.remove(i, a);
    return kept;
}

std::uint64_t search_space(const DomainState& state) {
    std::uint64_t product = 1;
    for (Var i = 0; i < state.var_count(); ++i) {
        const auto size = static_cast<std::uint64_t>(state.size(i));
        if (size != 0 && product > UINT64_MAX / size) return UINT64_MAX;
        product *= size;
    }
    return product;
}

std::optional<Witness> witness_search(ConsistencyId strong, ConsistencyId weak, const WitnessParams& params,
                                      std::uint64_t seed) {
    if (strong == weak || params.max_n < 3 || params.max_d < 2 || params.families.empty()) return std::nullopt;
    if (params.densities.empty()) return std::nullopt;
    const bool weak_pairs = weak.kind() == ConsistencyKind::StrongPC;
    for (int t = 0; t < params.attempts; ++t) {
        SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        const InstanceFamily family = params.families[static_cast<std::size_t>(t) % params.families.size()];
        const ConstraintNetwork source = draw_instance(family, params, rng);

        // Restricted to the weak closure, the network satisfies weak by construction.
        DomainState closed(source);
        const FilterResult w = enforce(source, closed, weak);
        if (w.wipeout) continue;
        ConstraintNetwork net = restrict_network(source, closed, w.deleted_pairs);
        if ((!w.deleted.empty() || !w.deleted_pairs.empty()) && !deletes_nothing(net, weak, weak_pairs)) continue;
        if (deletes_nothing(net, strong, false)) continue;

        const DomainState full(net);
        const Closure wc = definitional_closure(net, weak);
        if (!(wc.domains == full) || (weak_pairs && !wc.deleted_pairs.empty())) continue;
        if (definitional_closure(net, strong).domains == full) continue;
        return Witness{std::move(net), family, t};
    }
    return std::nullopt;
}

}  // namespace domfilter::oracle
