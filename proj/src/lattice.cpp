#include "domfilter/lattice.hpp"

#include <stdexcept>

#include "domfilter/filters.hpp"
#include "domfilter/generator.hpp"
#include "domfilter/rng.hpp"

namespace domfilter::lattice {

namespace {

std::string short_name(ConsistencyId id) {
    std::string s(id.name());
    if (id.k()) s += std::to_string(*id.k());
    return s;
}

ConsistencyId parse_short(std::string_view s) {
    if (s.starts_with("krpc") && s.size() > 4) {
        int k = 0;
        for (char ch : s.substr(4)) {
            if (ch < '0' || ch > '9') throw std::invalid_argument("bad k in '" + std::string(s) + "'");
            k = k * 10 + (ch - '0');
        }
        return ConsistencyId::k_rpc(k);
    }
    return parse_consistency(s);
}

}  // namespace

std::string Relation::name() const { return short_name(strong) + (incomparable ? "<>" : ">") + short_name(weak); }

std::vector<Relation> standard_relations() {
    using K = ConsistencyKind;
    const auto k = [](int v) { return ConsistencyId::k_rpc(v); };
    return {
        {K::RPC, K::AC, false},      {k(2), K::RPC, false},       {k(3), k(2), false},
        {K::MaxRPC, k(2), false},    {K::PIC, K::RPC, false},     {K::MaxRPC, K::PIC, false},
        {K::SAC, K::MaxRPC, false},  {K::NIC, K::MaxRPC, false},  {K::StrongPC, K::SAC, false},
        {K::SRPC, K::SAC, false},    {K::PIC, k(2), true},        {K::NIC, K::SAC, true},
        {K::NIC, K::StrongPC, true}, {K::NIC, K::SRPC, true},
    };
}

std::vector<Relation> parse_relations(std::string_view list) {
    std::vector<Relation> out;
    while (!list.empty()) {
        const auto comma = list.find(',');
        const std::string_view item = list.substr(0, comma);
        list = comma == std::string_view::npos ? std::string_view{} : list.substr(comma + 1);
        if (item.empty()) continue;
        const auto both = item.find("<>");
        const auto gt = item.find('>');
        if (both != std::string_view::npos) {
            out.push_back({parse_short(item.substr(0, both)), parse_short(item.substr(both + 2)), true});
        } else if (gt != std::string_view::npos) {
            out.push_back({parse_short(item.substr(0, gt)), parse_short(item.substr(gt + 1)), false});
        } else {
            throw std::invalid_argument("expected strong>weak or a<>b, got '" + std::string(item) + "'");
        }
    }
    return out;
}

ContainmentReport check_containments(const ContainmentParams& params) {
    if (params.samples < 1) throw std::invalid_argument("samples must be at least 1");
    if (params.n < 3 || params.d < 1) throw std::invalid_argument("need n >= 3 and d >= 1");
    std::vector<int> ks;
    for (int k = 1; k <= params.d; ++k) ks.push_back(k);
    const std::vector<ConsistencyId> lcs = all_consistencies(ks);
    const double densities[] = {0.2, 0.4, 0.6, 0.8, 1.0};
    const int cells = params.d * params.d;

    ContainmentReport report;
    for (int s = 0; s < params.samples; ++s) {
        const std::uint64_t instance = derive_seed(params.seed, static_cast<std::uint64_t>(s));
        SplitMix64 rng(instance);
        GenSpec spec{params.n, params.d, densities[rng.below(5)],
                     static_cast<double>(rng.below(static_cast<std::uint64_t>(cells) + 1)) / cells, rng.next()};
        const ConstraintNetwork net = generate_model_b(spec);
        std::vector<DomainState> finals;
        for (ConsistencyId lc : lcs) {
            DomainState state(net);
            enforce(net, state, lc);
            finals.push_back(std::move(state));
        }
        auto fail = [&](const std::string& what) {
            report.violations.push_back("sample " + std::to_string(s) + ": " + what);
        };
        for (std::size_t a = 0; a < lcs.size(); ++a)
            for (std::size_t b = 0; b < lcs.size(); ++b) {
                if (a == b || !is_stronger_or_equal(lcs[a], lcs[b], params.n)) continue;
                ++report.comparisons;
                if (!finals[a].is_subset_of(finals[b])) fail(lcs[a].label() + " not within " + lcs[b].label());
            }
        const auto at = [&](ConsistencyId id) {
            for (std::size_t i = 0; i < lcs.size(); ++i)
                if (lcs[i] == id) return i;
            return lcs.size();
        };
        report.comparisons += 2;
        if (!(finals[at(ConsistencyId::k_rpc(1))] == finals[at(ConsistencyKind::RPC)])) fail("1-RPC differs from RPC");
        if (!(finals[at(ConsistencyId::k_rpc(params.d))] == finals[at(ConsistencyKind::MaxRPC)]))
            fail(std::to_string(params.d) + "-RPC differs from Max-RPC");
        ++report.instances;
    }
    return report;
}

Verdict find_witnesses(const Relation& relation, const oracle::WitnessParams& params, std::uint64_t seed) {
    Verdict v{relation, std::nullopt, std::nullopt};
    v.forward = oracle::witness_search(relation.strong, relation.weak, params, seed);
    if (relation.incomparable) v.backward = oracle::witness_search(relation.weak, relation.strong, params, seed);
    return v;
}

}  // namespace domfilter::lattice
