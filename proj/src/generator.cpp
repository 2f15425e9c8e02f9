#include "domfilter/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "domfilter/rng.hpp"

namespace domfilter {

namespace {

int round_half_up(double x) { return static_cast<int>(std::floor(x + 0.5)); }

// First `count` entries of a partial Fisher-Yates shuffle of 0..total-1, sorted.
std::vector<int> sample_without_replacement(int total, int count, SplitMix64& rng) {
    std::vector<int> pool(total);
    std::iota(pool.begin(), pool.end(), 0);
    for (int t = 0; t < count; ++t) {
        const int pick = t + static_cast<int>(rng.below(static_cast<std::uint64_t>(total - t)));
        std::swap(pool[t], pool[pick]);
    }
    pool.resize(count);
    std::sort(pool.begin(), pool.end());
    return pool;
}

}  // namespace

void validate(const GenSpec& spec) {
    if (spec.n < 2) throw std::invalid_argument("n must be at least 2");
    if (spec.d < 1) throw std::invalid_argument("d must be at least 1");
    if (!(spec.p1 >= 0.0 && spec.p1 <= 1.0)) throw std::invalid_argument("p1 must lie in [0, 1]");
    if (!(spec.p2 >= 0.0 && spec.p2 <= 1.0)) throw std::invalid_argument("p2 must lie in [0, 1]");
}

int constraint_count_for(int n, double p1) { return round_half_up(p1 * n * (n - 1) / 2.0); }

int forbidden_count_for(int d, double p2) { return round_half_up(p2 * d * d); }

ConstraintNetwork generate_model_b(const GenSpec& spec) {
    validate(spec);
    const int n = spec.n;
    const int d = spec.d;
    SplitMix64 rng(spec.seed);

    const int pair_total = n * (n - 1) / 2;
    const int e = constraint_count_for(n, spec.p1);
    const int f = forbidden_count_for(d, spec.p2);

    // Pair index p enumerates (i, j), i < j, in lexicographic order.
    std::vector<std::pair<Var, Var>> pairs;
    pairs.reserve(pair_total);
    for (Var i = 0; i < n; ++i)
        for (Var j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

    std::vector<ConstraintSpec> specs;
    specs.reserve(e);
    for (int p : sample_without_replacement(pair_total, e, rng)) {
        ConstraintSpec c{pairs[p].first, pairs[p].second, {}};
        std::vector<char> forbidden(static_cast<std::size_t>(d) * d, 0);
        for (int cell : sample_without_replacement(d * d, f, rng)) forbidden[cell] = 1;
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b)
                if (!forbidden[a * d + b]) c.allowed.emplace_back(a, b);
        specs.push_back(std::move(c));
    }

    std::vector<std::vector<int>> domains(n, std::vector<int>(d));
    for (auto& dom : domains) std::iota(dom.begin(), dom.end(), 0);
    return build_network(n, std::move(domains), specs);
}

ExperimentFamily spec_for_paper_experiment(std::string_view name) {
    if (name == "transition-40x15") return {std::string(name), 40, 15, std::nullopt};
    if (name == "timing-200x30-sparse") return {std::string(name), 200, 30, 0.02};
    if (name == "timing-200x30-dense") return {std::string(name), 200, 30, 0.15};
    throw std::invalid_argument("unknown experiment family '" + std::string(name) + "'");
}

}  // namespace domfilter
