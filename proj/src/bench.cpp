#include "domfilter/bench.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "domfilter/rng.hpp"

namespace domfilter::bench {

namespace {

constexpr int kLatticeCheckMaxVars = 60;

// Calls fn(0..count-1) on up to `threads` workers (0: one per hardware thread).
template <class Fn>
void parallel_for(int count, int threads, Fn fn) {
    if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    threads = std::min(threads, count);
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (int i = next++; i < count; i = next++) fn(i);
        });
    for (auto& th : pool) th.join();
}

// Counts instances where a stronger consistency kept a value that a weaker one removed.
int lattice_violations(const std::vector<ConsistencyId>& lcs, const std::vector<DomainState>& finals,
                       const std::vector<bool>& complete, int n) {
    if (n > kLatticeCheckMaxVars) return 0;
    for (std::size_t s = 0; s < lcs.size(); ++s)
        for (std::size_t w = 0; w < lcs.size(); ++w) {
            if (s == w || !complete[s] || !complete[w] || !is_stronger_or_equal(lcs[s], lcs[w], n)) continue;
            if (!finals[s].is_subset_of(finals[w])) return 1;
        }
    return 0;
}

// Per grid point: the instances' final domains for each consistency evaluated there so far.
struct PointOutcome {
    std::vector<int> deleting;  // per lc, -1 until evaluated
    std::vector<int> wiped;
    std::vector<std::vector<DomainState>> finals;  // [lc][instance]
    std::vector<std::vector<char>> complete;       // [lc][instance]
};

class BoundEstimator {
public:
    BoundEstimator(std::vector<ConsistencyId> lcs, const BoundParams& params) : lcs_(std::move(lcs)), params_(params) {
        if (params.samples < 1) throw std::invalid_argument("samples must be at least 1");
        if (params.n < 2 || params.d < 1) throw std::invalid_argument("need n >= 2 and d >= 1");
        if (!(params.threshold > 0.0 && params.threshold <= 1.0)) throw std::invalid_argument("threshold must lie in (0, 1]");
        resolution_ = params.resolution.value_or(1.0 / (static_cast<double>(params.d) * params.d));
        if (!(resolution_ > 0.0 && resolution_ <= 1.0)) throw std::invalid_argument("degenerate tightness grid");
        const double steps = std::round(1.0 / resolution_);
        if (std::abs(steps * resolution_ - 1.0) > 1e-9) throw std::invalid_argument("degenerate tightness grid");
        steps_ = static_cast<int>(steps);
    }

    TightnessBound bound(std::size_t lc_index, BoundKind kind) {
        auto meets = [&](int m) {
            const PointOutcome& o = evaluate(m, lc_index);
            const int hits = kind == BoundKind::T0 ? o.deleting[lc_index] : o.wiped[lc_index];
            return hits >= params_.threshold * params_.samples;
        };
        int found = steps_ + 1;
        if (params_.linear_scan) {
            for (int m = 0; m <= steps_; ++m)
                if (meets(m)) {
                    found = m;
                    break;
                }
        } else {
            int lo = 0;
            int hi = steps_ + 1;
            while (lo < hi) {
                const int mid = lo + (hi - lo) / 2;
                if (meets(mid)) {
                    hi = mid;
                } else {
                    lo = mid + 1;
                }
            }
            found = lo;
        }
        TightnessBound b;
        b.kind = kind;
        b.lc = lcs_[lc_index];
        b.p1 = params_.p1;
        b.reached = found <= steps_;
        b.tightness = b.reached ? tightness(found) : 1.0;
        b.samples = params_.samples;
        b.resolution = resolution_;
        return b;
    }

    int violations() const { return violations_; }
    int instances_run() const { return instances_; }

private:
    double tightness(int m) const { return static_cast<double>(m) / steps_; }

    const PointOutcome& evaluate(int m, std::size_t l) {
        const std::size_t L = lcs_.size();
        auto it = cache_.find(m);
        if (it == cache_.end()) {
            PointOutcome fresh{std::vector<int>(L, -1), std::vector<int>(L, -1),
                               std::vector<std::vector<DomainState>>(L), std::vector<std::vector<char>>(L)};
            it = cache_.emplace(m, std::move(fresh)).first;
        }
        PointOutcome& o = it->second;
        if (o.deleting[l] >= 0) return o;

        o.deleting[l] = 0;
        o.wiped[l] = 0;
        const double p2 = tightness(m);
        std::vector<std::optional<DomainState>> states(params_.samples);
        std::vector<FilterResult> results(params_.samples);
        parallel_for(params_.samples, params_.threads, [&](int idx) {
            const GenSpec spec{params_.n, params_.d, params_.p1, p2, instance_seed(params_.seed, p2, idx)};
            const ConstraintNetwork net = generate_model_b(spec);
            states[idx].emplace(net);
            results[idx] = enforce(net, *states[idx], lcs_[l]);
        });
        for (int idx = 0; idx < params_.samples; ++idx) {
            const FilterResult& r = results[idx];
            o.deleting[l] += !r.deleted.empty();
            o.wiped[l] += r.wipeout;
            o.finals[l].push_back(std::move(*states[idx]));
            o.complete[l].push_back(!r.timed_out);
            ++instances_;

            // Cross-check against the consistencies already run on this instance.
            std::vector<ConsistencyId> lcs;
            std::vector<DomainState> finals;
            std::vector<bool> complete;
            for (std::size_t other = 0; other < L; ++other) {
                if (o.deleting[other] < 0 || o.finals[other].size() <= static_cast<std::size_t>(idx)) continue;
                lcs.push_back(lcs_[other]);
                finals.push_back(o.finals[other][idx]);
                complete.push_back(o.complete[other][idx] != 0);
            }
            violations_ += lattice_violations(lcs, finals, complete, params_.n);
        }
        return o;
    }

    std::vector<ConsistencyId> lcs_;
    BoundParams params_;
    double resolution_ = 0.0;
    int steps_ = 0;
    std::map<int, PointOutcome> cache_;
    int violations_ = 0;
    int instances_ = 0;
};

std::string format(double x, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", precision, x);
    return buf;
}

std::string k_column(ConsistencyId lc) { return lc.k() ? std::to_string(*lc.k()) : std::string(); }

}  // namespace

Measurement measure(const ConstraintNetwork& net, ConsistencyId lc, const Deadline& deadline) {
    DomainState state(net);
    Measurement m;
    m.result = enforce(net, state, lc, deadline);
    const auto total = static_cast<double>(net.total_values());
    m.deleted_pct = m.result.wipeout ? 100.0 : (total > 0 ? 100.0 * static_cast<double>(m.result.deleted.size()) / total : 0.0);
    return m;
}

std::uint64_t instance_seed(std::uint64_t seed, double p2, int index) {
    return derive_seed(derive_seed(seed, std::bit_cast<std::uint64_t>(p2)), static_cast<std::uint64_t>(index));
}

TightnessBound estimate_t0(ConsistencyId lc, const BoundParams& params) {
    return BoundEstimator({lc}, params).bound(0, BoundKind::T0);
}

TightnessBound estimate_tall(ConsistencyId lc, const BoundParams& params) {
    return BoundEstimator({lc}, params).bound(0, BoundKind::Tall);
}

BoundsReport estimate_bounds(const std::vector<ConsistencyId>& lcs, const BoundParams& params,
                             const std::vector<BoundKind>& kinds) {
    BoundEstimator estimator(lcs, params);
    BoundsReport report;
    for (std::size_t l = 0; l < lcs.size(); ++l)
        for (BoundKind kind : kinds) report.bounds.push_back(estimator.bound(l, kind));
    report.lattice_violations = estimator.violations();
    report.instances_run = estimator.instances_run();
    return report;
}

SweepReport sweep(const SweepParams& params) {
    if (params.samples < 1) throw std::invalid_argument("samples must be at least 1");
    const std::size_t L = params.lcs.size();
    const std::size_t T = params.tightness.size();
    SweepReport report;
    std::vector<BenchPoint> table(L * T);
    for (std::size_t t = 0; t < T; ++t) {
        const double p2 = params.tightness[t];
        struct Run {
            double deleted_pct;
            bool wipeout;
            std::uint64_t checks;
            double ms;
            bool timed_out;
        };
        std::vector<std::vector<Run>> runs(params.samples);
        std::vector<int> violations(params.samples, 0);
        parallel_for(params.samples, params.threads, [&](int idx) {
            const GenSpec spec{params.n, params.d, params.p1, p2, instance_seed(params.seed, p2, idx)};
            const ConstraintNetwork net = generate_model_b(spec);
            std::vector<DomainState> finals;
            std::vector<bool> complete;
            for (std::size_t l = 0; l < L; ++l) {
                const Deadline deadline = params.timeout ? Deadline::after(*params.timeout) : Deadline::unbounded();
                DomainState state(net);
                const FilterResult r = enforce(net, state, params.lcs[l], deadline);
                const double total = static_cast<double>(net.total_values());
                const double deleted = r.wipeout ? 100.0 : 100.0 * static_cast<double>(r.deleted.size()) / total;
                runs[idx].push_back({deleted, r.wipeout, r.checks, r.elapsed_ms(), r.timed_out});
                finals.push_back(std::move(state));
                complete.push_back(!r.timed_out);
            }
            if (L > 1) violations[idx] = lattice_violations(params.lcs, finals, complete, params.n);
        });
        std::vector<std::vector<double>> pct(L);
        for (int idx = 0; idx < params.samples; ++idx) {
            report.lattice_violations += violations[idx];
            for (std::size_t l = 0; l < L; ++l) {
                const Run& r = runs[idx][l];
                BenchPoint& p = table[l * T + t];
                pct[l].push_back(r.deleted_pct);
                p.mean_deleted_pct += r.deleted_pct;
                p.wipeout_frac += r.wipeout;
                p.mean_checks += static_cast<double>(r.checks);
                p.mean_ms += r.ms;
                p.max_ms = std::max(p.max_ms, r.ms);
                p.timeout_frac += r.timed_out;
            }
        }
        const double s = params.samples;
        for (std::size_t l = 0; l < L; ++l) {
            BenchPoint& p = table[l * T + t];
            p.lc = params.lcs[l];
            p.spec = GenSpec{params.n, params.d, params.p1, p2, 0};
            p.samples = params.samples;
            p.mean_deleted_pct /= s;
            p.wipeout_frac /= s;
            p.mean_checks /= s;
            p.mean_ms /= s;
            p.timeout_frac /= s;
            auto& v = pct[l];
            std::sort(v.begin(), v.end());
            const std::size_t mid = v.size() / 2;
            p.median_deleted_pct = v.size() % 2 ? v[mid] : (v[mid - 1] + v[mid]) / 2.0;
        }
    }
    report.points = std::move(table);
    return report;
}

std::vector<double> tightness_grid(int steps) {
    if (steps < 1) throw std::invalid_argument("tightness grid needs at least one step");
    std::vector<double> grid;
    for (int m = 0; m <= steps; ++m) grid.push_back(static_cast<double>(m) / steps);
    return grid;
}

void write_csv(const std::vector<BenchPoint>& points, std::ostream& out) {
    out << kCsvHeader << '\n';
    for (const BenchPoint& p : points) {
        out << p.lc.name() << ',' << k_column(p.lc) << ',' << p.spec.n << ',' << p.spec.d << ',' << format(p.spec.p1, 4)
            << ',' << format(p.spec.p2, 6) << ',' << p.samples << ',' << format(p.mean_deleted_pct, 4) << ','
            << format(p.wipeout_frac, 4) << ',' << format(p.mean_checks, 2) << ',' << format(p.mean_ms, 3) << ','
            << format(p.max_ms, 3) << ',' << format(p.timeout_frac, 4) << '\n';
    }
}

void write_bounds_csv(const std::vector<TightnessBound>& bounds, std::ostream& out) {
    out << "kind,lc,k,p1,tightness,reached,samples,resolution\n";
    for (const TightnessBound& b : bounds) {
        out << (b.kind == BoundKind::T0 ? "T0" : "Tall") << ',' << b.lc.name() << ',' << k_column(b.lc) << ','
            << format(b.p1, 4) << ',' << format(b.tightness, 6) << ',' << (b.reached ? 1 : 0) << ',' << b.samples
            << ',' << format(b.resolution, 6) << '\n';
    }
}

int scaled_samples(int samples, double scale) {
    return std::max(1, static_cast<int>(std::lround(samples * scale)));
}

}  // namespace domfilter::bench
