#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "domfilter/consistency.hpp"
#include "domfilter/filters.hpp"
#include "domfilter/generator.hpp"

namespace domfilter::bench {

struct Measurement {
    FilterResult result;
    // 100 * deleted / total initial values; 100 on wipeout.
    double deleted_pct = 0.0;
};

// Runs `lc` on a fresh full state of `net`. Only the filter call is timed.
Measurement measure(const ConstraintNetwork& net, ConsistencyId lc, const Deadline& deadline = Deadline::unbounded());

// Seed of the index-th instance at tightness p2.
std::uint64_t instance_seed(std::uint64_t seed, double p2, int index);

enum class BoundKind { T0, Tall };

struct BoundParams {
    int n = 40;
    int d = 15;
    double p1 = 0.5;
    int samples = 300;
    // Grid step; 1/d² when unset. Must divide [0, 1] into whole steps.
    std::optional<double> resolution;
    std::uint64_t seed = 0;
    double threshold = 0.5;
    // Scan the grid upwards instead of bisecting it.
    bool linear_scan = false;
    // Workers per grid point; 0 uses every hardware thread. Results do not depend on it.
    int threads = 0;
};

struct TightnessBound {
    BoundKind kind = BoundKind::T0;
    ConsistencyId lc = ConsistencyKind::AC;
    double p1 = 0.0;
    // Smallest grid tightness meeting the threshold; 1.0 when no grid point does.
    double tightness = 1.0;
    bool reached = false;
    int samples = 0;
    double resolution = 0.0;
};

// T0: smallest grid tightness at which at least `threshold` of the instances lose a value.
// Tall: smallest grid tightness at which at least `threshold` of the instances wipe out.
// Throws std::invalid_argument on a degenerate grid or samples < 1.
TightnessBound estimate_t0(ConsistencyId lc, const BoundParams& params);
TightnessBound estimate_tall(ConsistencyId lc, const BoundParams& params);

struct BoundsReport {
    // For each lc in order, one bound per requested kind.
    std::vector<TightnessBound> bounds;
    // Instances on which some stronger consistency kept a value a weaker one deleted.
    int lattice_violations = 0;
    // Filter runs performed.
    int instances_run = 0;
};

// Bounds for every lc. All lcs see the same instances at a grid point, and each instance is
// cross-checked against the strength relations of the lcs run on it.
BoundsReport estimate_bounds(const std::vector<ConsistencyId>& lcs, const BoundParams& params,
                             const std::vector<BoundKind>& kinds = {BoundKind::T0, BoundKind::Tall});

struct BenchPoint {
    ConsistencyId lc = ConsistencyKind::AC;
    GenSpec spec;  // seed unused
    int samples = 0;
    double mean_deleted_pct = 0.0;
    double median_deleted_pct = 0.0;
    double wipeout_frac = 0.0;
    double mean_checks = 0.0;
    double mean_ms = 0.0;
    double max_ms = 0.0;
    double timeout_frac = 0.0;
};

struct SweepParams {
    int n = 0;
    int d = 0;
    double p1 = 0.0;
    std::vector<ConsistencyId> lcs;
    std::vector<double> tightness;
    int samples = 50;
    std::uint64_t seed = 0;
    std::optional<std::chrono::milliseconds> timeout;
    // As in BoundParams.
    int threads = 0;
};

struct SweepReport {
    // lc-major, tightness ascending within each lc.
    std::vector<BenchPoint> points;
    int lattice_violations = 0;
};

SweepReport sweep(const SweepParams& params);

// Evenly spaced tightness values 0, 1/steps, ..., 1.
std::vector<double> tightness_grid(int steps);

inline constexpr const char* kCsvHeader =
    "lc,k,n,d,p1,p2,samples,mean_deleted_pct,wipeout_frac,mean_checks,mean_ms,max_ms,timeout_frac";

void write_csv(const std::vector<BenchPoint>& points, std::ostream& out);
void write_bounds_csv(const std::vector<TightnessBound>& bounds, std::ostream& out);

// Samples scaled by `scale`, at least 1.
int scaled_samples(int samples, double scale);

}  // namespace domfilter::bench
