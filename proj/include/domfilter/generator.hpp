#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "domfilter/network.hpp"

namespace domfilter {

struct GenSpec {
    int n = 2;
    int d = 1;
    double p1 = 0.0;  // density
    double p2 = 0.0;  // tightness
    std::uint64_t seed = 0;
};

// Throws std::invalid_argument unless n >= 2, d >= 1 and p1, p2 lie in [0, 1].
void validate(const GenSpec& spec);

// Number of constraints and forbidden pairs per constraint, rounded half up.
int constraint_count_for(int n, double p1);
int forbidden_count_for(int d, double p2);

// Model B: exactly constraint_count_for(n, p1) distinct constrained pairs, each forbidding
// exactly forbidden_count_for(d, p2) distinct value pairs. Domains are 0..d-1.
ConstraintNetwork generate_model_b(const GenSpec& spec);

// Parameters of a named experiment family; p2 (and p1 when unset) are left to the caller.
struct ExperimentFamily {
    std::string name;
    int n = 0;
    int d = 0;
    std::optional<double> p1;
};

// Names: "transition-40x15", "timing-200x30-sparse", "timing-200x30-dense".
// Throws std::invalid_argument for anything else.
ExperimentFamily spec_for_paper_experiment(std::string_view name);

}  // namespace domfilter
