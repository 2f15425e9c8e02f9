#pragma once

#include <array>
#include <vector>

#include "domfilter/network.hpp"

namespace domfilter {

// Triangles of the constraint graph.
struct CliqueIndex {
    // Each triangle once, vertices ascending, triangles in lexicographic order.
    std::vector<std::array<Var, 3>> triangles;
    // Per constraint id: third variables completing a triangle with it, ascending.
    std::vector<std::vector<Var>> by_constraint;
    // Per variable: ids of the triangles containing it, ascending.
    std::vector<std::vector<int>> by_var;

    std::size_t size() const noexcept { return triangles.size(); }
};

CliqueIndex three_cliques(const ConstraintNetwork& net);

}  // namespace domfilter
