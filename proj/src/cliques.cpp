#include "domfilter/cliques.hpp"

#include <algorithm>

namespace domfilter {

CliqueIndex three_cliques(const ConstraintNetwork& net) {
    CliqueIndex index;
    index.by_constraint.assign(net.constraint_count(), {});
    index.by_var.assign(net.var_count(), {});

    // Merge the sorted neighbor lists of i and j, keeping w > j.
    for (Var i = 0; i < net.var_count(); ++i) {
        const auto& ni = net.neighbors(i);
        for (const Neighbor& nj : ni) {
            const Var j = nj.var;
            if (j <= i) continue;
            const auto& adj_j = net.neighbors(j);
            auto a = ni.begin();
            auto b = adj_j.begin();
            while (a != ni.end() && b != adj_j.end()) {
                if (a->var < b->var) {
                    ++a;
                } else if (b->var < a->var) {
                    ++b;
                } else {
                    if (a->var > j) {
                        int id = static_cast<int>(index.triangles.size());
                        index.triangles.push_back({i, j, a->var});
                        for (Var v : {i, j, a->var}) index.by_var[v].push_back(id);
                    }
                    ++a;
                    ++b;
                }
            }
        }
    }

    for (const auto& t : index.triangles) {
        index.by_constraint[net.constraint_id(t[0], t[1])].push_back(t[2]);
        index.by_constraint[net.constraint_id(t[0], t[2])].push_back(t[1]);
        index.by_constraint[net.constraint_id(t[1], t[2])].push_back(t[0]);
    }
    for (auto& thirds : index.by_constraint) std::sort(thirds.begin(), thirds.end());
    for (auto& ids : index.by_var) std::sort(ids.begin(), ids.end());
    return index;
}

}  // namespace domfilter
