#include <cmath>

#include "doctest.h"

#include "domfilter/cliques.hpp"
#include "domfilter/filters.hpp"
#include "domfilter/generator.hpp"
#include "domfilter/instance_io.hpp"

using namespace domfilter;

namespace {

int forbidden(const ConstraintNetwork::Constraint& c) {
    int f = 0;
    for (auto x : c.allowed) f += x == 0;
    return f;
}

}  // namespace

TEST_CASE("round half up") {
    CHECK(constraint_count_for(5, 0.25) == 3);  // 2.5
    CHECK(constraint_count_for(4, 0.5) == 3);
    CHECK(constraint_count_for(40, 1.0) == 780);
    CHECK(forbidden_count_for(2, 0.125) == 1);  // 0.5
    CHECK(forbidden_count_for(15, 0.5) == 113);  // 112.5
    CHECK(forbidden_count_for(3, 0.0) == 0);
}

TEST_CASE("constraint and forbidden counts follow the formulas") {
    std::uint64_t seed = 0;
    for (int n = 2; n <= 9; ++n)
        for (int d = 1; d <= 5; ++d)
            for (int t = 0; t <= 10; ++t) {
                const double p1 = t / 10.0;
                const double p2 = (10 - t) / 10.0;
                const auto net = generate_model_b({n, d, p1, p2, ++seed});
                CHECK(net.constraint_count() == static_cast<int>(std::floor(p1 * n * (n - 1) / 2 + 0.5)));
                for (const auto& c : net.constraints()) CHECK(forbidden(c) == static_cast<int>(std::floor(p2 * d * d + 0.5)));
            }
}

TEST_CASE("universal and empty extremes") {
    const auto open = generate_model_b({4, 3, 1.0, 0.0, 5});
    CHECK(open.constraint_count() == 6);
    DomainState s(open);
    CHECK(enforce(open, s, ConsistencyKind::SAC).deleted.empty());

    const auto closed = generate_model_b({4, 3, 1.0, 1.0, 5});
    DomainState t(closed);
    CHECK(enforce_ac(closed, t).wipeout);
}

TEST_CASE("generation is a function of the spec") {
    const GenSpec spec{40, 15, 0.5, 0.5, 77};
    CHECK(instance_to_string(generate_model_b(spec)) == instance_to_string(generate_model_b(spec)));
    GenSpec other = spec;
    other.seed = 78;
    CHECK(instance_to_string(generate_model_b(spec)) != instance_to_string(generate_model_b(other)));
}

TEST_CASE("constrained pairs are uniform") {
    const int n = 8;
    const int runs = 2000;
    std::vector<int> hits(n * n, 0);
    int e = 0;
    for (int s = 0; s < runs; ++s) {
        const auto net = generate_model_b({n, 2, 0.5, 0.0, static_cast<std::uint64_t>(s)});
        e = net.constraint_count();
        for (const auto& c : net.constraints()) ++hits[c.lo * n + c.hi];
    }
    const double p = e / 28.0;
    const double sigma = std::sqrt(runs * p * (1 - p));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) CHECK(std::abs(hits[i * n + j] - runs * p) <= 3 * sigma);
}

TEST_CASE("named experiment families") {
    const auto t = spec_for_paper_experiment("transition-40x15");
    CHECK(t.n == 40);
    CHECK(t.d == 15);
    CHECK_FALSE(t.p1.has_value());
    const auto sparse = spec_for_paper_experiment("timing-200x30-sparse");
    CHECK(sparse.n == 200);
    CHECK(sparse.d == 30);
    CHECK(*sparse.p1 == doctest::Approx(0.02));
    CHECK(*spec_for_paper_experiment("timing-200x30-dense").p1 == doctest::Approx(0.15));
    CHECK_THROWS_AS(spec_for_paper_experiment("timing-100"), std::invalid_argument);
}

TEST_CASE("invalid specs are rejected") {
    CHECK_THROWS_AS(validate({1, 3, 0.5, 0.5, 0}), std::invalid_argument);
    CHECK_THROWS_AS(validate({4, 0, 0.5, 0.5, 0}), std::invalid_argument);
    CHECK_THROWS_AS(validate({4, 3, 1.5, 0.5, 0}), std::invalid_argument);
    CHECK_THROWS_AS(validate({4, 3, 0.5, -0.1, 0}), std::invalid_argument);
}
