#include <sstream>

#include "doctest.h"

#include "domfilter/cliques.hpp"
#include "domfilter/domain_state.hpp"
#include "domfilter/generator.hpp"
#include "domfilter/instance_io.hpp"
#include "support.hpp"

using namespace domfilter;

TEST_CASE("NET-A: one universal constraint") {
    const auto net = testing::net_a();
    CHECK(net.var_count() == 2);
    CHECK(net.constraint_count() == 1);
    CHECK(net.max_degree() == 1);
    CHECK(three_cliques(net).size() == 0);
    CheckCounter counter;
    CHECK(net.allows(0, 0, 1, 1, counter));
    CHECK(counter.count == 1);
}

TEST_CASE("NET-B: an empty relation is valid") {
    const auto net = testing::net_b();
    CheckCounter counter;
    CHECK_FALSE(net.allows(0, 0, 1, 0, counter));
    CHECK(net.constraint_count() == 1);
}

TEST_CASE("NET-D: triangle with one forbidden pair on y-z") {
    const auto net = testing::net_d();
    CHECK(net.constraint_count() == 3);
    const CliqueIndex cliques = three_cliques(net);
    REQUIRE(cliques.size() == 1);
    CHECK(cliques.triangles[0] == std::array<Var, 3>{0, 1, 2});
    CheckCounter counter;
    CHECK_FALSE(net.allows(1, 0, 2, 0, counter));
    CHECK(net.allows(1, 0, 2, 1, counter));
}

TEST_CASE("allows is symmetric and unconstrained pairs are an error") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto net = generate_model_b({7, 4, 0.5, 0.4, seed});
        CheckCounter counter;
        for (Var i = 0; i < net.var_count(); ++i)
            for (Var j = 0; j < net.var_count(); ++j) {
                if (i == j) continue;
                if (!net.has_constraint(i, j)) {
                    CHECK_THROWS_AS(net.allows(i, 0, j, 0, counter), NetworkError);
                    continue;
                }
                for (int a = 0; a < 4; ++a)
                    for (int b = 0; b < 4; ++b) CHECK(net.allows(i, a, j, b, counter) == net.allows(j, b, i, a, counter));
            }
    }
}

TEST_CASE("build_network rejects malformed input") {
    const std::vector<std::vector<int>> doms{{0, 1}, {0, 1}};
    CHECK_THROWS_AS(build_network(2, doms, {{0, 0, {}}}), NetworkError);
    CHECK_THROWS_AS(build_network(2, doms, {{0, 1, {}}, {1, 0, {}}}), NetworkError);
    CHECK_THROWS_AS(build_network(2, doms, {{0, 1, {{0, 5}}}}), NetworkError);
    CHECK_THROWS_AS(build_network(2, {{0, 1}, {}}, {}), NetworkError);
    CHECK_NOTHROW(build_network(3, {{0}, {1}, {2}}, {}));
}

TEST_CASE("three_cliques matches naive enumeration") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const int n = 3 + static_cast<int>(seed % 10);
        const auto net = generate_model_b({n, 2, 0.2 + 0.025 * static_cast<double>(seed), 0.0, seed});
        std::size_t naive = 0;
        for (Var i = 0; i < n; ++i)
            for (Var j = i + 1; j < n; ++j)
                for (Var k = j + 1; k < n; ++k)
                    naive += net.has_constraint(i, j) && net.has_constraint(i, k) && net.has_constraint(j, k);
        CHECK(three_cliques(net).size() == naive);
    }
    CHECK(three_cliques(generate_model_b({4, 2, 1.0, 0.0, 0})).size() == 4);
}

TEST_CASE("restrict_to_singleton") {
    const auto a = testing::net_a();
    const DomainState full(a);
    const DomainState s = restrict_to_singleton(a, full, 0, 1);
    CHECK(s.size(0) == 1);
    CHECK(s.contains(0, 1));
    CHECK(s.size(1) == 2);
    CHECK(full.size(0) == 2);

    const auto d = testing::net_d();
    const DomainState fd(d);
    const DomainState sd = restrict_to_singleton(d, fd, 0, 0);
    CHECK(sd.values(0) == std::vector<ValueIndex>{0});
    CHECK(sd.size(1) == 2);
    CHECK(sd.size(2) == 2);
    CHECK(restrict_to_singleton(d, sd, 0, 0) == sd);
    CHECK_THROWS_AS(restrict_to_singleton(d, sd, 0, 1), std::invalid_argument);
}

TEST_CASE("instance format round trip") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto net = generate_model_b({6, 3, 0.6, static_cast<double>(seed) / 9.0, seed});
        const std::string text = instance_to_string(net);
        CHECK(instance_to_string(parse_instance_string(text)) == text);
    }
    const auto net = parse_instance_string("vars 2\ndom 0 -3 5 9\ndom 1 2\ncon 1 0 forbid 2:5\n");
    CHECK(net.external_value(0, 1) == 5);
    CheckCounter counter;
    CHECK_FALSE(net.allows(0, 1, 1, 0, counter));
    CHECK(net.allows(0, 0, 1, 0, counter));
}

TEST_CASE("instance parser is strict") {
    CHECK_THROWS_AS(parse_instance_string("vars 2\ndom 0 0\n"), ParseError);
    CHECK_THROWS_AS(parse_instance_string("vars 1\ndom 0 1 0\n"), ParseError);
    CHECK_THROWS_AS(parse_instance_string("vars 2\ndom 0 0\ndom 1 0\ncon 0 1 maybe\n"), ParseError);
    CHECK_THROWS_AS(parse_instance_string("vars 2\ndom 0 0\ndom 1 0\ncon 0 1 allow 0:1\n"), ParseError);
    CHECK_THROWS_AS(parse_instance_string("vars 2\ndom 0 0\ndom 1 0\nedge 0 1\n"), ParseError);
    CHECK_THROWS_AS(parse_instance_string("vars 2\ndom 0 0\ndom 1 0\ncon 0 1 all\ncon 1 0 none\n"), ParseError);
}

TEST_CASE("restrict_network keeps surviving values and forbids removed pairs") {
    const auto d = testing::net_d();
    DomainState s(d);
    s.remove(0, 0);
    const std::vector<PairRef> removed{{{1, 0}, {2, 1}}};
    const auto r = restrict_network(d, s, removed);
    CHECK(r.domain_values(0) == std::vector<int>{1});
    CheckCounter counter;
    CHECK_FALSE(r.allows(1, 0, 2, 1, counter));
    CHECK(r.allows(1, 1, 2, 1, counter));
}
