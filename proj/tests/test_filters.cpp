#include <chrono>

#include "doctest.h"

#include "domfilter/filters.hpp"
#include "domfilter/generator.hpp"
#include "domfilter/oracle.hpp"
#include "domfilter/singleton.hpp"
#include "support.hpp"

using namespace domfilter;

namespace {

std::vector<ConsistencyId> every_lc(int d) {
    std::vector<int> ks;
    for (int k = 1; k <= d; ++k) ks.push_back(k);
    return all_consistencies(ks);
}

FilterResult run(const ConstraintNetwork& net, ConsistencyId lc, DomainState* out = nullptr) {
    DomainState state(net);
    FilterResult r = enforce(net, state, lc);
    if (out) *out = state;
    return r;
}

}  // namespace

TEST_CASE("NET-D: AC holds, every stronger consistency deletes (x,0) only") {
    const auto net = testing::net_d();
    CHECK(run(net, ConsistencyKind::AC).deleted.empty());
    for (ConsistencyId lc : every_lc(2)) {
        if (lc.kind() == ConsistencyKind::AC) continue;
        CAPTURE(lc.label());
        const FilterResult r = run(net, lc);
        CHECK_FALSE(r.wipeout);
        CHECK(r.deleted == std::vector<ValueRef>{{0, 0}});
        CHECK(r.deleted_pairs.empty());
    }
}

TEST_CASE("NET-A: nothing to delete") {
    const auto net = testing::net_a();
    for (ConsistencyId lc : every_lc(2)) {
        const FilterResult r = run(net, lc);
        CHECK(r.deleted.empty());
        CHECK_FALSE(r.wipeout);
    }
}

TEST_CASE("NET-B: wipeout for everything except PIC") {
    const auto net = testing::net_b();
    for (ConsistencyId lc : every_lc(2)) {
        CAPTURE(lc.label());
        DomainState state(net);
        const FilterResult r = enforce(net, state, lc);
        if (lc.kind() == ConsistencyKind::PIC) {
            CHECK(r.deleted.empty());
            continue;
        }
        CHECK(r.wipeout);
        CHECK(r.deleted.size() == 4);
        CHECK(state.total_size() == 0);
    }
}

TEST_CASE("find_pc_support on NET-D") {
    const auto net = testing::net_d();
    const CliqueIndex cliques = three_cliques(net);
    const DomainState full(net);
    CheckCounter counter;
    CHECK(find_pc_support(net, cliques, full, 0, 1, 1, 0, counter) == 0);
    CHECK(find_pc_support(net, cliques, full, 0, 1, 1, 1, counter) == 1);
    CHECK_FALSE(find_pc_support(net, cliques, full, 0, 0, 1, 0, counter).has_value());
    CHECK(counter.count > 0);
}

TEST_CASE("singleton_test on NET-D") {
    const auto net = testing::net_d();
    const DomainState full(net);
    CHECK_FALSE(singleton_test(net, full, 0, 0, ConsistencyKind::AC));
    CHECK(singleton_test(net, full, 0, 1, ConsistencyKind::AC));
    CHECK(singleton_test(net, full, 1, 0, ConsistencyKind::RPC));
    CHECK_THROWS_AS(singleton_test(net, full, 0, 0, ConsistencyKind::PIC), std::invalid_argument);
}

TEST_CASE("k-RPC needs k >= 1") {
    const auto net = testing::net_d();
    DomainState state(net);
    CHECK_THROWS_AS(enforce_k_rpc(net, state, 0), std::invalid_argument);
}

TEST_CASE("fixpoints match the definitional closure on small random networks") {
    int instances = 0;
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const int n = 3 + static_cast<int>(seed % 4);
        const int d = 2 + static_cast<int>(seed % 3);
        const int m = static_cast<int>(seed % static_cast<std::uint64_t>(d * d));
        const auto net = generate_model_b({n, d, seed % 2 ? 1.0 : 0.6, static_cast<double>(m) / (d * d), seed});
        ++instances;
        for (ConsistencyId lc : every_lc(d)) {
            CAPTURE(lc.label());
            CAPTURE(seed);
            DomainState state(net);
            const FilterResult r = enforce(net, state, lc);
            const oracle::Closure c = oracle::definitional_closure(net, lc);
            CHECK(state == c.domains);
            CHECK(r.deleted_pairs == c.deleted_pairs);
            CHECK(r.wipeout == c.wipeout());
        }
    }
    CHECK(instances == 60);
}

TEST_CASE("filters are idempotent and keep every solution") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto net = generate_model_b({6, 3, 0.7, static_cast<double>(seed % 8) / 9.0, seed});
        const auto before = oracle::enumerate_solutions(net, DomainState(net));
        for (ConsistencyId lc : every_lc(3)) {
            CAPTURE(lc.label());
            DomainState state(net);
            const FilterResult r = enforce(net, state, lc);
            if (r.wipeout) {
                CHECK(before.solutions.empty());
                continue;
            }
            const auto filtered = restrict_network(net, state, r.deleted_pairs);
            CHECK(oracle::enumerate_solutions(net, state).solutions == before.solutions);
            DomainState again(filtered);
            const FilterResult second = enforce(filtered, again, lc);
            CHECK(second.deleted.empty());
            CHECK(second.deleted_pairs.empty());
        }
    }
}

TEST_CASE("1-RPC is RPC and d-RPC is Max-RPC") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const int d = 2 + static_cast<int>(seed % 3);
        const auto net = generate_model_b({8, d, 0.8, static_cast<double>(1 + seed % static_cast<std::uint64_t>(d * d - 1)) / (d * d), seed});
        DomainState rpc(net), one(net), max(net), kd(net);
        enforce_rpc(net, rpc);
        enforce_k_rpc(net, one, 1);
        enforce_max_rpc(net, max);
        enforce_k_rpc(net, kd, d);
        CHECK(rpc == one);
        CHECK(max == kd);
    }
}

TEST_CASE("PIC is vacuous on two variables") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto net = generate_model_b({2, 3, 1.0, static_cast<double>(seed % 10) / 9.0, seed});
        DomainState pic(net), ac(net);
        CHECK(enforce_pic(net, pic).deleted.empty());
        enforce_ac(net, ac);
        CHECK(pic == DomainState(net));
    }
}

TEST_CASE("check counts are reproducible") {
    const auto net = generate_model_b({30, 8, 0.3, 0.35, 9});
    for (ConsistencyId lc : every_lc(2)) {
        const FilterResult a = run(net, lc);
        const FilterResult b = run(net, lc);
        CHECK(a.checks == b.checks);
        CHECK(a.deleted == b.deleted);
    }
}

TEST_CASE("an expired deadline stops NIC with a sound partial result") {
    const auto net = generate_model_b({25, 6, 0.5, 0.25, 4});
    DomainState full_run(net);
    const FilterResult complete = enforce_nic(net, full_run);
    REQUIRE_FALSE(complete.timed_out);

    DomainState partial(net);
    const FilterResult r = enforce_nic(net, partial, Deadline::after(std::chrono::milliseconds(0)));
    CHECK(r.timed_out);
    CHECK_FALSE(r.wipeout);
    CHECK(full_run.is_subset_of(partial));
}

TEST_CASE("SAC and SRPC record one probe count per singleton test") {
    const auto net = generate_model_b({10, 4, 0.5, 0.3, 2});
    DomainState state(net);
    const FilterResult r = enforce_sac(net, state);
    CHECK_FALSE(r.probe_checks.empty());
    std::uint64_t sum = 0;
    for (auto c : r.probe_checks) sum += c;
    CHECK(sum <= r.checks);
}
