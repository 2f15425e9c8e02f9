#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

#include "domfilter/cli.hpp"
#include "domfilter/instance_io.hpp"
#include "support.hpp"

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(const std::vector<std::string>& args, const std::string& stdin_text = "") {
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    const int code = domfilter::cli::run(args, in, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "domfilter-cli-test";
    std::filesystem::create_directories(dir);
    return (dir / name).string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("gen") {
    const auto r = run({"gen", "--n", "4", "--d", "3", "--p1", "1", "--p2", "0"});
    CHECK(r.code == 0);
    const auto net = domfilter::parse_instance_string(r.out);
    CHECK(net.constraint_count() == 6);
    CHECK(r.out.find("con 0 1 all") != std::string::npos);
    CHECK(r.out.rfind("# e=6 c=4 g=3", 0) == 0);

    const std::string f1 = temp_file("g1.txt"), f2 = temp_file("g2.txt");
    const std::vector<std::string> base{"gen", "--n", "40", "--d", "15", "--p1", ".5", "--p2", ".5", "--seed", "7", "--out"};
    auto a = base, b = base;
    a.push_back(f1);
    b.push_back(f2);
    CHECK(run(a).code == 0);
    CHECK(run(b).code == 0);
    CHECK(slurp(f1) == slurp(f2));
    CHECK_FALSE(slurp(f1).empty());

    CHECK(run({"gen", "--n", "1", "--d", "3", "--p1", "1", "--p2", "0"}).code == 2);
    CHECK(run({"gen", "--n", "4", "--d", "3", "--p1", "1.5", "--p2", "0"}).code == 2);
    CHECK(run({"gen", "--n", "4"}).code == 2);
}

TEST_CASE("filter") {
    const std::string d = testing::data_path("net_d.txt");
    const auto rpc = run({"filter", "--lc", "rpc", "--in", d});
    CHECK(rpc.code == 0);
    CHECK(rpc.out.find("deleted      1 of 6 values (16.67%)") != std::string::npos);
    CHECK(rpc.out.find("(0,0)") != std::string::npos);

    CHECK(run({"filter", "--lc", "ac", "--in", testing::data_path("net_b.txt")}).code == 1);
    CHECK(run({"filter", "--lc", "ac", "--k", "2", "--in", d}).code == 2);
    CHECK(run({"filter", "--lc", "krpc", "--in", d}).code == 2);
    CHECK(run({"filter", "--lc", "gac", "--in", d}).code == 2);
    CHECK(run({"filter", "--lc", "ac", "--in", temp_file("missing.txt")}).code == 2);
    CHECK(run({"filter", "--lc", "ac"}, "vars 2\ndom 0 0\n").code == 2);

    const auto spc = run({"filter", "--lc", "spc", "--in", d});
    CHECK(spc.out.find("pairs        0 deleted") != std::string::npos);
}

TEST_CASE("filter --json: 1-RPC equals RPC and the output re-filters to nothing") {
    const std::string gen = run({"gen", "--n", "9", "--d", "4", "--p1", ".7", "--p2", ".3", "--seed", "2"}).out;
    const auto one = nlohmann::json::parse(run({"filter", "--lc", "krpc", "--k", "1", "--json"}, gen).out);
    const auto rpc = nlohmann::json::parse(run({"filter", "--lc", "rpc", "--json"}, gen).out);
    CHECK(one["deleted"] == rpc["deleted"]);
    CHECK(one["k"] == 1);
    CHECK(rpc["k"].is_null());

    for (const char* lc : {"ac", "rpc", "maxrpc", "pic", "nic", "spc", "sac", "srpc"}) {
        CAPTURE(lc);
        const auto first = nlohmann::json::parse(run({"filter", "--lc", lc, "--json"}, gen).out);
        if (first["instance"].is_null()) {
            CHECK(first["status"] == "wipeout");
            continue;
        }
        const auto second = nlohmann::json::parse(run({"filter", "--lc", lc, "--json"}, first["instance"].get<std::string>()).out);
        CHECK(second["deleted"].empty());
        CHECK(second["deleted_pairs"].empty());
        CHECK(second["instance"] == first["instance"]);
    }

    const auto b = nlohmann::json::parse(run({"filter", "--lc", "ac", "--json", "--in", testing::data_path("net_b.txt")}).out);
    CHECK(b["instance"].is_null());
    CHECK(b["deleted_pct"] == 100.0);
}

TEST_CASE("filter --timeout") {
    const std::string gen = run({"gen", "--n", "60", "--d", "10", "--p1", ".5", "--p2", ".3", "--seed", "1"}).out;
    const auto r = run({"filter", "--lc", "nic", "--timeout", "0", "--json"}, gen);
    CHECK(r.code == 4);
    CHECK(nlohmann::json::parse(r.out)["status"] == "timeout");
}

TEST_CASE("oracle") {
    const std::string d = testing::data_path("net_d.txt");
    const auto closure = run({"oracle", "closure", "--lc", "rpc", "--in", d});
    CHECK(closure.code == 0);
    CHECK(closure.out.find("MATCH") != std::string::npos);
    CHECK(closure.out.find("(0,0)") != std::string::npos);
    CHECK(run({"oracle", "closure", "--lc", "spc", "--in", d}).code == 0);

    const auto sols = run({"oracle", "solutions", "--in", testing::data_path("net_a.txt")});
    CHECK(sols.out.rfind("solutions 4\n", 0) == 0);
    const auto limited = run({"oracle", "solutions", "--limit", "2", "--in", testing::data_path("net_a.txt")});
    CHECK(limited.out.rfind("solutions 2+", 0) == 0);

    const auto vc = run({"oracle", "completability", "--in", testing::data_path("net_b.txt")});
    CHECK(vc.out.find("globally inconsistent") != std::string::npos);

    const std::string big = run({"gen", "--n", "20", "--d", "3", "--p1", ".2", "--p2", ".2"}).out;
    CHECK(run({"oracle", "solutions"}, big).code == 2);
    CHECK(run({"oracle", "solutions", "--limit", "1", "--max-space", "1e10"}, big).code == 0);
    CHECK(run({"oracle"}).code == 2);
}

TEST_CASE("lattice") {
    CHECK(run({"lattice", "--samples", "0"}).code == 2);
    const auto r = run({"lattice", "--samples", "30", "--pairs", "sac>maxrpc", "--seed", "1"});
    CHECK(r.code == 0);
    CHECK(r.out.find("0 violations") != std::string::npos);
    CHECK(r.out.find("sac>maxrpc") != std::string::npos);
    CHECK(r.out.find("1 of 1 relations witnessed") != std::string::npos);
    CHECK(run({"lattice", "--pairs", "sac>foo"}).code == 2);
}

TEST_CASE("bench") {
    CHECK(run({"bench", "t0", "--lc", "krpc", "--n", "10", "--d", "3", "--p1", ".5"}).code == 2);
    CHECK(run({"bench", "t0", "--family", "transition-40x15", "--lc", "ac"}).code == 2);  // no density
    CHECK(run({"bench", "sweep", "--family", "nope"}).code == 2);

    const auto t0 = run({"bench", "t0", "--lc", "ac", "--n", "12", "--d", "4", "--p1", ".5", "--samples", "20", "--seed", "1"});
    CHECK(t0.code == 0);
    CHECK(t0.out.rfind("kind,lc,k,p1,tightness,reached,samples,resolution\nT0,ac,,0.5000,", 0) == 0);

    const auto sweep = run({"bench", "sweep", "--n", "10", "--d", "3", "--p1", ".5", "--lc", "ac,krpc", "--k", "2",
                            "--samples", "10", "--scale", "0.5", "--grid-steps", "2"});
    CHECK(sweep.code == 0);
    std::istringstream lines(sweep.out);
    int rows = 0;
    for (std::string line; std::getline(lines, line);) ++rows;
    CHECK(rows == 7);
    CHECK(sweep.out.find("krpc,2,10,3,0.5000,1.000000,5,") != std::string::npos);

    const auto empty = run({"bench", "sweep", "--n", "10", "--d", "3", "--p1", ".5", "--lc", ""});
    CHECK(empty.out == "lc,k,n,d,p1,p2,samples,mean_deleted_pct,wipeout_frac,mean_checks,mean_ms,max_ms,timeout_frac\n");
}

TEST_CASE("bench t0 regression value") {
    const auto r = run({"bench", "t0", "--lc", "ac", "--n", "40", "--d", "15", "--p1", ".5", "--samples", "100", "--seed", "1"});
    CHECK(r.code == 0);
    CHECK(r.out == "kind,lc,k,p1,tightness,reached,samples,resolution\nT0,ac,,0.5000,0.542222,1,100,0.004444\n");
}
