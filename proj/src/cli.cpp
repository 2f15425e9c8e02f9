#include "domfilter/cli.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "domfilter/bench.hpp"
#include "domfilter/cliques.hpp"
#include "domfilter/filters.hpp"
#include "domfilter/generator.hpp"
#include "domfilter/instance_io.hpp"
#include "domfilter/lattice.hpp"
#include "domfilter/oracle.hpp"

namespace domfilter::cli {

namespace {

struct Failure : std::runtime_error {
    Failure(int code_, const std::string& what) : std::runtime_error(what), code(code_) {}
    int code;
};

Failure usage(const std::string& what) { return Failure(kUsage, what); }

std::string fixed(double x, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", precision, x);
    return buf;
}

ConstraintNetwork load(const std::string& path, std::istream& in) {
    try {
        if (path.empty() || path == "-") return parse_instance(in);
        return read_instance_file(path);
    } catch (const ParseError& e) {
        throw usage(std::string("bad instance: ") + e.what());
    } catch (const std::runtime_error& e) {
        throw usage(e.what());
    }
}

ConsistencyId consistency(const std::string& name, std::optional<int> k) {
    try {
        return parse_consistency(name, k);
    } catch (const std::invalid_argument& e) {
        throw usage(e.what());
    }
}

std::vector<ConsistencyId> consistency_list(const std::string& list, std::optional<int> k) {
    std::vector<ConsistencyId> out;
    bool used_k = false;
    std::stringstream ss(list);
    for (std::string name; std::getline(ss, name, ',');) {
        if (name.empty()) continue;
        const bool krpc = name == "krpc";
        used_k |= krpc;
        out.push_back(consistency(name, krpc ? k : std::nullopt));
    }
    if (k && !used_k) throw usage("--k applies only to --lc krpc");
    return out;
}

std::string value_text(const ConstraintNetwork& net, ValueRef v) {
    return "(" + std::to_string(v.var) + "," + std::to_string(net.external_value(v.var, v.value)) + ")";
}

std::string pair_text(const ConstraintNetwork& net, const PairRef& p) {
    return value_text(net, p.first) + "-" + value_text(net, p.second);
}

void print_values(std::ostream& out, const ConstraintNetwork& net, const std::vector<ValueRef>& values) {
    for (std::size_t t = 0; t < values.size(); ++t) {
        if (t % 8 == 0) out << (t ? "\n" : "") << "             ";
        else out << ' ';
        out << value_text(net, values[t]);
    }
    if (!values.empty()) out << '\n';
}

class OutputFile {
public:
    OutputFile(const std::string& path, std::ostream& fallback) {
        if (path.empty() || path == "-") {
            stream_ = &fallback;
            return;
        }
        file_.open(path);
        if (!file_) throw usage("cannot write '" + path + "'");
        stream_ = &file_;
    }
    std::ostream& operator*() { return *stream_; }
    bool is_file() const { return stream_ == &file_; }

private:
    std::ofstream file_;
    std::ostream* stream_ = nullptr;
};

// gen

struct GenOptions {
    GenSpec spec;
    std::string out;
};

int cmd_gen(const GenOptions& o, std::ostream& out) {
    try {
        validate(o.spec);
    } catch (const std::invalid_argument& e) {
        throw usage(e.what());
    }
    const ConstraintNetwork net = generate_model_b(o.spec);
    const std::string stats = "e=" + std::to_string(net.constraint_count()) +
                              " c=" + std::to_string(three_cliques(net).size()) +
                              " g=" + std::to_string(net.max_degree());
    OutputFile file(o.out, out);
    if (file.is_file()) {
        write_instance(net, *file);
        out << o.out << ": " << stats << '\n';
    } else {
        out << "# " << stats << '\n';
        write_instance(net, out);
    }
    return kOk;
}

// filter

struct FilterOptions {
    std::string lc;
    std::optional<int> k;
    std::optional<int> timeout_ms;
    std::string in = "-";
    bool json = false;
};

int cmd_filter(const FilterOptions& o, std::istream& in, std::ostream& out) {
    const auto lcs = consistency_list(o.lc, o.k);
    if (lcs.size() != 1) throw usage("--lc takes exactly one consistency");
    const ConsistencyId lc = lcs.front();
    if (o.timeout_ms && *o.timeout_ms < 0) throw usage("--timeout must be non-negative");
    const ConstraintNetwork net = load(o.in, in);
    const Deadline deadline =
        o.timeout_ms ? Deadline::after(std::chrono::milliseconds(*o.timeout_ms)) : Deadline::unbounded();

    DomainState state(net);
    const FilterResult r = enforce(net, state, lc, deadline);
    const double total = static_cast<double>(net.total_values());
    const double pct = r.wipeout ? 100.0 : total > 0 ? 100.0 * static_cast<double>(r.deleted.size()) / total : 0.0;
    const char* status = r.timed_out ? "timeout" : r.wipeout ? "wipeout" : "fixpoint";

    if (o.json) {
        nlohmann::ordered_json j;
        j["lc"] = lc.name();
        j["k"] = lc.k() ? nlohmann::ordered_json(*lc.k()) : nlohmann::ordered_json(nullptr);
        j["status"] = status;
        auto& deleted = j["deleted"] = nlohmann::ordered_json::array();
        for (ValueRef v : r.deleted) deleted.push_back({v.var, net.external_value(v.var, v.value)});
        j["deleted_pct"] = pct;
        auto& pairs = j["deleted_pairs"] = nlohmann::ordered_json::array();
        for (const PairRef& p : r.deleted_pairs)
            pairs.push_back({{p.first.var, net.external_value(p.first.var, p.first.value)},
                             {p.second.var, net.external_value(p.second.var, p.second.value)}});
        j["checks"] = r.checks;
        j["elapsed_ms"] = r.elapsed_ms();
        j["instance"] = r.wipeout ? nlohmann::ordered_json(nullptr)
                                  : nlohmann::ordered_json(instance_to_string(restrict_network(net, state, r.deleted_pairs)));
        out << j.dump() << '\n';
    } else {
        out << "consistency  " << lc.label() << '\n';
        out << "status       " << status << '\n';
        out << "deleted      " << r.deleted.size() << " of " << net.total_values() << " values (" << fixed(pct, 2)
            << "%)\n";
        print_values(out, net, r.deleted);
        if (lc.kind() == ConsistencyKind::StrongPC) {
            out << "pairs        " << r.deleted_pairs.size() << " deleted\n";
            for (const PairRef& p : r.deleted_pairs) out << "             " << pair_text(net, p) << '\n';
        }
        out << "checks       " << r.checks << '\n';
        out << "elapsed_ms   " << fixed(r.elapsed_ms(), 3) << '\n';
    }
    if (r.timed_out) return kTimeout;
    return r.wipeout ? kInconsistent : kOk;
}

// oracle

struct OracleOptions {
    std::string in = "-";
    double max_space = 1e7;
    std::string lc;
    std::optional<int> k;
    std::size_t limit = 1000;
};

void guard(const ConstraintNetwork& net, double max_space) {
    const DomainState full(net);
    const auto space = oracle::search_space(full);
    if (static_cast<double>(space) > max_space)
        throw usage("search space " + std::to_string(space) + " exceeds --max-space");
}

int cmd_oracle_closure(const OracleOptions& o, std::istream& in, std::ostream& out) {
    const auto lcs = consistency_list(o.lc, o.k);
    if (lcs.size() != 1) throw usage("--lc takes exactly one consistency");
    const ConsistencyId lc = lcs.front();
    const ConstraintNetwork net = load(o.in, in);
    guard(net, o.max_space);

    const DomainState full(net);
    const oracle::Closure closure = oracle::definitional_closure(net, lc);
    DomainState state(net);
    const FilterResult r = enforce(net, state, lc);
    const bool match = closure.domains == state && closure.deleted_pairs == r.deleted_pairs;

    out << "consistency  " << lc.label() << '\n';
    if (closure.wipeout()) {
        out << "oracle       wipeout\n";
    } else {
        const auto removed = removed_values(full, closure.domains);
        out << "oracle       " << removed.size() << " deleted\n";
        print_values(out, net, removed);
        if (lc.kind() == ConsistencyKind::StrongPC) {
            out << "pairs        " << closure.deleted_pairs.size() << " deleted\n";
            for (const PairRef& p : closure.deleted_pairs) out << "             " << pair_text(net, p) << '\n';
        }
    }
    out << (match ? "MATCH" : "MISMATCH") << '\n';
    return match ? kOk : kInternal;
}

int cmd_oracle_solutions(const OracleOptions& o, std::istream& in, std::ostream& out) {
    const ConstraintNetwork net = load(o.in, in);
    guard(net, o.max_space);
    const oracle::SolutionSet set = oracle::enumerate_solutions(net, DomainState(net), o.limit);
    out << "solutions " << set.solutions.size() << (set.truncated ? "+ (limit reached)" : "") << '\n';
    for (const auto& s : set.solutions) {
        for (std::size_t i = 0; i < s.size(); ++i)
            out << (i ? " " : "") << net.external_value(static_cast<Var>(i), s[i]);
        out << '\n';
    }
    return kOk;
}

int cmd_oracle_completability(const OracleOptions& o, std::istream& in, std::ostream& out) {
    const ConstraintNetwork net = load(o.in, in);
    guard(net, o.max_space);
    const DomainState full(net);
    const DomainState vc = oracle::variable_completability(net, full);
    if (vc.total_size() == 0) {
        out << "globally inconsistent: all " << net.total_values() << " values deleted\n";
        return kOk;
    }
    for (Var i = 0; i < net.var_count(); ++i) {
        out << i << ":";
        for (ValueIndex a : vc.values(i)) out << ' ' << net.external_value(i, a);
        out << '\n';
    }
    out << "deleted " << net.total_values() - vc.total_size() << " of " << net.total_values() << '\n';
    return kOk;
}

// lattice

struct LatticeOptions {
    int samples = 300;
    int n = 6;
    int d = 3;
    std::uint64_t seed = 0;
    std::string pairs = "all";
    int attempts = 100000;
};

std::string witness_text(const std::optional<oracle::Witness>& w) {
    if (!w) return "not found";
    return "attempt " + std::to_string(w->attempt) + ", n=" + std::to_string(w->net.var_count());
}

int cmd_lattice(const LatticeOptions& o, std::ostream& out) {
    if (o.samples < 1) throw usage("--samples must be at least 1");
    if (o.n < 3 || o.d < 2) throw usage("--n must be at least 3 and --d at least 2");
    if (o.attempts < 1) throw usage("--attempts must be at least 1");
    std::vector<lattice::Relation> relations;
    try {
        relations = o.pairs == "all" ? lattice::standard_relations() : lattice::parse_relations(o.pairs);
    } catch (const std::invalid_argument& e) {
        throw usage(e.what());
    }

    const lattice::ContainmentReport containment = lattice::check_containments({o.samples, o.n, o.d, o.seed});
    out << "containments: " << containment.instances << " instances, " << containment.comparisons
        << " comparisons, " << containment.violations.size() << " violations\n";
    for (const auto& v : containment.violations) out << "  " << v << '\n';

    oracle::WitnessParams params;
    params.max_n = o.n;
    params.max_d = o.d;
    params.attempts = o.attempts;
    int missing = 0;
    out << "relation        forward                   backward\n";
    for (const auto& rel : relations) {
        const lattice::Verdict v = lattice::find_witnesses(rel, params, o.seed);
        missing += !v.found();
        std::string name = rel.name();
        name.resize(std::max<std::size_t>(name.size(), 16), ' ');
        std::string fwd = witness_text(v.forward);
        fwd.resize(std::max<std::size_t>(fwd.size(), 26), ' ');
        out << name << fwd << (rel.incomparable ? witness_text(v.backward) : "-") << '\n';
    }
    out << (relations.size() - missing) << " of " << relations.size() << " relations witnessed\n";
    return containment.violations.empty() ? kOk : kInternal;
}

// bench

struct BenchOptions {
    std::string family;
    std::optional<int> n;
    std::optional<int> d;
    std::optional<double> p1;
    std::string lc = "ac";
    std::optional<int> k;
    std::optional<int> samples;
    double scale = 1.0;
    std::uint64_t seed = 0;
    std::optional<double> resolution;
    double threshold = 0.5;
    bool linear_scan = false;
    int grid_steps = 20;
    std::optional<int> timeout_ms;
    int threads = 0;
    std::string out;
};

struct Shape {
    int n;
    int d;
    double p1;
};

Shape bench_shape(const BenchOptions& o) {
    Shape s{0, 0, -1.0};
    if (!o.family.empty()) {
        try {
            const ExperimentFamily f = spec_for_paper_experiment(o.family);
            s.n = f.n;
            s.d = f.d;
            if (f.p1) s.p1 = *f.p1;
        } catch (const std::invalid_argument& e) {
            throw usage(e.what());
        }
    }
    if (o.n) s.n = *o.n;
    if (o.d) s.d = *o.d;
    if (o.p1) s.p1 = *o.p1;
    if (s.n < 2 || s.d < 1) throw usage("need --family or --n >= 2 and --d >= 1");
    if (!(s.p1 >= 0.0 && s.p1 <= 1.0)) throw usage("need --p1 in [0, 1]");
    if (!(o.scale > 0.0)) throw usage("--scale must be positive");
    if (o.samples && *o.samples < 1) throw usage("--samples must be at least 1");
    return s;
}

int cmd_bench_sweep(const BenchOptions& o, std::ostream& out, std::ostream& err) {
    const Shape shape = bench_shape(o);
    if (o.grid_steps < 1) throw usage("--grid-steps must be at least 1");
    if (o.timeout_ms && *o.timeout_ms < 0) throw usage("--timeout must be non-negative");
    bench::SweepParams p;
    p.n = shape.n;
    p.d = shape.d;
    p.p1 = shape.p1;
    p.lcs = consistency_list(o.lc, o.k);
    p.tightness = bench::tightness_grid(o.grid_steps);
    p.samples = bench::scaled_samples(o.samples.value_or(50), o.scale);
    p.seed = o.seed;
    if (o.timeout_ms) p.timeout = std::chrono::milliseconds(*o.timeout_ms);
    p.threads = o.threads;
    const bench::SweepReport report = bench::sweep(p);
    OutputFile file(o.out, out);
    bench::write_csv(report.points, *file);
    if (report.lattice_violations > 0) {
        err << report.lattice_violations << " instances violate a containment\n";
        return kInternal;
    }
    return kOk;
}

int cmd_bench_bound(const BenchOptions& o, bench::BoundKind kind, std::ostream& out, std::ostream& err) {
    const Shape shape = bench_shape(o);
    bench::BoundParams p;
    p.n = shape.n;
    p.d = shape.d;
    p.p1 = shape.p1;
    p.samples = bench::scaled_samples(o.samples.value_or(300), o.scale);
    p.resolution = o.resolution;
    p.seed = o.seed;
    p.threshold = o.threshold;
    p.linear_scan = o.linear_scan;
    p.threads = o.threads;
    const auto lcs = consistency_list(o.lc, o.k);
    bench::BoundsReport report;
    try {
        report = bench::estimate_bounds(lcs, p, {kind});
    } catch (const std::invalid_argument& e) {
        throw usage(e.what());
    }
    OutputFile file(o.out, out);
    bench::write_bounds_csv(report.bounds, *file);
    if (report.lattice_violations > 0) {
        err << report.lattice_violations << " instances violate a containment\n";
        return kInternal;
    }
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Domain filtering consistencies for binary constraint networks"};
    app.name("domfilter");
    app.require_subcommand(1);

    GenOptions gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a Model B instance");
    gen_cmd->add_option("--n", gen.spec.n, "Variables")->required();
    gen_cmd->add_option("--d", gen.spec.d, "Domain size")->required();
    gen_cmd->add_option("--p1", gen.spec.p1, "Density")->required();
    gen_cmd->add_option("--p2", gen.spec.p2, "Tightness")->required();
    gen_cmd->add_option("--seed", gen.spec.seed, "Seed");
    gen_cmd->add_option("--out", gen.out, "Output file (default stdout)");

    FilterOptions filter;
    auto* filter_cmd = app.add_subcommand("filter", "Enforce a consistency on an instance");
    filter_cmd->add_option("--lc", filter.lc, "ac|rpc|krpc|maxrpc|pic|nic|spc|sac|srpc")->required();
    filter_cmd->add_option("--k", filter.k, "k for krpc");
    filter_cmd->add_option("--timeout", filter.timeout_ms, "Deadline in milliseconds");
    filter_cmd->add_option("--in", filter.in, "Instance file (default stdin)");
    filter_cmd->add_flag("--json", filter.json, "One JSON record instead of text");

    OracleOptions oracle_opts;
    auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force checks on small instances");
    oracle_cmd->require_subcommand(1);
    oracle_cmd->add_option("--in", oracle_opts.in, "Instance file (default stdin)");
    oracle_cmd->add_option("--max-space", oracle_opts.max_space, "Largest product of domain sizes accepted");
    auto* closure_cmd = oracle_cmd->add_subcommand("closure", "Definitional closure, cross-checked with the filter");
    closure_cmd->add_option("--lc", oracle_opts.lc, "Consistency")->required();
    closure_cmd->add_option("--k", oracle_opts.k, "k for krpc");
    auto* solutions_cmd = oracle_cmd->add_subcommand("solutions", "Enumerate solutions");
    solutions_cmd->add_option("--limit", oracle_opts.limit, "Stop after this many");
    auto* completability_cmd = oracle_cmd->add_subcommand("completability", "Values occurring in some solution");
    for (auto* sub : {closure_cmd, solutions_cmd, completability_cmd}) {
        sub->add_option("--in", oracle_opts.in, "Instance file (default stdin)");
        sub->add_option("--max-space", oracle_opts.max_space, "Largest product of domain sizes accepted");
    }

    LatticeOptions lat;
    auto* lattice_cmd = app.add_subcommand("lattice", "Check containments and search strictness witnesses");
    lattice_cmd->add_option("--samples", lat.samples, "Instances for the containment check");
    lattice_cmd->add_option("--n", lat.n, "Largest variable count");
    lattice_cmd->add_option("--d", lat.d, "Largest domain size");
    lattice_cmd->add_option("--seed", lat.seed, "Seed");
    lattice_cmd->add_option("--pairs", lat.pairs, "all, or a list such as sac>maxrpc,nic<>sac");
    lattice_cmd->add_option("--attempts", lat.attempts, "Witness search budget per direction");

    BenchOptions bench_opts;
    auto* bench_cmd = app.add_subcommand("bench", "Benchmarks over Model B instances");
    bench_cmd->require_subcommand(1);
    auto* sweep_cmd = bench_cmd->add_subcommand("sweep", "Per-tightness statistics (CSV)");
    auto* t0_cmd = bench_cmd->add_subcommand("t0", "Tightness where half the instances lose a value");
    auto* tall_cmd = bench_cmd->add_subcommand("tall", "Tightness where half the instances wipe out");
    for (auto* sub : {sweep_cmd, t0_cmd, tall_cmd}) {
        sub->add_option("--family", bench_opts.family, "transition-40x15|timing-200x30-sparse|timing-200x30-dense");
        sub->add_option("--n", bench_opts.n, "Variables");
        sub->add_option("--d", bench_opts.d, "Domain size");
        sub->add_option("--p1", bench_opts.p1, "Density");
        sub->add_option("--lc", bench_opts.lc, "Comma-separated consistencies");
        sub->add_option("--k", bench_opts.k, "k for krpc");
        sub->add_option("--samples", bench_opts.samples, "Instances per point (default 50 for sweep, 300 for bounds)");
        sub->add_option("--scale", bench_opts.scale, "Multiplies the sample count");
        sub->add_option("--seed", bench_opts.seed, "Seed");
        sub->add_option("--threads", bench_opts.threads, "Workers (0: all hardware threads)");
        sub->add_option("--out", bench_opts.out, "CSV file (default stdout)");
    }
    sweep_cmd->add_option("--grid-steps", bench_opts.grid_steps, "Tightness grid 0, 1/steps, ..., 1");
    sweep_cmd->add_option("--timeout", bench_opts.timeout_ms, "Per-run deadline in milliseconds");
    for (auto* sub : {t0_cmd, tall_cmd}) {
        sub->add_option("--resolution", bench_opts.resolution, "Grid step (default 1/d^2)");
        sub->add_option("--threshold", bench_opts.threshold, "Fraction of instances");
        sub->add_flag("--linear-scan", bench_opts.linear_scan, "Scan the grid instead of bisecting");
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*gen_cmd) return cmd_gen(gen, out);
        if (*filter_cmd) return cmd_filter(filter, in, out);
        if (*closure_cmd) return cmd_oracle_closure(oracle_opts, in, out);
        if (*solutions_cmd) return cmd_oracle_solutions(oracle_opts, in, out);
        if (*completability_cmd) return cmd_oracle_completability(oracle_opts, in, out);
        if (*lattice_cmd) return cmd_lattice(lat, out);
        if (*sweep_cmd) return cmd_bench_sweep(bench_opts, out, err);
        if (*t0_cmd) return cmd_bench_bound(bench_opts, bench::BoundKind::T0, out, err);
        if (*tall_cmd) return cmd_bench_bound(bench_opts, bench::BoundKind::Tall, out, err);
    } catch (const Failure& f) {
        err << "domfilter: " << f.what() << '\n';
        return f.code;
    } catch (const std::exception& e) {
        err << "domfilter: internal error: " << e.what() << '\n';
        return kInternal;
    }
    return kUsage;
}

}  // namespace domfilter::cli
