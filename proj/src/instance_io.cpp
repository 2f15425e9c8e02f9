#include "domfilter/instance_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <vector>

namespace domfilter {

namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
        std::size_t start = pos;
        while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' && line[pos] != '\r') ++pos;
        if (pos > start) out.push_back(line.substr(start, pos - start));
    }
    return out;
}

std::optional<int> to_int(std::string_view tok) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) return std::nullopt;
    return value;
}

int expect_int(std::string_view tok, int line, const char* what) {
    auto v = to_int(tok);
    if (!v) throw ParseError(line, std::string("expected integer ") + what + ", got '" + std::string(tok) + "'");
    return *v;
}

std::pair<int, int> parse_pair(std::string_view tok, int line) {
    auto colon = tok.find(':');
    if (colon == std::string_view::npos) throw ParseError(line, "expected a:b pair, got '" + std::string(tok) + "'");
    auto a = to_int(tok.substr(0, colon));
    auto b = to_int(tok.substr(colon + 1));
    if (!a || !b) throw ParseError(line, "malformed pair '" + std::string(tok) + "'");
    return {*a, *b};
}

}  // namespace

ConstraintNetwork parse_instance(std::istream& in) {
    std::optional<int> n;
    std::vector<std::vector<int>> domains;
    std::vector<ConstraintSpec> specs;

    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        auto tok = tokenize(line);
        if (tok.empty()) continue;

        if (tok[0] == "vars") {
            if (n) throw ParseError(line_no, "duplicate 'vars' line");
            if (tok.size() != 2) throw ParseError(line_no, "'vars' takes exactly one argument");
            int count = expect_int(tok[1], line_no, "variable count");
            if (count < 0) throw ParseError(line_no, "negative variable count");
            n = count;
        } else if (tok[0] == "dom") {
            if (!n) throw ParseError(line_no, "'dom' before 'vars'");
            if (!specs.empty()) throw ParseError(line_no, "'dom' after 'con'");
            if (tok.size() < 3) throw ParseError(line_no, "'dom' needs a variable and at least one value");
            int i = expect_int(tok[1], line_no, "variable");
            if (i != static_cast<int>(domains.size()))
                throw ParseError(line_no, "expected 'dom " + std::to_string(domains.size()) + "'");
            if (i >= *n) throw ParseError(line_no, "variable " + std::to_string(i) + " out of range");
            std::vector<int> values;
            for (std::size_t t = 2; t < tok.size(); ++t) {
                int v = expect_int(tok[t], line_no, "value");
                if (!values.empty() && v <= values.back())
                    throw ParseError(line_no, "domain values must be strictly increasing");
                values.push_back(v);
            }
            domains.push_back(std::move(values));
        } else if (tok[0] == "con") {
            if (!n || static_cast<int>(domains.size()) != *n)
                throw ParseError(line_no, "'con' before all domains are declared");
            if (tok.size() < 4) throw ParseError(line_no, "'con' needs two variables and a relation");
            int i = expect_int(tok[1], line_no, "variable");
            int j = expect_int(tok[2], line_no, "variable");
            if (i < 0 || j < 0 || i >= *n || j >= *n) throw ParseError(line_no, "variable out of range");
            if (i == j) throw ParseError(line_no, "self-loop constraint");
            ConstraintSpec spec{i, j, {}};
            const auto& di = domains[i];
            const auto& dj = domains[j];
            std::string_view kind = tok[3];
            if (kind == "all" || kind == "none") {
                if (tok.size() != 4) throw ParseError(line_no, "'" + std::string(kind) + "' takes no pairs");
                if (kind == "all")
                    for (int a : di)
                        for (int b : dj) spec.allowed.emplace_back(a, b);
            } else if (kind == "allow" || kind == "forbid") {
                std::vector<std::pair<int, int>> listed;
                for (std::size_t t = 4; t < tok.size(); ++t) {
                    auto p = parse_pair(tok[t], line_no);
                    if (!std::binary_search(di.begin(), di.end(), p.first) ||
                        !std::binary_search(dj.begin(), dj.end(), p.second))
                        throw ParseError(line_no, "pair " + std::string(tok[t]) + " outside the domains");
                    listed.push_back(p);
                }
                std::sort(listed.begin(), listed.end());
                if (std::adjacent_find(listed.begin(), listed.end()) != listed.end())
                    throw ParseError(line_no, "repeated pair");
                if (kind == "allow") {
                    spec.allowed = std::move(listed);
                } else {
                    for (int a : di)
                        for (int b : dj)
                            if (!std::binary_search(listed.begin(), listed.end(), std::pair{a, b}))
                                spec.allowed.emplace_back(a, b);
                }
            } else {
                throw ParseError(line_no, "unknown relation kind '" + std::string(kind) + "'");
            }
            specs.push_back(std::move(spec));
        } else {
            throw ParseError(line_no, "unknown directive '" + std::string(tok[0]) + "'");
        }
    }
    if (!n) throw ParseError(line_no, "missing 'vars' line");
    if (static_cast<int>(domains.size()) != *n)
        throw ParseError(line_no, "expected " + std::to_string(*n) + " 'dom' lines");
    try {
        return build_network(*n, std::move(domains), specs);
    } catch (const NetworkError& e) {
        throw ParseError(line_no, e.what());
    }
}

ConstraintNetwork parse_instance_string(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_instance(in);
}

ConstraintNetwork read_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return parse_instance(in);
}

void write_instance(const ConstraintNetwork& net, std::ostream& out) {
    out << "vars " << net.var_count() << '\n';
    for (Var i = 0; i < net.var_count(); ++i) {
        out << "dom " << i;
        for (int v : net.domain_values(i)) out << ' ' << v;
        out << '\n';
    }
    for (const auto& c : net.constraints()) {
        const auto& dl = net.domain_values(c.lo);
        const auto& dh = net.domain_values(c.hi);
        std::size_t allowed = 0;
        for (auto x : c.allowed) allowed += x;
        const std::size_t total = c.allowed.size();
        out << "con " << c.lo << ' ' << c.hi;
        if (allowed == total) {
            out << " all\n";
            continue;
        }
        if (allowed == 0) {
            out << " none\n";
            continue;
        }
        const bool list_allowed = allowed <= total - allowed;
        out << (list_allowed ? " allow" : " forbid");
        for (std::size_t a = 0; a < dl.size(); ++a)
            for (std::size_t b = 0; b < dh.size(); ++b)
                if ((c.allowed[a * dh.size() + b] != 0) == list_allowed) out << ' ' << dl[a] << ':' << dh[b];
        out << '\n';
    }
}

std::string instance_to_string(const ConstraintNetwork& net) {
    std::ostringstream out;
    write_instance(net, out);
    return out.str();
}

}  // namespace domfilter
