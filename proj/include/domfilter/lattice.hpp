#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "domfilter/consistency.hpp"
#include "domfilter/oracle.hpp"

namespace domfilter::lattice {

// A strict edge (strong > weak) or an incomparable pair, checked in both directions.
struct Relation {
    ConsistencyId strong;
    ConsistencyId weak;
    bool incomparable = false;

    std::string name() const;  // "sac>maxrpc" or "nic<>sac"
};

// Every strict edge and incomparable pair of the strength lattice, with k-RPC at k = 1..3.
std::vector<Relation> standard_relations();

// Comma-separated names such as "sac>maxrpc,nic<>sac"; k-RPC is written krpcK.
// Throws std::invalid_argument on an unknown or malformed entry.
std::vector<Relation> parse_relations(std::string_view list);

struct ContainmentParams {
    int samples = 100;
    int n = 6;
    int d = 3;
    std::uint64_t seed = 0;
};

struct ContainmentReport {
    int instances = 0;
    int comparisons = 0;
    // One line per violated containment or identity, e.g. "seed 17: PIC not within RPC".
    std::vector<std::string> violations;
};

// Runs every consistency (k-RPC for k = 1..d) on Model B instances with random density and
// tightness, and checks each containment implied by the lattice plus the identities
// 1-RPC = RPC and d-RPC = Max-RPC.
ContainmentReport check_containments(const ContainmentParams& params);

struct Verdict {
    Relation relation;
    // Witness for strong deleting while weak holds; for incomparable pairs also the reverse.
    std::optional<oracle::Witness> forward;
    std::optional<oracle::Witness> backward;

    bool found() const { return forward && (!relation.incomparable || backward); }
};

Verdict find_witnesses(const Relation& relation, const oracle::WitnessParams& params, std::uint64_t seed);

}  // namespace domfilter::lattice
