#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace domfilter {

enum class ConsistencyKind { AC, RPC, KRPC, MaxRPC, PIC, NIC, StrongPC, SAC, SRPC };

class ConsistencyId {
public:
    // Any kind except KRPC.
    constexpr ConsistencyId(ConsistencyKind kind) : kind_(kind) {  // NOLINT(google-explicit-constructor)
        if (kind == ConsistencyKind::KRPC) throw std::invalid_argument("k-RPC needs an explicit k");
    }
    // k >= 1; 0-RPC is arc consistency and must be requested as AC.
    static ConsistencyId k_rpc(int k);

    ConsistencyKind kind() const noexcept { return kind_; }
    // Present iff kind() == KRPC.
    std::optional<int> k() const noexcept { return kind_ == ConsistencyKind::KRPC ? std::optional<int>(k_) : std::nullopt; }

    // Command-line name: ac, rpc, krpc, maxrpc, pic, nic, spc, sac, srpc.
    std::string_view name() const noexcept;
    // Display label, e.g. "2-RPC".
    std::string label() const;

    friend bool operator==(const ConsistencyId&, const ConsistencyId&) = default;

private:
    constexpr ConsistencyId(ConsistencyKind kind, int k) : kind_(kind), k_(k) {}
    ConsistencyKind kind_;
    int k_ = 0;
};

// Parses a command-line name. `k` is required for "krpc" and rejected otherwise.
ConsistencyId parse_consistency(std::string_view name, std::optional<int> k = std::nullopt);

// Every consistency handled by the library, with k-RPC instantiated for the given k values.
std::vector<ConsistencyId> all_consistencies(const std::vector<int>& k_values);

// True when the domain containment closure(strong) ⊆ closure(weak) holds on every network
// with `var_count` variables, following the strength relations among the consistencies.
// PIC-related relations need at least three variables.
bool is_stronger_or_equal(ConsistencyId strong, ConsistencyId weak, int var_count);

}  // namespace domfilter
