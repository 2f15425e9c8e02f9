#include "domfilter/consistency.hpp"

namespace domfilter {

ConsistencyId ConsistencyId::k_rpc(int k) {
    if (k < 1) throw std::invalid_argument("k-RPC requires k >= 1 (use AC for k = 0)");
    return ConsistencyId(ConsistencyKind::KRPC, k);
}

std::string_view ConsistencyId::name() const noexcept {
    switch (kind_) {
        case ConsistencyKind::AC: return "ac";
        case ConsistencyKind::RPC: return "rpc";
        case ConsistencyKind::KRPC: return "krpc";
        case ConsistencyKind::MaxRPC: return "maxrpc";
        case ConsistencyKind::PIC: return "pic";
        case ConsistencyKind::NIC: return "nic";
        case ConsistencyKind::StrongPC: return "spc";
        case ConsistencyKind::SAC: return "sac";
        case ConsistencyKind::SRPC: return "srpc";
    }
    return "?";
}

std::string ConsistencyId::label() const {
    switch (kind_) {
        case ConsistencyKind::AC: return "AC";
        case ConsistencyKind::RPC: return "RPC";
        case ConsistencyKind::KRPC: return std::to_string(k_) + "-RPC";
        case ConsistencyKind::MaxRPC: return "Max-RPC";
        case ConsistencyKind::PIC: return "PIC";
        case ConsistencyKind::NIC: return "NIC";
        case ConsistencyKind::StrongPC: return "strong PC";
        case ConsistencyKind::SAC: return "SAC";
        case ConsistencyKind::SRPC: return "SRPC";
    }
    return "?";
}

ConsistencyId parse_consistency(std::string_view name, std::optional<int> k) {
    if (name == "krpc") {
        if (!k) throw std::invalid_argument("krpc requires --k");
        return ConsistencyId::k_rpc(*k);
    }
    if (k) throw std::invalid_argument("--k is only valid with krpc");
    if (name == "ac") return ConsistencyKind::AC;
    if (name == "rpc") return ConsistencyKind::RPC;
    if (name == "maxrpc") return ConsistencyKind::MaxRPC;
    if (name == "pic") return ConsistencyKind::PIC;
    if (name == "nic") return ConsistencyKind::NIC;
    if (name == "spc") return ConsistencyKind::StrongPC;
    if (name == "sac") return ConsistencyKind::SAC;
    if (name == "srpc") return ConsistencyKind::SRPC;
    throw std::invalid_argument("unknown consistency '" + std::string(name) + "'");
}

std::vector<ConsistencyId> all_consistencies(const std::vector<int>& k_values) {
    std::vector<ConsistencyId> out{ConsistencyKind::AC, ConsistencyKind::RPC};
    for (int k : k_values) out.push_back(ConsistencyId::k_rpc(k));
    for (auto kind : {ConsistencyKind::MaxRPC, ConsistencyKind::PIC, ConsistencyKind::NIC,
                      ConsistencyKind::StrongPC, ConsistencyKind::SAC, ConsistencyKind::SRPC})
        out.emplace_back(kind);
    return out;
}

namespace {

// RPC is 1-RPC.
int rpc_level(ConsistencyId id) {
    if (id.kind() == ConsistencyKind::RPC) return 1;
    if (id.kind() == ConsistencyKind::KRPC) return *id.k();
    return 0;
}

}  // namespace

bool is_stronger_or_equal(ConsistencyId strong, ConsistencyId weak, int var_count) {
    const int ks = rpc_level(strong);
    const int kw = rpc_level(weak);
    if (ks > 0 && kw > 0) return ks >= kw;
    if (strong == weak) return true;
    if (weak.kind() == ConsistencyKind::AC)
        return strong.kind() != ConsistencyKind::PIC || var_count >= 3;
    switch (strong.kind()) {
        case ConsistencyKind::AC:
        case ConsistencyKind::RPC:
        case ConsistencyKind::KRPC:
            return false;
        case ConsistencyKind::PIC:
            return var_count >= 3 && kw == 1;
        case ConsistencyKind::MaxRPC:
            return kw > 0 || (weak.kind() == ConsistencyKind::PIC && var_count >= 3);
        case ConsistencyKind::NIC:
        case ConsistencyKind::SAC:
            return is_stronger_or_equal(ConsistencyKind::MaxRPC, weak, var_count);
        case ConsistencyKind::SRPC:
        case ConsistencyKind::StrongPC:
            return weak.kind() == ConsistencyKind::SAC ||
                   is_stronger_or_equal(ConsistencyKind::SAC, weak, var_count);
    }
    return false;
}

}  // namespace domfilter
