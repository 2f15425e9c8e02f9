#include "domfilter/domain_state.hpp"

#include <algorithm>
#include <stdexcept>

namespace domfilter {

DomainState::DomainState(const ConstraintNetwork& net) {
    std::vector<int> caps(net.var_count());
    for (Var i = 0; i < net.var_count(); ++i) caps[i] = net.domain_size(i);
    *this = DomainState(caps);
}

DomainState::DomainState(std::span<const int> capacities)
    : capacities_(capacities.begin(), capacities.end()), sizes_(capacities.begin(), capacities.end()) {
    offsets_.reserve(capacities.size());
    int words = 0;
    for (int cap : capacities) {
        offsets_.push_back(words);
        words += (cap + 63) / 64;
        if (cap == 0) ++empty_count_;
    }
    words_.assign(words, 0);
    for (std::size_t i = 0; i < capacities.size(); ++i) {
        int cap = capacities[i];
        for (int w = 0; w < (cap + 63) / 64; ++w) {
            int bits = std::min(64, cap - 64 * w);
            words_[offsets_[i] + w] = bits == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << bits) - 1);
        }
    }
}

std::size_t DomainState::total_size() const noexcept {
    std::size_t total = 0;
    for (int s : sizes_) total += s;
    return total;
}

bool DomainState::remove(Var i, ValueIndex a) noexcept {
    std::uint64_t& word = words_[offsets_[i] + (a >> 6)];
    std::uint64_t bit = std::uint64_t{1} << (a & 63);
    if (!(word & bit)) return false;
    word &= ~bit;
    if (--sizes_[i] == 0) ++empty_count_;
    return true;
}

void DomainState::assign(Var i, ValueIndex a) noexcept {
    int nwords = (capacities_[i] + 63) / 64;
    for (int w = 0; w < nwords; ++w) words_[offsets_[i] + w] = 0;
    words_[offsets_[i] + (a >> 6)] = std::uint64_t{1} << (a & 63);
    if (sizes_[i] == 0) --empty_count_;
    sizes_[i] = 1;
}

void DomainState::clear(Var i) noexcept {
    int nwords = (capacities_[i] + 63) / 64;
    for (int w = 0; w < nwords; ++w) words_[offsets_[i] + w] = 0;
    if (sizes_[i] != 0) ++empty_count_;
    sizes_[i] = 0;
}

ValueIndex DomainState::lower_bound(Var i, ValueIndex from) const noexcept {
    int cap = capacities_[i];
    if (from >= cap) return -1;
    int w = from >> 6;
    const int nwords = (cap + 63) / 64;
    std::uint64_t word = words_[offsets_[i] + w] & (~std::uint64_t{0} << (from & 63));
    while (true) {
        if (word) return w * 64 + std::countr_zero(word);
        if (++w >= nwords) return -1;
        word = words_[offsets_[i] + w];
    }
}

std::vector<ValueIndex> DomainState::values(Var i) const {
    std::vector<ValueIndex> out;
    out.reserve(sizes_[i]);
    for (ValueIndex a = first(i); a >= 0; a = next(i, a)) out.push_back(a);
    return out;
}

bool DomainState::is_subset_of(const DomainState& other) const noexcept {
    if (capacities_ != other.capacities_) return false;
    for (std::size_t w = 0; w < words_.size(); ++w)
        if (words_[w] & ~other.words_[w]) return false;
    return true;
}

std::uint64_t DomainState::hash() const noexcept {
    // FNV-1a over the words.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::uint64_t w : words_) {
        for (int byte = 0; byte < 8; ++byte) {
            h ^= (w >> (8 * byte)) & 0xff;
            h *= 0x100000001b3ULL;
        }
    }
    return h;
}

DomainState restrict_to_singleton(const ConstraintNetwork& net, const DomainState& state, Var i,
                                  ValueIndex a) {
    if (i < 0 || i >= net.var_count() || a < 0 || a >= state.capacity(i) || !state.contains(i, a))
        throw std::invalid_argument("restrict_to_singleton: value not in current domain");
    DomainState out = state;
    out.assign(i, a);
    return out;
}

std::vector<ValueRef> removed_values(const DomainState& before, const DomainState& after) {
    std::vector<ValueRef> out;
    for (Var i = 0; i < before.var_count(); ++i)
        for (ValueIndex a = before.first(i); a >= 0; a = before.next(i, a))
            if (!after.contains(i, a)) out.push_back({i, a});
    return out;
}

}  // namespace domfilter
