#include "seqnet/core.hpp"

#include <algorithm>
#include <bit>

#include "bits.hpp"

namespace seqnet {

ClusterLayout::ClusterLayout(std::uint32_t chi, std::uint32_t l) : chi_(chi), l_(l) {
    if (chi == 0 || l == 0) throw std::invalid_argument("cluster layout needs chi >= 1 and l >= 1");
    if (std::uint64_t{chi} * l > (std::uint64_t{1} << 31))
        throw std::invalid_argument("cluster layout too large");
}

void ClusterLayout::check(const Fanal& f) const {
    if (!contains(f))
        throw std::out_of_range("fanal (" + std::to_string(f.cluster) + ", " +
                                std::to_string(f.index) + ") outside layout " +
                                std::to_string(chi_) + "x" + std::to_string(l_));
}

void ClusterLayout::check_cluster(std::uint32_t cluster) const {
    if (cluster >= chi_)
        throw std::out_of_range("cluster " + std::to_string(cluster) + " outside layout with " +
                                std::to_string(chi_) + " clusters");
}

std::uint32_t delta(std::uint32_t from, std::uint32_t to, const ClusterLayout& layout) {
    layout.check_cluster(from);
    layout.check_cluster(to);
    return (to + layout.chi() - from) % layout.chi();
}

// FanalSet

FanalSet::FanalSet(std::initializer_list<Fanal> members) : FanalSet(std::vector<Fanal>(members)) {}

FanalSet::FanalSet(std::vector<Fanal> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

FanalSet FanalSet::from_flat(const ClusterLayout& layout, std::span<const FanalId> ids) {
    std::vector<Fanal> members;
    members.reserve(ids.size());
    for (FanalId id : ids) members.push_back(layout.fanal(id));
    return FanalSet(std::move(members));
}

void FanalSet::insert(const Fanal& f) {
    auto it = std::lower_bound(members_.begin(), members_.end(), f);
    if (it == members_.end() || *it != f) members_.insert(it, f);
}

bool FanalSet::contains(const Fanal& f) const {
    return std::binary_search(members_.begin(), members_.end(), f);
}

std::vector<FanalId> FanalSet::to_flat(const ClusterLayout& layout) const {
    std::vector<FanalId> ids;
    ids.reserve(members_.size());
    for (const Fanal& f : members_) {
        layout.check(f);
        ids.push_back(layout.flat(f));
    }
    return ids;
}

std::vector<std::uint32_t> FanalSet::clusters() const {
    std::vector<std::uint32_t> out;
    for (const Fanal& f : members_)
        if (out.empty() || out.back() != f.cluster) out.push_back(f.cluster);
    return out;
}

bool FanalSet::one_per_cluster() const noexcept {
    for (std::size_t k = 1; k < members_.size(); ++k)
        if (members_[k].cluster == members_[k - 1].cluster) return false;
    return true;
}

// ConnectionMatrix

ConnectionMatrix::ConnectionMatrix(ClusterLayout layout, bool directed)
    : layout_(layout),
      directed_(directed),
      words_per_row_((std::size_t{layout.n()} + 63) / 64),
      bits_(std::size_t{layout.n()} * words_per_row_, 0) {}

void ConnectionMatrix::set_bit(FanalId from, FanalId to) noexcept {
    bits_[std::size_t{from} * words_per_row_ + to / 64] |= std::uint64_t{1} << (to % 64);
}

void ConnectionMatrix::add(FanalId from, FanalId to) {
    if (from >= layout_.n() || to >= layout_.n()) throw std::out_of_range("fanal id outside layout");
    set_bit(from, to);
    if (!directed_) set_bit(to, from);
}

void ConnectionMatrix::add(const Fanal& from, const Fanal& to) {
    layout_.check(from);
    layout_.check(to);
    add(layout_.flat(from), layout_.flat(to));
}

bool ConnectionMatrix::test(FanalId from, FanalId to) const noexcept {
    return (bits_[std::size_t{from} * words_per_row_ + to / 64] >> (to % 64)) & 1U;
}

bool ConnectionMatrix::test(const Fanal& from, const Fanal& to) const {
    layout_.check(from);
    layout_.check(to);
    return test(layout_.flat(from), layout_.flat(to));
}

std::uint64_t ConnectionMatrix::connection_count() const noexcept {
    std::uint64_t total = 0;
    for (std::uint64_t w : bits_) total += static_cast<std::uint64_t>(std::popcount(w));
    if (directed_) return total;
    std::uint64_t diagonal = 0;
    for (FanalId a = 0; a < layout_.n(); ++a) diagonal += test(a, a) ? 1 : 0;
    return (total + diagonal) / 2;
}

double ConnectionMatrix::measured_density() const noexcept {
    const double n = layout_.n();
    const double addressable = directed_ ? n * n : n * (n + 1) / 2;
    return static_cast<double>(connection_count()) / addressable;
}

double ConnectionMatrix::measured_density(
    const std::function<bool(std::uint32_t, std::uint32_t)>& block) const {
    const std::uint32_t chi = layout_.chi();
    const std::uint32_t l = layout_.l();
    std::uint64_t set = 0;
    std::uint64_t addressable = 0;
    for (std::uint32_t src = 0; src < chi; ++src) {
        for (std::uint32_t dst = 0; dst < chi; ++dst) {
            if (!block(src, dst)) continue;
            addressable += std::uint64_t{l} * l;
            for (std::uint32_t j = 0; j < l; ++j)
                set += detail::popcount_range(row(src * l + j), std::size_t{dst} * l,
                                              std::size_t{dst + 1} * l);
        }
    }
    return addressable == 0 ? 0.0 : static_cast<double>(set) / static_cast<double>(addressable);
}

// ActivationState

ActivationState ActivationState::from_set(const ClusterLayout& layout, const FanalSet& set) {
    ActivationState state(layout);
    for (FanalId id : set.to_flat(layout)) state.active[id] = 1;
    return state;
}

std::vector<FanalId> ActivationState::active_ids() const {
    std::vector<FanalId> ids;
    for (std::size_t k = 0; k < active.size(); ++k)
        if (active[k]) ids.push_back(static_cast<FanalId>(k));
    return ids;
}

FanalSet ActivationState::active_set(const ClusterLayout& layout) const {
    const auto ids = active_ids();
    return FanalSet::from_flat(layout, ids);
}

// Message passing

namespace {

constexpr std::size_t kSlicedThreshold = 16;

// Plain-sum scores through a bit-sliced counter: plane b of word w holds bit b
// of the running count of each of the word's 64 targets, so adding a row costs
// a few word operations instead of one increment per set bit.
void accumulate_sliced(const ConnectionMatrix& m, std::span<const FanalId> sources,
                       std::span<std::uint32_t> scores) {
    const std::size_t words = m.words_per_row();
    const std::size_t planes = static_cast<std::size_t>(std::bit_width(sources.size()));
    std::vector<std::uint64_t> counter(words * planes, 0);
    for (FanalId s : sources) {
        const auto row = m.row(s);
        for (std::size_t w = 0; w < words; ++w) {
            std::uint64_t carry = row[w];
            if (w == s / 64) carry &= ~(std::uint64_t{1} << (s % 64));
            std::uint64_t* plane = &counter[w * planes];
            for (std::size_t b = 0; carry != 0; ++b) {
                const std::uint64_t next = plane[b] & carry;
                plane[b] ^= carry;
                carry = next;
            }
        }
    }
    for (std::size_t w = 0; w < words; ++w) {
        const std::uint64_t* plane = &counter[w * planes];
        for (std::size_t b = 0; b < planes; ++b) {
            for (std::uint64_t bits = plane[b]; bits != 0; bits &= bits - 1)
                scores[w * 64 + static_cast<std::size_t>(std::countr_zero(bits))] += 1u << b;
        }
    }
}

}  // namespace

void accumulate_scores(const ConnectionMatrix& m, std::span<const FanalId> sources,
                       std::span<const std::uint32_t> target_clusters, PassingMode mode,
                       std::span<std::uint32_t> scores) {
    const ClusterLayout& layout = m.layout();
    const std::size_t l = layout.l();
    const auto for_each_target = [&](std::span<const std::uint64_t> row, std::uint32_t skip_cluster,
                                     FanalId skip_fanal) {
        const auto bump = [&](std::size_t b) {
            if (b != skip_fanal) ++scores[b];
        };
        if (target_clusters.empty()) {
            for (std::uint32_t tc = 0; tc < layout.chi(); ++tc)
                if (tc != skip_cluster) detail::for_each_set_bit(row, tc * l, (tc + 1) * l, bump);
        } else {
            for (std::uint32_t tc : target_clusters)
                if (tc != skip_cluster) detail::for_each_set_bit(row, tc * l, (tc + 1) * l, bump);
        }
    };

    constexpr std::uint32_t kNoCluster = ~std::uint32_t{0};
    constexpr FanalId kNoFanal = ~FanalId{0};

    if (mode == PassingMode::plain_sum) {
        if (target_clusters.empty() && sources.size() >= kSlicedThreshold) {
            accumulate_sliced(m, sources, scores);
            return;
        }
        for (FanalId s : sources) for_each_target(m.row(s), kNoCluster, s);
        return;
    }

    std::vector<FanalId> sorted(sources.begin(), sources.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<std::uint64_t> merged(m.words_per_row());
    for (std::size_t a = 0; a < sorted.size();) {
        const std::uint32_t cluster = layout.cluster_of(sorted[a]);
        std::size_t b = a + 1;
        while (b < sorted.size() && layout.cluster_of(sorted[b]) == cluster) ++b;
        if (b - a == 1) {
            for_each_target(m.row(sorted[a]), cluster, kNoFanal);
        } else {
            std::fill(merged.begin(), merged.end(), 0);
            for (std::size_t k = a; k < b; ++k) {
                const auto row = m.row(sorted[k]);
                for (std::size_t w = 0; w < merged.size(); ++w) merged[w] |= row[w];
            }
            for_each_target(merged, cluster, kNoFanal);
        }
        a = b;
    }
}

ActivationState message_passing(const ConnectionMatrix& m, const ActivationState& sources,
                                 std::span<const std::uint32_t> target_clusters, PassingMode mode) {
    ActivationState out(m.layout());
    const auto ids = sources.active_ids();
    accumulate_scores(m, ids, target_clusters, mode, out.scores);
    return out;
}

}  // namespace seqnet
