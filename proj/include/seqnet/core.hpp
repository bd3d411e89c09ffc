#pragma once

// Network geometry, bit-packed binary connection storage, activation state
// and the message-passing primitive shared by every decoder.
//
// Indexing is 0-based throughout the library. Fanal (i, j) is the j-th fanal
// of cluster i and has the flat id i * l + j.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace seqnet {

using FanalId = std::uint32_t;

struct Fanal {
    std::uint32_t cluster = 0;
    std::uint32_t index = 0;

    friend auto operator<=>(const Fanal&, const Fanal&) = default;
};

class ClusterLayout {
public:
    ClusterLayout(std::uint32_t chi, std::uint32_t l);

    std::uint32_t chi() const noexcept { return chi_; }
    std::uint32_t l() const noexcept { return l_; }
    std::uint32_t n() const noexcept { return chi_ * l_; }

    bool contains(const Fanal& f) const noexcept { return f.cluster < chi_ && f.index < l_; }
    void check(const Fanal& f) const;
    void check_cluster(std::uint32_t cluster) const;

    FanalId flat(const Fanal& f) const noexcept { return f.cluster * l_ + f.index; }
    Fanal fanal(FanalId id) const noexcept { return {id / l_, id % l_}; }
    std::uint32_t cluster_of(FanalId id) const noexcept { return id / l_; }

    friend bool operator==(const ClusterLayout&, const ClusterLayout&) = default;

private:
    std::uint32_t chi_;
    std::uint32_t l_;
};

/// Downstream distance from cluster `from` to cluster `to` around the ring:
/// (to - from) mod chi. Cluster `to` is a downstream neighbor of `from` for
/// anticipation degree r iff 1 <= delta <= r.
std::uint32_t delta(std::uint32_t from, std::uint32_t to, const ClusterLayout& layout);

/// Sorted, duplicate-free set of fanal addresses.
class FanalSet {
public:
    FanalSet() = default;
    FanalSet(std::initializer_list<Fanal> members);
    explicit FanalSet(std::vector<Fanal> members);

    static FanalSet from_flat(const ClusterLayout& layout, std::span<const FanalId> ids);

    void insert(const Fanal& f);
    bool contains(const Fanal& f) const;
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }

    const std::vector<Fanal>& members() const noexcept { return members_; }
    auto begin() const noexcept { return members_.begin(); }
    auto end() const noexcept { return members_.end(); }

    std::vector<FanalId> to_flat(const ClusterLayout& layout) const;
    /// Distinct clusters touched by the set, ascending.
    std::vector<std::uint32_t> clusters() const;
    /// True when no cluster holds more than one member (the storage-time rule).
    bool one_per_cluster() const noexcept;

    friend bool operator==(const FanalSet&, const FanalSet&) = default;

private:
    std::vector<Fanal> members_;
};

/// n x n binary weight matrix, one bit-packed row of n bits per source fanal.
/// Bit (a, b) set means a connection from fanal a to fanal b. Undirected
/// matrices keep both mirror bits set.
class ConnectionMatrix {
public:
    ConnectionMatrix(ClusterLayout layout, bool directed);

    const ClusterLayout& layout() const noexcept { return layout_; }
    bool directed() const noexcept { return directed_; }
    std::size_t words_per_row() const noexcept { return words_per_row_; }

    /// Sets the connection; re-adding an existing connection is a no-op.
    void add(FanalId from, FanalId to);
    void add(const Fanal& from, const Fanal& to);
    bool test(FanalId from, FanalId to) const noexcept;
    bool test(const Fanal& from, const Fanal& to) const;

    std::span<const std::uint64_t> row(FanalId from) const noexcept {
        return {bits_.data() + std::size_t{from} * words_per_row_, words_per_row_};
    }
    std::span<std::uint64_t> mutable_row(FanalId from) noexcept {
        return {bits_.data() + std::size_t{from} * words_per_row_, words_per_row_};
    }

    /// Number of set bits; for undirected matrices each unordered pair once.
    std::uint64_t connection_count() const noexcept;

    /// Fraction of addressable connections that are set. Directed: over n^2
    /// ordered pairs. Undirected: over n(n+1)/2 unordered pairs.
    double measured_density() const noexcept;

    /// Density restricted to the cluster blocks accepted by `block`
    /// (source cluster, target cluster). Used for structures whose
    /// addressable connections are a subset of blocks.
    double measured_density(const std::function<bool(std::uint32_t, std::uint32_t)>& block) const;

    friend bool operator==(const ConnectionMatrix&, const ConnectionMatrix&) = default;

private:
    void set_bit(FanalId from, FanalId to) noexcept;

    ClusterLayout layout_;
    bool directed_;
    std::size_t words_per_row_;
    std::vector<std::uint64_t> bits_;
};

/// Per-fanal integer scores and binary activation values.
struct ActivationState {
    std::vector<std::uint32_t> scores;
    std::vector<std::uint8_t> active;

    ActivationState() = default;
    explicit ActivationState(const ClusterLayout& layout)
        : scores(layout.n(), 0), active(layout.n(), 0) {}

    static ActivationState from_set(const ClusterLayout& layout, const FanalSet& set);

    std::vector<FanalId> active_ids() const;
    FanalSet active_set(const ClusterLayout& layout) const;
};

enum class PassingMode {
    /// Each source cluster contributes at most 1 to a target: the max over its
    /// active fanals. Same-cluster sources are ignored.
    sum_of_max,
    /// Raw count of active source fanals connected to the target.
    plain_sum,
};

/// Adds the contributions of `sources` to `scores` for every fanal in
/// `target_clusters` (all clusters when empty). Self-connections are ignored.
void accumulate_scores(const ConnectionMatrix& m, std::span<const FanalId> sources,
                       std::span<const std::uint32_t> target_clusters, PassingMode mode,
                       std::span<std::uint32_t> scores);

/// One message-passing step: fresh scores computed from the active fanals of
/// `sources`. The returned state carries the new scores and no active fanals;
/// the caller applies a selection rule.
ActivationState message_passing(const ConnectionMatrix& m, const ActivationState& sources,
                                std::span<const std::uint32_t> target_clusters, PassingMode mode);

}  // namespace seqnet
