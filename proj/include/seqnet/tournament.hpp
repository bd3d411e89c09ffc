#pragma once

// Sequences of symbols stored in a looped chain of tournaments. Position t of
// a sequence lives in cluster t mod chi; each position connects to the fanals
// of its r successors.

#include <cstdint>
#include <optional>
#include <vector>

#include "seqnet/core.hpp"

namespace seqnet {

/// Symbols are 0-based fanal indices within their cluster.
struct SymbolSequence {
    std::vector<std::uint32_t> symbols;

    std::size_t size() const noexcept { return symbols.size(); }
    friend bool operator==(const SymbolSequence&, const SymbolSequence&) = default;
};

enum class SequenceClosure {
    /// Pairing stops at the last position: t -> t + delta for t + delta < L.
    open,
    /// The sequence is stored as a closed loop: t -> (t + delta) mod L.
    /// Requires chi | L so that the wrap follows the cluster ring. Every
    /// cluster pair then sees exactly L / chi pairings per sequence.
    cyclic,
};

struct TournamentSpec {
    ClusterLayout layout;
    std::uint32_t r = 1;
    SequenceClosure closure = SequenceClosure::open;

    void validate() const;
    std::uint32_t cluster_of(std::size_t position) const noexcept {
        return static_cast<std::uint32_t>(position % layout.chi());
    }
    Fanal fanal_at(std::size_t position, std::uint32_t symbol) const noexcept {
        return {cluster_of(position), symbol};
    }
    /// True when block (from, to) can hold connections: 1 <= delta <= r.
    bool is_downstream(std::uint32_t from, std::uint32_t to) const;
};

void check_sequence(const TournamentSpec& spec, const SymbolSequence& seq);

void store_sequence(ConnectionMatrix& m, const SymbolSequence& seq, const TournamentSpec& spec);

/// Density over the r * chi addressable cluster blocks of the chain.
double tournament_density(const ConnectionMatrix& m, const TournamentSpec& spec);

struct RetrievedSequence {
    std::size_t start = 0;      // position of the first cue symbol
    std::size_t cue_length = 0;
    /// Active fanal indices per position, from `start` to the target length.
    std::vector<std::vector<std::uint32_t>> active;

    std::size_t end() const noexcept { return start + active.size(); }
    bool ambiguous(std::size_t position) const { return active.at(position - start).size() != 1; }
    /// The decoded symbol when exactly one fanal is active.
    std::optional<std::uint32_t> symbol(std::size_t position) const;
};

/// Sequential decoding: each step scores the next position's cluster with
/// sum-of-max contributions from up to r preceding positions, then keeps
/// every fanal at the cluster maximum. Ties stay active and feed later steps.
RetrievedSequence decode_sequence(const ConnectionMatrix& m, const TournamentSpec& spec,
                                  std::span<const std::uint32_t> cue, std::size_t start,
                                  std::size_t target_length);

/// Fraction of decoded (non-cue) positions that are not exactly the reference
/// symbol; ambiguous positions count as errors.
double sber(const SymbolSequence& reference, const RetrievedSequence& retrieved);

/// True when every decoded position matches the reference exactly.
bool retrieved_exactly(const SymbolSequence& reference, const RetrievedSequence& retrieved);

/// Fraction of failed trials.
double sqer(std::span<const bool> trial_exact);

}  // namespace seqnet
