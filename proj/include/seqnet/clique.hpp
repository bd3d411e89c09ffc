#pragma once

// Fixed-length messages stored as cliques or as homogeneous degenerated
// cliques (2r-connected ring graphs), with iterative retrieval.

#include <cstdint>
#include <vector>

#include "seqnet/core.hpp"
#include "seqnet/selection.hpp"

namespace seqnet {

/// A message of c symbols, one per addressed cluster. Clusters are distinct.
using FixedMessage = FanalSet;

void check_message(const ClusterLayout& layout, const FixedMessage& msg);

struct RingGraphSpec {
    std::uint32_t r = 1;  // half connectivity degree
    std::uint32_t c = 2;  // order

    /// Rejects r == 0 and r > c - 1. The full clique is r = c - 1 (or any
    /// r >= c/2, where the ring saturates).
    void validate() const;
};

/// Connects every unordered pair of message fanals (undirected matrix).
void store_clique(ConnectionMatrix& m, const FixedMessage& msg);

/// Ring positions follow ascending cluster order; position k is connected to
/// positions k +- 1 .. k +- r (mod c).
void store_ring(ConnectionMatrix& m, const FixedMessage& msg, const RingGraphSpec& spec);

/// Inhomogeneous degeneration with the same edge budget as the ring:
/// the first r*c pairs in lexicographic position order. Used only as a
/// comparison point for the ring.
void store_lexicographic(ConnectionMatrix& m, const FixedMessage& msg, const RingGraphSpec& spec);

struct FixedDecodeResult {
    FanalSet active;
    std::uint32_t iterations_run = 0;
    bool converged = false;  // last round left the active set unchanged
};

/// Iterative retrieval of a possibly distorted message.
///
/// Each round computes sum-of-max scores from the active fanals, adds the
/// memory effect gamma * v(f), then applies the rule:
///   - local_wta: WTA inside `known_clusters` only (guided decoding);
///     other clusters stay silent.
///   - threshold / global_wta / global_top: global selection over all fanals.
///   - losers_out: the first round keeps every stimulated fanal, later rounds
///     drop the lowest-scoring tier of the active set.
/// Runs `spec.iterations` rounds and returns the last state; stops early once
/// the active set is a fixed point.
FixedDecodeResult decode_fixed(const ConnectionMatrix& m, const FanalSet& input,
                               std::span<const std::uint32_t> known_clusters,
                               const DecoderSpec& spec);

}  // namespace seqnet
