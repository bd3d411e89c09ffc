#pragma once

// Double layered structure: a tournament-based hetero-associative layer that
// chains patterns, and a clique-based auto-associative layer of mirror fanals
// that cleans each tentative pattern before it re-enters the chain.

#include <cstdint>

#include "seqnet/core.hpp"
#include "seqnet/vectorial.hpp"

namespace seqnet {

struct DoubleLayerNetwork {
    ClusterLayout layout;
    ConnectionMatrix hetero;  // directed
    ConnectionMatrix auto_;   // undirected, same addresses

    explicit DoubleLayerNetwork(ClusterLayout layout_)
        : layout(layout_), hetero(layout_, true), auto_(layout_, false) {}

    friend bool operator==(const DoubleLayerNetwork&, const DoubleLayerNetwork&) = default;
};

/// Hetero layer stores the sequence chain; auto layer stores every pattern as
/// a clique.
void store_double(DoubleLayerNetwork& net, const VectorialSequence& seq, std::uint32_t r,
                  bool restricted);

struct CleanupSpec {
    std::uint32_t alpha = 1;
    std::uint32_t iterations = 4;
    std::uint32_t gamma = 1000;
};

/// Iterative GWsTA on the auto layer: plain-sum scores from the active fanals
/// plus gamma for every active fanal, then top-alpha selection with ties.
std::vector<FanalId> cleanup_pattern(const ConnectionMatrix& auto_layer,
                                     std::vector<FanalId> tentative, const CleanupSpec& spec);

struct DoubleDecodeOptions {
    std::uint32_t r = 1;
    std::uint32_t hetero_alpha = 1;
    CleanupSpec cleanup;
    bool restricted = false;
};

VectorialDecodeResult decode_double(const DoubleLayerNetwork& net, std::span<const FanalSet> cue,
                                    std::size_t start, std::size_t target_length,
                                    const DoubleDecodeOptions& options);

/// Connection bits used by each structure.
double memory_bits_single(const ClusterLayout& layout);
/// n^2 oriented bits plus chi (chi - 1) l^2 / 2 inter-cluster undirected bits.
double memory_bits_double(const ClusterLayout& layout);

/// S * L * (c log2 l + log2 C(chi, c)) / Q.
double efficiency_single(double chi, double l, double c, double sequences, double length);
double efficiency_double(double chi, double l, double c, double sequences, double length);

}  // namespace seqnet
