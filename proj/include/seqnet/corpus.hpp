#pragma once

// Random corpora, distortion of inputs, and the text/binary file formats.
// Files use 1-based cluster and symbol indices; memory is 0-based.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "seqnet/clique.hpp"
#include "seqnet/core.hpp"
#include "seqnet/duallayer.hpp"
#include "seqnet/rng.hpp"
#include "seqnet/tournament.hpp"
#include "seqnet/vectorial.hpp"

namespace seqnet {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised before any trial when a configuration cannot be realized.
class InfeasibleConfig : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Generation

SymbolSequence random_symbol_sequence(Rng& rng, std::uint32_t l, std::size_t length);

/// c distinct clusters drawn uniformly, one uniform fanal in each.
FixedMessage random_message(Rng& rng, const ClusterLayout& layout, std::uint32_t c);

/// Pattern orders uniform in [c_min, c_max]. Under restriction, cluster draws
/// exclude the clusters of the previous r patterns.
VectorialSequence random_vectorial(Rng& rng, const ClusterLayout& layout, std::size_t length,
                                   std::uint32_t c_min, std::uint32_t c_max, std::uint32_t r,
                                   bool restricted);

/// Throws InfeasibleConfig when random_vectorial cannot succeed.
void check_vectorial_feasible(const ClusterLayout& layout, std::uint32_t c_min, std::uint32_t c_max,
                              std::uint32_t r, bool restricted);

// Distortion

struct DistortionSpec {
    double erasure = 0;   // fraction of message clusters silenced
    double error = 0;     // fraction of message clusters given a wrong fanal
    std::uint32_t insertions = 0;  // fanals activated in silent clusters

    void validate() const;
};

/// Erased clusters are drawn first, errors among the remaining clusters,
/// insertions in distinct clusters outside the message. Counts are
/// round(fraction * c).
FanalSet distort(const FanalSet& msg, const ClusterLayout& layout, const DistortionSpec& spec,
                 Rng& rng);
VectorialSequence distort(const VectorialSequence& seq, const ClusterLayout& layout,
                          const DistortionSpec& spec, Rng& rng);

// Files

/// One sequence per line, whitespace-separated 1-based symbols.
std::vector<SymbolSequence> read_symbol_corpus(std::istream& in, std::uint32_t l);
void write_symbol_corpus(std::ostream& out, std::span<const SymbolSequence> corpus);

/// One pattern per line as `t: (i,j) (i,j) ...` (1-based), blank line
/// between sequences.
std::vector<VectorialSequence> read_vectorial_corpus(std::istream& in, const ClusterLayout& layout);
void write_vectorial_corpus(std::ostream& out, std::span<const VectorialSequence> corpus);

/// Header line `CHI L DIRECTED`, then n rows of ceil(n/8) bytes, bits
/// most-significant first.
void write_snapshot(std::ostream& out, const ConnectionMatrix& m);
ConnectionMatrix read_snapshot(std::istream& in);
void save_snapshot(const std::filesystem::path& path, const ConnectionMatrix& m);
ConnectionMatrix load_snapshot(const std::filesystem::path& path);

/// Manifest line `seqnet-double <hetero file> <auto file>`; the two layer
/// snapshots sit next to the manifest.
void save_double(const std::filesystem::path& manifest, const DoubleLayerNetwork& net);
DoubleLayerNetwork load_double(const std::filesystem::path& manifest);
bool is_double_manifest(const std::filesystem::path& path);

}  // namespace seqnet
