#pragma once

// Sequences of sparse patterns in an open, generalized chain of tournaments.
// Pattern t is linked to patterns t+1 .. t+r by oriented complete bipartite
// graphs; retrieval is global because the target clusters are unknown.

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "seqnet/core.hpp"
#include "seqnet/selection.hpp"

namespace seqnet {

struct VectorialSequence {
    std::vector<FanalSet> patterns;

    std::size_t size() const noexcept { return patterns.size(); }
    std::size_t min_order() const;
    friend bool operator==(const VectorialSequence&, const VectorialSequence&) = default;
};

/// Raised when a sequence breaks cluster activity restriction: `cluster` is
/// active in pattern `first` and again in pattern `second` <= first + r.
class RestrictionViolation : public std::invalid_argument {
public:
    RestrictionViolation(std::size_t first, std::size_t second, std::uint32_t cluster);

    std::size_t first;
    std::size_t second;
    std::uint32_t cluster;
};

/// Validates patterns (in layout, one fanal per cluster) and, when `restricted`
/// is set, the cluster disjointness of every pattern with its r successors.
void check_vectorial(const ClusterLayout& layout, const VectorialSequence& seq, std::uint32_t r,
                     bool restricted);

void store_vectorial(ConnectionMatrix& m, const VectorialSequence& seq, std::uint32_t r,
                     bool restricted);

/// The r most recent estimated patterns; pushing beyond r drops the oldest.
class NetworkStateWindow {
public:
    explicit NetworkStateWindow(std::uint32_t r);

    void push(std::size_t time, std::vector<FanalId> pattern);
    std::size_t size() const noexcept { return entries_.size(); }
    std::uint32_t capacity() const noexcept { return r_; }

    /// Phi: sorted union of the window's fanals.
    std::vector<FanalId> fanals() const;
    /// |Phi|
    std::size_t cardinality() const { return fanals().size(); }
    std::size_t oldest_time() const { return entries_.front().time; }

private:
    struct Entry {
        std::size_t time;
        std::vector<FanalId> pattern;
    };
    std::uint32_t r_;
    std::vector<Entry> entries_;
};

struct VectorialDecodeOptions {
    std::uint32_t r = 1;
    SelectionRule rule = SelectionRule::global_top(1);
    /// TS only: take theta = |Phi| at each step instead of rule.theta.
    bool auto_theta = false;
    /// Exclude every cluster occupied by the window from selection.
    bool restricted = false;
};

struct StepDiagnostics {
    std::size_t time = 0;
    std::uint32_t max_score = 0;
    std::size_t selected = 0;
    bool empty_selection = false;
};

struct VectorialDecodeResult {
    std::size_t start = 0;
    std::size_t cue_length = 0;
    VectorialSequence sequence;  // patterns from `start` to the target length
    std::vector<StepDiagnostics> steps;
};

/// Hook applied to each freshly selected pattern before it enters the window.
using PatternFilter = std::function<std::vector<FanalId>(std::vector<FanalId>)>;

/// Global decoding: activate the window, plain-sum message passing over all
/// fanals, global selection, slide the window; repeat until `target_length`
/// patterns exist. An empty selection is flagged and decoding continues.
VectorialDecodeResult decode_vectorial(const ConnectionMatrix& m, std::span<const FanalSet> cue,
                                       std::size_t start, std::size_t target_length,
                                       const VectorialDecodeOptions& options,
                                       const PatternFilter& filter = {});

/// Number of decoded (non-cue) patterns that differ from the reference.
std::size_t pattern_errors(const VectorialSequence& reference, const VectorialDecodeResult& result);

/// Pattern error rate over a set of trials: total wrong patterns over total
/// decoded patterns.
struct PatternTally {
    std::size_t wrong = 0;
    std::size_t decoded = 0;
};
double per(std::span<const PatternTally> trials);

}  // namespace seqnet
