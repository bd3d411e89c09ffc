#pragma once

// Winner-selection rules applied after a message-passing step.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "seqnet/core.hpp"

namespace seqnet {

enum class SelectionKind {
    local_wta,   // per cluster: every fanal at the cluster maximum
    threshold,   // TS: every fanal with score >= theta
    global_wta,  // GWTA: every fanal at the global maximum
    global_top,  // GWsTA: the alpha best fanals plus ties with the alpha-th
    losers_out,  // GLsKO: drop the lowest-scoring tier of the active fanals
};

struct SelectionRule {
    SelectionKind kind = SelectionKind::global_top;
    std::uint32_t theta = 1;
    std::uint32_t alpha = 1;

    static SelectionRule local_wta() { return {SelectionKind::local_wta, 1, 1}; }
    static SelectionRule threshold(std::uint32_t theta) { return {SelectionKind::threshold, theta, 1}; }
    static SelectionRule global_wta() { return {SelectionKind::global_wta, 1, 1}; }
    static SelectionRule global_top(std::uint32_t alpha) { return {SelectionKind::global_top, 1, alpha}; }
    static SelectionRule losers_out() { return {SelectionKind::losers_out, 1, 1}; }

    /// Throws std::invalid_argument when theta or alpha is zero for the rule using it.
    void validate() const;
    std::string name() const;
};

/// Parses the CLI spelling: wta, ts, gwta, gwsta, glsko.
SelectionKind parse_selection_kind(const std::string& text);
std::string to_string(SelectionKind kind);

/// Selection rule plus the iteration parameters of an iterative decoder.
struct DecoderSpec {
    SelectionRule selection;
    std::uint32_t iterations = 1;
    /// Memory effect: each active fanal adds gamma times its activation to its
    /// own score before selection.
    std::uint32_t gamma = 0;
};

/// `eligible` masks candidate fanals (empty span: all fanals are candidates).
/// Global rules never select a fanal with score zero.
std::vector<FanalId> select_threshold(std::span<const std::uint32_t> scores, std::uint32_t theta,
                                      std::span<const std::uint8_t> eligible = {});
std::vector<FanalId> select_global_max(std::span<const std::uint32_t> scores,
                                       std::span<const std::uint8_t> eligible = {});
std::vector<FanalId> select_top(std::span<const std::uint32_t> scores, std::uint32_t alpha,
                                std::span<const std::uint8_t> eligible = {});

/// Local WTA inside each listed cluster: every fanal reaching the cluster
/// maximum is kept, including the all-zero case.
std::vector<FanalId> select_local_wta(std::span<const std::uint32_t> scores,
                                      const ClusterLayout& layout,
                                      std::span<const std::uint32_t> clusters);

/// One GLsKO elimination round over `active` (sorted ids). Fanals at the
/// lowest score are removed unless every active fanal is tied.
std::vector<FanalId> kick_out_losers(std::span<const std::uint32_t> scores,
                                     std::span<const FanalId> active);

/// Dispatches the global rules (threshold, global_wta, global_top).
std::vector<FanalId> select(std::span<const std::uint32_t> scores, const SelectionRule& rule,
                            std::span<const std::uint8_t> eligible = {});

}  // namespace seqnet
