#include "seqnet/selection.hpp"

#include <algorithm>
#include <stdexcept>

namespace seqnet {

namespace {

bool is_candidate(std::span<const std::uint8_t> eligible, std::size_t k) {
    return eligible.empty() || eligible[k] != 0;
}

}  // namespace

void SelectionRule::validate() const {
    if (kind == SelectionKind::threshold && theta == 0)
        throw std::invalid_argument("threshold selection needs theta >= 1");
    if (kind == SelectionKind::global_top && alpha == 0)
        throw std::invalid_argument("GWsTA selection needs alpha >= 1");
}

std::string SelectionRule::name() const { return to_string(kind); }

SelectionKind parse_selection_kind(const std::string& text) {
    if (text == "wta") return SelectionKind::local_wta;
    if (text == "ts") return SelectionKind::threshold;
    if (text == "gwta") return SelectionKind::global_wta;
    if (text == "gwsta") return SelectionKind::global_top;
    if (text == "glsko") return SelectionKind::losers_out;
    throw std::invalid_argument("unknown decoder '" + text + "'");
}

std::string to_string(SelectionKind kind) {
    switch (kind) {
        case SelectionKind::local_wta: return "wta";
        case SelectionKind::threshold: return "ts";
        case SelectionKind::global_wta: return "gwta";
        case SelectionKind::global_top: return "gwsta";
        case SelectionKind::losers_out: return "glsko";
    }
    return "?";
}

std::vector<FanalId> select_threshold(std::span<const std::uint32_t> scores, std::uint32_t theta,
                                      std::span<const std::uint8_t> eligible) {
    const std::uint32_t floor = std::max<std::uint32_t>(theta, 1);
    std::vector<FanalId> out;
    for (std::size_t k = 0; k < scores.size(); ++k)
        if (is_candidate(eligible, k) && scores[k] >= floor) out.push_back(static_cast<FanalId>(k));
    return out;
}

std::vector<FanalId> select_global_max(std::span<const std::uint32_t> scores,
                                       std::span<const std::uint8_t> eligible) {
    std::uint32_t best = 0;
    for (std::size_t k = 0; k < scores.size(); ++k)
        if (is_candidate(eligible, k)) best = std::max(best, scores[k]);
    if (best == 0) return {};
    return select_threshold(scores, best, eligible);
}

std::vector<FanalId> select_top(std::span<const std::uint32_t> scores, std::uint32_t alpha,
                                std::span<const std::uint8_t> eligible) {
    if (alpha == 0) throw std::invalid_argument("GWsTA selection needs alpha >= 1");
    std::vector<std::uint32_t> positive;
    for (std::size_t k = 0; k < scores.size(); ++k)
        if (is_candidate(eligible, k) && scores[k] > 0) positive.push_back(scores[k]);
    if (positive.empty()) return {};
    const std::size_t rank = std::min<std::size_t>(alpha, positive.size()) - 1;
    std::nth_element(positive.begin(), positive.begin() + static_cast<std::ptrdiff_t>(rank),
                     positive.end(), std::greater<>());
    return select_threshold(scores, positive[rank], eligible);
}

std::vector<FanalId> select_local_wta(std::span<const std::uint32_t> scores,
                                      const ClusterLayout& layout,
                                      std::span<const std::uint32_t> clusters) {
    std::vector<FanalId> out;
    const std::uint32_t l = layout.l();
    for (std::uint32_t c : clusters) {
        layout.check_cluster(c);
        const auto block = scores.subspan(std::size_t{c} * l, l);
        const std::uint32_t best = *std::max_element(block.begin(), block.end());
        for (std::uint32_t j = 0; j < l; ++j)
            if (block[j] == best) out.push_back(c * l + j);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<FanalId> kick_out_losers(std::span<const std::uint32_t> scores,
                                     std::span<const FanalId> active) {
    if (active.empty()) return {};
    std::uint32_t low = scores[active.front()];
    std::uint32_t high = low;
    for (FanalId f : active) {
        low = std::min(low, scores[f]);
        high = std::max(high, scores[f]);
    }
    std::vector<FanalId> out;
    for (FanalId f : active)
        if (low == high || scores[f] != low) out.push_back(f);
    return out;
}

std::vector<FanalId> select(std::span<const std::uint32_t> scores, const SelectionRule& rule,
                            std::span<const std::uint8_t> eligible) {
    rule.validate();
    switch (rule.kind) {
        case SelectionKind::threshold: return select_threshold(scores, rule.theta, eligible);
        case SelectionKind::global_wta: return select_global_max(scores, eligible);
        case SelectionKind::global_top: return select_top(scores, rule.alpha, eligible);
        default: break;
    }
    throw std::invalid_argument("rule '" + rule.name() + "' is not a global selection rule");
}

}  // namespace seqnet
