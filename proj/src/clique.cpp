#include "seqnet/clique.hpp"

#include <algorithm>
#include <stdexcept>

namespace seqnet {

void check_message(const ClusterLayout& layout, const FixedMessage& msg) {
    for (const Fanal& f : msg) layout.check(f);
    if (!msg.one_per_cluster()) throw std::invalid_argument("message addresses a cluster twice");
}

void RingGraphSpec::validate() const {
    if (r == 0) throw std::invalid_argument("ring graph needs r >= 1");
    if (c < 2) throw std::invalid_argument("ring graph needs order c >= 2");
    if (r > c - 1) throw std::invalid_argument("ring graph needs r <= c - 1");
}

void store_clique(ConnectionMatrix& m, const FixedMessage& msg) {
    if (m.directed()) throw std::invalid_argument("cliques are stored in an undirected matrix");
    check_message(m.layout(), msg);
    const auto ids = msg.to_flat(m.layout());
    for (std::size_t a = 0; a < ids.size(); ++a)
        for (std::size_t b = a + 1; b < ids.size(); ++b) m.add(ids[a], ids[b]);
}

void store_ring(ConnectionMatrix& m, const FixedMessage& msg, const RingGraphSpec& spec) {
    if (m.directed()) throw std::invalid_argument("ring graphs are stored in an undirected matrix");
    spec.validate();
    check_message(m.layout(), msg);
    if (msg.size() != spec.c)
        throw std::invalid_argument("message order " + std::to_string(msg.size()) +
                                    " differs from ring order " + std::to_string(spec.c));
    // FanalSet is sorted by cluster, so index k is the ring position.
    const auto ids = msg.to_flat(m.layout());
    const std::size_t c = ids.size();
    for (std::size_t k = 0; k < c; ++k)
        for (std::size_t step = 1; step <= spec.r; ++step) m.add(ids[k], ids[(k + step) % c]);
}

void store_lexicographic(ConnectionMatrix& m, const FixedMessage& msg, const RingGraphSpec& spec) {
    if (m.directed()) throw std::invalid_argument("degenerated cliques are stored undirected");
    spec.validate();
    check_message(m.layout(), msg);
    if (msg.size() != spec.c) throw std::invalid_argument("message order differs from spec order");
    const auto ids = msg.to_flat(m.layout());
    std::size_t budget = std::size_t{spec.r} * spec.c;
    for (std::size_t a = 0; a < ids.size() && budget > 0; ++a)
        for (std::size_t b = a + 1; b < ids.size() && budget > 0; ++b, --budget) m.add(ids[a], ids[b]);
}

FixedDecodeResult decode_fixed(const ConnectionMatrix& m, const FanalSet& input,
                               std::span<const std::uint32_t> known_clusters,
                               const DecoderSpec& spec) {
    const ClusterLayout& layout = m.layout();
    const SelectionRule& rule = spec.selection;
    rule.validate();
    for (std::uint32_t c : known_clusters) layout.check_cluster(c);
    if (rule.kind == SelectionKind::local_wta && known_clusters.empty())
        throw std::invalid_argument("guided WTA decoding needs the message clusters");

    std::vector<FanalId> active = input.to_flat(layout);
    std::vector<std::uint32_t> scores(layout.n());
    const std::span<const std::uint32_t> targets =
        rule.kind == SelectionKind::local_wta ? known_clusters : std::span<const std::uint32_t>{};

    FixedDecodeResult result;
    for (std::uint32_t round = 0; round < spec.iterations; ++round) {
        std::fill(scores.begin(), scores.end(), 0);
        accumulate_scores(m, active, targets, PassingMode::sum_of_max, scores);
        for (FanalId f : active) scores[f] += spec.gamma;

        std::vector<FanalId> next;
        switch (rule.kind) {
            case SelectionKind::local_wta:
                next = select_local_wta(scores, layout, known_clusters);
                break;
            case SelectionKind::losers_out:
                next = round == 0 ? select_threshold(scores, 1) : kick_out_losers(scores, active);
                break;
            default:
                next = select(scores, rule);
                break;
        }
        ++result.iterations_run;
        const bool fixed_point = next == active;
        active = std::move(next);
        if (fixed_point) {
            result.converged = true;
            break;
        }
    }
    result.active = FanalSet::from_flat(layout, active);
    return result;
}

}  // namespace seqnet
