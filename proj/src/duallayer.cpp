#include "seqnet/duallayer.hpp"

#include <algorithm>

#include "seqnet/analytic.hpp"
#include "seqnet/clique.hpp"

namespace seqnet {

void store_double(DoubleLayerNetwork& net, const VectorialSequence& seq, std::uint32_t r,
                  bool restricted) {
    store_vectorial(net.hetero, seq, r, restricted);
    for (const FanalSet& pattern : seq.patterns) store_clique(net.auto_, pattern);
}

std::vector<FanalId> cleanup_pattern(const ConnectionMatrix& auto_layer,
                                     std::vector<FanalId> tentative, const CleanupSpec& spec) {
    if (spec.alpha == 0) throw std::invalid_argument("cleanup needs alpha >= 1");
    std::vector<std::uint32_t> scores(auto_layer.layout().n());
    std::vector<FanalId> active = std::move(tentative);
    for (std::uint32_t round = 0; round < spec.iterations; ++round) {
        std::fill(scores.begin(), scores.end(), 0);
        accumulate_scores(auto_layer, active, {}, PassingMode::plain_sum, scores);
        for (FanalId f : active) scores[f] += spec.gamma;
        auto next = select_top(scores, spec.alpha);
        if (next == active) break;
        active = std::move(next);
    }
    return active;
}

VectorialDecodeResult decode_double(const DoubleLayerNetwork& net, std::span<const FanalSet> cue,
                                    std::size_t start, std::size_t target_length,
                                    const DoubleDecodeOptions& options) {
    VectorialDecodeOptions hetero;
    hetero.r = options.r;
    hetero.rule = SelectionRule::global_top(options.hetero_alpha);
    hetero.restricted = options.restricted;
    const PatternFilter clean = [&](std::vector<FanalId> tentative) {
        return cleanup_pattern(net.auto_, std::move(tentative), options.cleanup);
    };
    return decode_vectorial(net.hetero, cue, start, target_length, hetero, clean);
}

double memory_bits_single(const ClusterLayout& layout) {
    const double n = layout.n();
    return n * n;
}

double memory_bits_double(const ClusterLayout& layout) {
    const double chi = layout.chi();
    const double l = layout.l();
    return memory_bits_single(layout) + chi * (chi - 1) * l * l / 2;
}

double efficiency_single(double chi, double l, double c, double sequences, double length) {
    const double n = chi * l;
    return sequences * length * analytic::pattern_information_bits(chi, l, c) / (n * n);
}

double efficiency_double(double chi, double l, double c, double sequences, double length) {
    const double n = chi * l;
    const double q = n * n + chi * (chi - 1) * l * l / 2;
    return sequences * length * analytic::pattern_information_bits(chi, l, c) / q;
}

}  // namespace seqnet
