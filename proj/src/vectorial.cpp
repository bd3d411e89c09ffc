#include "seqnet/vectorial.hpp"

#include <algorithm>

namespace seqnet {

std::size_t VectorialSequence::min_order() const {
    if (patterns.empty()) return 0;
    std::size_t best = patterns.front().size();
    for (const FanalSet& p : patterns) best = std::min(best, p.size());
    return best;
}

RestrictionViolation::RestrictionViolation(std::size_t first_, std::size_t second_,
                                           std::uint32_t cluster_)
    : std::invalid_argument("cluster activity restriction violated: cluster " +
                            std::to_string(cluster_) + " active in patterns " +
                            std::to_string(first_) + " and " + std::to_string(second_)),
      first(first_),
      second(second_),
      cluster(cluster_) {}

void check_vectorial(const ClusterLayout& layout, const VectorialSequence& seq, std::uint32_t r,
                     bool restricted) {
    if (r == 0) throw std::invalid_argument("anticipation degree r must be >= 1");
    for (std::size_t t = 0; t < seq.size(); ++t) {
        for (const Fanal& f : seq.patterns[t]) layout.check(f);
        if (!seq.patterns[t].one_per_cluster())
            throw std::invalid_argument("pattern " + std::to_string(t) +
                                        " activates two fanals of one cluster");
    }
    if (!restricted) return;
    for (std::size_t t = 0; t < seq.size(); ++t) {
        const auto clusters = seq.patterns[t].clusters();
        for (std::size_t step = 1; step <= r && t + step < seq.size(); ++step) {
            const auto later = seq.patterns[t + step].clusters();
            std::vector<std::uint32_t> shared;
            std::set_intersection(clusters.begin(), clusters.end(), later.begin(), later.end(),
                                  std::back_inserter(shared));
            if (!shared.empty()) throw RestrictionViolation(t, t + step, shared.front());
        }
    }
}

void store_vectorial(ConnectionMatrix& m, const VectorialSequence& seq, std::uint32_t r,
                     bool restricted) {
    if (!m.directed()) throw std::invalid_argument("vectorial sequences need a directed matrix");
    check_vectorial(m.layout(), seq, r, restricted);
    std::vector<std::vector<FanalId>> flat;
    flat.reserve(seq.size());
    for (const FanalSet& p : seq.patterns) flat.push_back(p.to_flat(m.layout()));
    for (std::size_t t = 0; t < flat.size(); ++t)
        for (std::size_t step = 1; step <= r && t + step < flat.size(); ++step)
            for (FanalId a : flat[t])
                for (FanalId b : flat[t + step])
                    if (a != b) m.add(a, b);
}

NetworkStateWindow::NetworkStateWindow(std::uint32_t r) : r_(r) {
    if (r == 0) throw std::invalid_argument("window needs r >= 1");
}

void NetworkStateWindow::push(std::size_t time, std::vector<FanalId> pattern) {
    if (entries_.size() == r_) entries_.erase(entries_.begin());
    entries_.push_back({time, std::move(pattern)});
}

std::vector<FanalId> NetworkStateWindow::fanals() const {
    std::vector<FanalId> all;
    for (const Entry& e : entries_) all.insert(all.end(), e.pattern.begin(), e.pattern.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

VectorialDecodeResult decode_vectorial(const ConnectionMatrix& m, std::span<const FanalSet> cue,
                                       std::size_t start, std::size_t target_length,
                                       const VectorialDecodeOptions& options,
                                       const PatternFilter& filter) {
    const ClusterLayout& layout = m.layout();
    if (cue.empty()) throw std::invalid_argument("decoding needs at least one cue pattern");
    if (target_length < start + cue.size())
        throw std::invalid_argument("target length shorter than the cue");
    if (!options.auto_theta) options.rule.validate();

    VectorialDecodeResult out;
    out.start = start;
    out.cue_length = cue.size();
    NetworkStateWindow window(options.r);
    for (std::size_t k = 0; k < cue.size(); ++k) {
        out.sequence.patterns.push_back(cue[k]);
        window.push(start + k, cue[k].to_flat(layout));
    }

    std::vector<std::uint32_t> scores(layout.n());
    std::vector<std::uint8_t> eligible;
    for (std::size_t time = start + cue.size(); time < target_length; ++time) {
        const auto phi = window.fanals();
        std::fill(scores.begin(), scores.end(), 0);
        accumulate_scores(m, phi, {}, PassingMode::plain_sum, scores);

        if (options.restricted) {
            eligible.assign(layout.n(), 1);
            for (FanalId f : phi) {
                const std::size_t base = std::size_t{layout.cluster_of(f)} * layout.l();
                std::fill_n(eligible.begin() + static_cast<std::ptrdiff_t>(base), layout.l(), 0);
            }
        }

        SelectionRule rule = options.rule;
        if (options.auto_theta && rule.kind == SelectionKind::threshold)
            rule.theta = static_cast<std::uint32_t>(std::max<std::size_t>(phi.size(), 1));
        std::vector<FanalId> chosen = select(scores, rule, eligible);

        StepDiagnostics diag;
        diag.time = time;
        for (std::size_t k = 0; k < scores.size(); ++k)
            if (eligible.empty() || eligible[k]) diag.max_score = std::max(diag.max_score, scores[k]);

        if (filter) chosen = filter(std::move(chosen));
        diag.selected = chosen.size();
        diag.empty_selection = chosen.empty();
        out.steps.push_back(diag);

        out.sequence.patterns.push_back(FanalSet::from_flat(layout, chosen));
        window.push(time, std::move(chosen));
    }
    return out;
}

std::size_t pattern_errors(const VectorialSequence& reference, const VectorialDecodeResult& result) {
    if (result.start + result.sequence.size() > reference.size())
        throw std::invalid_argument("decoded sequence longer than the reference");
    std::size_t wrong = 0;
    for (std::size_t k = result.cue_length; k < result.sequence.size(); ++k)
        if (result.sequence.patterns[k] != reference.patterns[result.start + k]) ++wrong;
    return wrong;
}

double per(std::span<const PatternTally> trials) {
    std::size_t wrong = 0;
    std::size_t decoded = 0;
    for (const PatternTally& t : trials) {
        wrong += t.wrong;
        decoded += t.decoded;
    }
    return decoded == 0 ? 0.0 : static_cast<double>(wrong) / static_cast<double>(decoded);
}

}  // namespace seqnet
