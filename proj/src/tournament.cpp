#include "seqnet/tournament.hpp"

#include <algorithm>
#include <stdexcept>

#include "bits.hpp"

namespace seqnet {

void TournamentSpec::validate() const {
    if (r == 0 || r > layout.chi() - 1)
        throw std::invalid_argument("anticipation degree r must lie in [1, chi - 1]");
}

bool TournamentSpec::is_downstream(std::uint32_t from, std::uint32_t to) const {
    const std::uint32_t d = delta(from, to, layout);
    return d >= 1 && d <= r;
}

void check_sequence(const TournamentSpec& spec, const SymbolSequence& seq) {
    spec.validate();
    if (seq.symbols.empty()) throw std::invalid_argument("sequence is empty");
    for (std::size_t t = 0; t < seq.size(); ++t)
        if (seq.symbols[t] >= spec.layout.l())
            throw std::out_of_range("symbol " + std::to_string(seq.symbols[t]) + " at position " +
                                    std::to_string(t) + " exceeds alphabet size " +
                                    std::to_string(spec.layout.l()));
    if (spec.closure == SequenceClosure::cyclic && seq.size() % spec.layout.chi() != 0)
        throw std::invalid_argument("cyclic storage needs a length that is a multiple of chi");
}

void store_sequence(ConnectionMatrix& m, const SymbolSequence& seq, const TournamentSpec& spec) {
    if (!m.directed()) throw std::invalid_argument("sequences are stored in a directed matrix");
    if (m.layout() != spec.layout) throw std::invalid_argument("matrix and spec layouts differ");
    spec.validate();
    check_sequence(spec, seq);
    const ClusterLayout& layout = spec.layout;
    const std::size_t length = seq.size();
    for (std::size_t t = 0; t < length; ++t) {
        const FanalId from = layout.flat(spec.fanal_at(t, seq.symbols[t]));
        for (std::size_t step = 1; step <= spec.r; ++step) {
            std::size_t u = t + step;
            if (u >= length) {
                if (spec.closure == SequenceClosure::open) break;
                u %= length;
            }
            m.add(from, layout.flat(spec.fanal_at(u, seq.symbols[u])));
        }
    }
}

double tournament_density(const ConnectionMatrix& m, const TournamentSpec& spec) {
    return m.measured_density(
        [&spec](std::uint32_t from, std::uint32_t to) { return spec.is_downstream(from, to); });
}

std::optional<std::uint32_t> RetrievedSequence::symbol(std::size_t position) const {
    const auto& set = active.at(position - start);
    if (set.size() != 1) return std::nullopt;
    return set.front();
}

RetrievedSequence decode_sequence(const ConnectionMatrix& m, const TournamentSpec& spec,
                                  std::span<const std::uint32_t> cue, std::size_t start,
                                  std::size_t target_length) {
    spec.validate();
    if (m.layout() != spec.layout) throw std::invalid_argument("matrix and spec layouts differ");
    if (cue.empty()) throw std::invalid_argument("decoding needs at least one cue symbol");
    if (target_length < start + cue.size())
        throw std::invalid_argument("target length shorter than the cue");
    const ClusterLayout& layout = spec.layout;
    const std::uint32_t l = layout.l();
    for (std::uint32_t s : cue)
        if (s >= l) throw std::out_of_range("cue symbol " + std::to_string(s) + " out of range");

    RetrievedSequence out;
    out.start = start;
    out.cue_length = cue.size();
    out.active.reserve(target_length - start);
    for (std::uint32_t s : cue) out.active.push_back({s});

    std::vector<std::uint32_t> scores(l);
    std::vector<std::uint64_t> merged(m.words_per_row());
    for (std::size_t position = start + cue.size(); position < target_length; ++position) {
        const std::uint32_t target = spec.cluster_of(position);
        const std::size_t begin = std::size_t{target} * l;
        std::fill(scores.begin(), scores.end(), 0);

        const std::size_t window = std::min<std::size_t>(spec.r, position - start);
        for (std::size_t step = 1; step <= window; ++step) {
            const std::size_t source_pos = position - step;
            const std::uint32_t source_cluster = spec.cluster_of(source_pos);
            const auto& sources = out.active[source_pos - start];
            const auto bump = [&](std::size_t bit) { ++scores[bit - begin]; };
            // Sum of max: one vote per upstream position, whatever the number
            // of tied fanals it carries.
            if (sources.size() == 1) {
                detail::for_each_set_bit(m.row(source_cluster * l + sources.front()), begin,
                                         begin + l, bump);
            } else {
                std::fill(merged.begin(), merged.end(), 0);
                for (std::uint32_t j : sources) {
                    const auto row = m.row(source_cluster * l + j);
                    for (std::size_t w = begin / 64; w <= (begin + l - 1) / 64; ++w) merged[w] |= row[w];
                }
                detail::for_each_set_bit(merged, begin, begin + l, bump);
            }
        }

        const std::uint32_t best = *std::max_element(scores.begin(), scores.end());
        std::vector<std::uint32_t> winners;
        for (std::uint32_t j = 0; j < l; ++j)
            if (scores[j] == best) winners.push_back(j);
        out.active.push_back(std::move(winners));
    }
    return out;
}

namespace {

std::size_t count_errors(const SymbolSequence& reference, const RetrievedSequence& retrieved) {
    if (retrieved.end() > reference.size())
        throw std::invalid_argument("retrieved sequence longer than the reference");
    std::size_t errors = 0;
    for (std::size_t p = retrieved.start + retrieved.cue_length; p < retrieved.end(); ++p) {
        const auto s = retrieved.symbol(p);
        if (!s || *s != reference.symbols[p]) ++errors;
    }
    return errors;
}

}  // namespace

double sber(const SymbolSequence& reference, const RetrievedSequence& retrieved) {
    const std::size_t decoded = retrieved.active.size() - retrieved.cue_length;
    if (decoded == 0) return 0.0;
    return static_cast<double>(count_errors(reference, retrieved)) / static_cast<double>(decoded);
}

bool retrieved_exactly(const SymbolSequence& reference, const RetrievedSequence& retrieved) {
    return count_errors(reference, retrieved) == 0;
}

double sqer(std::span<const bool> trial_exact) {
    if (trial_exact.empty()) return 0.0;
    const auto failed = std::count(trial_exact.begin(), trial_exact.end(), false);
    return static_cast<double>(failed) / static_cast<double>(trial_exact.size());
}

}  // namespace seqnet
