#include <doctest.h>

#include <cmath>

#include "seqnet/analytic.hpp"
#include "seqnet/corpus.hpp"
#include "seqnet/tournament.hpp"

using namespace seqnet;

TEST_CASE("pair counting") {
    const ClusterLayout layout(8, 32);
    for (std::uint32_t r = 1; r <= 7; ++r) {
        const TournamentSpec spec{layout, r};
        ConnectionMatrix m(layout, true);
        SymbolSequence seq;
        for (std::uint32_t t = 0; t <= r; ++t) seq.symbols.push_back(t);
        store_sequence(m, seq, spec);
        CHECK(m.connection_count() == r * (r + 1) / 2);
    }
}

TEST_CASE("anticipation schedule wraps around the cluster ring") {
    // chi = 8, r = 3: p7 (cluster 7) feeds p8 (cluster 8), p9 (cluster 1), p10 (cluster 2)
    const ClusterLayout layout(8, 16);
    const TournamentSpec spec{layout, 3};
    SymbolSequence seq;
    for (std::uint32_t t = 0; t < 12; ++t) seq.symbols.push_back(t);
    ConnectionMatrix m(layout, true);
    store_sequence(m, seq, spec);
    const Fanal p7 = spec.fanal_at(6, 6);
    CHECK(p7.cluster == 6);
    CHECK(m.test(p7, spec.fanal_at(7, 7)));
    CHECK(m.test(p7, spec.fanal_at(8, 8)));
    CHECK(m.test(p7, spec.fanal_at(9, 9)));
    CHECK(spec.fanal_at(8, 8).cluster == 0);
    CHECK(spec.fanal_at(9, 9).cluster == 1);
    CHECK_FALSE(m.test(p7, spec.fanal_at(10, 10)));
    CHECK(spec.is_downstream(7, 0));
    CHECK_FALSE(spec.is_downstream(0, 4));

    ConnectionMatrix twice = m;
    store_sequence(twice, seq, spec);
    CHECK(twice == m);
}

TEST_CASE("cyclic closure") {
    const ClusterLayout layout(4, 16);
    const TournamentSpec spec{layout, 2, SequenceClosure::cyclic};
    SymbolSequence seq{{1, 2, 3, 4, 5, 6, 7, 8}};
    ConnectionMatrix m(layout, true);
    store_sequence(m, seq, spec);
    CHECK(m.connection_count() == 16);  // every position pairs with 2 successors
    CHECK(m.test(spec.fanal_at(7, 8), spec.fanal_at(0, 1)));
    CHECK_THROWS_AS(check_sequence(spec, SymbolSequence{{1, 2, 3, 4, 5, 6}}), std::invalid_argument);
    CHECK_THROWS(check_sequence({layout, 4}, seq));
    CHECK_THROWS(check_sequence({layout, 2}, SymbolSequence{{1, 16}}));
}

TEST_CASE("single stored sequence is retrieved exactly") {
    const ClusterLayout layout(20, 64);
    Rng rng(8);
    // with r = 1 a sequence longer than chi can collide with itself
    for (auto [r, len] : {std::pair{1u, 20u}, {5u, 100u}, {19u, 100u}}) {
        const TournamentSpec spec{layout, r};
        const SymbolSequence seq = random_symbol_sequence(rng, 64, len);
        ConnectionMatrix m(layout, true);
        store_sequence(m, seq, spec);
        const auto out = decode_sequence(m, spec, std::span(seq.symbols).first(r), 0, len);
        CHECK(retrieved_exactly(seq, out));
        CHECK(sber(seq, out) == 0);
        for (std::size_t t = 0; t < len; ++t) CHECK_FALSE(out.ambiguous(t));
    }
}

TEST_CASE("mid-sequence cue completes the same tail") {
    const ClusterLayout layout(8, 16);
    const TournamentSpec spec{layout, 3};
    Rng rng(21);
    ConnectionMatrix m(layout, true);
    std::vector<SymbolSequence> corpus;
    for (int i = 0; i < 10; ++i) {
        corpus.push_back(random_symbol_sequence(rng, 16, 40));
        store_sequence(m, corpus.back(), spec);
    }
    for (const SymbolSequence& seq : corpus) {
        const auto full = decode_sequence(m, spec, std::span(seq.symbols).first(3), 0, 40);
        for (std::size_t start : {5u, 17u}) {
            const auto cue = std::span(seq.symbols).subspan(start, 3);
            const auto tail = decode_sequence(m, spec, cue, start, 40);
            CHECK(tail.start == start);
            // wherever the full decode is exact up to `start`, the tails agree
            bool clean = true;
            for (std::size_t t = 3; t < start + 3; ++t)
                clean = clean && full.symbol(t) == std::optional(seq.symbols[t]);
            if (!clean) continue;
            for (std::size_t t = start + 3; t < 40; ++t) CHECK(tail.active[t - start] == full.active[t]);
        }
    }
}

TEST_CASE("error rates") {
    SymbolSequence ref;
    for (std::uint32_t t = 0; t < 100; ++t) ref.symbols.push_back(t % 7);
    RetrievedSequence out;
    out.cue_length = 4;
    for (std::uint32_t t = 0; t < 100; ++t) out.active.push_back({ref.symbols[t]});
    CHECK(sber(ref, out) == 0);
    out.active[50] = {(ref.symbols[50] + 1) % 7};
    CHECK(sber(ref, out) == doctest::Approx(1.0 / 96));
    CHECK_FALSE(retrieved_exactly(ref, out));
    out.active[50] = {ref.symbols[50], 99};  // tie
    CHECK(sber(ref, out) == doctest::Approx(1.0 / 96));
    CHECK_FALSE(out.symbol(50).has_value());
    for (std::uint32_t t = 4; t < 100; ++t) out.active[t] = {99};
    CHECK(sber(ref, out) == 1);

    bool trials[100];
    std::fill(std::begin(trials), std::end(trials), true);
    CHECK(sqer(trials) == 0);
    trials[10] = false;
    CHECK(sqer(trials) == doctest::Approx(0.01));
}

TEST_CASE("density does not depend on r") {
    const ClusterLayout layout(10, 64);
    const double chi = 10, l = 64, s = 400, len = 100;
    std::vector<double> dens;
    for (std::uint32_t r : {2u, 9u}) {
        const TournamentSpec spec{layout, r, SequenceClosure::cyclic};
        ConnectionMatrix m(layout, true);
        const Rng root(77);
        for (int k = 0; k < 400; ++k) {
            Rng rng = root.split(k);
            store_sequence(m, random_symbol_sequence(rng, 64, 100), spec);
        }
        dens.push_back(tournament_density(m, spec));
    }
    const double d = analytic::density_seq(chi, l, s, len);
    // binomial spread of a block density over r*chi*l^2 bits, r = 2
    const double sd = std::sqrt(d * (1 - d) / (2 * chi * l * l));
    CHECK(std::abs(dens[0] - dens[1]) < 3 * std::sqrt(2.0) * sd);
    CHECK(std::abs(dens[1] - d) / d < 0.02);
}

TEST_CASE("simulated symbol errors stay above the structural floor") {
    const ClusterLayout layout(8, 32);
    const TournamentSpec spec{layout, 3, SequenceClosure::cyclic};
    const Rng root(31);
    for (int s : {100, 200, 300}) {
        ConnectionMatrix m(layout, true);
        std::vector<SymbolSequence> corpus;
        for (int k = 0; k < s; ++k) {
            Rng rng = root.split(k);
            corpus.push_back(random_symbol_sequence(rng, 32, 32));
            store_sequence(m, corpus.back(), spec);
        }
        double total = 0;
        const int trials = 300;
        for (int t = 0; t < trials; ++t) {
            Rng rng = root.split(1'000'000 + t);
            const auto& seq = corpus[rng.below(s)];
            total += sber(seq, decode_sequence(m, spec, std::span(seq.symbols).first(3), 0, 32));
        }
        const double floor = analytic::structural_sber(tournament_density(m, spec), 3, 32);
        CHECK(total / trials >= floor);
    }
}
