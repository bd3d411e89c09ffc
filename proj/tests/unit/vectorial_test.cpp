#include <doctest.h>

#include "seqnet/corpus.hpp"
#include "seqnet/vectorial.hpp"

using namespace seqnet;

namespace {

std::uint64_t links(const ConnectionMatrix& m, const FanalSet& from, const FanalSet& to) {
    std::uint64_t count = 0;
    for (const Fanal& a : from)
        for (const Fanal& b : to) count += m.test(a, b);
    return count;
}

}  // namespace

TEST_CASE("bipartite storage") {
    const ClusterLayout layout(12, 8);

    SUBCASE("four patterns, r = 2") {
        const VectorialSequence seq{{FanalSet{{0, 1}, {1, 2}}, FanalSet{{2, 3}, {3, 4}},
                                     FanalSet{{4, 5}, {5, 6}}, FanalSet{{6, 7}, {7, 0}}}};
        ConnectionMatrix m(layout, true);
        store_vectorial(m, seq, 2, false);
        CHECK(links(m, seq.patterns[0], seq.patterns[1]) == 4);
        CHECK(links(m, seq.patterns[0], seq.patterns[2]) == 4);
        CHECK(links(m, seq.patterns[0], seq.patterns[3]) == 0);
        CHECK(links(m, seq.patterns[1], seq.patterns[0]) == 0);
        CHECK(m.connection_count() == 4 * 5);
    }
    SUBCASE("orders 3 and 5, r = 1") {
        const VectorialSequence seq{{FanalSet{{0, 0}, {1, 0}, {2, 0}},
                                     FanalSet{{3, 0}, {4, 0}, {5, 0}, {6, 0}, {7, 0}}}};
        ConnectionMatrix m(layout, true);
        store_vectorial(m, seq, 1, true);
        CHECK(m.connection_count() == 15);
    }
    SUBCASE("a single pattern stores nothing") {
        ConnectionMatrix m(layout, true);
        store_vectorial(m, VectorialSequence{{FanalSet{{0, 0}, {1, 1}}}}, 3, true);
        CHECK(m.connection_count() == 0);
    }
}

TEST_CASE("activity restriction violations") {
    const ClusterLayout layout(12, 8);
    const VectorialSequence seq{
        {FanalSet{{0, 1}, {1, 2}}, FanalSet{{2, 3}, {3, 4}}, FanalSet{{4, 5}, {1, 6}}}};
    ConnectionMatrix m(layout, true);
    CHECK_NOTHROW(check_vectorial(layout, seq, 1, true));
    try {
        store_vectorial(m, seq, 2, true);
        FAIL("expected a restriction violation");
    } catch (const RestrictionViolation& v) {
        CHECK(v.first == 0);
        CHECK(v.second == 2);
        CHECK(v.cluster == 1);
    }
    CHECK(m.connection_count() == 0);  // nothing stored
    CHECK_NOTHROW(store_vectorial(m, seq, 2, false));
}

TEST_CASE("state window") {
    NetworkStateWindow w(2);
    w.push(0, {5, 1});
    w.push(1, {1, 9});
    CHECK(w.fanals() == std::vector<FanalId>{1, 5, 9});
    CHECK(w.cardinality() == 3);
    w.push(2, {2});
    CHECK(w.size() == 2);
    CHECK(w.oldest_time() == 1);
    CHECK(w.fanals() == std::vector<FanalId>{1, 2, 9});
}

TEST_CASE("single stored sequence is retrieved by every rule") {
    const ClusterLayout layout(40, 32);
    Rng rng(13);
    for (bool restricted : {false, true}) {
        for (std::uint32_t r : {1u, 2u}) {
            const VectorialSequence seq = random_vectorial(rng, layout, 30, 5, 8, r, true);
            ConnectionMatrix m(layout, true);
            store_vectorial(m, seq, r, restricted);
            const auto cue = std::span<const FanalSet>(seq.patterns).first(r);
            for (const SelectionRule& rule :
                 {SelectionRule::threshold(1), SelectionRule::global_wta(), SelectionRule::global_top(5)}) {
                VectorialDecodeOptions opt{r, rule, rule.kind == SelectionKind::threshold, restricted};
                const auto out = decode_vectorial(m, cue, 0, 30, opt);
                CHECK(pattern_errors(seq, out) == 0);
                CHECK(out.sequence == seq);
            }
        }
    }
}

TEST_CASE("restriction excludes the window clusters") {
    // a stray connection into the cue's own cluster only matters without restriction
    const ClusterLayout layout(6, 4);
    const VectorialSequence seq{{FanalSet{{0, 0}, {1, 0}}, FanalSet{{2, 0}, {3, 0}}}};
    ConnectionMatrix m(layout, true);
    store_vectorial(m, seq, 1, true);
    m.add(Fanal{0, 0}, Fanal{1, 3});
    m.add(Fanal{1, 0}, Fanal{1, 3});
    m.add(Fanal{0, 0}, Fanal{0, 3});
    m.add(Fanal{1, 0}, Fanal{0, 3});
    const auto cue = std::span<const FanalSet>(seq.patterns).first(1);
    VectorialDecodeOptions opt{1, SelectionRule::global_wta(), false, false};
    CHECK(decode_vectorial(m, cue, 0, 2, opt).sequence.patterns[1].size() == 4);
    opt.restricted = true;
    CHECK(decode_vectorial(m, cue, 0, 2, opt).sequence.patterns[1] == seq.patterns[1]);
}

TEST_CASE("empty selections are flagged and decoding continues") {
    const ClusterLayout layout(6, 4);
    const VectorialSequence seq{{FanalSet{{0, 0}}, FanalSet{{1, 0}}, FanalSet{{2, 0}}}};
    ConnectionMatrix m(layout, true);
    store_vectorial(m, seq, 1, true);
    const auto cue = std::span<const FanalSet>(seq.patterns).first(1);
    const auto out = decode_vectorial(m, cue, 0, 3, {1, SelectionRule::threshold(5), false, true});
    REQUIRE(out.steps.size() == 2);
    CHECK(out.steps[0].empty_selection);
    CHECK(out.steps[1].empty_selection);
    CHECK(out.sequence.size() == 3);
    CHECK(pattern_errors(seq, out) == 2);
}

TEST_CASE("pattern error rate") {
    const PatternTally none[] = {{0, 99}, {0, 99}};
    CHECK(per(none) == 0);
    const PatternTally one[] = {{1, 50}, {0, 50}};
    CHECK(per(one) == doctest::Approx(0.01));
}
