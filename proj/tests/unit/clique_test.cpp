#include <doctest.h>

#include "seqnet/analytic.hpp"
#include "seqnet/clique.hpp"
#include "seqnet/corpus.hpp"
#include "seqnet/rng.hpp"

using namespace seqnet;

namespace {

FixedMessage message(std::initializer_list<std::uint32_t> symbols) {
    FixedMessage m;
    std::uint32_t cluster = 0;
    for (auto s : symbols) m.insert({cluster++, s});
    return m;
}

std::vector<std::uint32_t> clusters_upto(std::uint32_t c) {
    std::vector<std::uint32_t> out(c);
    for (std::uint32_t i = 0; i < c; ++i) out[i] = i;
    return out;
}

}  // namespace

TEST_CASE("clique edge counts") {
    const ClusterLayout layout(8, 16);
    ConnectionMatrix m(layout, false);
    store_clique(m, message({1, 2, 3, 4}));
    CHECK(m.connection_count() == 6);

    // second 4-clique sharing clusters 0 and 1 with the same symbols: one shared edge
    store_clique(m, FanalSet{{0, 1}, {1, 2}, {5, 7}, {6, 9}});
    CHECK(m.connection_count() == 11);

    ConnectionMatrix single(layout, false);
    store_clique(single, FanalSet{{3, 3}});
    CHECK(single.connection_count() == 0);

    CHECK_THROWS(store_clique(m, FanalSet{{0, 1}, {0, 2}}));
}

TEST_CASE("ring graphs") {
    const ClusterLayout layout(8, 16);
    const FixedMessage msg = message({0, 1, 2, 3, 4, 5, 6, 7});

    SUBCASE("6-connected ring of order 8 has 24 edges") {
        ConnectionMatrix m(layout, false);
        store_ring(m, msg, {3, 8});
        CHECK(m.connection_count() == 24);
    }
    SUBCASE("r = c - 1 is the clique") {
        ConnectionMatrix ring(layout, false), clique(layout, false);
        store_ring(ring, msg, {7, 8});
        store_clique(clique, msg);
        CHECK(ring == clique);
    }
    SUBCASE("c = 4, r = 1 is a cycle") {
        ConnectionMatrix m(layout, false);
        const FixedMessage small = message({5, 6, 7, 8});
        store_ring(m, small, {1, 4});
        CHECK(m.connection_count() == 4);
        CHECK(m.test(Fanal{0, 5}, Fanal{1, 6}));
        CHECK(m.test(Fanal{3, 8}, Fanal{0, 5}));
        CHECK_FALSE(m.test(Fanal{0, 5}, Fanal{2, 7}));
    }
    SUBCASE("lexicographic variant has the same budget") {
        ConnectionMatrix m(layout, false);
        store_lexicographic(m, msg, {3, 8});
        CHECK(m.connection_count() == 24);
    }
    SUBCASE("spec validation") {
        CHECK_THROWS(RingGraphSpec{0, 8}.validate());
        CHECK_THROWS(RingGraphSpec{8, 8}.validate());
        ConnectionMatrix m(layout, false);
        CHECK_THROWS(store_ring(m, message({1, 2, 3}), {1, 4}));
    }
}

TEST_CASE("merit factor is two") {
    for (unsigned r = 1; r <= 20; ++r)
        for (unsigned c = 2; c <= 40; c += 2) CHECK(analytic::merit_factor(r, c) == 2.0);
}

TEST_CASE("guided decoding of a single stored message") {
    const ClusterLayout layout(8, 256);
    Rng rng(2);
    const FixedMessage msg = random_message(rng, layout, 8);
    ConnectionMatrix m(layout, false);
    store_clique(m, msg);
    const auto known = msg.clusters();

    const FanalSet half = distort(msg, layout, {0.5, 0, 0}, rng);
    CHECK(half.size() == 4);
    const auto out = decode_fixed(m, half, known, {SelectionRule::local_wta(), 4, 1});
    CHECK(out.active == msg);

    // any single erased cluster, c >= 3
    for (const Fanal& gone : msg) {
        FanalSet input;
        for (const Fanal& f : msg)
            if (!(f == gone)) input.insert(f);
        CHECK(decode_fixed(m, input, known, {SelectionRule::local_wta(), 1, 0}).active == msg);
    }
}

TEST_CASE("undistorted stored messages keep their fanals") {
    const ClusterLayout layout(8, 32);
    Rng rng(4);
    ConnectionMatrix m(layout, false);
    std::vector<FixedMessage> stored;
    for (int i = 0; i < 200; ++i) {
        stored.push_back(random_message(rng, layout, 6));
        store_clique(m, stored.back());
    }
    for (const FixedMessage& msg : stored) {
        const auto out = decode_fixed(m, msg, msg.clusters(), {SelectionRule::local_wta(), 1, 0});
        for (const Fanal& f : msg) REQUIRE(out.active.contains(f));
    }
}

TEST_CASE("global decoders on a clique memory") {
    const ClusterLayout layout(8, 16);
    ConnectionMatrix m(layout, false);
    const FixedMessage msg = message({3, 1, 4, 1, 5, 9, 2, 6});
    store_clique(m, msg);
    const FanalSet partial{{0, 3}, {1, 1}, {2, 4}};
    const std::vector<std::uint32_t> none;

    SUBCASE("GWsTA completes the message") {
        const auto out = decode_fixed(m, partial, none, {SelectionRule::global_top(8), 4, 1});
        CHECK(out.active == msg);
    }
    SUBCASE("GLsKO removes an insertion") {
        FanalSet noisy = msg;
        noisy.insert({0, 0});  // second fanal in cluster 0, not connected
        const auto out = decode_fixed(m, noisy, none, {SelectionRule::losers_out(), 4, 0});
        CHECK(out.active == msg);
        CHECK(out.converged);
    }
    SUBCASE("iteration budget") {
        const auto out = decode_fixed(m, msg, none, {SelectionRule::global_top(8), 3, 0});
        CHECK(out.iterations_run == 1);
        CHECK(out.converged);
    }
    SUBCASE("guided WTA needs clusters") {
        CHECK_THROWS(decode_fixed(m, msg, none, {SelectionRule::local_wta(), 1, 0}));
    }
}
