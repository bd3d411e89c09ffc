#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "seqnet/corpus.hpp"

using namespace seqnet;

namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "seqnet_tests";
    fs::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("rng streams") {
    Rng a(5), b(5);
    for (int i = 0; i < 10; ++i) CHECK(a.next() == b.next());
    // a split does not depend on what the parent has drawn
    Rng fresh(5);
    CHECK(a.split(3).next() == fresh.split(3).next());
    CHECK(fresh.split(3).next() != fresh.split(4).next());
    Rng c(9);
    for (int i = 0; i < 1000; ++i) {
        REQUIRE(c.below(7) < 7);
        const auto v = c.between(3, 5);
        REQUIRE((v >= 3 && v <= 5));
        const double u = c.uniform();
        REQUIRE((u >= 0 && u < 1));
    }
}

TEST_CASE("random generation") {
    const ClusterLayout layout(20, 16);
    Rng rng(1);
    const FixedMessage msg = random_message(rng, layout, 8);
    CHECK(msg.size() == 8);
    CHECK(msg.clusters().size() == 8);

    const auto seq = random_vectorial(rng, layout, 50, 3, 5, 2, true);
    CHECK(seq.size() == 50);
    for (const FanalSet& p : seq.patterns) CHECK((p.size() >= 3 && p.size() <= 5));
    CHECK_NOTHROW(check_vectorial(layout, seq, 2, true));

    CHECK_THROWS_AS(check_vectorial_feasible(layout, 8, 8, 2, true), InfeasibleConfig);
    CHECK_NOTHROW(check_vectorial_feasible(layout, 5, 5, 3, true));
    CHECK_THROWS_AS(check_vectorial_feasible(layout, 5, 4, 1, false), InfeasibleConfig);
}

TEST_CASE("distortion") {
    const ClusterLayout layout(12, 16);
    Rng rng(3);
    const FixedMessage msg = random_message(rng, layout, 8);

    CHECK(distort(msg, layout, {}, rng) == msg);
    CHECK(distort(msg, layout, {1, 0, 0}, rng).size() == 0);

    const FanalSet half = distort(msg, layout, {0.5, 0, 0}, rng);
    CHECK(half.size() == 4);
    for (const Fanal& f : half) CHECK(msg.contains(f));

    const FanalSet wrong = distort(msg, layout, {0, 0.25, 0}, rng);
    CHECK(wrong.size() == 8);
    CHECK(wrong.clusters() == msg.clusters());
    int changed = 0;
    for (const Fanal& f : wrong) changed += !msg.contains(f);
    CHECK(changed == 2);

    const FanalSet extra = distort(msg, layout, {0, 0, 3}, rng);
    CHECK(extra.size() == 11);
    const auto own = msg.clusters();
    int outside = 0;
    for (const Fanal& f : extra)
        outside += !std::binary_search(own.begin(), own.end(), f.cluster);
    CHECK(outside == 3);

    CHECK_THROWS(DistortionSpec{1.5, 0, 0}.validate());
    CHECK_THROWS(DistortionSpec{0.6, 0.6, 0}.validate());
}

TEST_CASE("symbol corpus round trip") {
    Rng rng(11);
    std::vector<SymbolSequence> corpus;
    for (int i = 0; i < 20; ++i) corpus.push_back(random_symbol_sequence(rng, 64, 1 + i * 3));
    std::stringstream io;
    write_symbol_corpus(io, corpus);
    CHECK(read_symbol_corpus(io, 64) == corpus);

    std::istringstream zero("1 2 0\n");
    CHECK_THROWS(read_symbol_corpus(zero, 64));
    std::istringstream big("65\n");
    CHECK_THROWS(read_symbol_corpus(big, 64));
    std::istringstream junk("1 x 3\n");
    CHECK_THROWS(read_symbol_corpus(junk, 64));
}

TEST_CASE("vectorial corpus round trip") {
    const ClusterLayout layout(30, 16);
    Rng rng(12);
    std::vector<VectorialSequence> corpus;
    for (int i = 0; i < 5; ++i) corpus.push_back(random_vectorial(rng, layout, 10, 2, 6, 1, true));
    std::stringstream io;
    write_vectorial_corpus(io, corpus);
    CHECK(read_vectorial_corpus(io, layout) == corpus);
}

TEST_CASE("snapshot round trip") {
    for (bool directed : {true, false}) {
        const ClusterLayout layout(5, 13);  // n = 65, rows are not byte aligned
        ConnectionMatrix m(layout, directed);
        Rng rng(directed ? 1 : 2);
        for (int i = 0; i < 300; ++i) {
            const FanalId a = rng.below(layout.n()), b = rng.below(layout.n());
            if (layout.cluster_of(a) != layout.cluster_of(b)) m.add(a, b);
        }
        std::stringstream io;
        write_snapshot(io, m);
        CHECK(read_snapshot(io) == m);

        const fs::path path = scratch(directed ? "d.snap" : "u.snap");
        save_snapshot(path, m);
        CHECK(load_snapshot(path) == m);
        CHECK_FALSE(is_double_manifest(path));
    }
    std::istringstream truncated("2 4 1\n\x01");
    CHECK_THROWS_AS(read_snapshot(truncated), IoError);
    CHECK_THROWS_AS(load_snapshot(scratch("missing.snap")), IoError);
}

TEST_CASE("double manifest round trip") {
    const ClusterLayout layout(20, 8);
    Rng rng(4);
    DoubleLayerNetwork net(layout);
    store_double(net, random_vectorial(rng, layout, 20, 4, 4, 1, true), 1, true);
    const fs::path path = scratch("net.double");
    save_double(path, net);
    CHECK(is_double_manifest(path));
    CHECK(load_double(path) == net);
}
