#include "seqnet/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace seqnet {

// Generation

SymbolSequence random_symbol_sequence(Rng& rng, std::uint32_t l, std::size_t length) {
    SymbolSequence seq;
    seq.symbols.resize(length);
    for (auto& s : seq.symbols) s = rng.below(l);
    return seq;
}

namespace {

// Partial Fisher-Yates: the first k entries of `pool` become a uniform sample.
std::vector<std::uint32_t> sample(Rng& rng, std::vector<std::uint32_t> pool, std::uint32_t k) {
    for (std::uint32_t a = 0; a < k; ++a) {
        const std::uint32_t b = a + rng.below(static_cast<std::uint32_t>(pool.size()) - a);
        std::swap(pool[a], pool[b]);
    }
    pool.resize(k);
    return pool;
}

FanalSet pattern_on(Rng& rng, const ClusterLayout& layout, const std::vector<std::uint32_t>& clusters) {
    std::vector<Fanal> members;
    members.reserve(clusters.size());
    for (std::uint32_t c : clusters) members.push_back({c, rng.below(layout.l())});
    return FanalSet(std::move(members));
}

std::vector<std::uint32_t> all_clusters(const ClusterLayout& layout) {
    std::vector<std::uint32_t> pool(layout.chi());
    for (std::uint32_t c = 0; c < layout.chi(); ++c) pool[c] = c;
    return pool;
}

}  // namespace

FixedMessage random_message(Rng& rng, const ClusterLayout& layout, std::uint32_t c) {
    if (c == 0 || c > layout.chi()) throw InfeasibleConfig("message order must lie in [1, chi]");
    return pattern_on(rng, layout, sample(rng, all_clusters(layout), c));
}

void check_vectorial_feasible(const ClusterLayout& layout, std::uint32_t c_min, std::uint32_t c_max,
                              std::uint32_t r, bool restricted) {
    if (c_min == 0 || c_min > c_max) throw InfeasibleConfig("pattern orders need 1 <= c_min <= c_max");
    if (c_max > layout.chi()) throw InfeasibleConfig("pattern order exceeds the number of clusters");
    if (r == 0) throw InfeasibleConfig("anticipation degree r must be >= 1");
    if (restricted && std::uint64_t{r + 1} * c_max > layout.chi())
        throw InfeasibleConfig("restricted corpus impossible: (r + 1) * c_max = " +
                               std::to_string(std::uint64_t{r + 1} * c_max) + " exceeds chi = " +
                               std::to_string(layout.chi()));
}

VectorialSequence random_vectorial(Rng& rng, const ClusterLayout& layout, std::size_t length,
                                   std::uint32_t c_min, std::uint32_t c_max, std::uint32_t r,
                                   bool restricted) {
    check_vectorial_feasible(layout, c_min, c_max, r, restricted);
    VectorialSequence seq;
    seq.patterns.reserve(length);
    std::vector<std::uint8_t> blocked(layout.chi());
    for (std::size_t t = 0; t < length; ++t) {
        const std::uint32_t c = rng.between(c_min, c_max);
        std::vector<std::uint32_t> pool;
        if (restricted) {
            std::fill(blocked.begin(), blocked.end(), 0);
            for (std::size_t back = 1; back <= r && back <= t; ++back)
                for (std::uint32_t k : seq.patterns[t - back].clusters()) blocked[k] = 1;
            for (std::uint32_t k = 0; k < layout.chi(); ++k)
                if (!blocked[k]) pool.push_back(k);
        } else {
            pool = all_clusters(layout);
        }
        seq.patterns.push_back(pattern_on(rng, layout, sample(rng, std::move(pool), c)));
    }
    return seq;
}

// Distortion

void DistortionSpec::validate() const {
    if (erasure < 0 || erasure > 1 || error < 0 || error > 1)
        throw std::invalid_argument("distortion fractions must lie in [0, 1]");
    if (erasure + error > 1) throw std::invalid_argument("erasure and error fractions add up to more than 1");
}

FanalSet distort(const FanalSet& msg, const ClusterLayout& layout, const DistortionSpec& spec,
                 Rng& rng) {
    spec.validate();
    std::vector<Fanal> members = msg.members();
    const auto c = static_cast<std::uint32_t>(members.size());
    const auto count = [c](double fraction) {
        return static_cast<std::uint32_t>(std::llround(fraction * c));
    };

    // Shuffle message positions; the first `erased` are dropped, the next
    // `errors` get a wrong fanal.
    std::vector<std::uint32_t> order(c);
    for (std::uint32_t k = 0; k < c; ++k) order[k] = k;
    order = sample(rng, std::move(order), c);
    const std::uint32_t erased = std::min(count(spec.erasure), c);
    const std::uint32_t errors = std::min(count(spec.error), c - erased);

    std::vector<std::uint8_t> keep(c, 1);
    for (std::uint32_t k = 0; k < erased; ++k) keep[order[k]] = 0;
    for (std::uint32_t k = erased; k < erased + errors; ++k) {
        Fanal& f = members[order[k]];
        if (layout.l() < 2) continue;
        const std::uint32_t shift = 1 + rng.below(layout.l() - 1);
        f.index = (f.index + shift) % layout.l();
    }

    std::vector<Fanal> out;
    for (std::uint32_t k = 0; k < c; ++k)
        if (keep[k]) out.push_back(members[k]);

    if (spec.insertions > 0) {
        std::vector<std::uint8_t> used(layout.chi(), 0);
        for (const Fanal& f : msg) used[f.cluster] = 1;
        std::vector<std::uint32_t> silent;
        for (std::uint32_t k = 0; k < layout.chi(); ++k)
            if (!used[k]) silent.push_back(k);
        const auto n = std::min<std::uint32_t>(spec.insertions, static_cast<std::uint32_t>(silent.size()));
        for (std::uint32_t k : sample(rng, std::move(silent), n)) out.push_back({k, rng.below(layout.l())});
    }
    return FanalSet(std::move(out));
}

VectorialSequence distort(const VectorialSequence& seq, const ClusterLayout& layout,
                          const DistortionSpec& spec, Rng& rng) {
    VectorialSequence out;
    for (const FanalSet& p : seq.patterns) out.patterns.push_back(distort(p, layout, spec, rng));
    return out;
}

// Text corpora

std::vector<SymbolSequence> read_symbol_corpus(std::istream& in, std::uint32_t l) {
    std::vector<SymbolSequence> corpus;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream fields(line);
        SymbolSequence seq;
        std::string token;
        while (fields >> token) {
            std::size_t used = 0;
            unsigned long value = 0;
            try {
                value = std::stoul(token, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != token.size() || value < 1 || value > l)
                throw IoError("line " + std::to_string(line_no) + ": bad symbol '" + token +
                              "' (expected 1.." + std::to_string(l) + ")");
            seq.symbols.push_back(static_cast<std::uint32_t>(value - 1));
        }
        if (!seq.symbols.empty()) corpus.push_back(std::move(seq));
    }
    return corpus;
}

void write_symbol_corpus(std::ostream& out, std::span<const SymbolSequence> corpus) {
    for (const SymbolSequence& seq : corpus) {
        for (std::size_t t = 0; t < seq.size(); ++t) out << (t ? " " : "") << seq.symbols[t] + 1;
        out << '\n';
    }
}

std::vector<VectorialSequence> read_vectorial_corpus(std::istream& in, const ClusterLayout& layout) {
    std::vector<VectorialSequence> corpus;
    VectorialSequence current;
    std::string line;
    std::size_t line_no = 0;
    const auto flush = [&] {
        if (!current.patterns.empty()) corpus.push_back(std::move(current));
        current = {};
    };
    const auto fail = [&](const std::string& why) {
        throw IoError("line " + std::to_string(line_no) + ": " + why);
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            flush();
            continue;
        }
        const auto colon = line.find(':');
        if (colon == std::string::npos) fail("missing 't:' prefix");
        std::vector<Fanal> members;
        std::size_t pos = colon + 1;
        while (true) {
            const auto open = line.find('(', pos);
            if (open == std::string::npos) break;
            const auto close = line.find(')', open);
            if (close == std::string::npos) fail("unterminated '('");
            const std::string inner = line.substr(open + 1, close - open - 1);
            unsigned long i = 0;
            unsigned long j = 0;
            char comma = 0;
            std::istringstream pair(inner);
            if (!(pair >> i >> comma >> j) || comma != ',') fail("bad fanal '(" + inner + ")'");
            if (i < 1 || i > layout.chi() || j < 1 || j > layout.l())
                fail("fanal (" + inner + ") outside layout");
            members.push_back({static_cast<std::uint32_t>(i - 1), static_cast<std::uint32_t>(j - 1)});
            pos = close + 1;
        }
        current.patterns.emplace_back(std::move(members));
    }
    flush();
    return corpus;
}

void write_vectorial_corpus(std::ostream& out, std::span<const VectorialSequence> corpus) {
    for (std::size_t s = 0; s < corpus.size(); ++s) {
        if (s) out << '\n';
        const auto& seq = corpus[s];
        for (std::size_t t = 0; t < seq.size(); ++t) {
            out << t + 1 << ':';
            for (const Fanal& f : seq.patterns[t]) out << " (" << f.cluster + 1 << ',' << f.index + 1 << ')';
            out << '\n';
        }
    }
}

// Snapshots

void write_snapshot(std::ostream& out, const ConnectionMatrix& m) {
    const ClusterLayout& layout = m.layout();
    const std::uint32_t n = layout.n();
    out << layout.chi() << ' ' << layout.l() << ' ' << (m.directed() ? 1 : 0) << '\n';
    std::vector<char> bytes((n + 7) / 8);
    for (FanalId a = 0; a < n; ++a) {
        std::fill(bytes.begin(), bytes.end(), 0);
        const auto row = m.row(a);
        for (std::uint32_t b = 0; b < n; ++b)
            if ((row[b / 64] >> (b % 64)) & 1U) bytes[b / 8] = static_cast<char>(bytes[b / 8] | (0x80 >> (b % 8)));
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    }
    if (!out) throw IoError("failed writing snapshot");
}

ConnectionMatrix read_snapshot(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw IoError("snapshot: missing header");
    std::istringstream fields(header);
    std::uint64_t chi = 0;
    std::uint64_t l = 0;
    int directed = -1;
    if (!(fields >> chi >> l >> directed) || chi == 0 || l == 0 || (directed != 0 && directed != 1))
        throw IoError("snapshot: bad header '" + header + "'");
    ConnectionMatrix m(ClusterLayout(static_cast<std::uint32_t>(chi), static_cast<std::uint32_t>(l)),
                       directed == 1);
    const std::uint32_t n = m.layout().n();
    std::vector<char> bytes((n + 7) / 8);
    for (FanalId a = 0; a < n; ++a) {
        if (!in.read(bytes.data(), static_cast<std::streamsize>(bytes.size())))
            throw IoError("snapshot: truncated at row " + std::to_string(a));
        auto row = m.mutable_row(a);
        for (std::uint32_t b = 0; b < n; ++b)
            if (static_cast<unsigned char>(bytes[b / 8]) & (0x80 >> (b % 8)))
                row[b / 64] |= std::uint64_t{1} << (b % 64);
    }
    return m;
}

void save_snapshot(const std::filesystem::path& path, const ConnectionMatrix& m) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    write_snapshot(out, m);
}

ConnectionMatrix load_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    return read_snapshot(in);
}

namespace {
constexpr const char* kDoubleTag = "seqnet-double";
}

void save_double(const std::filesystem::path& manifest, const DoubleLayerNetwork& net) {
    const std::string stem = manifest.filename().string();
    const std::string hetero = stem + ".hetero";
    const std::string autof = stem + ".auto";
    save_snapshot(manifest.parent_path() / hetero, net.hetero);
    save_snapshot(manifest.parent_path() / autof, net.auto_);
    std::ofstream out(manifest);
    if (!out) throw IoError("cannot open '" + manifest.string() + "' for writing");
    out << kDoubleTag << ' ' << hetero << ' ' << autof << '\n';
}

bool is_double_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    std::string tag;
    return in && (in >> tag) && tag == kDoubleTag;
}

DoubleLayerNetwork load_double(const std::filesystem::path& manifest) {
    std::ifstream in(manifest);
    if (!in) throw IoError("cannot open '" + manifest.string() + "'");
    std::string tag, hetero, autof;
    if (!(in >> tag >> hetero >> autof) || tag != kDoubleTag)
        throw IoError("'" + manifest.string() + "' is not a double-layer manifest");
    ConnectionMatrix h = load_snapshot(manifest.parent_path() / hetero);
    ConnectionMatrix a = load_snapshot(manifest.parent_path() / autof);
    if (h.layout() != a.layout() || !h.directed() || a.directed())
        throw IoError("double-layer snapshots do not match");
    DoubleLayerNetwork net(h.layout());
    net.hetero = std::move(h);
    net.auto_ = std::move(a);
    return net;
}

}  // namespace seqnet
