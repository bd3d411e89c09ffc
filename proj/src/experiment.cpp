#include "seqnet/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "seqnet/analytic.hpp"
#include "seqnet/clique.hpp"
#include "seqnet/duallayer.hpp"
#include "seqnet/vectorial.hpp"

namespace seqnet {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string order_text(const ExperimentConfig& cfg) {
    if (cfg.kind == ExperimentKind::tournament || cfg.kind == ExperimentKind::capacity) return "";
    if (cfg.c_min == cfg.c_max) return std::to_string(cfg.c_min);
    return std::to_string(cfg.c_min) + "-" + std::to_string(cfg.c_max);
}

std::string decoder_text(const ExperimentConfig& cfg) {
    return to_string(cfg.effective_decoder().selection.kind);
}

// Row carrying the config echo; metric columns are filled by the caller.
ResultRow base_row(const ExperimentConfig& cfg, double sequences) {
    ResultRow row;
    row.preset = cfg.preset;
    row.chi = cfg.chi;
    row.l = cfg.l;
    row.r = cfg.r;
    row.c = order_text(cfg);
    row.length = cfg.length;
    row.sequences = sequences;
    const DecoderSpec decoder = cfg.effective_decoder();
    const SelectionRule rule = decoder.selection;
    row.decoder = decoder_text(cfg);
    if (rule.kind == SelectionKind::threshold) row.theta = cfg.auto_theta ? "auto" : num(rule.theta);
    if (rule.kind == SelectionKind::global_top) row.alpha = num(rule.alpha);
    row.gamma = num(decoder.gamma);
    row.iterations = decoder.iterations;
    row.trials = cfg.trials;
    return row;
}

ResultRow model_row(const ExperimentConfig& cfg, double sequences) {
    ResultRow row = base_row(cfg, sequences);
    row.decoder = "model";
    row.theta = row.alpha = row.gamma = "";
    row.iterations = 0;
    row.trials = 0;
    return row;
}

void push(std::vector<ResultRow>& rows, ResultRow row, std::string metric, double value,
          double err = 0) {
    row.metric = std::move(metric);
    row.value = value;
    row.stderr_ = err;
    rows.push_back(std::move(row));
}

void push_rate(std::vector<ResultRow>& rows, const ResultRow& row, std::string metric, double p,
               std::uint64_t n) {
    push(rows, row, std::move(metric), p, binomial_stderr(p, n));
}

double mean(const std::vector<double>& v) {
    double sum = 0;
    for (double x : v) sum += x;
    return v.empty() ? 0 : sum / static_cast<double>(v.size());
}

double fraction_false(const std::vector<std::uint8_t>& ok) {
    const auto bad = std::count(ok.begin(), ok.end(), std::uint8_t{0});
    return ok.empty() ? 0 : static_cast<double>(bad) / static_cast<double>(ok.size());
}

void fail(const std::string& why) { throw InfeasibleConfig(why); }

// ---- tournament -------------------------------------------------------------

void run_tournament(const ExperimentConfig& cfg, std::uint64_t sequences,
                    std::vector<ResultRow>& rows) {
    const ClusterLayout layout(cfg.chi, cfg.l);
    const TournamentSpec spec{layout, cfg.r, cfg.closure};
    const Rng root(cfg.seed);

    ConnectionMatrix m(layout, true);
    std::vector<SymbolSequence> corpus;
    corpus.reserve(sequences);
    for (std::uint64_t k = 0; k < sequences; ++k) {
        Rng rng = root.split(k);
        corpus.push_back(random_symbol_sequence(rng, cfg.l, cfg.length));
        store_sequence(m, corpus.back(), spec);
    }

    std::vector<double> symbol_rate(cfg.trials);
    std::vector<std::uint8_t> exact(cfg.trials);
    parallel_for(cfg.trials, cfg.threads, [&](std::size_t t) {
        Rng rng = root.split(trial_stream_base + t);
        const SymbolSequence& seq = corpus[rng.below(static_cast<std::uint32_t>(sequences))];
        const auto cue = std::span(seq.symbols).first(cfg.r);
        const RetrievedSequence out = decode_sequence(m, spec, cue, 0, cfg.length);
        symbol_rate[t] = sber(seq, out);
        exact[t] = retrieved_exactly(seq, out);
    });

    const double s = static_cast<double>(sequences);
    const double d = tournament_density(m, spec);
    const double d_model = analytic::density_seq(cfg.chi, cfg.l, s, cfg.length);
    const ResultRow sim = base_row(cfg, s);
    const ResultRow model = model_row(cfg, s);
    push(rows, sim, "density", d);
    push(rows, model, "density", d_model);
    push_rate(rows, sim, "sber", mean(symbol_rate), cfg.trials);
    push(rows, sim, "sber_structural", analytic::structural_sber(d, cfg.r, cfg.l));
    push(rows, model, "sber_structural", analytic::structural_sber(d_model, cfg.r, cfg.l));
    push_rate(rows, sim, "sqer", fraction_false(exact), cfg.trials);
    push(rows, model, "sqer", analytic::sqer_seq(cfg.chi, cfg.l, cfg.r, cfg.length, s));
}

// ---- clique -----------------------------------------------------------------

struct CliqueVariant {
    CliqueStructure structure;
    std::uint32_t r;
};

const char* structure_name(CliqueStructure s) {
    switch (s) {
        case CliqueStructure::clique: return "clique";
        case CliqueStructure::ring: return "ring";
        case CliqueStructure::lexicographic: return "lexicographic";
    }
    return "?";
}

void run_clique(const ExperimentConfig& cfg, std::uint64_t sequences, std::vector<ResultRow>& rows) {
    const ClusterLayout layout(cfg.chi, cfg.l);
    const Rng root(cfg.seed);
    const std::uint32_t c = cfg.c_max;

    std::vector<FixedMessage> corpus;
    corpus.reserve(sequences);
    for (std::uint64_t k = 0; k < sequences; ++k) {
        Rng rng = root.split(k);
        corpus.push_back(random_message(rng, layout, c));
    }

    std::vector<CliqueVariant> variants;
    for (CliqueStructure s : cfg.structures) {
        if (s == CliqueStructure::clique) {
            variants.push_back({s, c - 1});
        } else {
            for (std::uint32_t r : cfg.ring_degrees) variants.push_back({s, r});
        }
    }

    const DecoderSpec decoder = cfg.effective_decoder();
    const double s = static_cast<double>(sequences);
    for (const CliqueVariant& v : variants) {
        ConnectionMatrix m(layout, false);
        const RingGraphSpec ring{v.r, c};
        for (const FixedMessage& msg : corpus) {
            switch (v.structure) {
                case CliqueStructure::clique: store_clique(m, msg); break;
                case CliqueStructure::ring: store_ring(m, msg, ring); break;
                case CliqueStructure::lexicographic: store_lexicographic(m, msg, ring); break;
            }
        }
        std::vector<std::uint8_t> ok(cfg.trials);
        parallel_for(cfg.trials, cfg.threads, [&](std::size_t t) {
            Rng rng = root.split(trial_stream_base + t);
            const FixedMessage& msg = corpus[rng.below(static_cast<std::uint32_t>(sequences))];
            const FanalSet input = distort(msg, layout, cfg.distortion, rng);
            const std::vector<std::uint32_t> known = msg.clusters();
            ok[t] = decode_fixed(m, input, known, decoder).active == msg;
        });

        ResultRow sim = base_row(cfg, s);
        sim.r = v.r;
        const std::string name = structure_name(v.structure);
        push_rate(rows, sim, "mer_" + name, fraction_false(ok), cfg.trials);
        push(rows, sim, "density_" + name, m.measured_density());
        if (v.structure == CliqueStructure::ring) {
            ResultRow model = model_row(cfg, s);
            model.r = v.r;
            push(rows, model, "dmin_ring", analytic::min_distance(v.r));
            push(rows, model, "rate_ring", analytic::coding_rate(v.r, c));
            push(rows, model, "merit_ring", analytic::merit_factor(v.r, c));
        }
    }
}

// ---- vectorial --------------------------------------------------------------

bool wants_single(LayerMode m) { return m != LayerMode::dual; }
bool wants_dual(LayerMode m) { return m != LayerMode::single; }

void run_vectorial(const ExperimentConfig& cfg, std::uint64_t sequences,
                   std::vector<ResultRow>& rows) {
    const ClusterLayout layout(cfg.chi, cfg.l);
    const Rng root(cfg.seed);

    DoubleLayerNetwork net(layout);
    std::vector<VectorialSequence> corpus;
    corpus.reserve(sequences);
    for (std::uint64_t k = 0; k < sequences; ++k) {
        Rng rng = root.split(k);
        corpus.push_back(
            random_vectorial(rng, layout, cfg.length, cfg.c_min, cfg.c_max, cfg.r, cfg.restricted));
        if (wants_dual(cfg.layers))
            store_double(net, corpus.back(), cfg.r, cfg.restricted);
        else
            store_vectorial(net.hetero, corpus.back(), cfg.r, cfg.restricted);
    }

    VectorialDecodeOptions single;
    single.r = cfg.r;
    const DecoderSpec decoder = cfg.effective_decoder();
    single.rule = decoder.selection;
    single.auto_theta = cfg.auto_theta;
    single.restricted = cfg.restricted;

    DoubleDecodeOptions dual;
    dual.r = cfg.r;
    dual.hetero_alpha = decoder.selection.alpha;
    dual.cleanup = {cfg.auto_alpha.value_or(decoder.selection.alpha), decoder.iterations,
                    decoder.gamma};
    dual.restricted = cfg.restricted;

    std::vector<PatternTally> tally_single(cfg.trials), tally_dual(cfg.trials);
    parallel_for(cfg.trials, cfg.threads, [&](std::size_t t) {
        Rng rng = root.split(trial_stream_base + t);
        const VectorialSequence& seq = corpus[rng.below(static_cast<std::uint32_t>(sequences))];
        const auto cue = std::span<const FanalSet>(seq.patterns).first(cfg.r);
        const std::size_t decoded = cfg.length - cfg.r;
        if (wants_single(cfg.layers)) {
            const auto out = decode_vectorial(net.hetero, cue, 0, cfg.length, single);
            tally_single[t] = {pattern_errors(seq, out), decoded};
        }
        if (wants_dual(cfg.layers)) {
            const auto out = decode_double(net, cue, 0, cfg.length, dual);
            tally_dual[t] = {pattern_errors(seq, out), decoded};
        }
    });

    const auto sequence_rate = [](const std::vector<PatternTally>& tallies) {
        std::size_t failed = 0;
        for (const PatternTally& p : tallies) failed += p.wrong > 0;
        return static_cast<double>(failed) / static_cast<double>(tallies.size());
    };

    const double s = static_cast<double>(sequences);
    const ResultRow sim = base_row(cfg, s);
    const ResultRow model = model_row(cfg, s);
    push(rows, sim, "density", net.hetero.measured_density());
    const bool fixed_order = cfg.c_min == cfg.c_max;
    if (cfg.restricted && fixed_order) {
        const double n = layout.n();
        push(rows, model, "density",
             analytic::density_restricted(n, cfg.r, cfg.c_max, s, cfg.length));
        if (n >= cfg.r * (static_cast<double>(cfg.l) + cfg.c_max))
            push(rows, model, "sqer",
                 analytic::sqer_restricted(cfg.chi, cfg.l, cfg.r, cfg.c_max, cfg.length, s));
    }
    if (wants_single(cfg.layers)) {
        push_rate(rows, sim, "per_single", per(tally_single), cfg.trials);
        push_rate(rows, sim, "sqer_single", sequence_rate(tally_single), cfg.trials);
    }
    if (wants_dual(cfg.layers)) {
        push_rate(rows, sim, "per_double", per(tally_dual), cfg.trials);
        push_rate(rows, sim, "sqer_double", sequence_rate(tally_dual), cfg.trials);
    }
    if (fixed_order) {
        push(rows, model, "efficiency_single",
             efficiency_single(cfg.chi, cfg.l, cfg.c_max, s, cfg.length));
        if (wants_dual(cfg.layers))
            push(rows, model, "efficiency_double",
                 efficiency_double(cfg.chi, cfg.l, cfg.c_max, s, cfg.length));
    }
}

// ---- analytic ---------------------------------------------------------------

std::uint32_t max_restricted_r(const ExperimentConfig& cfg, std::uint32_t c) {
    // (r + 1) c <= chi keeps a restricted corpus realizable; n >= r (l + c)
    // keeps the SQER model's background count non-negative.
    std::uint32_t r = cfg.chi / c - 1;
    const double n = static_cast<double>(cfg.chi) * cfg.l;
    while (r > 0 && n < r * (static_cast<double>(cfg.l) + c)) --r;
    return r;
}

void run_sqer_model(const ExperimentConfig& cfg, std::vector<ResultRow>& rows) {
    for (std::uint32_t c : cfg.orders) {
        const std::uint32_t r_max = max_restricted_r(cfg, c);
        const auto best = [&](double s) {
            double lowest = 1;
            for (std::uint32_t r = 1; r <= r_max; ++r)
                lowest = std::min(lowest, analytic::sqer_restricted(cfg.chi, cfg.l, r, c, cfg.length, s));
            return lowest;
        };
        const double s = analytic::solve_increasing(best, cfg.target, 1e-3, 1e12, 1e-9);
        ExperimentConfig echo = cfg;
        echo.c_min = echo.c_max = c;
        std::uint32_t arg = 1;
        double lowest = 2;
        for (std::uint32_t r = 1; r <= r_max; ++r) {
            echo.r = r;
            const double q = analytic::sqer_restricted(cfg.chi, cfg.l, r, c, cfg.length, s);
            push(rows, model_row(echo, s), "sqer", q);
            if (q < lowest) {
                lowest = q;
                arg = r;
            }
        }
        echo.r = arg;
        push(rows, model_row(echo, s), "rc_opt", static_cast<double>(arg) * c);
    }
}

void run_capacity(const ExperimentConfig& cfg, std::vector<ResultRow>& rows) {
    for (const CapacityRow& row : cfg.capacity_rows) {
        ExperimentConfig echo = cfg;
        echo.chi = static_cast<std::uint32_t>(row.chi);
        echo.r = static_cast<std::uint32_t>(row.r);
        echo.length = static_cast<std::uint32_t>(row.length);
        const double s =
            analytic::max_sequences_seq(row.chi, row.l, row.r, row.length, cfg.target);
        ResultRow model = model_row(echo, s);
        model.l = row.l;
        push(rows, model, "s_max", s);
        push(rows, model, "efficiency", analytic::efficiency_seq(row.chi, row.l, row.r, s, row.length));
        push(rows, model, "sqer", analytic::sqer_seq(row.chi, row.l, row.r, row.length, s));

        const double n = row.chi * row.l;
        if (n < cfg.simulate_below && std::floor(s) >= 1) {
            echo.kind = ExperimentKind::tournament;
            echo.l = static_cast<std::uint32_t>(row.l);
            echo.sequences = {static_cast<std::uint64_t>(std::floor(s))};
            std::vector<ResultRow> sim;
            run_tournament(echo, echo.sequences.front(), sim);
            for (ResultRow& r : sim)
                if (r.decoder != "model" && r.metric == "sqer") rows.push_back(std::move(r));
        }
    }
}

// ---- config parsing ---------------------------------------------------------

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::uint64_t to_u64(const std::string& text) {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used != text.size() || v < 0) throw std::invalid_argument("expected a non-negative integer, got '" + text + "'");
    return static_cast<std::uint64_t>(v);
}

std::uint32_t to_u32(const std::string& text) {
    const std::uint64_t v = to_u64(text);
    if (v > std::numeric_limits<std::uint32_t>::max()) throw std::invalid_argument("value too large: " + text);
    return static_cast<std::uint32_t>(v);
}

double to_double(const std::string& text) {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("expected a number, got '" + text + "'");
    return v;
}

bool to_bool(const std::string& text) {
    if (text == "1" || text == "true" || text == "yes" || text == "on") return true;
    if (text == "0" || text == "false" || text == "no" || text == "off") return false;
    throw std::invalid_argument("expected a boolean, got '" + text + "'");
}

// "a,b,c" or "first:last:step"
std::vector<std::uint64_t> to_sweep(const std::string& text) {
    std::vector<std::uint64_t> out;
    if (text.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::string item;
        std::istringstream in(text);
        while (std::getline(in, item, ':')) parts.push_back(trim(item));
        if (parts.size() != 3) throw std::invalid_argument("range must be first:last:step");
        const std::uint64_t first = to_u64(parts[0]), last = to_u64(parts[1]), step = to_u64(parts[2]);
        if (step == 0) throw std::invalid_argument("range step must be positive");
        for (std::uint64_t s = first; s <= last; s += step) out.push_back(s);
        return out;
    }
    for (const std::string& item : split_list(text)) out.push_back(to_u64(item));
    return out;
}

std::vector<std::uint32_t> to_u32_list(const std::string& text) {
    std::vector<std::uint32_t> out;
    for (const std::string& item : split_list(text)) out.push_back(to_u32(item));
    return out;
}

}  // namespace

// ---- public -----------------------------------------------------------------

const char* to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::clique: return "clique";
        case ExperimentKind::tournament: return "tournament";
        case ExperimentKind::vectorial: return "vectorial";
        case ExperimentKind::sqer_model: return "sqer_model";
        case ExperimentKind::capacity: return "capacity";
    }
    return "?";
}

ExperimentKind parse_experiment_kind(const std::string& text) {
    for (ExperimentKind k : {ExperimentKind::clique, ExperimentKind::tournament, ExperimentKind::vectorial,
                             ExperimentKind::sqer_model, ExperimentKind::capacity})
        if (text == to_string(k)) return k;
    throw std::invalid_argument("unknown experiment kind '" + text + "'");
}

double binomial_stderr(double p, std::uint64_t n) {
    if (n == 0) return 0;
    return std::sqrt(std::max(0.0, p * (1 - p)) / static_cast<double>(n));
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    const auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < count && !failed;) {
            try {
                fn(i);
            } catch (...) {
                if (!failed.exchange(true)) error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

DecoderSpec ExperimentConfig::effective_decoder() const {
    // sequence retrieval always runs sum of max followed by a winner-take-all
    if (kind == ExperimentKind::tournament || kind == ExperimentKind::capacity)
        return {SelectionRule::local_wta(), 1, 0};
    DecoderSpec d = decoder;
    if (alpha_from_order && d.selection.kind == SelectionKind::global_top) d.selection.alpha = c_min;
    return d;
}

void ExperimentConfig::validate() const {
    if (sequences.empty() && kind != ExperimentKind::sqer_model && kind != ExperimentKind::capacity)
        fail("the S sweep is empty");
    if (trials == 0) fail("trials must be >= 1");
    if (chi < 2 || l < 1) fail("need chi >= 2 and l >= 1");
    for (std::uint64_t s : sequences)
        if (s == 0 || s > std::numeric_limits<std::uint32_t>::max()) fail("every S must lie in [1, 2^32)");
    try {
        effective_decoder().selection.validate();
    } catch (const std::invalid_argument& e) {
        fail(e.what());
    }

    switch (kind) {
        case ExperimentKind::tournament:
            if (r < 1 || r > chi - 1) fail("tournament needs 1 <= r <= chi - 1");
            if (length <= r) fail("sequence length L must exceed r (the cue)");
            if (closure == SequenceClosure::cyclic && length % chi != 0)
                fail("cyclic closure needs chi to divide L");
            break;
        case ExperimentKind::clique:
            if (c_min != c_max) fail("clique experiments use a fixed order c");
            if (c_max < 2 || c_max > chi) fail("message order must lie in [2, chi]");
            if (structures.empty()) fail("no clique structure selected");
            for (std::uint32_t d : ring_degrees)
                if (d < 1 || d > c_max - 1) fail("ring degree must lie in [1, c - 1]");
            distortion.validate();
            break;
        case ExperimentKind::vectorial:
            check_vectorial_feasible(ClusterLayout(chi, l), c_min, c_max, r, restricted);
            if (length <= r) fail("sequence length L must exceed r (the cue)");
            if (wants_dual(layers) && decoder.selection.kind != SelectionKind::global_top)
                fail("the double layer decodes with gwsta");
            if (decoder.selection.kind == SelectionKind::local_wta ||
                decoder.selection.kind == SelectionKind::losers_out)
                fail("vectorial decoding needs a global rule: ts, gwta or gwsta");
            if (auto_alpha && *auto_alpha == 0) fail("auto-layer alpha must be >= 1");
            break;
        case ExperimentKind::sqer_model:
            if (orders.empty()) fail("no pattern orders listed");
            for (std::uint32_t c : orders) {
                if (c < 1 || c > chi) fail("pattern order must lie in [1, chi]");
                if (max_restricted_r(*this, c) < 1)
                    fail("no admissible r for c = " + std::to_string(c));
            }
            if (!(target > 0 && target < 1)) fail("target must lie in (0, 1)");
            break;
        case ExperimentKind::capacity:
            if (capacity_rows.empty()) fail("no capacity rows listed");
            for (const CapacityRow& row : capacity_rows)
                if (row.r < 1 || row.r > row.chi - 1 || row.length < row.r || row.l < 2)
                    fail("capacity row needs 1 <= r <= chi - 1, L >= r, l >= 2");
            if (!(target > 0 && target < 1)) fail("target must lie in (0, 1)");
            break;
    }
}

std::vector<std::string> preset_names() { return {"fig3", "fig5", "table1", "fig7", "decoders", "fig9"}; }

bool is_preset(const std::string& name) {
    const auto names = preset_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

std::vector<ExperimentConfig> preset(const std::string& name) {
    ExperimentConfig cfg;
    cfg.preset = name;
    if (name == "fig3") {
        cfg.kind = ExperimentKind::clique;
        cfg.chi = 8;
        cfg.l = 256;
        cfg.c_min = cfg.c_max = 8;
        cfg.sequences = {2000, 5000, 8000, 10000, 12000, 15000, 20000, 25000, 30000};
        cfg.distortion = {0.5, 0, 0};
        cfg.decoder = {SelectionRule::local_wta(), 4, 1};
        cfg.structures = {CliqueStructure::clique, CliqueStructure::ring,
                          CliqueStructure::lexicographic};
        cfg.ring_degrees = {1, 2, 3};
        cfg.trials = 500;
        return {cfg};
    }
    if (name == "fig5") {
        cfg.kind = ExperimentKind::tournament;
        cfg.chi = 20;
        cfg.l = 256;
        cfg.r = 19;
        cfg.length = 100;
        cfg.closure = SequenceClosure::cyclic;
        cfg.sequences = {2000, 4000, 6000, 8000, 10000, 11000, 12000, 13000, 14000, 15000, 16000};
        cfg.decoder = {SelectionRule::local_wta(), 1, 0};
        cfg.trials = 500;
        return {cfg};
    }
    if (name == "table1") {
        cfg.kind = ExperimentKind::capacity;
        cfg.capacity_rows = {{8, 512, 3, 16},    {50, 128, 10, 100}, {50, 128, 20, 100},
                             {50, 128, 49, 100}, {30, 512, 23, 100}, {30, 512, 29, 100},
                             {100, 67108864, 40, 200}};
        cfg.target = 0.01;
        cfg.simulate_below = 10000;
        cfg.decoder = {SelectionRule::local_wta(), 1, 0};
        cfg.trials = 200;
        cfg.sequences.clear();
        return {cfg};
    }
    if (name == "fig7") {
        cfg.kind = ExperimentKind::sqer_model;
        cfg.chi = 100;
        cfg.l = 64;
        cfg.length = 100;
        cfg.orders = {4, 6, 8, 10, 12};
        cfg.target = 0.01;
        cfg.restricted = true;
        cfg.sequences.clear();
        return {cfg};
    }
    if (name == "decoders" || name == "fig9") {
        cfg.kind = ExperimentKind::vectorial;
        cfg.chi = 100;
        cfg.l = 64;
        cfg.r = 1;
        cfg.length = 100;
        cfg.restricted = true;
        cfg.trials = 300;
        if (name == "fig9") {
            cfg.layers = LayerMode::both;
            cfg.c_min = cfg.c_max = 20;
            cfg.decoder = {SelectionRule::global_top(20), 4, 1000};
            cfg.sequences = {500, 600, 700, 750, 800, 850, 900, 1000, 1100};
            ExperimentConfig varied = cfg;
            varied.c_min = 10;
            varied.decoder.selection.alpha = 10;
            varied.sequences = {700, 800, 900, 1000, 1100, 1200, 1400};
            return {cfg, varied};
        }
        std::vector<ExperimentConfig> out;
        for (const auto& [lo, hi] : {std::pair{20u, 20u}, std::pair{10u, 20u}}) {
            cfg.c_min = lo;
            cfg.c_max = hi;
            cfg.sequences = lo == hi ? std::vector<std::uint64_t>{400, 500, 600, 700, 800}
                                     : std::vector<std::uint64_t>{500, 700, 900, 1100, 1300};
            for (const SelectionRule& rule :
                 {SelectionRule::threshold(cfg.r * lo), SelectionRule::global_wta(),
                  SelectionRule::global_top(lo)}) {
                cfg.decoder = {rule, 1, 0};
                // TS keeps theta = |Phi| for a fixed order; with varying
                // orders it is pinned to the smallest window r * c_min.
                cfg.auto_theta = lo == hi;
                out.push_back(cfg);
            }
        }
        return out;
    }
    throw std::out_of_range("unknown preset '" + name + "'");
}

void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
    static const std::map<std::string, std::function<void(ExperimentConfig&, const std::string&)>>
        setters = {
            {"name", [](auto& c, const auto& v) { c.preset = v; }},
            {"kind", [](auto& c, const auto& v) { c.kind = parse_experiment_kind(v); }},
            {"chi", [](auto& c, const auto& v) { c.chi = to_u32(v); }},
            {"l", [](auto& c, const auto& v) { c.l = to_u32(v); }},
            {"r", [](auto& c, const auto& v) { c.r = to_u32(v); }},
            {"L", [](auto& c, const auto& v) { c.length = to_u32(v); }},
            {"S", [](auto& c, const auto& v) { c.sequences = to_sweep(v); }},
            {"c",
             [](auto& c, const auto& v) {
                 const auto dash = v.find('-');
                 if (dash == std::string::npos) {
                     c.c_min = c.c_max = to_u32(v);
                 } else {
                     c.c_min = to_u32(trim(v.substr(0, dash)));
                     c.c_max = to_u32(trim(v.substr(dash + 1)));
                 }
             }},
            {"decoder",
             [](auto& c, const auto& v) { c.decoder.selection.kind = parse_selection_kind(v); }},
            {"theta",
             [](auto& c, const auto& v) {
                 if (v == "auto") {
                     c.auto_theta = true;
                 } else {
                     c.auto_theta = false;
                     c.decoder.selection.theta = to_u32(v);
                 }
             }},
            {"alpha",
             [](auto& c, const auto& v) {
                 c.alpha_from_order = false;
                 c.decoder.selection.alpha = to_u32(v);
             }},
            {"gamma", [](auto& c, const auto& v) { c.decoder.gamma = to_u32(v); }},
            {"iterations", [](auto& c, const auto& v) { c.decoder.iterations = to_u32(v); }},
            {"restrict", [](auto& c, const auto& v) { c.restricted = to_bool(v); }},
            {"closure",
             [](auto& c, const auto& v) {
                 if (v == "open")
                     c.closure = SequenceClosure::open;
                 else if (v == "cyclic")
                     c.closure = SequenceClosure::cyclic;
                 else
                     throw std::invalid_argument("closure must be open or cyclic");
             }},
            {"erasure", [](auto& c, const auto& v) { c.distortion.erasure = to_double(v); }},
            {"error", [](auto& c, const auto& v) { c.distortion.error = to_double(v); }},
            {"insertions", [](auto& c, const auto& v) { c.distortion.insertions = to_u32(v); }},
            {"structures",
             [](auto& c, const auto& v) {
                 c.structures.clear();
                 for (const std::string& s : split_list(v)) {
                     if (s == "clique")
                         c.structures.push_back(CliqueStructure::clique);
                     else if (s == "ring")
                         c.structures.push_back(CliqueStructure::ring);
                     else if (s == "lexicographic")
                         c.structures.push_back(CliqueStructure::lexicographic);
                     else
                         throw std::invalid_argument("unknown structure '" + s + "'");
                 }
             }},
            {"ring_degrees", [](auto& c, const auto& v) { c.ring_degrees = to_u32_list(v); }},
            {"layers",
             [](auto& c, const auto& v) {
                 if (v == "single")
                     c.layers = LayerMode::single;
                 else if (v == "double")
                     c.layers = LayerMode::dual;
                 else if (v == "both")
                     c.layers = LayerMode::both;
                 else
                     throw std::invalid_argument("layers must be single, double or both");
             }},
            {"auto_alpha", [](auto& c, const auto& v) { c.auto_alpha = to_u32(v); }},
            {"orders", [](auto& c, const auto& v) { c.orders = to_u32_list(v); }},
            {"target", [](auto& c, const auto& v) { c.target = to_double(v); }},
            {"trials", [](auto& c, const auto& v) { c.trials = to_u32(v); }},
            {"seed", [](auto& c, const auto& v) { c.seed = to_u64(v); }},
            {"threads", [](auto& c, const auto& v) { c.threads = to_u32(v); }},
            {"out", [](auto& c, const auto& v) { c.output = v; }},
        };
    const auto it = setters.find(key);
    if (it == setters.end()) throw std::invalid_argument("unknown config key '" + key + "'");
    try {
        it->second(cfg, value);
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(key + ": " + e.what());
    } catch (const std::out_of_range&) {
        throw std::invalid_argument(key + ": value out of range '" + value + "'");
    }
}

std::vector<ExperimentConfig> parse_config(std::istream& in) {
    std::vector<ExperimentConfig> configs(1);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "preset") {
                configs = preset(value);
                continue;
            }
            for (ExperimentConfig& cfg : configs) apply_setting(cfg, key, value);
        } catch (const std::out_of_range& e) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return configs;
}

std::vector<ExperimentConfig> load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config '" + path + "'");
    return parse_config(in);
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& config) {
    config.validate();
    std::vector<ResultRow> rows;
    switch (config.kind) {
        case ExperimentKind::sqer_model: run_sqer_model(config, rows); return rows;
        case ExperimentKind::capacity: run_capacity(config, rows); return rows;
        default: break;
    }
    for (std::uint64_t s : config.sequences) {
        switch (config.kind) {
            case ExperimentKind::tournament: run_tournament(config, s, rows); break;
            case ExperimentKind::clique: run_clique(config, s, rows); break;
            case ExperimentKind::vectorial: run_vectorial(config, s, rows); break;
            default: break;
        }
    }
    return rows;
}

std::vector<ResultRow> run_experiments(const std::vector<ExperimentConfig>& configs) {
    for (const ExperimentConfig& cfg : configs) cfg.validate();
    std::vector<ResultRow> rows;
    for (const ExperimentConfig& cfg : configs) {
        auto part = run_experiment(cfg);
        rows.insert(rows.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return rows;
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
    out << "preset,chi,l,r,c,L,S,decoder,theta,alpha,gamma,iterations,trials,metric,value,stderr\n";
    for (const ResultRow& row : rows) {
        out << row.preset << ',' << row.chi << ',' << num(row.l) << ',' << row.r << ',' << row.c << ','
            << row.length << ',' << num(row.sequences) << ',' << row.decoder << ',' << row.theta << ','
            << row.alpha << ',' << row.gamma << ',' << row.iterations << ',' << row.trials << ','
            << row.metric << ',' << num(row.value) << ',' << num(row.stderr_) << '\n';
    }
}

}  // namespace seqnet
