// seqnet: analytic predictions, storage, recall and experiment sweeps.
// Exit codes: 0 success, 1 infeasible or invalid configuration, 2 I/O error.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "seqnet/analytic.hpp"
#include "seqnet/clique.hpp"
#include "seqnet/corpus.hpp"
#include "seqnet/duallayer.hpp"
#include "seqnet/experiment.hpp"
#include "seqnet/tournament.hpp"
#include "seqnet/vectorial.hpp"

using namespace seqnet;

namespace {

// Flags shared by the subcommands. Unset flags keep the preset/config value.
struct Flags {
    std::optional<std::uint32_t> chi, l, r, length, trials, iterations, gamma, theta, alpha, threads;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> sequences, order, decoder, closure, layers;
    bool restricted = false;
    std::string out;
};

void add_network_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--chi", f.chi, "number of clusters");
    cmd->add_option("--l", f.l, "fanals per cluster");
    cmd->add_option("--r", f.r, "anticipation degree");
    cmd->add_option("--L", f.length, "sequence length");
    cmd->add_option("--S", f.sequences, "stored items: N, a,b,c or first:last:step");
    cmd->add_option("--c", f.order, "pattern order: c or cmin-cmax");
    cmd->add_flag("--restrict", f.restricted, "cluster activity restriction");
    cmd->add_option("--closure", f.closure, "tournament closure: open or cyclic");
    cmd->add_option("--seed", f.seed, "random seed");
}

void add_decoder_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--decoder", f.decoder, "wta, ts, gwta, gwsta or glsko");
    cmd->add_option("--theta", f.theta, "TS threshold");
    cmd->add_option("--alpha", f.alpha, "GWsTA alpha");
    cmd->add_option("--gamma", f.gamma, "memory effect");
    cmd->add_option("--iterations", f.iterations, "decoding iterations");
}

template <typename T>
void set_if(const std::optional<T>& value, ExperimentConfig& cfg, const char* key) {
    if (!value) return;
    std::ostringstream text;
    text << *value;
    apply_setting(cfg, key, text.str());
}

void apply_flags(const Flags& f, ExperimentConfig& cfg) {
    set_if(f.chi, cfg, "chi");
    set_if(f.l, cfg, "l");
    set_if(f.r, cfg, "r");
    set_if(f.length, cfg, "L");
    set_if(f.sequences, cfg, "S");
    set_if(f.order, cfg, "c");
    set_if(f.closure, cfg, "closure");
    set_if(f.seed, cfg, "seed");
    set_if(f.decoder, cfg, "decoder");
    set_if(f.theta, cfg, "theta");
    set_if(f.alpha, cfg, "alpha");
    set_if(f.gamma, cfg, "gamma");
    set_if(f.iterations, cfg, "iterations");
    set_if(f.trials, cfg, "trials");
    set_if(f.threads, cfg, "threads");
    set_if(f.layers, cfg, "layers");
    if (f.restricted) cfg.restricted = true;
}

// Output stream: the --out file or stdout.
class Output {
public:
    explicit Output(const std::string& path) {
        if (path.empty()) return;
        file_.open(path);
        if (!file_) throw IoError("cannot open '" + path + "' for writing");
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
    void finish() {
        stream().flush();
        if (!stream()) throw IoError("write failed");
    }

private:
    std::ofstream file_;
};

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    return in;
}

// ---- predict ----------------------------------------------------------------

struct PredictArgs {
    double chi = 20, l = 204.8, r = 19, length = 100, sequences = 3000;
    std::optional<double> order;
    bool restricted = false;
    std::string out;
};

void predict(const PredictArgs& a) {
    namespace an = analytic;
    Output out(a.out);
    std::ostream& os = out.stream();
    const double n = a.chi * a.l;
    const auto line = [&](const char* label, double v) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%-28s %.6g\n", label, v);
        os << buf;
    };
    line("n", n);
    line("density", an::density_seq(a.chi, a.l, a.sequences, a.length));
    line("density_approx", an::density_seq_approx(a.chi, a.l, a.sequences, a.length));
    const double d = an::density_seq(a.chi, a.l, a.sequences, a.length);
    line("sber_structural", an::structural_sber(d, a.r, a.l));
    line("sqer", an::sqer_seq(a.chi, a.l, a.r, a.length, a.sequences));
    line("s_max(sqer=0.01)", an::max_sequences_seq(a.chi, a.l, a.r, a.length, 0.01));
    line("chi_opt", an::chi_opt(n, a.sequences, a.length));
    line("capacity_bits", an::capacity_seq(a.l, a.sequences, a.length));
    line("memory_bits", an::memory_bits_seq(a.chi, a.l, a.r));
    line("efficiency", an::efficiency_seq(a.chi, a.l, a.r, a.sequences, a.length));
    if (a.chi > 1) line("efficiency_approx", an::efficiency_seq_approx(n, a.chi));
    if (a.order) {
        const double c = *a.order;
        line("dmin_ring", an::min_distance(a.r));
        if (c >= 2) {
            line("rate_ring", an::coding_rate(static_cast<unsigned>(a.r), static_cast<unsigned>(c)));
            line("merit_ring", an::merit_factor(static_cast<unsigned>(a.r), static_cast<unsigned>(c)));
        }
        line("pattern_bits", an::pattern_information_bits(a.chi, a.l, c));
        line("efficiency_single", efficiency_single(a.chi, a.l, c, a.sequences, a.length));
        line("efficiency_double", efficiency_double(a.chi, a.l, c, a.sequences, a.length));
        if (a.restricted) {
            line("density_restricted", an::density_restricted(n, a.r, c, a.sequences, a.length));
            line("sqer_restricted", an::sqer_restricted(a.chi, a.l, a.r, c, a.length, a.sequences));
        }
    }
    out.finish();
}

// ---- store / recall ---------------------------------------------------------

enum class Model { clique, tournament, vectorial, dual };

Model parse_model(const std::string& s) {
    if (s == "clique") return Model::clique;
    if (s == "tournament") return Model::tournament;
    if (s == "vectorial") return Model::vectorial;
    if (s == "double") return Model::dual;
    throw std::invalid_argument("model must be clique, tournament, vectorial or double");
}

struct StoreArgs {
    std::string model = "tournament";
    std::string corpus_in, corpus_out;
};

ExperimentConfig base_config(const Flags& f) {
    ExperimentConfig cfg;
    apply_flags(f, cfg);
    return cfg;
}

std::uint32_t order_or_throw(const ExperimentConfig& cfg) {
    if (cfg.c_min == 0 || cfg.c_min > cfg.c_max || cfg.c_max > cfg.chi)
        throw InfeasibleConfig("pattern orders must satisfy 1 <= c_min <= c_max <= chi");
    return cfg.c_max;
}

void store(const StoreArgs& a, const Flags& f) {
    if (f.out.empty()) throw std::invalid_argument("store needs --out <snapshot>");
    const Model model = parse_model(a.model);
    const ExperimentConfig cfg = base_config(f);
    const ClusterLayout layout(cfg.chi, cfg.l);
    if (cfg.sequences.size() != 1 && a.corpus_in.empty())
        throw std::invalid_argument("store needs a single --S value");
    const std::uint64_t count = cfg.sequences.front();
    const Rng root(cfg.seed);

    if (model == Model::tournament) {
        const TournamentSpec spec{layout, cfg.r, cfg.closure};
        spec.validate();
        std::vector<SymbolSequence> corpus;
        if (!a.corpus_in.empty()) {
            auto in = open_input(a.corpus_in);
            corpus = read_symbol_corpus(in, cfg.l);
        } else {
            for (std::uint64_t k = 0; k < count; ++k) {
                Rng rng = root.split(k);
                corpus.push_back(random_symbol_sequence(rng, cfg.l, cfg.length));
            }
        }
        for (const auto& seq : corpus) check_sequence(spec, seq);
        ConnectionMatrix m(layout, true);
        for (const auto& seq : corpus) store_sequence(m, seq, spec);
        if (!a.corpus_out.empty()) {
            Output o(a.corpus_out);
            write_symbol_corpus(o.stream(), corpus);
            o.finish();
        }
        save_snapshot(f.out, m);
        return;
    }

    std::vector<VectorialSequence> corpus;
    if (!a.corpus_in.empty()) {
        auto in = open_input(a.corpus_in);
        corpus = read_vectorial_corpus(in, layout);
    } else if (model == Model::clique) {
        const std::uint32_t c = order_or_throw(cfg);
        VectorialSequence messages;
        for (std::uint64_t k = 0; k < count; ++k) {
            Rng rng = root.split(k);
            messages.patterns.push_back(random_message(rng, layout, c));
        }
        corpus.push_back(std::move(messages));
    } else {
        check_vectorial_feasible(layout, cfg.c_min, cfg.c_max, cfg.r, cfg.restricted);
        for (std::uint64_t k = 0; k < count; ++k) {
            Rng rng = root.split(k);
            corpus.push_back(random_vectorial(rng, layout, cfg.length, cfg.c_min, cfg.c_max, cfg.r,
                                              cfg.restricted));
        }
    }
    if (!a.corpus_out.empty()) {
        Output o(a.corpus_out);
        write_vectorial_corpus(o.stream(), corpus);
        o.finish();
    }

    if (model == Model::clique) {
        ConnectionMatrix m(layout, false);
        for (const auto& block : corpus)
            for (const FanalSet& msg : block.patterns) {
                check_message(layout, msg);
                store_clique(m, msg);
            }
        save_snapshot(f.out, m);
    } else if (model == Model::vectorial) {
        ConnectionMatrix m(layout, true);
        for (const auto& seq : corpus) check_vectorial(layout, seq, cfg.r, cfg.restricted);
        for (const auto& seq : corpus) store_vectorial(m, seq, cfg.r, cfg.restricted);
        save_snapshot(f.out, m);
    } else {
        DoubleLayerNetwork net(layout);
        for (const auto& seq : corpus) check_vectorial(layout, seq, cfg.r, cfg.restricted);
        for (const auto& seq : corpus) store_double(net, seq, cfg.r, cfg.restricted);
        save_double(f.out, net);
    }
}

struct RecallArgs {
    std::string model = "tournament";
    std::string load, cue;
};

void write_symbols(std::ostream& os, const RetrievedSequence& seq) {
    for (std::size_t t = seq.start; t < seq.end(); ++t) {
        if (t > seq.start) os << ' ';
        const auto symbol = seq.symbol(t);
        if (symbol)
            os << *symbol + 1;
        else
            os << '?';
    }
    os << '\n';
}

// GWsTA alpha: the flag, else the smallest order among the cue patterns.
std::uint32_t alpha_for(const Flags& f, const VectorialSequence& cue) {
    if (f.alpha) return *f.alpha;
    if (cue.patterns.empty()) throw std::invalid_argument("empty cue");
    return static_cast<std::uint32_t>(std::max<std::size_t>(1, cue.min_order()));
}

void recall(const RecallArgs& a, const Flags& f) {
    const ExperimentConfig cfg = base_config(f);
    Output out(f.out);
    std::ostream& os = out.stream();

    const Model model = parse_model(a.model);
    if (model == Model::dual) {
        const DoubleLayerNetwork net = load_double(a.load);
        auto in = open_input(a.cue);
        const auto cues = read_vectorial_corpus(in, net.layout);
        DoubleDecodeOptions opt;
        opt.r = cfg.r;
        opt.restricted = cfg.restricted;
        std::vector<VectorialSequence> result;
        for (const auto& cue : cues) {
            const std::uint32_t alpha = alpha_for(f, cue);
            opt.hetero_alpha = alpha;
            opt.cleanup = {alpha, f.iterations.value_or(4), f.gamma.value_or(1000)};
            result.push_back(decode_double(net, cue.patterns, 0, cfg.length, opt).sequence);
        }
        write_vectorial_corpus(os, result);
        out.finish();
        return;
    }

    const ConnectionMatrix m = load_snapshot(a.load);
    const ClusterLayout& layout = m.layout();
    if (m.directed() != (model != Model::clique))
        throw InfeasibleConfig("snapshot does not hold a " + a.model + " memory");
    auto in = open_input(a.cue);
    if (model == Model::tournament) {
        // symbol sequences: one cue per line
        const TournamentSpec spec{layout, cfg.r, cfg.closure};
        spec.validate();
        for (const SymbolSequence& cue : read_symbol_corpus(in, layout.l()))
            write_symbols(os, decode_sequence(m, spec, cue.symbols, 0, cfg.length));
    } else if (model == Model::vectorial) {
        const auto cues = read_vectorial_corpus(in, layout);
        VectorialDecodeOptions opt;
        opt.r = cfg.r;
        opt.rule = cfg.decoder.selection;
        opt.auto_theta = cfg.auto_theta;
        opt.restricted = cfg.restricted;
        std::vector<VectorialSequence> result;
        for (const auto& cue : cues) {
            opt.rule.alpha = alpha_for(f, cue);
            result.push_back(decode_vectorial(m, cue.patterns, 0, cfg.length, opt).sequence);
        }
        write_vectorial_corpus(os, result);
    } else {
        // clique memory: each cue pattern is a partial message
        const auto cues = read_vectorial_corpus(in, layout);
        DecoderSpec decoder = cfg.effective_decoder();
        if (!f.iterations) decoder.iterations = 4;
        std::vector<VectorialSequence> result;
        for (const auto& block : cues) {
            VectorialSequence done;
            for (const FanalSet& input : block.patterns) {
                const std::vector<std::uint32_t> known = input.clusters();
                done.patterns.push_back(decode_fixed(m, input, known, decoder).active);
            }
            result.push_back(std::move(done));
        }
        write_vectorial_corpus(os, result);
    }
    out.finish();
}

// ---- experiment -------------------------------------------------------------

void experiment(const std::string& what, const Flags& f) {
    std::vector<ExperimentConfig> configs = is_preset(what) ? preset(what) : load_config(what);
    for (ExperimentConfig& cfg : configs) {
        apply_flags(f, cfg);
        if (!f.out.empty()) cfg.output = f.out;
    }
    for (const ExperimentConfig& cfg : configs) cfg.validate();
    // every config writes to the first config's destination
    Output out(configs.front().output);
    write_csv(out.stream(), run_experiments(configs));
    out.finish();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sparse associative memories for messages and sequences"};
    app.require_subcommand(1);

    PredictArgs pa;
    auto* pcmd = app.add_subcommand("predict", "print the analytic model for one parameter set");
    pcmd->add_option("--chi", pa.chi, "number of clusters (real-valued)");
    pcmd->add_option("--l", pa.l, "fanals per cluster (real-valued)");
    pcmd->add_option("--r", pa.r, "anticipation degree");
    pcmd->add_option("--L", pa.length, "sequence length");
    pcmd->add_option("--S", pa.sequences, "number of stored sequences");
    pcmd->add_option("--c", pa.order, "pattern order");
    pcmd->add_flag("--restrict", pa.restricted, "cluster activity restriction");
    pcmd->add_option("--out", pa.out, "output file (default stdout)");

    Flags sf;
    StoreArgs sa;
    auto* scmd = app.add_subcommand("store", "store a corpus and save the connection snapshot");
    add_network_flags(scmd, sf);
    scmd->add_option("--model", sa.model, "clique, tournament, vectorial or double");
    scmd->add_option("--corpus", sa.corpus_in, "read the corpus instead of generating it");
    scmd->add_option("--corpus-out", sa.corpus_out, "write the stored corpus");
    scmd->add_option("--out", sf.out, "snapshot (or double-layer manifest) path")->required();

    Flags rf;
    RecallArgs ra;
    auto* rcmd = app.add_subcommand("recall", "decode cues against a saved snapshot");
    add_network_flags(rcmd, rf);
    add_decoder_flags(rcmd, rf);
    rcmd->add_option("--model", ra.model, "clique, tournament, vectorial or double");
    rcmd->add_option("--load", ra.load, "snapshot or double-layer manifest")->required();
    rcmd->add_option("--cue", ra.cue, "cue file in corpus format")->required();
    rcmd->add_option("--out", rf.out, "output file (default stdout)");

    Flags ef;
    std::string what;
    auto* ecmd = app.add_subcommand("experiment", "run a preset or a config file, write CSV");
    ecmd->add_option("what", what, "preset name or config file")->required();
    add_network_flags(ecmd, ef);
    add_decoder_flags(ecmd, ef);
    ecmd->add_option("--trials", ef.trials, "trials per sweep point");
    ecmd->add_option("--threads", ef.threads, "worker threads (0: all cores)");
    ecmd->add_option("--layers", ef.layers, "vectorial: single, double or both");
    ecmd->add_option("--out", ef.out, "CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*pcmd) predict(pa);
        if (*scmd) store(sa, sf);
        if (*rcmd) recall(ra, rf);
        if (*ecmd) experiment(what, ef);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
