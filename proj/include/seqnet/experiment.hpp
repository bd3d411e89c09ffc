#pragma once

// Monte-Carlo experiment runner. A config describes one network family and a
// sweep over the number of stored items S; each sweep point stores a fresh
// seeded corpus and runs independent trials over it.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "seqnet/corpus.hpp"
#include "seqnet/selection.hpp"
#include "seqnet/tournament.hpp"

namespace seqnet {

enum class ExperimentKind {
    clique,      // fixed-length messages, partially erased cues
    tournament,  // symbol sequences in a chain of tournaments
    vectorial,   // pattern sequences, single layer and/or double layer
    sqer_model,  // analytic SQER over r for several pattern orders
    capacity,    // analytic S and efficiency at a target SQER
};

const char* to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(const std::string& text);

/// Fixed-message storage variants compared by the clique experiment.
enum class CliqueStructure { clique, ring, lexicographic };

/// Which vectorial structures to simulate.
enum class LayerMode { single, dual, both };

struct CapacityRow {
    double chi, l, r, length;
};

struct ExperimentConfig {
    std::string preset = "custom";
    ExperimentKind kind = ExperimentKind::tournament;

    std::uint32_t chi = 20;
    std::uint32_t l = 256;
    std::uint32_t r = 1;
    std::vector<std::uint64_t> sequences{1};  // S sweep
    std::uint32_t length = 100;                // L
    std::uint32_t c_min = 8;
    std::uint32_t c_max = 8;

    DecoderSpec decoder;
    bool auto_theta = true;        // TS: theta = |Phi| unless theta is set
    bool alpha_from_order = true;  // GWsTA: alpha = c_min unless alpha is set
    bool restricted = false;
    SequenceClosure closure = SequenceClosure::open;

    // clique experiment
    DistortionSpec distortion{0.5, 0, 0};
    std::vector<CliqueStructure> structures{CliqueStructure::clique};
    std::vector<std::uint32_t> ring_degrees{1};

    // vectorial experiment
    LayerMode layers = LayerMode::single;
    std::optional<std::uint32_t> auto_alpha;  // defaults to the hetero alpha

    // analytic experiments
    std::vector<std::uint32_t> orders{4, 6, 8, 10, 12};
    std::vector<CapacityRow> capacity_rows;
    double target = 0.01;
    std::uint32_t simulate_below = 0;  // capacity: simulate rows with n below this

    std::uint32_t trials = 500;
    std::uint64_t seed = 1;
    unsigned threads = 0;  // 0: hardware concurrency
    std::string output;    // empty: standard output

    /// Throws InfeasibleConfig describing the first problem found.
    void validate() const;
    /// The decoder with the order-derived alpha applied.
    DecoderSpec effective_decoder() const;
};

struct ResultRow {
    std::string preset;
    std::uint32_t chi = 0;
    double l = 0;
    std::uint32_t r = 0;
    std::string c;  // order or "min-max"
    std::uint32_t length = 0;
    double sequences = 0;
    std::string decoder;
    std::string theta;
    std::string alpha;
    std::string gamma;
    std::uint32_t iterations = 0;
    std::uint32_t trials = 0;
    std::string metric;
    double value = 0;
    double stderr_ = 0;
};

/// Named configurations: fig3, fig5, table1, fig7, decoders, fig9. A preset
/// may expand to several configs (one per compared decoder).
std::vector<std::string> preset_names();
bool is_preset(const std::string& name);
/// Throws std::out_of_range for an unknown name.
std::vector<ExperimentConfig> preset(const std::string& name);

/// Applies one `key = value` setting; throws std::invalid_argument for an
/// unknown key or malformed value.
void apply_setting(ExperimentConfig& config, const std::string& key, const std::string& value);

/// `key = value` lines, `#` comments. Keys mirror ExperimentConfig. A
/// `preset` line replaces everything read so far with that preset's configs;
/// later keys apply to each of them.
std::vector<ExperimentConfig> parse_config(std::istream& in);
/// Throws IoError when the file cannot be read.
std::vector<ExperimentConfig> load_config(const std::string& path);

/// Validates, then runs every sweep point. Rows come out in sweep order and
/// do not depend on the thread count.
std::vector<ResultRow> run_experiment(const ExperimentConfig& config);
/// Validates every config before running any of them.
std::vector<ResultRow> run_experiments(const std::vector<ExperimentConfig>& configs);

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);

/// Binomial standard error of a rate p measured over n trials.
double binomial_stderr(double p, std::uint64_t n);

/// Runs fn(i) for i in [0, count) on up to `threads` workers.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

/// Trial substream offset, disjoint from the corpus item streams.
inline constexpr std::uint64_t trial_stream_base = 1'000'000'000'000ULL;

}  // namespace seqnet
