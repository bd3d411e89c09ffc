#include <doctest.h>

#include <cmath>
#include <sstream>

#include "seqnet/analytic.hpp"
#include "seqnet/corpus.hpp"
#include "seqnet/experiment.hpp"

using namespace seqnet;

namespace {

std::string csv(const std::vector<ResultRow>& rows) {
    std::ostringstream out;
    write_csv(out, rows);
    return out.str();
}

const ResultRow& find(const std::vector<ResultRow>& rows, const std::string& metric, double s) {
    for (const ResultRow& row : rows)
        if (row.metric == metric && row.sequences == s) return row;
    throw std::out_of_range(metric);
}

ExperimentConfig small_tournament() {
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::tournament;
    cfg.chi = 8;
    cfg.l = 32;
    cfg.r = 3;
    cfg.length = 32;
    cfg.sequences = {1, 150};
    cfg.trials = 40;
    cfg.seed = 9;
    return cfg;
}

}  // namespace

TEST_CASE("a single stored item gives zero errors") {
    ExperimentConfig t = small_tournament();
    t.sequences = {1};
    t.trials = 1;
    auto rows = run_experiment(t);
    CHECK(find(rows, "sber", 1).value == 0);
    CHECK(find(rows, "sqer", 1).value == 0);

    ExperimentConfig v;
    v.kind = ExperimentKind::vectorial;
    v.chi = 40;
    v.l = 16;
    v.r = 1;
    v.c_min = v.c_max = 6;
    v.length = 20;
    v.restricted = true;
    v.sequences = {1};
    v.trials = 1;
    v.layers = LayerMode::both;
    v.decoder = {SelectionRule::global_top(6), 4, 1000};
    rows = run_experiment(v);
    CHECK(find(rows, "per_single", 1).value == 0);
    CHECK(find(rows, "per_double", 1).value == 0);

    ExperimentConfig c;
    c.kind = ExperimentKind::clique;
    c.chi = 8;
    c.l = 64;
    c.c_min = c.c_max = 8;
    c.sequences = {1};
    c.trials = 1;
    c.decoder = {SelectionRule::local_wta(), 4, 1};
    rows = run_experiment(c);
    CHECK(find(rows, "mer_clique", 1).value == 0);
}

TEST_CASE("output is reproducible and independent of thread count") {
    ExperimentConfig cfg = small_tournament();
    cfg.threads = 1;
    const std::string one = csv(run_experiment(cfg));
    CHECK(csv(run_experiment(cfg)) == one);
    cfg.threads = 3;
    CHECK(csv(run_experiment(cfg)) == one);
    cfg.seed = 10;
    CHECK(csv(run_experiment(cfg)) != one);
}

TEST_CASE("csv layout") {
    const std::string text = csv(run_experiment(small_tournament()));
    CHECK(text.rfind("preset,chi,l,r,c,L,S,decoder,theta,alpha,gamma,iterations,trials,metric,value,stderr\n", 0) ==
          0);
    CHECK(text.find("custom,8,32,3,,32,150,wta,") != std::string::npos);
}

TEST_CASE("infeasible configurations are rejected") {
    ExperimentConfig cfg = small_tournament();
    cfg.r = 8;
    CHECK_THROWS_AS(cfg.validate(), InfeasibleConfig);
    cfg = small_tournament();
    cfg.closure = SequenceClosure::cyclic;
    cfg.length = 30;
    CHECK_THROWS_AS(cfg.validate(), InfeasibleConfig);

    ExperimentConfig v;
    v.kind = ExperimentKind::vectorial;
    v.chi = 20;
    v.l = 16;
    v.r = 2;
    v.c_min = v.c_max = 8;
    v.restricted = true;
    v.decoder = {SelectionRule::global_top(8), 1, 0};
    CHECK_THROWS_AS(v.validate(), InfeasibleConfig);
    v.r = 1;
    CHECK_NOTHROW(v.validate());
    v.decoder.selection = SelectionRule::local_wta();
    CHECK_THROWS_AS(v.validate(), InfeasibleConfig);

    // a later bad config stops the batch before anything runs
    std::vector<ExperimentConfig> batch{small_tournament(), small_tournament()};
    batch[1].r = 0;
    CHECK_THROWS_AS(run_experiments(batch), InfeasibleConfig);
}

TEST_CASE("config files and presets") {
    std::istringstream in(
        "# comment\n"
        "kind = vectorial\n"
        "chi = 100\n"
        "l = 64\n"
        "c = 10-20\n"
        "S = 500:700:100\n"
        "decoder = gwsta\n"
        "alpha = 10\n"
        "restrict = true\n"
        "trials = 7\n");
    const auto configs = parse_config(in);
    REQUIRE(configs.size() == 1);
    const ExperimentConfig& cfg = configs[0];
    CHECK(cfg.kind == ExperimentKind::vectorial);
    CHECK(cfg.chi == 100);
    CHECK(cfg.c_min == 10);
    CHECK(cfg.c_max == 20);
    CHECK(cfg.sequences == std::vector<std::uint64_t>{500, 600, 700});
    CHECK(cfg.effective_decoder().selection.alpha == 10);
    CHECK(cfg.restricted);
    CHECK(cfg.trials == 7);

    ExperimentConfig x;
    CHECK_THROWS(apply_setting(x, "colour", "red"));
    CHECK_THROWS(apply_setting(x, "chi", "many"));

    for (const std::string& name : preset_names()) {
        CHECK(is_preset(name));
        for (const ExperimentConfig& p : preset(name)) CHECK_NOTHROW(p.validate());
    }
    CHECK_FALSE(is_preset("fig99"));
    CHECK_THROWS_AS(load_config("/nonexistent/seqnet.cfg"), IoError);
}

TEST_CASE("binomial standard error") {
    CHECK(binomial_stderr(0, 100) == 0);
    CHECK(binomial_stderr(0.5, 100) == doctest::Approx(0.05));
    CHECK(binomial_stderr(0.3, 0) == 0);
}

TEST_CASE("simulated density follows the model") {
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::tournament;
    cfg.chi = 20;
    cfg.l = 256;
    cfg.r = 19;
    cfg.length = 100;
    cfg.closure = SequenceClosure::cyclic;
    cfg.sequences = {3000};
    cfg.trials = 1;
    const auto rows = run_experiment(cfg);
    double sim = 0, model = 0;
    for (const ResultRow& row : rows)
        if (row.metric == "density") (row.decoder == "model" ? model : sim) = row.value;
    CHECK(model == doctest::Approx(analytic::density_seq(20, 256, 3000, 100)));
    CHECK(std::abs(sim / model - 1) < 0.02);
}
