#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "oblivion/bench.hpp"
#include "oblivion/errors.hpp"

using namespace oblivion;

namespace {

Json minimal_shift1d_config() {
    return Json{
        {"experiment", "shift1d"},
        {"output", "/tmp/oblivion_test_out.csv"},
        {"threshold", 0.5},
        {"timing", false},
        {"seeds", Json{{"base", 1}, {"count", 2}}},
        {"noise",
         Json{{"oblivious",
               Json{{"alpha", 1.0},
                    {"tail", Json{{"family", "two_point"}, {"params", Json{{"magnitude", 0.0}}}}}}},
              {"observation", Json{{"family", "gaussian"}, {"sigma", 0.0}}}}},
        {"shift1d", Json{{"eta", 0.25}}},
        {"sweep", Json{{"m", {8000}}, {"t", {7.3}}, {"alpha", {1.0}}}}};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::trunc);
    out << content;
}

}  // namespace

TEST_CASE("config serialization round trips the noise specs") {
    ObliviousNoiseSpec ob;
    ob.alpha = 0.3;
    ob.tail = TailSpec::symmetric_pareto(2.1, 50.0);
    const ObliviousNoiseSpec back = oblivious_from_json(to_json(ob));
    CHECK(back.alpha == ob.alpha);
    CHECK(back.tail.family == TailFamily::SymmetricPareto);
    CHECK(back.tail.exponent == 2.1);
    CHECK(back.tail.scale == 50.0);

    const auto obs = ObservationNoiseSpec::recentered_pareto(0.5);
    const ObservationNoiseSpec obs_back = observation_from_json(to_json(obs));
    CHECK(obs_back.family == ObsFamily::RecenteredPareto);
    CHECK(obs_back.t == 0.5);
    CHECK(obs_back.stddev() == obs.stddev());
}

TEST_CASE("config field errors carry diagnostics") {
    CHECK_THROWS_WITH_AS(oblivious_from_json(Json{{"alpha", 0.3}}),
                         doctest::Contains("tail"), ConfigError);
    CHECK_THROWS_WITH_AS(
        tail_from_json(Json{{"family", "two_point"}, {"params", Json::object()}}),
        doctest::Contains("magnitude"), ConfigError);
    CHECK_THROWS_WITH_AS(tail_from_json(Json{{"family", "cauchy"}}),
                         doctest::Contains("cauchy"), ConfigError);
    CHECK_THROWS_WITH_AS(observation_from_json(Json{{"family", "gaussian"}}),
                         doctest::Contains("sigma"), ConfigError);
}

TEST_CASE("experiment config validation") {
    Json j = minimal_shift1d_config();
    CHECK_NOTHROW(ExperimentConfig::from_json(j));

    Json no_seeds = j;
    no_seeds.erase("seeds");
    CHECK_THROWS_AS(ExperimentConfig::from_json(no_seeds), ConfigError);

    Json no_m = j;
    no_m["sweep"].erase("m");
    CHECK_THROWS_AS(ExperimentConfig::from_json(no_m), ConfigError);

    Json bad_kind = j;
    bad_kind["experiment"] = "quantile";
    CHECK_THROWS_AS(ExperimentConfig::from_json(bad_kind), ConfigError);

    Json no_t = j;
    no_t["sweep"].erase("t");
    CHECK_THROWS_AS(ExperimentConfig::from_json(no_t), ConfigError);
}

TEST_CASE("noise-free shift1d sweep yields zero error rows and bit-identical files") {
    const ExperimentConfig cfg = ExperimentConfig::from_json(minimal_shift1d_config());
    std::ostringstream log;
    CHECK(run_experiment(cfg, log) == 0);
    const std::string first = slurp(cfg.output);
    CHECK(run_experiment(cfg, log) == 0);
    CHECK(slurp(cfg.output) == first);

    std::istringstream in(first);
    std::string line;
    std::getline(in, line);
    CHECK(line == csv_header());
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        const auto row = row_from_csv(line);
        REQUIRE(row.has_value());
        CHECK(row->error == 0.0);
        CHECK(row->within_threshold());
        ++rows;
    }
    CHECK(rows == 2);
    std::remove(cfg.output.c_str());
}

TEST_CASE("csv rows round trip") {
    ResultRow row;
    row.experiment = "ldme";
    row.seed = 42;
    row.point.alpha = 0.3;
    row.point.eta = 0.5;
    row.point.sigma = 1.0 / 3.0;
    row.point.m = 1000;
    row.point.d = 4;
    row.point.t = 7.3;
    row.error = 0.12345678901234567;
    row.aux_error = std::numeric_limits<double>::quiet_NaN();
    row.wall_ms = 1.5;
    row.samples = 123;
    row.queries = 7;
    row.flags = "quorum_fail";
    row.threshold = 1.0;
    const auto back = row_from_csv(to_csv(row));
    REQUIRE(back.has_value());
    CHECK(back->error == row.error);
    CHECK(back->point.sigma == row.point.sigma);
    CHECK(std::isnan(back->aux_error));
    CHECK(back->flags == row.flags);
    CHECK(!back->lower_bound);
}

TEST_CASE("summarize aggregates and skips malformed rows") {
    const std::string path = "/tmp/oblivion_summarize_test.csv";
    std::ostringstream content;
    content << csv_header() << "\n";
    ResultRow row;
    row.experiment = "shift1d";
    row.point.alpha = 0.25;
    row.point.eta = 0.25;
    row.point.m = 100;
    row.point.d = 1;
    row.point.t = 7.3;
    row.threshold = 0.5;
    for (int i = 0; i < 20; ++i) {
        row.seed = std::uint64_t(i);
        row.error = i < 18 ? 0.1 : 0.9;  // 18 of 20 below threshold
        content << to_csv(row) << "\n";
    }
    row.seed = 99;
    row.error = std::numeric_limits<double>::quiet_NaN();
    row.flags = "failed:boom";
    content << to_csv(row) << "\n";
    content << "garbage,line\n";
    spit(path, content.str());

    std::ostringstream out, err;
    CHECK(summarize_file(path, out, err) == 0);
    const std::string report = out.str();
    CHECK(report.find("0.86") != std::string::npos);  // 18 ok of 21 rows
    CHECK(report.find("failed=1") != std::string::npos);
    CHECK(report.find("1 malformed row(s) skipped") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("summarize echoes a single row as its own summary") {
    const std::string path = "/tmp/oblivion_single_row.csv";
    ResultRow row;
    row.experiment = "witness";
    row.point.alpha = 0.001;
    row.point.eta = 0.25;
    row.point.m = 10;
    row.point.d = 1;
    row.point.t = 0.5;
    row.error = 1.25;
    row.threshold = 0.1;
    row.lower_bound = true;
    spit(path, csv_header() + "\n" + to_csv(row) + "\n");
    std::ostringstream out, err;
    CHECK(summarize_file(path, out, err) == 0);
    CHECK(out.str().find("1.25") != std::string::npos);
    CHECK(out.str().find("1.00") != std::string::npos);  // success 1/1 (lower bound)
    std::remove(path.c_str());
}

TEST_CASE("run_experiment_file exit codes") {
    std::ostringstream log, err;
    CHECK(run_experiment_file("/nonexistent/config.json", log, err) == 1);
    CHECK(err.str().find("config error") != std::string::npos);

    // A config whose rows all fail (m below the shift1d minimum) exits 2
    // under zero tolerance and 0 when the tolerance admits them.
    Json j = minimal_shift1d_config();
    j["sweep"]["m"] = {50};
    j["output"] = "/tmp/oblivion_fail_rows.csv";
    const std::string cfg_path = "/tmp/oblivion_fail_cfg.json";
    spit(cfg_path, j.dump());
    CHECK(run_experiment_file(cfg_path, log, err) == 2);
    Json tolerant = j;
    tolerant["tolerance_fraction"] = 1.0;
    spit(cfg_path, tolerant.dump());
    CHECK(run_experiment_file(cfg_path, log, err) == 0);

    std::ostringstream out;
    CHECK(validate_file(cfg_path, out, err) == 0);
    CHECK(out.str().find("ok:") != std::string::npos);
    std::remove(cfg_path.c_str());
    std::remove("/tmp/oblivion_fail_rows.csv");
}

TEST_CASE("shipped configs validate") {
    for (const char* name :
         {"shift1d_pareto", "shifthd", "ldme", "ldso_quadratic", "roundtrip", "witness"}) {
        std::ostringstream out, err;
        const std::string path = std::string(SOURCE_DIR) + "/configs/" + name + ".json";
        CHECK(validate_file(path, out, err) == 0);
    }
}

TEST_CASE("witness sweep medians grow as alpha shrinks") {
    Json j{{"experiment", "witness"},
           {"output", "/tmp/oblivion_witness_test.csv"},
           {"timing", false},
           {"seeds", Json::array({11})},
           {"sweep", Json{{"alpha", {0.01, 0.001, 0.0001}}, {"m", {100000}}, {"t", {0.5}}}}};
    const ExperimentConfig cfg = ExperimentConfig::from_json(j);
    std::ostringstream log;
    CHECK(run_experiment(cfg, log) == 0);
    std::ifstream in(cfg.output);
    std::string line;
    std::getline(in, line);  // header
    std::vector<double> medians;
    std::vector<bool> above;
    while (std::getline(in, line)) {
        const auto row = row_from_csv(line);
        REQUIRE(row.has_value());
        CHECK(row->lower_bound);
        medians.push_back(row->error);
        above.push_back(row->within_threshold());
    }
    REQUIRE(medians.size() == 3);
    CHECK(medians[0] < medians[1]);  // alpha 1e-2 -> 1e-3
    CHECK(medians[1] < medians[2]);  // alpha 1e-3 -> 1e-4
    for (bool b : above) CHECK(b);
    std::remove(cfg.output.c_str());
}

TEST_CASE("every experiment kind runs a tiny cell end to end") {
    Json noise{{"oblivious", Json{{"alpha", 0.3},
                                  {"tail", Json{{"family", "two_point"},
                                                {"params", Json{{"magnitude", 1000.0}}}}}}},
               {"observation", Json{{"family", "gaussian"}, {"sigma", 1.0}}}};
    Json ldso{{"m_anchor", 13000},
              {"m_shift", 13000},
              {"ldme", Json{{"repeats_override", 8}}},
              {"shift1d", Json{{"eta", 0.25},
                               {"T_override", 3},
                               {"A0_multiplier", 0.15},
                               {"pair_budget", 20000}}},
              {"amplify", Json{{"trials", 1}, {"min_singular_scale", 0.45}}},
              {"learner", Json{{"step_size", 0.5}, {"max_iters", 3}}}};
    struct Kind {
        const char* name;
        Json sweep;
    };
    const std::vector<Kind> kinds{
        {"shifthd", Json{{"alpha", {0.3}}, {"eta", {0.25}}, {"m", {13000}}, {"d", {4}},
                         {"t", {3.0}}}},
        {"ldme", Json{{"alpha", {0.3}}, {"eta", {0.5}}, {"m", {4000}}, {"d", {3}}, {"t", {2.0}}}},
        {"ldso", Json{{"alpha", {0.3}}, {"eta", {0.5}}, {"m", {13000}}, {"d", {2}}, {"t", {1.0}}}},
        {"roundtrip",
         Json{{"alpha", {0.3}}, {"eta", {0.5}}, {"m", {14000}}, {"d", {2}}, {"t", {1.0}}}},
    };
    for (const auto& kind : kinds) {
        Json j{{"experiment", kind.name},
               {"output", std::string("/tmp/oblivion_cell_") + kind.name + ".csv"},
               {"timing", false},
               {"tolerance_fraction", 1.0},
               {"seeds", Json::array({3})},
               {"noise", noise},
               {"shift1d", Json{{"eta", 0.25}, {"T_override", 3}, {"A0_multiplier", 0.15}}},
               {"amplify", Json{{"trials", 1}, {"min_singular_scale", 0.45}}},
               {"ldme", Json{{"repeats_override", 64}}},
               {"ldso", ldso},
               {"sweep", kind.sweep}};
        const ExperimentConfig cfg = ExperimentConfig::from_json(j);
        std::ostringstream log;
        CHECK(run_experiment(cfg, log) == 0);
        std::ifstream in(cfg.output);
        std::string line;
        std::getline(in, line);
        REQUIRE(std::getline(in, line));
        const auto row = row_from_csv(line);
        REQUIRE(row.has_value());
        CHECK(!row->failed());
        std::remove(cfg.output.c_str());
    }
}
