#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "oblivion/config_io.hpp"
#include "oblivion/ldso.hpp"
#include "oblivion/noise.hpp"

namespace oblivion {

enum class ExperimentKind { Shift1D, ShiftHD, Ldme, Ldso, Roundtrip, Witness };

std::string to_string(ExperimentKind kind);
ExperimentKind experiment_kind_from(const std::string& name);

/// One point of the sweep lattice. The t axis is the experiment's natural
/// location parameter: the true shift (shift1d), ||v|| (shifthd), ||mu||
/// (ldme/roundtrip), ||center|| (ldso), or the tail exponent (witness).
struct SweepPoint {
    double alpha = 0.3;
    double eta = 0.25;
    double sigma = 0.0;  // 0 = take from the observation specs
    std::size_t m = 0;
    std::size_t d = 1;
    double t = 0.0;
};

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::Shift1D;
    std::string output = "results.csv";
    double threshold = std::numeric_limits<double>::quiet_NaN();
    bool threshold_is_lower_bound = false;  // witness flips the success sense
    double tolerance_fraction = 0.0;        // failing-row fraction before exit 2
    bool timing = true;                     // false writes wall_ms = 0 (bit-stable files)
    std::vector<std::uint64_t> seeds;

    ObliviousNoiseSpec oblivious;
    ObservationNoiseSpec observation;
    ObservationNoiseSpec observation2;  // second batch's noise; defaults to observation
    bool has_observation2 = false;

    Shift1DConfig shift;
    AmplifyConfig amplify;
    LdmeConfig ldme;
    LdsoConfig ldso;

    std::vector<double> alphas, etas, sigmas, ts;
    std::vector<std::size_t> ms, ds;

    static ExperimentConfig from_json(const Json& j);
    static ExperimentConfig load(const std::string& path);
    void validate() const;
    std::vector<SweepPoint> sweep_points() const;
};

struct ResultRow {
    std::string experiment;
    std::uint64_t seed = 0;
    SweepPoint point;
    double error = std::numeric_limits<double>::quiet_NaN();
    double aux_error = std::numeric_limits<double>::quiet_NaN();  // rough / direct-list error
    double wall_ms = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t queries = 0;
    std::string flags;
    double threshold = std::numeric_limits<double>::quiet_NaN();
    bool lower_bound = false;

    bool failed() const;
    bool within_threshold() const;
};

std::string csv_header();
std::string to_csv(const ResultRow& row);
std::optional<ResultRow> row_from_csv(const std::string& line);

/// One (sweep point, seed) cell; never throws — failures land in flags.
ResultRow run_single(const ExperimentConfig& cfg, const SweepPoint& point, std::uint64_t seed);

/// Full sweep: dispatches cells to a worker pool (OBLIVION_THREADS), buffers
/// rows, writes them in deterministic order. Returns the process exit code.
int run_experiment(const ExperimentConfig& cfg, std::ostream& log);
int run_experiment_file(const std::string& config_path, std::ostream& log, std::ostream& err);

int summarize_file(const std::string& results_path, std::ostream& out, std::ostream& err);
int validate_file(const std::string& config_path, std::ostream& out, std::ostream& err);

}  // namespace oblivion
