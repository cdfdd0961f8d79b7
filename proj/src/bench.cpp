#include "oblivion/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include "oblivion/errors.hpp"
#include "oblivion/objectives.hpp"
#include "oblivion/oracle.hpp"
#include "oblivion/rng.hpp"
#include "oblivion/stats.hpp"

namespace oblivion {

std::string to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::Shift1D: return "shift1d";
        case ExperimentKind::ShiftHD: return "shifthd";
        case ExperimentKind::Ldme: return "ldme";
        case ExperimentKind::Ldso: return "ldso";
        case ExperimentKind::Roundtrip: return "roundtrip";
        case ExperimentKind::Witness: return "witness";
    }
    return "?";
}

ExperimentKind experiment_kind_from(const std::string& name) {
    if (name == "shift1d") return ExperimentKind::Shift1D;
    if (name == "shifthd") return ExperimentKind::ShiftHD;
    if (name == "ldme") return ExperimentKind::Ldme;
    if (name == "ldso") return ExperimentKind::Ldso;
    if (name == "roundtrip") return ExperimentKind::Roundtrip;
    if (name == "witness") return ExperimentKind::Witness;
    throw ConfigError("unknown experiment kind: " + name);
}

namespace {

std::string fmt_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<std::uint64_t> seeds_from_json(const Json& j) {
    std::vector<std::uint64_t> seeds;
    if (j.is_array()) {
        for (const auto& s : j) seeds.push_back(s.get<std::uint64_t>());
    } else if (j.is_object()) {
        const auto base = j.value("base", std::uint64_t{1});
        const auto count = j.value("count", std::uint64_t{1});
        for (std::uint64_t i = 0; i < count; ++i) seeds.push_back(base + i);
    } else {
        throw ConfigError("seeds must be a list or {base, count}");
    }
    if (seeds.empty()) throw ConfigError("at least one seed is required");
    return seeds;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const Json& j) {
    ExperimentConfig cfg;
    if (!j.contains("experiment")) throw ConfigError("experiment field missing");
    cfg.kind = experiment_kind_from(j["experiment"].get<std::string>());
    cfg.output = j.value("output", std::string("results.csv"));
    if (j.contains("threshold")) cfg.threshold = j["threshold"].get<double>();
    cfg.threshold_is_lower_bound =
        j.value("threshold_is_lower_bound", cfg.kind == ExperimentKind::Witness);
    cfg.tolerance_fraction = j.value("tolerance_fraction", 0.0);
    cfg.timing = j.value("timing", true);
    if (!j.contains("seeds")) throw ConfigError("seeds field missing");
    cfg.seeds = seeds_from_json(j["seeds"]);
    if (const char* env_seed = std::getenv("OBLIVION_SEED");
        env_seed != nullptr && j["seeds"].is_object()) {
        const auto base = static_cast<std::uint64_t>(std::strtoull(env_seed, nullptr, 10));
        for (std::size_t i = 0; i < cfg.seeds.size(); ++i)
            cfg.seeds[i] = base + static_cast<std::uint64_t>(i);
    }

    if (j.contains("noise")) {
        const Json& n = j["noise"];
        if (n.contains("oblivious")) cfg.oblivious = oblivious_from_json(n["oblivious"]);
        if (n.contains("observation")) cfg.observation = observation_from_json(n["observation"]);
        if (n.contains("observation2")) {
            cfg.observation2 = observation_from_json(n["observation2"]);
            cfg.has_observation2 = true;
        }
    }
    if (j.contains("shift1d")) merge_from_json(cfg.shift, j["shift1d"]);
    if (j.contains("amplify")) merge_from_json(cfg.amplify, j["amplify"]);
    if (j.contains("ldme")) merge_from_json(cfg.ldme, j["ldme"]);
    if (j.contains("ldso")) merge_from_json(cfg.ldso, j["ldso"]);

    if (j.contains("sweep")) {
        const Json& s = j["sweep"];
        auto axis_d = [&](const char* key, std::vector<double>& out) {
            if (s.contains(key))
                for (const auto& v : s[key]) out.push_back(v.get<double>());
        };
        auto axis_n = [&](const char* key, std::vector<std::size_t>& out) {
            if (s.contains(key))
                for (const auto& v : s[key]) out.push_back(v.get<std::size_t>());
        };
        axis_d("alpha", cfg.alphas);
        axis_d("eta", cfg.etas);
        axis_d("sigma", cfg.sigmas);
        axis_d("t", cfg.ts);
        axis_n("m", cfg.ms);
        axis_n("d", cfg.ds);
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::exception& e) {
        throw ConfigError(std::string("JSON parse error in ") + path + ": " + e.what());
    }
    return from_json(j);
}

void ExperimentConfig::validate() const {
    if (seeds.empty()) throw ConfigError("at least one seed is required");
    if (!(tolerance_fraction >= 0.0 && tolerance_fraction <= 1.0))
        throw ConfigError("tolerance_fraction must be in [0, 1]");
    if (ms.empty()) throw ConfigError("sweep.m must be nonempty");
    switch (kind) {
        case ExperimentKind::Witness:
            if (alphas.empty() || ts.empty())
                throw ConfigError("witness sweep needs alpha and t axes");
            break;
        case ExperimentKind::Shift1D:
            if (ts.empty()) throw ConfigError("shift1d sweep needs the t axis (true shift)");
            break;
        case ExperimentKind::ShiftHD:
        case ExperimentKind::Ldme:
        case ExperimentKind::Ldso:
        case ExperimentKind::Roundtrip:
            if (ts.empty() || ds.empty())
                throw ConfigError("sweep needs t and d axes for this experiment");
            break;
    }
    if (!sigmas.empty() && (observation.family == ObsFamily::RecenteredPareto ||
                            (has_observation2 && observation2.family == ObsFamily::RecenteredPareto)))
        throw ConfigError("sigma axis cannot override a recentered_pareto observation family");
    oblivious.validate();
    observation.validate();
    if (has_observation2) observation2.validate();
}

std::vector<SweepPoint> ExperimentConfig::sweep_points() const {
    const std::vector<double> axis_alpha = alphas.empty() ? std::vector<double>{oblivious.alpha}
                                                          : alphas;
    const std::vector<double> axis_eta = etas.empty() ? std::vector<double>{shift.eta} : etas;
    const std::vector<double> axis_sigma = sigmas.empty() ? std::vector<double>{0.0} : sigmas;
    const std::vector<std::size_t> axis_d = ds.empty() ? std::vector<std::size_t>{1} : ds;
    const std::vector<double> axis_t = ts.empty() ? std::vector<double>{0.0} : ts;

    std::vector<SweepPoint> points;
    for (double a : axis_alpha)
        for (double e : axis_eta)
            for (double sg : axis_sigma)
                for (std::size_t m : ms)
                    for (std::size_t d : axis_d)
                        for (double t : axis_t) {
                            SweepPoint p;
                            p.alpha = a;
                            p.eta = e;
                            p.sigma = sg;
                            p.m = m;
                            p.d = d;
                            p.t = t;
                            points.push_back(p);
                        }
    return points;
}

bool ResultRow::failed() const { return !std::isfinite(error); }

bool ResultRow::within_threshold() const {
    if (failed() || std::isnan(threshold)) return false;
    return lower_bound ? error >= threshold : error <= threshold;
}

std::string csv_header() {
    return "experiment,seed,alpha,eta,sigma,m,d,t,error,aux_error,wall_ms,samples,queries,flags,"
           "threshold,bound";
}

std::string to_csv(const ResultRow& row) {
    std::ostringstream out;
    out << row.experiment << ',' << row.seed << ',' << fmt_double(row.point.alpha) << ','
        << fmt_double(row.point.eta) << ',' << fmt_double(row.point.sigma) << ',' << row.point.m
        << ',' << row.point.d << ',' << fmt_double(row.point.t) << ',' << fmt_double(row.error)
        << ',' << fmt_double(row.aux_error) << ',' << fmt_double(row.wall_ms) << ','
        << row.samples << ',' << row.queries << ',' << row.flags << ','
        << fmt_double(row.threshold) << ',' << (row.lower_bound ? "lower" : "upper");
    return out.str();
}

std::optional<ResultRow> row_from_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.push_back("");
    if (fields.size() != 16) return std::nullopt;
    try {
        ResultRow row;
        row.experiment = fields[0];
        row.seed = std::stoull(fields[1]);
        row.point.alpha = std::stod(fields[2]);
        row.point.eta = std::stod(fields[3]);
        row.point.sigma = std::stod(fields[4]);
        row.point.m = std::stoul(fields[5]);
        row.point.d = std::stoul(fields[6]);
        row.point.t = std::stod(fields[7]);
        row.error = std::stod(fields[8]);
        row.aux_error = std::stod(fields[9]);
        row.wall_ms = std::stod(fields[10]);
        row.samples = std::stoull(fields[11]);
        row.queries = std::stoull(fields[12]);
        row.flags = fields[13];
        row.threshold = std::stod(fields[14]);
        if (fields[15] != "lower" && fields[15] != "upper") return std::nullopt;
        row.lower_bound = fields[15] == "lower";
        return row;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

namespace {

void add_flag(std::string& flags, const std::string& token) {
    if (!flags.empty()) flags += ';';
    flags += token;
}

// Per-point working configuration with the sweep values folded in.
struct CellSetup {
    ObliviousNoiseSpec oblivious;
    ObservationNoiseSpec obs1;
    ObservationNoiseSpec obs2;
    Shift1DConfig shift;
    AmplifyConfig amplify;
    LdmeConfig ldme;
    LdsoConfig ldso;
    double sigma_bound = 1.0;
};

CellSetup cell_setup(const ExperimentConfig& cfg, const SweepPoint& p) {
    CellSetup c;
    c.oblivious = cfg.oblivious;
    c.oblivious.alpha = p.alpha;
    c.obs1 = cfg.observation;
    c.obs2 = cfg.has_observation2 ? cfg.observation2 : cfg.observation;
    if (p.sigma > 0.0) {
        c.obs1.sigma = p.sigma;
        c.obs2.sigma = p.sigma;
    }
    c.sigma_bound = std::max(c.obs1.stddev(), c.obs2.stddev());
    if (c.sigma_bound <= 0.0) c.sigma_bound = 1.0;  // noise-free runs still need a scale

    c.shift = cfg.shift;
    c.shift.alpha = p.alpha;
    c.shift.eta = p.eta;
    c.shift.sigma = c.sigma_bound;
    c.shift.bounded_variance_mode = cfg.oblivious.bounded_variance_mode;

    c.amplify = cfg.amplify;

    c.ldme = cfg.ldme;
    c.ldme.alpha = p.alpha;
    c.ldme.eta = p.eta;

    // The reduction keeps its own nested estimator configs; only the shared
    // facts flow in (LdsoConfig mirrors alpha/eta/sigma into them on entry).
    c.ldso = cfg.ldso;
    c.ldso.alpha = p.alpha;
    c.ldso.eta = p.eta;
    c.ldso.sigma = c.sigma_bound;
    return c;
}

Eigen::VectorXd seeded_direction(std::size_t d, std::uint64_t seed) {
    Rng rng(seed, streams::kDirection);
    Eigen::VectorXd u(static_cast<Eigen::Index>(d));
    double norm = 0.0;
    do {
        for (Eigen::Index i = 0; i < u.size(); ++i) u[i] = rng.gaussian();
        norm = u.norm();
    } while (norm == 0.0);
    return u / norm;
}

std::vector<double> scalar_location_batch(const ObliviousNoiseSpec& obliv,
                                          const ObservationNoiseSpec& obs, double shift,
                                          std::size_t m, std::uint64_t seed) {
    const SampleBatch xi = sample_oblivious(obliv, m, derive_seed(seed, 1));
    const SampleBatch y = sample_observation(obs, m, derive_seed(seed, 2));
    std::vector<double> out(m);
    for (std::size_t i = 0; i < m; ++i) out[i] = xi.scalar_at(i) + y.scalar_at(i) + shift;
    return out;
}

void run_shift1d_cell(const ExperimentConfig& cfg, const SweepPoint& p, std::uint64_t seed,
                      ResultRow& row) {
    CellSetup c = cell_setup(cfg, p);
    const auto s1 = scalar_location_batch(c.oblivious, c.obs1, p.t, p.m, derive_seed(seed, 11));
    const auto s2 = scalar_location_batch(c.oblivious, c.obs2, 0.0, p.m, derive_seed(seed, 12));
    const ShiftEstimate est = shift1d(s1, s2, c.shift, seed);
    row.error = std::abs(est.value - p.t);
    row.aux_error = std::abs(est.rough - p.t);
    row.samples = 2 * p.m;
    if (est.rough_only) add_flag(row.flags, "rough_only");
    for (const auto& r : est.trace)
        if (!r.k_found && !r.skipped) add_flag(row.flags, "k_fallback");
}

void run_shifthd_cell(const ExperimentConfig& cfg, const SweepPoint& p, std::uint64_t seed,
                      ResultRow& row) {
    CellSetup c = cell_setup(cfg, p);
    const Eigen::VectorXd v = p.t * seeded_direction(p.d, derive_seed(seed, 21));
    auto objective = make_quadratic(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p.d)));
    SyntheticOracle oracle1(objective, c.oblivious, c.obs1);
    SyntheticOracle oracle2(objective, c.oblivious, c.obs2);
    const SampleBatch s1 = oracle1.query(v, p.m, derive_seed(seed, 22));
    const SampleBatch s2 =
        oracle2.query(Eigen::VectorXd::Zero(v.size()), p.m, derive_seed(seed, 23));
    const VectorShiftEstimate est = shift_highd(s1, s2, c.shift, c.amplify, seed);
    row.error = (est.value - v).norm();
    row.samples = 2 * p.m;
    if (!est.amplified) add_flag(row.flags, "quorum_fail");
}

void run_ldme_cell(const ExperimentConfig& cfg, const SweepPoint& p, std::uint64_t seed,
                   ResultRow& row) {
    CellSetup c = cell_setup(cfg, p);
    const Eigen::VectorXd mu = p.t * seeded_direction(p.d, derive_seed(seed, 31));
    auto objective = make_quadratic(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p.d)));
    SyntheticOracle oracle(objective, c.oblivious, c.obs1);
    const SampleBatch batch = oracle.query(mu, p.m, derive_seed(seed, 32));
    const CandidateList list = ldme_subsample(batch, c.ldme, seed);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& cand : list.candidates) best = std::min(best, (cand - mu).norm());
    row.error = best;
    row.samples = p.m;
    if (list.repeats_capped) add_flag(row.flags, "repeats_capped");
}

void run_ldso_cell(const ExperimentConfig& cfg, const SweepPoint& p, std::uint64_t seed,
                   ResultRow& row) {
    CellSetup c = cell_setup(cfg, p);
    const Eigen::VectorXd center = p.t * seeded_direction(p.d, derive_seed(seed, 41));
    auto objective = make_quadratic(center);
    SyntheticOracle oracle(objective, c.oblivious, c.obs1);
    c.ldso.smoothness = objective->smoothness();
    const NoisyGdResult run = noisy_grad_desc(oracle, c.ldso, seed);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& path : run.paths)
        if (!path.failed) best = std::min(best, objective->gradient(path.point).norm());
    row.error = best;
    row.samples = run.oracle_samples;
    row.queries = run.gradient_requests;
    if (run.any_quorum_failure) add_flag(row.flags, "quorum_fail");
    if (run.initial_list.repeats_capped) add_flag(row.flags, "repeats_capped");
}

void run_roundtrip_cell(const ExperimentConfig& cfg, const SweepPoint& p, std::uint64_t seed,
                        ResultRow& row) {
    CellSetup c = cell_setup(cfg, p);
    const Eigen::VectorXd mu = p.t * seeded_direction(p.d, derive_seed(seed, 51));
    auto objective = make_quadratic(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p.d)));
    SyntheticOracle oracle(objective, c.oblivious, c.obs1);
    const SampleBatch batch = oracle.query(mu, p.m, derive_seed(seed, 52));

    const CandidateList direct = ldme_subsample(batch, c.ldme, derive_seed(seed, 53));
    double direct_best = std::numeric_limits<double>::infinity();
    for (const auto& cand : direct.candidates)
        direct_best = std::min(direct_best, (cand - mu).norm());

    c.ldso.smoothness = 1.0;
    const MeanEstResult via = mean_est_via_ldso(batch, c.ldso, derive_seed(seed, 54));
    double via_best = std::numeric_limits<double>::infinity();
    for (const auto& cand : via.list.candidates)
        via_best = std::min(via_best, (cand - mu).norm());

    row.aux_error = direct_best;
    row.error = std::max(direct_best, via_best);
    row.samples = p.m;
    if (via.replayed) add_flag(row.flags, "replayed");
    if (via.list.degraded) add_flag(row.flags, "quorum_fail");
}

void run_witness_cell(const ExperimentConfig&, const SweepPoint& p, std::uint64_t seed,
                      ResultRow& row) {
    const WitnessSamples w = median_tightness_witness(p.alpha, p.t, p.m, seed);
    std::vector<double> sum(p.m);
    for (std::size_t i = 0; i < p.m; ++i) sum[i] = w.x[i] + w.y[i];
    row.error = median(sum);
    row.samples = p.m;
    // Per-point lower bound Omega(alpha^{-1/(2+t)}).
    row.threshold = 0.005 * std::pow(p.alpha, -1.0 / (2.0 + p.t));
    row.lower_bound = true;
}

}  // namespace

ResultRow run_single(const ExperimentConfig& cfg, const SweepPoint& point, std::uint64_t seed) {
    ResultRow row;
    row.experiment = to_string(cfg.kind);
    row.seed = seed;
    row.point = point;
    row.threshold = cfg.threshold;
    row.lower_bound = cfg.threshold_is_lower_bound;

    const auto start = std::chrono::steady_clock::now();
    try {
        switch (cfg.kind) {
            case ExperimentKind::Shift1D: run_shift1d_cell(cfg, point, seed, row); break;
            case ExperimentKind::ShiftHD: run_shifthd_cell(cfg, point, seed, row); break;
            case ExperimentKind::Ldme: run_ldme_cell(cfg, point, seed, row); break;
            case ExperimentKind::Ldso: run_ldso_cell(cfg, point, seed, row); break;
            case ExperimentKind::Roundtrip: run_roundtrip_cell(cfg, point, seed, row); break;
            case ExperimentKind::Witness: run_witness_cell(cfg, point, seed, row); break;
        }
    } catch (const std::exception& e) {
        row.error = std::numeric_limits<double>::quiet_NaN();
        std::string what = e.what();
        std::replace(what.begin(), what.end(), ',', ';');
        add_flag(row.flags, "failed:" + what);
    }
    if (cfg.timing) {
        row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                                start)
                          .count();
    }
    return row;
}

int run_experiment(const ExperimentConfig& cfg, std::ostream& log) {
    const std::vector<SweepPoint> points = cfg.sweep_points();
    struct Cell {
        SweepPoint point;
        std::uint64_t seed;
    };
    std::vector<Cell> cells;
    for (const auto& p : points)
        for (std::uint64_t s : cfg.seeds) cells.push_back({p, s});

    std::size_t workers = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("OBLIVION_THREADS"); env != nullptr)
        workers = static_cast<std::size_t>(std::strtoull(env, nullptr, 10));
    if (workers < 1) workers = 1;
    workers = std::min(workers, cells.size());

    std::vector<ResultRow> rows(cells.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cells.size()) return;
            rows[i] = run_single(cfg, cells[i].point, cells[i].seed);
        }
    };
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    std::ofstream out(cfg.output, std::ios::trunc);
    if (!out) {
        log << "cannot open output file: " << cfg.output << "\n";
        return 1;
    }
    out << csv_header() << "\n";
    std::size_t failed = 0;
    for (const auto& row : rows) {
        out << to_csv(row) << "\n";
        if (row.failed()) ++failed;
    }
    out.close();

    const double failed_fraction =
        rows.empty() ? 0.0 : static_cast<double>(failed) / static_cast<double>(rows.size());
    log << to_string(cfg.kind) << ": " << rows.size() << " rows -> " << cfg.output << " ("
        << failed << " failed)\n";
    return failed_fraction > cfg.tolerance_fraction ? 2 : 0;
}

int run_experiment_file(const std::string& config_path, std::ostream& log, std::ostream& err) {
    try {
        const ExperimentConfig cfg = ExperimentConfig::load(config_path);
        return run_experiment(cfg, log);
    } catch (const std::exception& e) {
        err << "config error: " << e.what() << "\n";
        return 1;
    }
}

int summarize_file(const std::string& results_path, std::ostream& out, std::ostream& err) {
    std::ifstream in(results_path);
    if (!in) {
        err << "cannot open results file: " << results_path << "\n";
        return 1;
    }
    std::string line;
    if (!std::getline(in, line) || line != csv_header()) {
        err << "not a results file (bad header): " << results_path << "\n";
        return 1;
    }

    struct Key {
        double alpha, eta, sigma, t;
        std::size_t m, d;
        bool operator<(const Key& o) const {
            return std::tie(alpha, eta, sigma, m, d, t) <
                   std::tie(o.alpha, o.eta, o.sigma, o.m, o.d, o.t);
        }
    };
    struct Agg {
        std::vector<double> errors;
        double wall_sum = 0.0;
        std::size_t rows = 0, ok = 0, flagged = 0, failed = 0;
    };
    std::map<Key, Agg> groups;
    std::size_t malformed = 0;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto row = row_from_csv(line);
        if (!row) {
            out << "skipped malformed line " << line_no << ": " << line << "\n";
            ++malformed;
            continue;
        }
        Agg& agg = groups[{row->point.alpha, row->point.eta, row->point.sigma, row->point.t,
                           row->point.m, row->point.d}];
        ++agg.rows;
        agg.wall_sum += row->wall_ms;
        if (!row->flags.empty()) ++agg.flagged;
        if (row->failed()) {
            ++agg.failed;
        } else {
            agg.errors.push_back(row->error);
            if (row->within_threshold()) ++agg.ok;
        }
    }

    out << "sweep point                                              rows  median_err   success"
           "  mean_ms\n";
    for (auto& [key, agg] : groups) {
        const double med = agg.errors.empty() ? std::numeric_limits<double>::quiet_NaN()
                                              : median(agg.errors);
        const double success =
            agg.rows > 0 ? static_cast<double>(agg.ok) / static_cast<double>(agg.rows) : 0.0;
        char buf[256];
        std::snprintf(buf, sizeof(buf),
                      "alpha=%-8.4g eta=%-6.3g m=%-8zu d=%-4zu t=%-8.4g %5zu  %-11.5g %.2f"
                      "  %8.2f",
                      key.alpha, key.eta, key.m, key.d, key.t, agg.rows, med, success,
                      agg.rows > 0 ? agg.wall_sum / static_cast<double>(agg.rows) : 0.0);
        out << buf;
        if (agg.failed > 0) out << "  failed=" << agg.failed;
        if (agg.flagged > 0) out << "  flagged=" << agg.flagged;
        out << "\n";
    }
    if (malformed > 0) out << malformed << " malformed row(s) skipped\n";
    return 0;
}

int validate_file(const std::string& config_path, std::ostream& out, std::ostream& err) {
    try {
        const ExperimentConfig cfg = ExperimentConfig::load(config_path);
        const auto points = cfg.sweep_points();
        out << "ok: " << to_string(cfg.kind) << ", " << points.size() << " sweep point(s) x "
            << cfg.seeds.size() << " seed(s) -> " << cfg.output << "\n";
        return 0;
    } catch (const std::exception& e) {
        err << "invalid config: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace oblivion
