#include "oblivion/ldso.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "oblivion/errors.hpp"
#include "oblivion/rng.hpp"

namespace oblivion {

void LdsoConfig::validate() const {
    if (!(eta > 0.0 && eta < 1.0)) throw ConfigError("ldso: eta must be in (0, 1)");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw ConfigError("ldso: alpha must be in (0, 1]");
    if (!(sigma > 0.0)) throw ConfigError("ldso: sigma must be > 0");
    if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("ldso: delta must be in (0, 1)");
    if (m_anchor < 1 || m_shift < 1) throw ConfigError("ldso: batch sizes must be >= 1");
    if (!(smoothness > 0.0)) throw ConfigError("ldso: smoothness must be > 0");
    const Shift1DConfig sc = shift_config();
    sc.validate();
    if (m_shift < sc.min_samples())
        throw ConfigError("ldso: m_shift below shift1d minimum of " +
                          std::to_string(sc.min_samples()));
    if (cache_anchor && m_anchor < m_shift)
        throw ConfigError("ldso: cache_anchor needs m_anchor >= m_shift");
    ldme_config().validate();
    learner.validate();
    amplify.validate();
}

Shift1DConfig LdsoConfig::shift_config() const {
    // alpha and sigma are shared facts about the oracle; the refinement
    // factor is the location estimator's own knob (the top-level eta targets
    // the list error O(eta * sigma), which may sit outside shift1d's (0, 1/2)
    // range).
    Shift1DConfig c = shift;
    c.alpha = alpha;
    c.sigma = sigma;
    return c;
}

LdmeConfig LdsoConfig::ldme_config() const {
    LdmeConfig c = ldme;
    c.alpha = alpha;
    c.eta = eta;
    c.delta = delta;
    return c;
}

VectorShiftEstimate estimate_gradient_shift(const Eigen::VectorXd& x, GradientOracle& oracle,
                                            const LdsoConfig& cfg, std::uint64_t seed,
                                            const SampleBatch* cached_anchor) {
    const auto d = static_cast<Eigen::Index>(oracle.dimension());
    if (x.size() != d) throw ContractError("inexact_oracle: point dimension mismatch");

    const SampleBatch at_x = oracle.query(x, cfg.m_shift, derive_seed(seed, 1));
    SampleBatch fresh_anchor;
    const SampleBatch* anchor = cached_anchor;
    if (anchor == nullptr) {
        fresh_anchor =
            oracle.query(Eigen::VectorXd::Zero(d), cfg.m_shift, derive_seed(seed, 2));
        anchor = &fresh_anchor;
    }
    return shift_highd(at_x, *anchor, cfg.shift_config(), cfg.amplify, derive_seed(seed, 3));
}

CandidateList inexact_oracle(const Eigen::VectorXd& x, GradientOracle& oracle,
                             const CandidateList& initial, const LdsoConfig& cfg,
                             std::uint64_t seed, const SampleBatch* cached_anchor) {
    if (initial.candidates.empty()) throw ArgumentError("inexact_oracle: empty candidate list");
    const VectorShiftEstimate v = estimate_gradient_shift(x, oracle, cfg, seed, cached_anchor);
    CandidateList out = initial;
    for (auto& g : out.candidates) g += v.value;
    out.degraded = initial.degraded || !v.amplified;
    return out;
}

NoisyGdResult noisy_grad_desc(GradientOracle& oracle, const LdsoConfig& cfg,
                              std::uint64_t seed) {
    cfg.validate();
    const auto d = static_cast<Eigen::Index>(oracle.dimension());
    const std::uint64_t samples_before = oracle.samples_served();

    NoisyGdResult result;

    // Anchor batch at 0 feeds the list decoder; its head doubles as the
    // cached location-estimation anchor.
    const SampleBatch anchor_full =
        oracle.query(Eigen::VectorXd::Zero(d), cfg.m_anchor, derive_seed(seed, 10));
    result.initial_list = ldme_estimate(anchor_full, cfg.ldme_config(), derive_seed(seed, 11));

    SampleBatch anchor_slice(anchor_full.dim());
    const SampleBatch* cached = nullptr;
    if (cfg.cache_anchor) {
        anchor_slice.reserve(cfg.m_shift);
        for (std::size_t i = 0; i < cfg.m_shift; ++i)
            anchor_slice.push_vector(anchor_full.vector_at(i));
        cached = &anchor_slice;
    }

    const std::size_t s = result.initial_list.size();
    result.paths.reserve(s);
    bool all_failed = true;
    for (std::size_t i = 0; i < s; ++i) {
        PathState path;
        path.index = i;
        path.gradient_estimate = result.initial_list.candidates[i];
        auto serve = [&](const Eigen::VectorXd& at, std::size_t step) -> Eigen::VectorXd {
            ++result.gradient_requests;
            const VectorShiftEstimate v = estimate_gradient_shift(
                at, oracle, cfg, derive_seed(seed, 100 + i, step), cached);
            result.any_quorum_failure |= !v.amplified;
            Eigen::VectorXd g = result.initial_list.candidates[i] + v.value;
            result.trace.push_back({i, step, v.value.norm(), g.norm()});
            path.gradient_estimate = g;
            return g;
        };
        try {
            const GdResult gd = inexact_gd(static_cast<std::size_t>(d), serve,
                                           result.initial_list.candidates[i], cfg.learner,
                                           cfg.smoothness);
            path.point = gd.point;
            path.last_point = gd.last_point;
            path.observed_norm = gd.observed_norm;
            path.steps = gd.iterations;
            all_failed = false;
        } catch (const NumericalError&) {
            path.failed = true;
            path.point = result.initial_list.candidates[i];
            path.last_point = path.point;
            path.observed_norm = std::numeric_limits<double>::infinity();
        }
        result.paths.push_back(std::move(path));
    }
    if (all_failed) throw NumericalError("noisy_grad_desc: every path diverged");

    result.oracle_samples = oracle.samples_served() - samples_before;
    return result;
}

MeanEstResult mean_est_via_ldso(const SampleBatch& samples, const LdsoConfig& cfg,
                                std::uint64_t seed, bool allow_replay) {
    if (samples.empty()) throw ArgumentError("mean_est_via_ldso: empty sample set");
    ReplayOracle oracle(samples, allow_replay, derive_seed(seed, 1234));
    const NoisyGdResult run = noisy_grad_desc(oracle, cfg, seed);

    MeanEstResult out;
    out.list.repeats_capped = run.initial_list.repeats_capped;
    out.list.achieved_confidence = run.initial_list.achieved_confidence;
    out.list.degraded = run.any_quorum_failure;
    for (const auto& path : run.paths) {
        out.list.candidates.push_back(-path.point);
        CandidateProvenance prov;
        prov.estimator = "ldso_path";
        out.list.provenance.push_back(std::move(prov));
        if (path.failed) ++out.solver_paths_failed;
    }
    out.replayed = oracle.replayed();
    return out;
}

}  // namespace oblivion
