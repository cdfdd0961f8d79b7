#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "oblivion/ldme.hpp"
#include "oblivion/learner.hpp"
#include "oblivion/oracle.hpp"
#include "oblivion/shifthd.hpp"

namespace oblivion {

/// Configuration for the optimization <-> mean-estimation reductions. The
/// top-level alpha/sigma/delta are authoritative and copied into the nested
/// configs on entry; eta sets the LDME accuracy target O(eta * sigma), while
/// the location estimator's refinement factor stays shift.eta (the two play
/// different roles and A4-style runs need eta = 0.5 with a finer shift eta).
struct LdsoConfig {
    double eta = 0.5;
    double alpha = 0.3;
    double sigma = 1.0;
    double delta = 0.05;
    std::size_t m_anchor = 4000;
    std::size_t m_shift = 10000;
    /// Reuse the anchor batch S* for every location-estimation call instead
    /// of re-querying at 0 (the paper re-queries; both modes exist).
    bool cache_anchor = true;
    /// Smoothness bound L handed to the learner (the objective itself stays
    /// behind the oracle).
    double smoothness = 1.0;
    LearnerConfig learner;
    LdmeConfig ldme;
    Shift1DConfig shift;
    AmplifyConfig amplify;

    void validate() const;
    /// Copies of the nested configs with the shared fields filled in.
    Shift1DConfig shift_config() const;
    LdmeConfig ldme_config() const;
};

/// The location-estimation half of an oracle call: v = grad f(x) - grad f(0)
/// from a batch at x against the anchor batch.
VectorShiftEstimate estimate_gradient_shift(const Eigen::VectorXd& x, GradientOracle& oracle,
                                            const LdsoConfig& cfg, std::uint64_t seed,
                                            const SampleBatch* cached_anchor = nullptr);

/// One inexact-gradient oracle call: estimates v, then translates every
/// candidate by it. A quorum failure flags the list instead of aborting.
CandidateList inexact_oracle(const Eigen::VectorXd& x, GradientOracle& oracle,
                             const CandidateList& initial, const LdsoConfig& cfg,
                             std::uint64_t seed, const SampleBatch* cached_anchor = nullptr);

struct PathState {
    std::size_t index = 0;
    Eigen::VectorXd point;             // learner's returned iterate
    Eigen::VectorXd last_point;
    Eigen::VectorXd gradient_estimate; // last served g'_i
    double observed_norm = 0.0;
    std::size_t steps = 0;
    bool failed = false;               // divergence guard tripped
};

/// Per-step trace entry: one row per gradient request, in (path, step) order.
struct StepRecord {
    std::size_t path = 0;
    std::size_t step = 0;
    double shift_norm = 0.0;      // ||v|| applied to the list at this request
    double gradient_norm = 0.0;   // observed ||g'_i||
};

struct NoisyGdResult {
    CandidateList initial_list;
    std::vector<PathState> paths;   // one per candidate, same order
    std::vector<StepRecord> trace;
    std::size_t gradient_requests = 0;
    bool any_quorum_failure = false;
    std::uint64_t oracle_samples = 0;  // total samples drawn, for auditing
};

/// The forward reduction: LDME at the anchor gives s gradient candidates;
/// each becomes a descent path whose gradient requests are served by
/// inexact_oracle (element i of the translated list for path i). The run
/// fails only when every path fails.
NoisyGdResult noisy_grad_desc(GradientOracle& oracle, const LdsoConfig& cfg, std::uint64_t seed);

struct MeanEstResult {
    CandidateList list;      // negated final iterates
    bool replayed = false;   // stored samples were reshuffled and reused
    std::size_t solver_paths_failed = 0;
};

/// The reverse reduction: serves the solver's query at x with x + p for
/// stored samples p (the oracle of f(x) = 1/2 ||x + mu||^2), then negates
/// the returned list.
MeanEstResult mean_est_via_ldso(const SampleBatch& samples, const LdsoConfig& cfg,
                                std::uint64_t seed, bool allow_replay = true);

}  // namespace oblivion
