#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "oblivion/samples.hpp"

namespace oblivion {

/// List-decodable mean estimation knobs.
///   subsample_size = ceil(1/eta^2)
///   repeats        = min(ceil(100 * (1/alpha)^(2/eta^2) * log^2(1/delta)),
///                        repeats_cap), unless repeats_override is set.
/// When contamination 1 - alpha is below clean_threshold the single-output
/// trimmed-mean path applies instead of the list.
struct LdmeConfig {
    double alpha = 0.3;
    double eta = 0.5;
    double delta = 0.05;
    std::size_t repeats_cap = 100000;
    std::size_t repeats_override = 0;  // 0 = rule
    double clean_threshold = 0.1;

    void validate() const;
    std::size_t subsample_size() const;
    std::size_t repeats() const;
    bool repeats_capped() const;
    /// 1 - (1 - alpha^subsample_size)^repeats: chance at least one subsample
    /// is all-inlier.
    double achieved_confidence() const;
};

struct CandidateProvenance {
    std::vector<std::uint32_t> subsample;  // indices; empty for single-output path
    std::string estimator = "subsample_mean";
};

struct CandidateList {
    std::vector<Eigen::VectorXd> candidates;
    std::vector<CandidateProvenance> provenance;
    bool repeats_capped = false;
    double achieved_confidence = 1.0;
    bool degraded = false;  // set downstream on quorum failures

    std::size_t size() const { return candidates.size(); }
};

/// Means of `repeats` uniform subsamples of size ceil(1/eta^2); within one
/// subsample draws are without replacement when the batch is at least 10x
/// the subsample size, with replacement otherwise.
CandidateList ldme_subsample(const SampleBatch& samples, const LdmeConfig& cfg,
                             std::uint64_t seed);

/// Coordinate-wise trimmed mean (eps mass per tail) for the near-clean
/// regime. A documented stand-in for the cited stability-based estimator:
/// targets O(sqrt(eps) * sigma) error on additive contamination, not the
/// full adversarial guarantee.
Eigen::VectorXd robust_mean_single(const SampleBatch& samples, double eps,
                                   double clean_threshold = 0.1);

/// Dispatcher used by the optimization reduction: single-output path when
/// 1 - alpha < clean_threshold, subsample list otherwise.
CandidateList ldme_estimate(const SampleBatch& samples, const LdmeConfig& cfg,
                            std::uint64_t seed);

}  // namespace oblivion
