#include "oblivion/ldme.hpp"

#include <algorithm>
#include <cmath>

#include "oblivion/errors.hpp"
#include "oblivion/rng.hpp"

namespace oblivion {

void LdmeConfig::validate() const {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw ConfigError("ldme: alpha must be in (0, 1]");
    if (!(eta > 0.0 && eta < 1.0)) throw ConfigError("ldme: eta must be in (0, 1)");
    if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("ldme: delta must be in (0, 1)");
    if (repeats_cap < 1) throw ConfigError("ldme: repeats_cap must be >= 1");
    if (!(clean_threshold > 0.0 && clean_threshold < 0.5))
        throw ConfigError("ldme: clean_threshold must be in (0, 0.5)");
}

std::size_t LdmeConfig::subsample_size() const {
    return static_cast<std::size_t>(std::ceil(1.0 / (eta * eta)));
}

std::size_t LdmeConfig::repeats() const {
    if (repeats_override > 0) return repeats_override;
    const double log_d = std::log(1.0 / delta);
    const double rule =
        std::ceil(100.0 * std::pow(1.0 / alpha, 2.0 / (eta * eta)) * log_d * log_d);
    if (!std::isfinite(rule) || rule >= static_cast<double>(repeats_cap)) return repeats_cap;
    return rule < 1.0 ? 1 : static_cast<std::size_t>(rule);
}

bool LdmeConfig::repeats_capped() const {
    if (repeats_override > 0) return false;
    const double log_d = std::log(1.0 / delta);
    const double rule =
        std::ceil(100.0 * std::pow(1.0 / alpha, 2.0 / (eta * eta)) * log_d * log_d);
    return !std::isfinite(rule) || rule > static_cast<double>(repeats_cap);
}

double LdmeConfig::achieved_confidence() const {
    const double p_good = std::pow(alpha, static_cast<double>(subsample_size()));
    return 1.0 - std::pow(1.0 - p_good, static_cast<double>(repeats()));
}

CandidateList ldme_subsample(const SampleBatch& samples, const LdmeConfig& cfg,
                             std::uint64_t seed) {
    cfg.validate();
    const std::size_t s0 = cfg.subsample_size();
    const std::size_t m = samples.size();
    if (m < s0)
        throw ArgumentError("ldme_subsample: need at least " + std::to_string(s0) + " samples");

    const std::size_t reps = cfg.repeats();
    const bool without_replacement = m >= 10 * s0;
    const auto d = static_cast<Eigen::Index>(samples.dim());

    CandidateList out;
    out.candidates.reserve(reps);
    out.provenance.reserve(reps);
    out.repeats_capped = cfg.repeats_capped();
    out.achieved_confidence = cfg.achieved_confidence();

    Rng rng(seed, streams::kSubsample);
    Eigen::VectorXd sum(d);
    std::vector<std::uint32_t> chosen;
    chosen.reserve(s0);
    for (std::size_t r = 0; r < reps; ++r) {
        chosen.clear();
        if (without_replacement) {
            // Floyd's sampling: s0 distinct indices, deterministic order.
            for (std::size_t j = m - s0; j < m; ++j) {
                const auto t = static_cast<std::uint32_t>(rng.below(j + 1));
                if (std::find(chosen.begin(), chosen.end(), t) == chosen.end())
                    chosen.push_back(t);
                else
                    chosen.push_back(static_cast<std::uint32_t>(j));
            }
        } else {
            for (std::size_t j = 0; j < s0; ++j)
                chosen.push_back(static_cast<std::uint32_t>(rng.below(m)));
        }
        sum.setZero();
        for (std::uint32_t idx : chosen) sum += samples.vector_at(idx);
        out.candidates.push_back(sum / static_cast<double>(s0));
        CandidateProvenance prov;
        prov.subsample = chosen;
        out.provenance.push_back(std::move(prov));
    }
    return out;
}

Eigen::VectorXd robust_mean_single(const SampleBatch& samples, double eps,
                                   double clean_threshold) {
    if (samples.empty()) throw ArgumentError("robust_mean_single: empty batch");
    if (!(eps >= 0.0)) throw ContractError("robust_mean_single: eps must be >= 0");
    if (eps >= clean_threshold)
        throw ContractError("robust_mean_single: eps above the clean threshold; use the list path");

    const std::size_t m = samples.size();
    const auto d = static_cast<Eigen::Index>(samples.dim());
    const auto trim = static_cast<std::size_t>(std::ceil(eps * static_cast<double>(m)));
    if (2 * trim >= m) throw ArgumentError("robust_mean_single: trimming would discard everything");

    Eigen::VectorXd mean(d);
    std::vector<double> coord(m);
    for (Eigen::Index j = 0; j < d; ++j) {
        for (std::size_t i = 0; i < m; ++i) coord[i] = samples.vector_at(i)[j];
        std::sort(coord.begin(), coord.end());
        double sum = 0.0;
        for (std::size_t i = trim; i < m - trim; ++i) sum += coord[i];
        mean[j] = sum / static_cast<double>(m - 2 * trim);
    }
    return mean;
}

CandidateList ldme_estimate(const SampleBatch& samples, const LdmeConfig& cfg,
                            std::uint64_t seed) {
    cfg.validate();
    if (1.0 - cfg.alpha < cfg.clean_threshold) {
        CandidateList out;
        out.candidates.push_back(robust_mean_single(samples, 1.0 - cfg.alpha,
                                                    cfg.clean_threshold));
        CandidateProvenance prov;
        prov.estimator = "trimmed_mean";
        out.provenance.push_back(std::move(prov));
        return out;
    }
    return ldme_subsample(samples, cfg, seed);
}

}  // namespace oblivion
