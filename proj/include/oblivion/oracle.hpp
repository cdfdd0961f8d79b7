#pragma once

#include <cstdint>
#include <memory>

#include <Eigen/Dense>

#include "oblivion/noise.hpp"
#include "oblivion/objectives.hpp"
#include "oblivion/samples.hpp"

namespace oblivion {

/// How a scalar oblivious draw becomes a vector in R^d.
enum class XiVectorization { RandomDirection, PerCoordinate };

/// Queryable source of noisy gradients grad f(gamma, x) + xi. Implementations
/// count the samples they serve so reductions can audit their query budget.
class GradientOracle {
public:
    virtual ~GradientOracle() = default;
    virtual std::size_t dimension() const = 0;
    /// Returns exactly m vectors of dimension d; xi is drawn fresh per call,
    /// independent of x. Deterministic in (x, m, seed).
    virtual SampleBatch query(const Eigen::VectorXd& x, std::size_t m, std::uint64_t seed) = 0;

    std::uint64_t samples_served() const { return samples_served_; }
    std::uint64_t calls_made() const { return calls_made_; }

protected:
    void record(std::size_t m) {
        ++calls_made_;
        samples_served_ += m;
    }

private:
    std::uint64_t samples_served_ = 0;
    std::uint64_t calls_made_ = 0;
};

/// Simulated oblivious-noise oracle around a known objective:
/// query(x) = grad f(x) + e + xi with E[e] = 0, E[||e||^2] <= sigma^2 and
/// Pr[xi = 0] >= alpha. The objective stays reachable for test assertions.
class SyntheticOracle final : public GradientOracle {
public:
    SyntheticOracle(std::shared_ptr<const SmoothObjective> objective, ObliviousNoiseSpec obliv,
                    ObservationNoiseSpec obs,
                    XiVectorization mode = XiVectorization::RandomDirection);

    std::size_t dimension() const override;
    SampleBatch query(const Eigen::VectorXd& x, std::size_t m, std::uint64_t seed) override;

    const SmoothObjective& ground_truth() const { return *objective_; }
    const ObliviousNoiseSpec& oblivious_spec() const { return obliv_; }
    const ObservationNoiseSpec& observation_spec() const { return obs_; }

private:
    std::shared_ptr<const SmoothObjective> objective_;
    ObliviousNoiseSpec obliv_;
    ObservationNoiseSpec obs_;
    XiVectorization mode_;
};

std::unique_ptr<SyntheticOracle> make_oracle(std::shared_ptr<const SmoothObjective> objective,
                                             ObliviousNoiseSpec obliv, ObservationNoiseSpec obs,
                                             XiVectorization mode = XiVectorization::RandomDirection);

/// Answers query(x) with x + p where p is drawn without replacement from a
/// stored sample set; realizes the oracle of f(x) = 1/2 ||x + mu||^2 for the
/// reverse reduction. When the store runs dry it either reshuffles (flagged)
/// or refuses, depending on allow_replay.
class ReplayOracle final : public GradientOracle {
public:
    ReplayOracle(SampleBatch stored, bool allow_replay, std::uint64_t seed);

    std::size_t dimension() const override;
    SampleBatch query(const Eigen::VectorXd& x, std::size_t m, std::uint64_t seed) override;

    bool replayed() const { return replayed_; }

private:
    SampleBatch stored_;
    std::vector<std::uint32_t> order_;
    std::size_t cursor_ = 0;
    bool allow_replay_;
    bool replayed_ = false;
    Rng shuffle_rng_;
};

}  // namespace oblivion
