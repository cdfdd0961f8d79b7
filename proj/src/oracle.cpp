#include "oblivion/oracle.hpp"

#include <cmath>
#include <numeric>

#include "oblivion/errors.hpp"

namespace oblivion {

SyntheticOracle::SyntheticOracle(std::shared_ptr<const SmoothObjective> objective,
                                 ObliviousNoiseSpec obliv, ObservationNoiseSpec obs,
                                 XiVectorization mode)
    : objective_(std::move(objective)), obliv_(std::move(obliv)), obs_(obs), mode_(mode) {
    if (!objective_) throw ContractError("oracle: null objective");
    obliv_.validate();
    obs_.validate();
}

std::size_t SyntheticOracle::dimension() const { return objective_->dimension(); }

SampleBatch SyntheticOracle::query(const Eigen::VectorXd& x, std::size_t m, std::uint64_t seed) {
    const auto d = static_cast<Eigen::Index>(dimension());
    if (x.size() != d) throw ContractError("oracle: query point dimension mismatch");
    if (m < 1) throw ArgumentError("oracle: m must be >= 1");
    record(m);

    const Eigen::VectorXd grad = objective_->gradient(x);
    const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));

    Rng atom(seed, streams::kObliviousAtom);
    Rng tail(seed, streams::kObliviousTail);
    Rng obs_rng(seed, streams::kObservation);
    Rng dir(seed, streams::kDirection);

    SampleBatch out(dimension());
    out.reserve(m);
    Eigen::VectorXd v(d);
    Eigen::VectorXd u(d);
    const bool gaussian_obs = obs_.family == ObsFamily::Gaussian;
    const double obs_scale = obs_.sigma * inv_sqrt_d;
    for (std::size_t i = 0; i < m; ++i) {
        v = grad;
        // Observation noise: per-coordinate i.i.d. draws scaled so that
        // E||e||^2 equals the family's sigma^2.
        if (gaussian_obs) {
            for (Eigen::Index j = 0; j < d; ++j) v[j] += obs_scale * obs_rng.gaussian();
        } else {
            for (Eigen::Index j = 0; j < d; ++j) v[j] += obs_.sample(obs_rng) * inv_sqrt_d;
        }
        // Oblivious noise, fresh per sample.
        if (mode_ == XiVectorization::PerCoordinate) {
            for (Eigen::Index j = 0; j < d; ++j)
                if (!atom.bernoulli(obliv_.alpha)) v[j] += obliv_.tail.sample(tail);
        } else {
            if (!atom.bernoulli(obliv_.alpha)) {
                const double mag = obliv_.tail.sample(tail);
                if (d == 1) {
                    v[0] += mag;
                } else if (mag != 0.0) {
                    double norm2 = 0.0;
                    do {
                        for (Eigen::Index j = 0; j < d; ++j) u[j] = dir.gaussian();
                        norm2 = u.squaredNorm();
                    } while (norm2 == 0.0);
                    v += (mag / std::sqrt(norm2)) * u;
                }
            }
        }
        out.push_vector(v);
    }
    return out;
}

std::unique_ptr<SyntheticOracle> make_oracle(std::shared_ptr<const SmoothObjective> objective,
                                             ObliviousNoiseSpec obliv, ObservationNoiseSpec obs,
                                             XiVectorization mode) {
    return std::make_unique<SyntheticOracle>(std::move(objective), std::move(obliv), obs, mode);
}

ReplayOracle::ReplayOracle(SampleBatch stored, bool allow_replay, std::uint64_t seed)
    : stored_(std::move(stored)),
      allow_replay_(allow_replay),
      shuffle_rng_(seed, streams::kReplayShuffle) {
    if (stored_.empty()) throw ArgumentError("replay oracle: empty sample store");
    order_.resize(stored_.size());
    std::iota(order_.begin(), order_.end(), 0u);
}

std::size_t ReplayOracle::dimension() const { return stored_.dim(); }

SampleBatch ReplayOracle::query(const Eigen::VectorXd& x, std::size_t m, std::uint64_t) {
    if (x.size() != static_cast<Eigen::Index>(stored_.dim()))
        throw ContractError("replay oracle: query point dimension mismatch");
    if (m < 1) throw ArgumentError("replay oracle: m must be >= 1");
    record(m);

    SampleBatch out(stored_.dim());
    out.reserve(m);
    Eigen::VectorXd v(static_cast<Eigen::Index>(stored_.dim()));
    for (std::size_t i = 0; i < m; ++i) {
        if (cursor_ == order_.size()) {
            if (!allow_replay_)
                throw ArgumentError("replay oracle: sample store exhausted");
            replayed_ = true;
            for (std::size_t j = order_.size(); j > 1; --j)
                std::swap(order_[j - 1], order_[shuffle_rng_.below(j)]);
            cursor_ = 0;
        }
        v = stored_.vector_at(order_[cursor_++]);
        v += x;
        out.push_vector(v);
    }
    return out;
}

}  // namespace oblivion
