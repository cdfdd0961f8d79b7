#include "oblivion/learner.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "oblivion/errors.hpp"

namespace oblivion {

void LearnerConfig::validate() const {
    if (step_size < 0.0) throw ConfigError("learner: step_size must be >= 0");
    if (!(epsilon > 0.0)) throw ConfigError("learner: epsilon must be > 0");
    if (beta < 0.0) throw ConfigError("learner: beta must be >= 0");
    if (!(c_G > 0.0)) throw ConfigError("learner: c_G must be > 0");
    if (!(suboptimality_bound > 0.0)) throw ConfigError("learner: F must be > 0");
    if (!(divergence_norm > 0.0)) throw ConfigError("learner: divergence_norm must be > 0");
}

double LearnerConfig::step_for(double smoothness) const {
    if (step_size > 0.0) return step_size;
    if (!(smoothness > 0.0)) throw ConfigError("learner: smoothness must be > 0 for auto step");
    return 1.0 / (2.0 * smoothness);
}

std::size_t LearnerConfig::iters_for(double smoothness) const {
    if (max_iters > 0) return max_iters;
    const double target = beta + epsilon;
    const double t = std::ceil(c_G * smoothness * suboptimality_bound / (target * target));
    return t < 1.0 ? 1 : static_cast<std::size_t>(t);
}

GdResult inexact_gd(std::size_t dim, const GradientSource& gradient,
                    const Eigen::VectorXd& start, const LearnerConfig& cfg, double smoothness) {
    cfg.validate();
    if (start.size() != static_cast<Eigen::Index>(dim))
        throw ArgumentError("inexact_gd: start point dimension mismatch");

    const double step = cfg.step_for(smoothness);
    const std::size_t iters = cfg.iters_for(smoothness);

    GdResult r;
    Eigen::VectorXd x = start;
    r.point = start;
    r.observed_norm = std::numeric_limits<double>::infinity();
    r.norm_trace.reserve(iters);

    for (std::size_t k = 0; k < iters; ++k) {
        const Eigen::VectorXd g = gradient(x, k);
        if (g.size() != x.size()) throw ContractError("inexact_gd: gradient dimension mismatch");
        const double gn = g.norm();
        r.norm_trace.push_back(gn);
        if (!std::isfinite(gn) || !x.allFinite() || x.norm() > cfg.divergence_norm) {
            r.last_point = x;
            r.iterations = k;
            throw NumericalError("inexact_gd: diverged at step " + std::to_string(k) +
                                 " (|g| = " + std::to_string(gn) + ", |x| = " +
                                 std::to_string(x.norm()) + ")");
        }
        if (gn < r.observed_norm) {
            r.observed_norm = gn;
            r.point = x;
        }
        x -= step * g;
    }
    r.last_point = x;
    r.iterations = iters;
    return r;
}

}  // namespace oblivion
