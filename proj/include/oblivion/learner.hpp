#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "oblivion/objectives.hpp"

namespace oblivion {

/// Inexact first-order learner settings. With everything at defaults the
/// iteration budget follows T = ceil(c_G * L * F / (beta + epsilon)^2) and
/// the step is 1/(2L).
struct LearnerConfig {
    double step_size = 0.0;    // 0 = 1/(2L)
    std::size_t max_iters = 0;  // 0 = budget rule
    double c_G = 8.0;
    double suboptimality_bound = 1.0;  // F, an upper bound on f(x0) - min f
    double beta = 0.0;                 // gradient inexactness for the rule
    double epsilon = 0.1;
    double divergence_norm = 1e9;

    void validate() const;
    double step_for(double smoothness) const;
    std::size_t iters_for(double smoothness) const;
};

/// Gradient source: point and step index -> approximate gradient with
/// ||g - grad f(x)|| <= beta. The step index exists so stochastic sources can
/// derive per-step randomness.
using GradientSource = std::function<Eigen::VectorXd(const Eigen::VectorXd&, std::size_t)>;

struct GdResult {
    Eigen::VectorXd point;            // iterate with the smallest observed ||g||
    double observed_norm = 0.0;       // that smallest ||g||
    Eigen::VectorXd last_point;
    std::size_t iterations = 0;
    std::vector<double> norm_trace;   // observed ||g_k|| per step
};

/// Constant-step descent x <- x - step * g; returns the visited iterate whose
/// observed gradient norm was smallest (the observable proxy for the true
/// gradient norm, within 2*beta of it). Throws NumericalError on divergence.
GdResult inexact_gd(std::size_t dim, const GradientSource& gradient,
                    const Eigen::VectorXd& start, const LearnerConfig& cfg, double smoothness);

}  // namespace oblivion
