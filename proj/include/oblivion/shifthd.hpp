#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "oblivion/samples.hpp"
#include "oblivion/shift1d.hpp"

namespace oblivion {

/// Random sign basis: entries +-1/sqrt(d), diagonal forced to +1/sqrt(d).
/// Rows are the projection directions; the basis is only approximately
/// orthogonal, so reconstruction solves R v = w rather than applying R^T.
struct SignBasis {
    Eigen::MatrixXd R;
    std::uint64_t seed = 0;
};

SignBasis random_sign_basis(std::size_t d, std::uint64_t seed);

/// Amplification knobs: T repeated trials, then pick a candidate whose ball
/// of radius ball_radius_multiplier * eta * sigma captures >= quorum of all
/// candidates.
struct AmplifyConfig {
    std::size_t trials = 0;           // 0 = ceil(c_T * log(1/delta))
    double c_T = 8.0;
    double delta = 0.05;
    double ball_radius_multiplier = 4.0;
    double quorum = 0.9;
    double c_coord = 2.0;             // per-coordinate sigma multiplier
    /// Bases with sigma_min(R) < min_singular_scale / sqrt(d) are redrawn.
    /// At desk-scale d a sign matrix is near-singular often (row collisions
    /// alone at d = 8 hit ~1 in 5 draws), and the solve would amplify the
    /// per-coordinate errors by 1/(sigma_min sqrt(d)); the threshold caps
    /// that factor at ~1/min_singular_scale. 0 disables the redraw.
    double min_singular_scale = 0.3;

    void validate() const;
    std::size_t trial_count() const;
};

struct AmplifyOutcome {
    Eigen::VectorXd choice;
    bool succeeded = false;
    std::size_t ball_count = 0;
};

/// First candidate (by index) whose closed ball of the given radius contains
/// at least quorum * |candidates| of them; (candidates[0], false) otherwise.
AmplifyOutcome amplify(const std::vector<Eigen::VectorXd>& candidates, double radius,
                       double quorum);

struct TrialRecord {
    std::size_t trial = 0;
    Eigen::VectorXd candidate;
    bool degraded = false;  // some coordinate refinement fell back or was skipped
    std::vector<std::size_t> chosen_k;
};

struct VectorShiftEstimate {
    Eigen::VectorXd value;
    bool amplified = false;  // quorum ball found
    std::size_t quorum_count = 0;
    std::vector<TrialRecord> trials;
};

/// High-dimensional location estimation: per trial, rotate both batches by a
/// fresh sign basis, run shift1d per coordinate at scale
/// c_coord * sigma * sqrt(log d)/sqrt(d), solve the basis back, then amplify
/// across trials. S1 holds xi + z + v, S2 holds xi' + z'; recovers v.
VectorShiftEstimate shift_highd(const SampleBatch& s1, const SampleBatch& s2,
                                const Shift1DConfig& cfg, const AmplifyConfig& amp,
                                std::uint64_t seed);

}  // namespace oblivion
