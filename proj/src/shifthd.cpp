#include "oblivion/shifthd.hpp"

#include <cmath>
#include <span>

#include "oblivion/errors.hpp"
#include "oblivion/rng.hpp"

namespace oblivion {

SignBasis random_sign_basis(std::size_t d, std::uint64_t seed) {
    if (d < 1) throw ArgumentError("random_sign_basis: d must be >= 1");
    const double s = 1.0 / std::sqrt(static_cast<double>(d));
    Rng rng(seed, streams::kBasis);
    SignBasis basis;
    basis.seed = seed;
    basis.R.resize(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (Eigen::Index i = 0; i < basis.R.rows(); ++i) {
        for (Eigen::Index j = 0; j < basis.R.cols(); ++j) {
            if (i == j)
                basis.R(i, j) = s;
            else
                basis.R(i, j) = rng.bernoulli(0.5) ? s : -s;
        }
    }
    return basis;
}

void AmplifyConfig::validate() const {
    if (!(quorum > 0.5 && quorum <= 1.0)) throw ConfigError("amplify: quorum must be in (0.5, 1]");
    if (!(ball_radius_multiplier > 0.0))
        throw ConfigError("amplify: ball radius multiplier must be > 0");
    if (!(c_coord > 0.0)) throw ConfigError("amplify: c_coord must be > 0");
    if (!(min_singular_scale >= 0.0 && min_singular_scale < 1.0))
        throw ConfigError("amplify: min_singular_scale must be in [0, 1)");
    if (trials == 0 && !(c_T > 0.0 && delta > 0.0 && delta < 1.0))
        throw ConfigError("amplify: need c_T > 0 and delta in (0,1) for the trial rule");
    if (trial_count() < 1) throw ConfigError("amplify: trial count must be >= 1");
}

std::size_t AmplifyConfig::trial_count() const {
    if (trials > 0) return trials;
    const double t = std::ceil(c_T * std::log(1.0 / delta));
    return t < 3.0 ? 3 : static_cast<std::size_t>(t);
}

AmplifyOutcome amplify(const std::vector<Eigen::VectorXd>& candidates, double radius,
                       double quorum) {
    if (candidates.empty()) throw ArgumentError("amplify: need at least one candidate");
    const auto n = candidates.size();
    const auto needed =
        static_cast<std::size_t>(std::ceil(quorum * static_cast<double>(n)));
    for (const auto& center : candidates) {
        std::size_t inside = 0;
        for (const auto& c : candidates)
            if ((c - center).norm() <= radius) ++inside;
        if (inside >= needed) return {center, true, inside};
    }
    return {candidates.front(), false, 0};
}

VectorShiftEstimate shift_highd(const SampleBatch& s1, const SampleBatch& s2,
                                const Shift1DConfig& cfg, const AmplifyConfig& amp,
                                std::uint64_t seed) {
    cfg.validate();
    amp.validate();
    if (s1.dim() != s2.dim()) throw ArgumentError("shift_highd: dimension mismatch");
    if (s1.size() != s2.size()) throw ArgumentError("shift_highd: batches must have equal size");
    if (s1.empty()) throw ArgumentError("shift_highd: empty batches");

    const std::size_t d = s1.dim();
    const auto di = static_cast<Eigen::Index>(d);
    const std::size_t m = s1.size();

    Shift1DConfig coord_cfg = cfg;
    coord_cfg.sigma = d == 1 ? cfg.sigma
                             : amp.c_coord * cfg.sigma *
                                   std::sqrt(std::log(static_cast<double>(d))) /
                                   std::sqrt(static_cast<double>(d));

    const std::size_t trials = amp.trial_count();
    VectorShiftEstimate est;
    est.trials.reserve(trials);
    std::vector<Eigen::VectorXd> candidates;
    candidates.reserve(trials);

    // Row i of these holds coordinate i's series contiguously, so the
    // per-coordinate runs view it without copying.
    RowMatrixXd rows1(di, static_cast<Eigen::Index>(m));
    RowMatrixXd rows2(di, static_cast<Eigen::Index>(m));
    Eigen::VectorXd coord_shift(di);

    const double sigma_min_floor =
        amp.min_singular_scale / std::sqrt(static_cast<double>(d));
    for (std::size_t trial = 0; trial < trials; ++trial) {
        // Redraw singular or ill-conditioned bases; see min_singular_scale.
        SignBasis basis;
        Eigen::PartialPivLU<Eigen::MatrixXd> lu;
        std::uint64_t basis_seed = derive_seed(seed, 1000 + trial);
        for (int attempt = 0;; ++attempt) {
            basis = random_sign_basis(d, basis_seed);
            const double sigma_min =
                d == 1 ? 1.0
                       : Eigen::JacobiSVD<Eigen::MatrixXd>(basis.R).singularValues().minCoeff();
            if (sigma_min > std::max(sigma_min_floor, 1e-12)) {
                lu.compute(basis.R);
                break;
            }
            if (attempt > 500)
                throw EstimationError("shift_highd: could not draw a well-conditioned basis");
            basis_seed = derive_seed(basis_seed, 0xBADBA5EULL);
        }

        rows1.noalias() = basis.R * s1.matrix().transpose();
        rows2.noalias() = basis.R * s2.matrix().transpose();

        TrialRecord rec;
        rec.trial = trial;
        rec.chosen_k.reserve(d);
        bool degraded = false;
        for (std::size_t c = 0; c < d; ++c) {
            const std::span<const double> col1(rows1.data() + c * m, m);
            const std::span<const double> col2(rows2.data() + c * m, m);
            const ShiftEstimate one =
                shift1d(col1, col2, coord_cfg, derive_seed(seed, trial, c));
            coord_shift[static_cast<Eigen::Index>(c)] = one.value;
            if (one.rough_only) degraded = true;
            std::size_t k_last = 0;
            for (const auto& r : one.trace)
                if (!r.skipped) k_last = r.k;
            rec.chosen_k.push_back(k_last);
        }

        rec.candidate = lu.solve(coord_shift);
        rec.degraded = degraded;
        candidates.push_back(rec.candidate);
        est.trials.push_back(std::move(rec));
    }

    const double radius = amp.ball_radius_multiplier * cfg.eta * cfg.sigma;
    AmplifyOutcome outcome = amplify(candidates, radius, amp.quorum);
    est.value = std::move(outcome.choice);
    est.amplified = outcome.succeeded;
    est.quorum_count = outcome.ball_count;
    return est;
}

}  // namespace oblivion
