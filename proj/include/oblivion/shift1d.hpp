#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace oblivion {

/// Tuning for the one-dimensional location estimator. The derived quantities
/// follow the paper's rules:
///   A      = A0_multiplier / sqrt(alpha), shrunk by eta each round
///   L      = ceil(1 / (alpha * eta^2))
///   U      = ceil((C_budget/alpha + L^eta)^(1/eta)), capped by u_cap;
///            in bounded_variance_mode the polynomial rule ceil(1/(alpha*eta)^3)
///   T      = ceil(log(1/alpha) / (2 log(1/eta))) + 1, at least 2
/// The per-slice sample minimum is hoeffding_sample_size(eta/10, 1, 0.01).
struct Shift1DConfig {
    double eta = 0.25;
    double alpha = 0.5;
    double sigma = 1.0;
    double A0_multiplier = 4.0;
    double slack_const = 1.0;  // k-search tolerance, applied as slack_const*eta/k
    double c_near = 3.0;
    double c_far = 10.0;
    double C_budget = 4.0;
    std::size_t u_cap = 1000000;
    std::size_t pair_budget = 200000;
    std::size_t min_retained = 10;
    std::size_t T_override = 0;  // 0 = use the T rule
    bool bounded_variance_mode = false;

    void validate() const;
    std::size_t rounds() const;
    std::size_t k_lo() const;
    std::size_t k_hi(std::size_t k_lo) const;
    std::size_t min_slice() const;
    std::size_t min_samples() const { return rounds() * min_slice(); }
};

struct RoundRecord {
    std::size_t round = 0;  // 2-based, matching the algorithm listing
    double scale = 0.0;     // A when the round ran
    std::size_t k = 0;
    bool k_found = false;   // search satisfied the band-mass inequality
    double retained1 = 0.0;
    double retained2 = 0.0;
    double delta = 0.0;
    double estimate = 0.0;  // running estimate after the round
    bool skipped = false;   // delta not applied (thin conditional set / failure)
};

struct ShiftEstimate {
    double value = 0.0;
    double rough = 0.0;      // t'(1), the median-of-differences stage
    bool rough_only = true;  // no refinement round was applied
    std::vector<RoundRecord> trace;
};

/// Row-per-round tabular rendering of the refinement trace
/// (header + one CSV line per round).
std::string trace_csv(const ShiftEstimate& estimate);

/// Median of pairwise differences a - b over sampled pairs; exhaustive when
/// |S1|*|S2| fits in the budget. Accurate to O(sigma/sqrt(alpha)).
double rough_estimate(std::span<const double> s1, std::span<const double> s2,
                      std::size_t pair_budget, std::uint64_t seed);

struct FineStepResult {
    double delta = 0.0;
    std::size_t k = 0;
    bool found = false;  // false: fallback min-ratio index was used
    std::size_t retained1 = 0;
    std::size_t retained2 = 0;
    double retained_frac1 = 0.0;
    double retained_frac2 = 0.0;
};

/// One refinement round on re-centered batches: builds the boundary-band
/// profile on both sets, picks k in [L, U] with
///   P(k) <= eta * (Pr_S1[|x| <= A sigma k] + Pr_S2[|x| <= A sigma k])
///           + slack_const * eta / k
/// and differences the conditional means at radius A*sigma*k.
FineStepResult fine_step(std::span<const double> s1_centered,
                         std::span<const double> s2_centered, double a_factor,
                         const Shift1DConfig& cfg);

/// Full estimator: seeded shuffle, T equal slices, rough estimate on the
/// first slice, then one fine round per remaining slice with A shrunk by eta
/// each time. S1 holds xi + y + t, S2 holds xi' + y'; recovers t.
ShiftEstimate shift1d(std::span<const double> s1, std::span<const double> s2,
                      const Shift1DConfig& cfg, std::uint64_t seed);

}  // namespace oblivion
