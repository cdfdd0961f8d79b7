#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace oblivion {

/// Real interval with per-endpoint open/closed flags. Default shape is the
/// half-open (lo, hi] used by the band arithmetic.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool lo_closed = false;
    bool hi_closed = true;

    Interval() = default;
    Interval(double lo_, double hi_, bool lo_closed_, bool hi_closed_);

    static Interval open_closed(double lo, double hi) { return {lo, hi, false, true}; }
    static Interval closed_open(double lo, double hi) { return {lo, hi, true, false}; }
    static Interval open(double lo, double hi) { return {lo, hi, false, false}; }
    static Interval closed(double lo, double hi) { return {lo, hi, true, true}; }

    bool contains(double x) const {
        if (x < lo || x > hi) return false;
        if (x == lo && !lo_closed) return false;
        if (x == hi && !hi_closed) return false;
        return true;
    }
};

/// Median with a deterministic tie-break: the lower of the two middle order
/// statistics for even length. Translation-equivariant because it returns an
/// element of the input.
double median(std::span<const double> samples);

struct ConditionalMean {
    double value = 0.0;
    double retained_fraction = 0.0;
    std::size_t retained_count = 0;
};

/// Mean of {x : |x| <= radius}. Throws EstimationError when nothing survives.
ConditionalMean conditional_mean(std::span<const double> samples, double radius);

/// Fraction of samples whose absolute value lies in the interval.
double empirical_prob(std::span<const double> samples, const Interval& interval);

/// Boundary-band upper bound P-hat, evaluated on one sample set:
///   c_near * Pr[|x| in A*sigma*(i-5, i+5)]
/// + c_far  * sum_{j=1}^{i-1} (i-j)^-2 * Pr[|x| in [A*sigma*(j-4), A*sigma*(j+5))]
double p_hat(std::span<const double> samples, double a_factor, double sigma, std::size_t i,
             double c_near = 3.0, double c_far = 10.0);

/// The combined band profile over an index range: values(i) = P1(i) + P2(i)
/// from both sample sets, alongside the per-set mass Pr[|x| <= A*sigma*i].
struct PHatProfile {
    double a_factor = 0.0;
    double sigma = 0.0;
    std::size_t lo = 0;
    std::vector<double> values;      // values[i - lo] = combined P-hat(i)
    std::vector<double> mass_below;  // mass_below[i - lo], summed over both sets

    double value_at(std::size_t i) const { return values[i - lo]; }
    double mass_at(std::size_t i) const { return mass_below[i - lo]; }
};

PHatProfile build_phat_profile(std::span<const double> s1, std::span<const double> s2,
                               double a_factor, double sigma, std::size_t lo, std::size_t hi,
                               double c_near = 3.0, double c_far = 10.0);

using SeqFn = std::function<double(std::size_t)>;

/// Smallest k in [L, U] with  k*a(k) < eta*total(k) + slack(k).
/// Defaults realize the sequence lemma exactly: total(k) = sum_{j=0}^k a(j),
/// slack = 0. shift1d passes total(k) = k*(band mass at k) and a constant
/// slack, which turns the condition into the band-mass selection rule.
std::optional<std::size_t> find_small_index(const SeqFn& a, double eta, std::size_t lo,
                                            std::size_t hi, const SeqFn& slack = nullptr,
                                            const SeqFn& total = nullptr);

/// Smallest n with exp(-2*n*accuracy^2 / range_width^2) <= delta.
std::size_t hoeffding_sample_size(double accuracy, double range_width, double delta);

/// Two-sample chi-square statistic over shared categories (counts per
/// category for each sample). Used by the hardness-indistinguishability
/// checks; degrees of freedom = categories - 1.
double two_sample_chi_square(std::span<const std::size_t> counts_a,
                             std::span<const std::size_t> counts_b);

}  // namespace oblivion
