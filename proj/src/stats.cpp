#include "oblivion/stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "oblivion/errors.hpp"

namespace oblivion {

Interval::Interval(double lo_, double hi_, bool lo_closed_, bool hi_closed_)
    : lo(lo_), hi(hi_), lo_closed(lo_closed_), hi_closed(hi_closed_) {
    if (!(lo <= hi)) throw ArgumentError("Interval: lo > hi");
}

double median(std::span<const double> samples) {
    if (samples.empty()) throw ArgumentError("median: empty input");
    std::vector<double> buf(samples.begin(), samples.end());
    // Lower-middle order statistic: index (n-1)/2 for both parities.
    const std::size_t k = (buf.size() - 1) / 2;
    std::nth_element(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(k), buf.end());
    return buf[k];
}

ConditionalMean conditional_mean(std::span<const double> samples, double radius) {
    if (radius <= 0.0) throw ArgumentError("conditional_mean: radius must be > 0");
    if (samples.empty()) throw ArgumentError("conditional_mean: empty input");
    double sum = 0.0;
    std::size_t kept = 0;
    for (double x : samples) {
        if (std::abs(x) <= radius) {
            sum += x;
            ++kept;
        }
    }
    if (kept == 0) throw EstimationError("conditional_mean: no samples within radius");
    return {sum / static_cast<double>(kept),
            static_cast<double>(kept) / static_cast<double>(samples.size()), kept};
}

double empirical_prob(std::span<const double> samples, const Interval& interval) {
    if (samples.empty()) throw ArgumentError("empirical_prob: empty input");
    std::size_t hits = 0;
    for (double x : samples)
        if (interval.contains(std::abs(x))) ++hits;
    return static_cast<double>(hits) / static_cast<double>(samples.size());
}

double p_hat(std::span<const double> samples, double a_factor, double sigma, std::size_t i,
             double c_near, double c_far) {
    if (i < 1) throw ArgumentError("p_hat: index must be >= 1");
    if (a_factor <= 0.0 || sigma <= 0.0) throw ArgumentError("p_hat: A and sigma must be > 0");
    const double as = a_factor * sigma;
    const double di = static_cast<double>(i);
    double value = c_near * empirical_prob(samples, Interval::open(as * (di - 5.0), as * (di + 5.0)));
    for (std::size_t j = 1; j < i; ++j) {
        const double dj = static_cast<double>(j);
        const double band =
            empirical_prob(samples, Interval::closed_open(as * (dj - 4.0), as * (dj + 5.0)));
        if (band > 0.0) value += c_far * band / ((di - dj) * (di - dj));
    }
    return value;
}

PHatProfile build_phat_profile(std::span<const double> s1, std::span<const double> s2,
                               double a_factor, double sigma, std::size_t lo, std::size_t hi,
                               double c_near, double c_far) {
    if (lo < 1 || lo > hi) throw ArgumentError("build_phat_profile: need 1 <= lo <= hi");
    PHatProfile profile;
    profile.a_factor = a_factor;
    profile.sigma = sigma;
    profile.lo = lo;
    profile.values.reserve(hi - lo + 1);
    profile.mass_below.reserve(hi - lo + 1);
    for (std::size_t i = lo; i <= hi; ++i) {
        profile.values.push_back(p_hat(s1, a_factor, sigma, i, c_near, c_far) +
                                 p_hat(s2, a_factor, sigma, i, c_near, c_far));
        const Interval ball = Interval::closed(0.0, a_factor * sigma * double(i));
        profile.mass_below.push_back(empirical_prob(s1, ball) + empirical_prob(s2, ball));
    }
    return profile;
}

std::optional<std::size_t> find_small_index(const SeqFn& a, double eta, std::size_t lo,
                                            std::size_t hi, const SeqFn& slack,
                                            const SeqFn& total) {
    if (!(eta > 0.0 && eta < 1.0)) throw ArgumentError("find_small_index: eta must be in (0,1)");
    if (lo < 1 || lo > hi) throw ArgumentError("find_small_index: need 1 <= L <= U");

    double prefix = 0.0;
    if (!total) {
        prefix = a(0);
        for (std::size_t j = 1; j < lo; ++j) prefix += a(j);
    }
    for (std::size_t k = lo; k <= hi; ++k) {
        const double ak = a(k);
        if (!total) prefix += ak;
        const double rhs =
            eta * (total ? total(k) : prefix) + (slack ? slack(k) : 0.0);
        if (static_cast<double>(k) * ak < rhs) return k;
    }
    return std::nullopt;
}

std::size_t hoeffding_sample_size(double accuracy, double range_width, double delta) {
    if (accuracy <= 0.0 || range_width <= 0.0 || delta <= 0.0)
        throw ArgumentError("hoeffding_sample_size: all arguments must be > 0");
    if (delta >= 1.0) return 1;
    const double exact = range_width * range_width * std::log(1.0 / delta) /
                         (2.0 * accuracy * accuracy);
    auto n = static_cast<std::size_t>(std::ceil(exact));
    if (n == 0) n = 1;
    // ceil can overshoot by one ulp worth; settle on the smallest n that works.
    while (n > 1 &&
           std::exp(-2.0 * static_cast<double>(n - 1) * accuracy * accuracy /
                    (range_width * range_width)) <= delta)
        --n;
    return n;
}

double two_sample_chi_square(std::span<const std::size_t> counts_a,
                             std::span<const std::size_t> counts_b) {
    if (counts_a.size() != counts_b.size() || counts_a.empty())
        throw ArgumentError("two_sample_chi_square: mismatched category counts");
    double na = 0.0, nb = 0.0;
    for (std::size_t c : counts_a) na += static_cast<double>(c);
    for (std::size_t c : counts_b) nb += static_cast<double>(c);
    if (na == 0.0 || nb == 0.0) throw ArgumentError("two_sample_chi_square: empty sample");
    double stat = 0.0;
    for (std::size_t k = 0; k < counts_a.size(); ++k) {
        const double oa = static_cast<double>(counts_a[k]);
        const double ob = static_cast<double>(counts_b[k]);
        const double pooled = (oa + ob) / (na + nb);
        if (pooled == 0.0) continue;
        const double ea = na * pooled;
        const double eb = nb * pooled;
        stat += (oa - ea) * (oa - ea) / ea + (ob - eb) * (ob - eb) / eb;
    }
    return stat;
}

}  // namespace oblivion
