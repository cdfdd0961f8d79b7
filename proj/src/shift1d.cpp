#include "oblivion/shift1d.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <string>

#include "oblivion/errors.hpp"
#include "oblivion/rng.hpp"
#include "oblivion/stats.hpp"

namespace oblivion {

void Shift1DConfig::validate() const {
    if (!(eta > 0.0 && eta < 0.5)) throw ConfigError("shift1d: eta must be in (0, 0.5)");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw ConfigError("shift1d: alpha must be in (0, 1]");
    if (!(sigma > 0.0)) throw ConfigError("shift1d: sigma must be > 0");
    if (!(A0_multiplier > 0.0)) throw ConfigError("shift1d: A0_multiplier must be > 0");
    if (!(slack_const >= 0.0)) throw ConfigError("shift1d: slack_const must be >= 0");
    if (!(c_near > 0.0 && c_far > 0.0)) throw ConfigError("shift1d: c_near/c_far must be > 0");
    if (!(C_budget > 0.0)) throw ConfigError("shift1d: C_budget must be > 0");
    if (pair_budget < 1) throw ConfigError("shift1d: pair_budget must be >= 1");
}

std::size_t Shift1DConfig::rounds() const {
    if (T_override > 0) return T_override < 2 ? 2 : T_override;
    const double t = std::ceil(std::log(1.0 / alpha) / (2.0 * std::log(1.0 / eta))) + 1.0;
    return t < 2.0 ? 2 : static_cast<std::size_t>(t);
}

std::size_t Shift1DConfig::k_lo() const {
    const double l = std::ceil(1.0 / (alpha * eta * eta));
    return l < 1.0 ? 1 : static_cast<std::size_t>(l);
}

std::size_t Shift1DConfig::k_hi(std::size_t lo) const {
    double u;
    if (bounded_variance_mode) {
        const double b = 1.0 / (alpha * eta);
        u = std::ceil(b * b * b);
    } else {
        u = std::ceil(std::pow(C_budget / alpha + std::pow(static_cast<double>(lo), eta),
                               1.0 / eta));
    }
    std::size_t hi = (!std::isfinite(u) || u >= static_cast<double>(u_cap))
                         ? u_cap
                         : static_cast<std::size_t>(u);
    return hi < lo ? lo : hi;
}

std::size_t Shift1DConfig::min_slice() const {
    return hoeffding_sample_size(eta / 10.0, 1.0, 0.01);
}

double rough_estimate(std::span<const double> s1, std::span<const double> s2,
                      std::size_t pair_budget, std::uint64_t seed) {
    if (s1.empty() || s2.empty()) throw ArgumentError("rough_estimate: empty batch");
    if (pair_budget < 1) throw ArgumentError("rough_estimate: pair budget must be >= 1");

    std::vector<double> diffs;
    const std::size_t n1 = s1.size(), n2 = s2.size();
    const bool exhaustive = n1 <= pair_budget / n2;  // i.e. n1*n2 <= budget, overflow-safe
    if (exhaustive) {
        diffs.reserve(n1 * n2);
        for (double a : s1)
            for (double b : s2) diffs.push_back(a - b);
    } else {
        diffs.reserve(pair_budget);
        Rng rng(seed, streams::kPairs);
        for (std::size_t i = 0; i < pair_budget; ++i) {
            const double a = s1[rng.below(n1)];
            const double b = s2[rng.below(n2)];
            diffs.push_back(a - b);
        }
    }
    return median(diffs);
}

namespace {

// Histogram of y = |x| / (A*sigma) over unit cells [b, b+1), with exact hits
// y == b tracked separately so the open/half-open band shapes evaluate
// exactly. Cells beyond `clamp` are folded into the overflow cell, which no
// band or mass query up to U can reach.
class BandHistogram {
public:
    BandHistogram(std::span<const double> samples, double cell_width, std::size_t clamp)
        : n_(samples.size()), clamp_(clamp) {
        // Non-finite values fold into the overflow cell alongside the far tail.
        auto cell_of = [&](double x) -> std::size_t {
            const double fb = std::floor(std::abs(x) / cell_width);
            if (!(fb >= 0.0) || fb > static_cast<double>(clamp)) return clamp + 1;
            return static_cast<std::size_t>(fb);
        };
        // Size to the occupied range, not the full scan range.
        std::size_t top = 0;
        for (double x : samples) top = std::max(top, cell_of(x));
        cells_.assign(top + 2, 0);
        edges_.assign(top + 2, 0);
        for (double x : samples) {
            const std::size_t b = cell_of(x);
            if (b <= clamp && std::abs(x) / cell_width == static_cast<double>(b)) ++edges_[b];
            ++cells_[b];
        }
        prefix_.assign(cells_.size() + 1, 0);
        for (std::size_t b = 0; b < cells_.size(); ++b) prefix_[b + 1] = prefix_[b] + cells_[b];
    }

    // Pr[y in [lo, hi)] for integer endpoints.
    double closed_open(long lo, long hi) const {
        if (lo < 0) lo = 0;
        if (hi <= lo) return 0.0;
        return ratio(cell_range(static_cast<std::size_t>(lo), static_cast<std::size_t>(hi)));
    }

    // Pr[y in (lo, hi)] for integer endpoints.
    double open(long lo, long hi) const {
        if (hi <= lo) return 0.0;
        if (lo < 0) return closed_open(0, hi);
        std::size_t c = cell_range(static_cast<std::size_t>(lo), static_cast<std::size_t>(hi));
        c -= edge_at(static_cast<std::size_t>(lo));
        return ratio(c);
    }

    // Pr[y <= k].
    double mass_upto(std::size_t k) const {
        return ratio(cell_range(0, k) + edge_at(k));
    }

    std::size_t max_occupied_cell() const {
        for (std::size_t b = cells_.size(); b-- > 0;)
            if (cells_[b] > 0) return b;
        return 0;
    }

    std::size_t size() const { return n_; }

private:
    std::size_t cell_range(std::size_t lo, std::size_t hi) const {
        lo = std::min(lo, prefix_.size() - 1);
        hi = std::min(hi, prefix_.size() - 1);
        return prefix_[hi] - prefix_[lo];
    }
    std::size_t edge_at(std::size_t b) const { return b < edges_.size() ? edges_[b] : 0; }
    double ratio(std::size_t c) const { return static_cast<double>(c) / static_cast<double>(n_); }

    std::size_t n_;
    std::size_t clamp_;
    std::vector<std::uint32_t> cells_;
    std::vector<std::uint32_t> edges_;
    std::vector<std::uint64_t> prefix_;
};

// P-hat for one sample set from its histogram; mirrors stats::p_hat.
double p_hat_from_hist(const BandHistogram& h, std::size_t i, std::size_t far_limit,
                       double c_near, double c_far) {
    const auto li = static_cast<long>(i);
    double value = c_near * h.open(li - 5, li + 5);
    const std::size_t jmax = std::min(i - 1, far_limit);
    for (std::size_t j = 1; j <= jmax; ++j) {
        const auto lj = static_cast<long>(j);
        const double band = h.closed_open(lj - 4, lj + 5);
        if (band > 0.0) {
            const double gap = static_cast<double>(i - j);
            value += c_far * band / (gap * gap);
        }
    }
    return value;
}

}  // namespace

FineStepResult fine_step(std::span<const double> s1_centered,
                         std::span<const double> s2_centered, double a_factor,
                         const Shift1DConfig& cfg) {
    cfg.validate();
    if (!(a_factor > 0.0)) throw ArgumentError("fine_step: scale factor must be > 0");
    if (s1_centered.empty() || s2_centered.empty()) throw ArgumentError("fine_step: empty batch");

    const std::size_t lo = cfg.k_lo();
    const std::size_t hi = cfg.k_hi(lo);
    const double cell = a_factor * cfg.sigma;

    const BandHistogram h1(s1_centered, cell, hi + 6);
    const BandHistogram h2(s2_centered, cell, hi + 6);
    const std::size_t far_limit =
        std::max(h1.max_occupied_cell(), h2.max_occupied_cell()) + 6;

    // Memoized P-hat profile; the fallback pass below reuses it.
    std::vector<double> cache;
    cache.reserve(64);
    std::size_t cached_from = lo;
    auto profile = [&](std::size_t k) {
        const std::size_t idx = k - cached_from;
        while (cache.size() <= idx)
            cache.push_back(
                p_hat_from_hist(h1, cached_from + cache.size(), far_limit, cfg.c_near, cfg.c_far) +
                p_hat_from_hist(h2, cached_from + cache.size(), far_limit, cfg.c_near, cfg.c_far));
        return cache[idx];
    };
    auto mass = [&](std::size_t k) { return h1.mass_upto(k) + h2.mass_upto(k); };

    auto found = find_small_index(
        profile, cfg.eta, lo, hi,
        [&](std::size_t) { return cfg.slack_const * cfg.eta; },
        [&](std::size_t k) { return static_cast<double>(k) * mass(k); });

    std::size_t k;
    bool ok = found.has_value();
    if (ok) {
        k = *found;
    } else {
        // No index met the inequality: fall back to the k minimizing the
        // lemma ratio k*P(k) / sum_{j<=k} P(j).
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_k = lo;
        double prefix = 0.0;
        for (std::size_t j = 1; j < lo; ++j)
            prefix += p_hat_from_hist(h1, j, far_limit, cfg.c_near, cfg.c_far) +
                      p_hat_from_hist(h2, j, far_limit, cfg.c_near, cfg.c_far);
        for (std::size_t j = lo; j <= hi; ++j) {
            const double pj = profile(j);
            prefix += pj;
            if (prefix > 0.0) {
                const double ratio = static_cast<double>(j) * pj / prefix;
                if (ratio < best) {
                    best = ratio;
                    best_k = j;
                }
            }
        }
        k = best_k;
    }

    const double radius = cell * static_cast<double>(k);
    const ConditionalMean cm1 = conditional_mean(s1_centered, radius);
    const ConditionalMean cm2 = conditional_mean(s2_centered, radius);

    FineStepResult r;
    r.delta = cm1.value - cm2.value;
    r.k = k;
    r.found = ok;
    r.retained1 = cm1.retained_count;
    r.retained2 = cm2.retained_count;
    r.retained_frac1 = cm1.retained_fraction;
    r.retained_frac2 = cm2.retained_fraction;
    return r;
}

namespace {

std::vector<double> shuffled(std::span<const double> s, Rng& rng) {
    std::vector<double> out(s.begin(), s.end());
    for (std::size_t i = out.size(); i > 1; --i)
        std::swap(out[i - 1], out[rng.below(i)]);
    return out;
}

}  // namespace

ShiftEstimate shift1d(std::span<const double> s1, std::span<const double> s2,
                      const Shift1DConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    if (s1.size() != s2.size()) throw ArgumentError("shift1d: batches must have equal size");
    const std::size_t m = s1.size();
    const std::size_t t_rounds = cfg.rounds();
    const std::size_t need = cfg.min_samples();
    if (m < need)
        throw ArgumentError("shift1d: need at least " + std::to_string(need) + " samples (" +
                            std::to_string(t_rounds) + " slices of " +
                            std::to_string(cfg.min_slice()) + "), got " + std::to_string(m));

    Rng perm1(derive_seed(seed, 101), streams::kPartition);
    Rng perm2(derive_seed(seed, 102), streams::kPartition);
    const std::vector<double> v1 = shuffled(s1, perm1);
    const std::vector<double> v2 = shuffled(s2, perm2);
    const std::size_t slice = m / t_rounds;

    auto slice1 = [&](std::size_t i) {
        return std::span<const double>(v1.data() + i * slice, slice);
    };
    auto slice2 = [&](std::size_t i) {
        return std::span<const double>(v2.data() + i * slice, slice);
    };

    ShiftEstimate est;
    est.rough = rough_estimate(slice1(0), slice2(0), cfg.pair_budget, derive_seed(seed, 103));

    // The rough stage and the refinement corrections accumulate in separate
    // doubles; slices are re-centered by both terms.
    double fine_acc = 0.0;
    double a_factor = cfg.A0_multiplier / std::sqrt(cfg.alpha);
    bool applied_any = false;

    std::vector<double> centered(slice);
    for (std::size_t round = 2; round <= t_rounds; ++round) {
        const auto raw = slice1(round - 1);
        for (std::size_t j = 0; j < slice; ++j) centered[j] = (raw[j] - est.rough) - fine_acc;

        RoundRecord rec;
        rec.round = round;
        rec.scale = a_factor;
        try {
            const FineStepResult f = fine_step(centered, slice2(round - 1), a_factor, cfg);
            rec.k = f.k;
            rec.k_found = f.found;
            rec.retained1 = f.retained_frac1;
            rec.retained2 = f.retained_frac2;
            if (f.retained1 >= cfg.min_retained && f.retained2 >= cfg.min_retained) {
                fine_acc += f.delta;
                rec.delta = f.delta;
                applied_any = true;
            } else {
                rec.skipped = true;
            }
        } catch (const EstimationError&) {
            rec.skipped = true;
        }
        rec.estimate = est.rough + fine_acc;
        est.trace.push_back(rec);
        a_factor *= cfg.eta;
    }

    est.value = est.rough + fine_acc;
    est.rough_only = !applied_any;
    return est;
}

std::string trace_csv(const ShiftEstimate& estimate) {
    std::string out = "round,scale,k,k_found,retained1,retained2,delta,estimate,skipped\n";
    char buf[256];
    for (const auto& r : estimate.trace) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g,%zu,%d,%.17g,%.17g,%.17g,%.17g,%d\n", r.round,
                      r.scale, r.k, r.k_found ? 1 : 0, r.retained1, r.retained2, r.delta,
                      r.estimate, r.skipped ? 1 : 0);
        out += buf;
    }
    return out;
}

}  // namespace oblivion
