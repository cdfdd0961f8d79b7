#pragma once

#include <cmath>
#include <cstdint>

namespace oblivion {

/// Counter-based pseudorandom generator.
///
/// Output i of stream (seed, stream) is mix64(base + i * GOLDEN) where
/// base = mix64(seed ^ mix64(stream)); mix64 is the splitmix64 finalizer.
/// Every draw is a pure function of (seed, stream, counter), so results are
/// bit-reproducible regardless of thread count or evaluation order, and
/// distinct streams derived from one seed never collide in practice.
///
/// All distribution transforms are implemented here (no std::*_distribution,
/// whose output is implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
        : base_(mix64(seed ^ mix64(stream ^ kStreamSalt))) {}

    static std::uint64_t mix64(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t next_u64() { return mix64(base_ + kGolden * ++counter_); }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    bool bernoulli(double p) { return next_double() < p; }

    /// Uniform integer in [0, n). Lemire multiply-shift with rejection;
    /// unbiased.
    std::uint64_t below(std::uint64_t n) {
        unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
        auto low = static_cast<std::uint64_t>(m);
        if (low < n) {
            const std::uint64_t threshold = (0 - n) % n;
            while (low < threshold) {
                m = static_cast<unsigned __int128>(next_u64()) * n;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    /// Standard normal via the Marsaglia-Tsang ziggurat (128 strips); the
    /// wedge and tail paths fall back to exact rejection, so the output is
    /// exactly normal and deterministic in the underlying counter stream.
    double gaussian() {
        const Zig& z = zig();
        for (;;) {
            const std::uint64_t bits = next_u64();
            const auto hz = static_cast<std::int32_t>(bits & 0xFFFFFFFFULL);
            const std::size_t iz = (bits >> 32) & 127;
            const auto ahz = static_cast<std::uint32_t>(
                hz < 0 ? -static_cast<std::int64_t>(hz) : static_cast<std::int64_t>(hz));
            if (ahz < z.kn[iz]) return hz * z.wn[iz];

            if (iz == 0) {
                // Tail beyond r: exact exponential rejection.
                double xx, yy;
                do {
                    xx = -std::log(positive_double()) / z.r;
                    yy = -std::log(positive_double());
                } while (yy + yy < xx * xx);
                return hz > 0 ? z.r + xx : -(z.r + xx);
            }
            const double x = hz * z.wn[iz];
            if (z.fn[iz] + next_double() * (z.fn[iz - 1] - z.fn[iz]) <
                std::exp(-0.5 * x * x))
                return x;
        }
    }

    double gaussian(double mean, double stddev) { return mean + stddev * gaussian(); }

    /// Pareto with survival (x/scale)^-exponent on [scale, inf).
    double pareto(double exponent, double scale) {
        double u = next_double();
        if (u <= 0.0) u = 0x1.0p-53;
        return scale * std::pow(u, -1.0 / exponent);
    }

    std::uint64_t counter() const { return counter_; }

private:
    static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
    static constexpr std::uint64_t kStreamSalt = 0xA02BD4F793E15C68ULL;
    static constexpr double kPi = 3.141592653589793238462643383279502884;

    double positive_double() {
        double u = next_double();
        return u <= 0.0 ? 0x1.0p-53 : u;
    }

    struct Zig {
        double r = 3.442619855899;
        std::uint32_t kn[128];
        double wn[128];
        double fn[128];
        Zig() {
            const double m1 = 2147483648.0;
            double dn = r, tn = r;
            const double vn = 9.91256303526217e-3;
            double q = vn / std::exp(-0.5 * dn * dn);
            kn[0] = static_cast<std::uint32_t>((dn / q) * m1);
            kn[1] = 0;
            wn[0] = q / m1;
            wn[127] = dn / m1;
            fn[0] = 1.0;
            fn[127] = std::exp(-0.5 * dn * dn);
            for (int i = 126; i >= 1; --i) {
                dn = std::sqrt(-2.0 * std::log(vn / dn + std::exp(-0.5 * dn * dn)));
                kn[i + 1] = static_cast<std::uint32_t>((dn / tn) * m1);
                tn = dn;
                fn[i] = std::exp(-0.5 * dn * dn);
                wn[i] = dn / m1;
            }
        }
    };

    static const Zig& zig() {
        static const Zig tables;
        return tables;
    }

    std::uint64_t base_;
    std::uint64_t counter_ = 0;
};

/// Fold extra identifiers into a seed; used to hand independent streams to
/// sub-tasks (per trial, per coordinate, per sweep point) deterministically.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    return Rng::mix64(Rng::mix64(seed ^ Rng::mix64(a)) ^ Rng::mix64(~b));
}

/// Stream ids for the fixed call sites. Keeping them in one place documents
/// the derivation so experiments can be replayed bit-exactly.
namespace streams {
inline constexpr std::uint64_t kObliviousAtom = 1;
inline constexpr std::uint64_t kObliviousTail = 2;
inline constexpr std::uint64_t kObservation = 3;
inline constexpr std::uint64_t kDirection = 4;
inline constexpr std::uint64_t kPartition = 5;
inline constexpr std::uint64_t kPairs = 6;
inline constexpr std::uint64_t kBasis = 7;
inline constexpr std::uint64_t kSubsample = 8;
inline constexpr std::uint64_t kHardnessInlier = 9;
inline constexpr std::uint64_t kHardnessNoise = 10;
inline constexpr std::uint64_t kWitnessAtom = 11;
inline constexpr std::uint64_t kWitnessPareto = 12;
inline constexpr std::uint64_t kReplayShuffle = 13;
}  // namespace streams

}  // namespace oblivion
