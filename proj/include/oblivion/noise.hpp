#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "oblivion/rng.hpp"
#include "oblivion/samples.hpp"

namespace oblivion {

enum class TailFamily { SymmetricPareto, TwoPoint, Uniform, Gaussian, CustomAtoms };

/// The non-atom component of the oblivious noise. A closed enumeration so
/// specs round-trip through config files.
struct TailSpec {
    TailFamily family = TailFamily::TwoPoint;
    double exponent = 0.0;   // symmetric_pareto
    double scale = 0.0;      // symmetric_pareto
    double magnitude = 0.0;  // two_point
    double range = 0.0;      // uniform over [-range, range]
    double stddev = 0.0;     // gaussian
    std::vector<std::pair<double, double>> atoms;  // custom: (value, weight)

    static TailSpec symmetric_pareto(double exponent, double scale);
    static TailSpec two_point(double magnitude);
    static TailSpec uniform(double range);
    static TailSpec gaussian(double stddev);
    static TailSpec custom_atoms(std::vector<std::pair<double, double>> atoms);

    void validate() const;
    double sample(Rng& rng) const;
    double mean() const;
    double second_moment() const;  // +inf when the family has none
};

/// Oblivious noise: an atom of mass >= alpha at exactly zero plus an
/// arbitrary tail. bounded_variance_mode flags the stronger regime where the
/// mixture is mean-zero with variance at most sigma_xi^2; shift1d then uses
/// the polynomial k-search upper bound.
struct ObliviousNoiseSpec {
    double alpha = 1.0;
    TailSpec tail;
    bool bounded_variance_mode = false;
    double sigma_xi = 0.0;

    void validate() const;
};

enum class ObsFamily { Gaussian, ScaledRademacher, RecenteredPareto };

/// Mean-zero observation noise with standard deviation at most stddev().
/// recentered_pareto(t) is y' - C_t with y' of density (2+t)/y^(3+t) on
/// [1, inf) and C_t = (2+t)/(1+t); its sigma is implied by t.
struct ObservationNoiseSpec {
    ObsFamily family = ObsFamily::Gaussian;
    double sigma = 1.0;  // gaussian / scaled_rademacher
    double t = 0.5;      // recentered_pareto exponent, in (0, 1)

    static ObservationNoiseSpec gaussian(double sigma);
    static ObservationNoiseSpec scaled_rademacher(double sigma);
    static ObservationNoiseSpec recentered_pareto(double t);

    void validate() const;
    double stddev() const;
    double sample(Rng& rng) const;

    static double pareto_recenter(double t) { return (2.0 + t) / (1.0 + t); }
    static double pareto_implied_sigma(double t);
};

SampleBatch sample_oblivious(const ObliviousNoiseSpec& spec, std::size_t m, std::uint64_t seed);
SampleBatch sample_observation(const ObservationNoiseSpec& spec, std::size_t m, std::uint64_t seed);

/// The tightness construction behind the rough-estimate lower bound:
/// x is symmetric with Pr[x = 0] = alpha and support at
/// +-(0.01 * alpha^(-1/(2+t)) + C_t); y is recentered Pareto.
struct WitnessSamples {
    std::vector<double> x;
    std::vector<double> y;
    double support_magnitude = 0.0;
    double c_t = 0.0;
};

WitnessSamples median_tightness_witness(double alpha, double t, std::size_t m, std::uint64_t seed,
                                        double alpha_threshold = 0.01);

/// Adversarial generator for list-decoding: draws x ~ D_s (coordinate i is
/// s_i with probability 1/d, else 0) plus an independent xi ~ -D_s. The law
/// of x + xi does not depend on s.
SampleBatch hardness_pair(std::size_t d, const std::vector<int>& signs, std::size_t m,
                          std::uint64_t seed);

std::string to_string(TailFamily family);
std::string to_string(ObsFamily family);

}  // namespace oblivion
