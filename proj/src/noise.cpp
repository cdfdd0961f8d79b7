#include "oblivion/noise.hpp"

#include <cmath>
#include <limits>

#include "oblivion/errors.hpp"

namespace oblivion {

TailSpec TailSpec::symmetric_pareto(double exponent, double scale) {
    TailSpec s;
    s.family = TailFamily::SymmetricPareto;
    s.exponent = exponent;
    s.scale = scale;
    return s;
}

TailSpec TailSpec::two_point(double magnitude) {
    TailSpec s;
    s.family = TailFamily::TwoPoint;
    s.magnitude = magnitude;
    return s;
}

TailSpec TailSpec::uniform(double range) {
    TailSpec s;
    s.family = TailFamily::Uniform;
    s.range = range;
    return s;
}

TailSpec TailSpec::gaussian(double stddev) {
    TailSpec s;
    s.family = TailFamily::Gaussian;
    s.stddev = stddev;
    return s;
}

TailSpec TailSpec::custom_atoms(std::vector<std::pair<double, double>> atoms) {
    TailSpec s;
    s.family = TailFamily::CustomAtoms;
    s.atoms = std::move(atoms);
    return s;
}

void TailSpec::validate() const {
    switch (family) {
        case TailFamily::SymmetricPareto:
            if (!(exponent > 0.0)) throw ConfigError("tail: pareto exponent must be > 0");
            if (!(scale > 0.0)) throw ConfigError("tail: pareto scale must be > 0");
            break;
        case TailFamily::TwoPoint:
            if (!std::isfinite(magnitude)) throw ConfigError("tail: two_point magnitude not finite");
            break;
        case TailFamily::Uniform:
            if (!(range > 0.0)) throw ConfigError("tail: uniform range must be > 0");
            break;
        case TailFamily::Gaussian:
            if (!(stddev >= 0.0)) throw ConfigError("tail: gaussian stddev must be >= 0");
            break;
        case TailFamily::CustomAtoms: {
            if (atoms.empty()) throw ConfigError("tail: custom_atoms needs at least one atom");
            double total = 0.0;
            for (const auto& [value, weight] : atoms) {
                if (!std::isfinite(value)) throw ConfigError("tail: atom value not finite");
                if (weight < 0.0) throw ConfigError("tail: atom weight negative");
                total += weight;
            }
            if (std::abs(total - 1.0) > 1e-12)
                throw ConfigError("tail: atom weights must sum to 1 within 1e-12");
            break;
        }
    }
}

double TailSpec::sample(Rng& rng) const {
    switch (family) {
        case TailFamily::SymmetricPareto: {
            const double mag = rng.pareto(exponent, scale);
            return rng.bernoulli(0.5) ? mag : -mag;
        }
        case TailFamily::TwoPoint:
            return rng.bernoulli(0.5) ? magnitude : -magnitude;
        case TailFamily::Uniform:
            return rng.uniform(-range, range);
        case TailFamily::Gaussian:
            return stddev * rng.gaussian();
        case TailFamily::CustomAtoms: {
            double u = rng.next_double();
            for (const auto& [value, weight] : atoms) {
                if (u < weight) return value;
                u -= weight;
            }
            return atoms.back().first;
        }
    }
    return 0.0;
}

double TailSpec::mean() const {
    switch (family) {
        case TailFamily::SymmetricPareto:
            return exponent > 1.0 ? 0.0 : std::numeric_limits<double>::quiet_NaN();
        case TailFamily::TwoPoint:
        case TailFamily::Uniform:
        case TailFamily::Gaussian:
            return 0.0;
        case TailFamily::CustomAtoms: {
            double m = 0.0;
            for (const auto& [value, weight] : atoms) m += value * weight;
            return m;
        }
    }
    return 0.0;
}

double TailSpec::second_moment() const {
    switch (family) {
        case TailFamily::SymmetricPareto:
            if (exponent <= 2.0) return std::numeric_limits<double>::infinity();
            return exponent * scale * scale / (exponent - 2.0);
        case TailFamily::TwoPoint:
            return magnitude * magnitude;
        case TailFamily::Uniform:
            return range * range / 3.0;
        case TailFamily::Gaussian:
            return stddev * stddev;
        case TailFamily::CustomAtoms: {
            double m2 = 0.0;
            for (const auto& [value, weight] : atoms) m2 += value * value * weight;
            return m2;
        }
    }
    return 0.0;
}

void ObliviousNoiseSpec::validate() const {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw ConfigError("oblivious: alpha must be in (0, 1]");
    tail.validate();
    if (bounded_variance_mode) {
        if (!(sigma_xi > 0.0))
            throw ConfigError("oblivious: bounded_variance_mode needs sigma_xi > 0");
        const double mu = tail.mean();
        if (!(mu == 0.0))
            throw ConfigError("oblivious: bounded_variance_mode needs a mean-zero tail");
        if (!((1.0 - alpha) * tail.second_moment() <= sigma_xi * sigma_xi))
            throw ConfigError("oblivious: tail variance exceeds sigma_xi^2");
    }
}

ObservationNoiseSpec ObservationNoiseSpec::gaussian(double sigma) {
    ObservationNoiseSpec s;
    s.family = ObsFamily::Gaussian;
    s.sigma = sigma;
    return s;
}

ObservationNoiseSpec ObservationNoiseSpec::scaled_rademacher(double sigma) {
    ObservationNoiseSpec s;
    s.family = ObsFamily::ScaledRademacher;
    s.sigma = sigma;
    return s;
}

ObservationNoiseSpec ObservationNoiseSpec::recentered_pareto(double t) {
    ObservationNoiseSpec s;
    s.family = ObsFamily::RecenteredPareto;
    s.t = t;
    s.sigma = pareto_implied_sigma(t);
    return s;
}

double ObservationNoiseSpec::pareto_implied_sigma(double t) {
    const double c = pareto_recenter(t);
    return std::sqrt((2.0 + t) / t - c * c);
}

void ObservationNoiseSpec::validate() const {
    switch (family) {
        case ObsFamily::Gaussian:
        case ObsFamily::ScaledRademacher:
            if (!(sigma >= 0.0) || !std::isfinite(sigma))
                throw ConfigError("observation: sigma must be finite and >= 0");
            break;
        case ObsFamily::RecenteredPareto:
            if (!(t > 0.0 && t < 1.0))
                throw ConfigError("observation: recentered_pareto t must be in (0, 1)");
            break;
    }
}

double ObservationNoiseSpec::stddev() const {
    return family == ObsFamily::RecenteredPareto ? pareto_implied_sigma(t) : sigma;
}

double ObservationNoiseSpec::sample(Rng& rng) const {
    switch (family) {
        case ObsFamily::Gaussian:
            return sigma * rng.gaussian();
        case ObsFamily::ScaledRademacher:
            return rng.bernoulli(0.5) ? sigma : -sigma;
        case ObsFamily::RecenteredPareto:
            return rng.pareto(2.0 + t, 1.0) - pareto_recenter(t);
    }
    return 0.0;
}

SampleBatch sample_oblivious(const ObliviousNoiseSpec& spec, std::size_t m, std::uint64_t seed) {
    if (m < 1) throw ArgumentError("sample_oblivious: m must be >= 1");
    spec.validate();
    Rng atom(seed, streams::kObliviousAtom);
    Rng tail(seed, streams::kObliviousTail);
    SampleBatch out(1);
    out.reserve(m);
    for (std::size_t i = 0; i < m; ++i)
        out.push_scalar(atom.bernoulli(spec.alpha) ? 0.0 : spec.tail.sample(tail));
    return out;
}

SampleBatch sample_observation(const ObservationNoiseSpec& spec, std::size_t m,
                               std::uint64_t seed) {
    if (m < 1) throw ArgumentError("sample_observation: m must be >= 1");
    spec.validate();
    Rng rng(seed, streams::kObservation);
    SampleBatch out(1);
    out.reserve(m);
    for (std::size_t i = 0; i < m; ++i) out.push_scalar(spec.sample(rng));
    return out;
}

WitnessSamples median_tightness_witness(double alpha, double t, std::size_t m, std::uint64_t seed,
                                        double alpha_threshold) {
    if (!(alpha > 0.0 && alpha <= alpha_threshold))
        throw ConfigError("witness: alpha must be in (0, threshold]");
    if (!(t > 0.0 && t < 1.0)) throw ConfigError("witness: t must be in (0, 1)");
    if (m < 1) throw ArgumentError("witness: m must be >= 1");

    WitnessSamples w;
    w.c_t = ObservationNoiseSpec::pareto_recenter(t);
    w.support_magnitude = 0.01 * std::pow(alpha, -1.0 / (2.0 + t)) + w.c_t;
    w.x.reserve(m);
    w.y.reserve(m);
    Rng xr(seed, streams::kWitnessAtom);
    Rng yr(seed, streams::kWitnessPareto);
    for (std::size_t i = 0; i < m; ++i) {
        const double u = xr.next_double();
        if (u < alpha)
            w.x.push_back(0.0);
        else
            w.x.push_back(u < alpha + (1.0 - alpha) / 2.0 ? w.support_magnitude
                                                          : -w.support_magnitude);
        w.y.push_back(yr.pareto(2.0 + t, 1.0) - w.c_t);
    }
    return w;
}

SampleBatch hardness_pair(std::size_t d, const std::vector<int>& signs, std::size_t m,
                          std::uint64_t seed) {
    if (d < 1) throw ConfigError("hardness_pair: d must be >= 1");
    if (signs.size() != d) throw ConfigError("hardness_pair: sign vector must have length d");
    for (int s : signs)
        if (s != 1 && s != -1) throw ConfigError("hardness_pair: signs must be +-1");

    Rng inlier(seed, streams::kHardnessInlier);
    Rng noise(seed, streams::kHardnessNoise);
    const double p = 1.0 / static_cast<double>(d);
    SampleBatch out(d);
    out.reserve(m);
    Eigen::VectorXd v(static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            const double x = inlier.bernoulli(p) ? static_cast<double>(signs[j]) : 0.0;
            const double xi = noise.bernoulli(p) ? -static_cast<double>(signs[j]) : 0.0;
            v[static_cast<Eigen::Index>(j)] = x + xi;
        }
        out.push_vector(v);
    }
    return out;
}

std::string to_string(TailFamily family) {
    switch (family) {
        case TailFamily::SymmetricPareto: return "symmetric_pareto";
        case TailFamily::TwoPoint: return "two_point";
        case TailFamily::Uniform: return "uniform";
        case TailFamily::Gaussian: return "gaussian";
        case TailFamily::CustomAtoms: return "custom_atoms";
    }
    return "?";
}

std::string to_string(ObsFamily family) {
    switch (family) {
        case ObsFamily::Gaussian: return "gaussian";
        case ObsFamily::ScaledRademacher: return "scaled_rademacher";
        case ObsFamily::RecenteredPareto: return "recentered_pareto";
    }
    return "?";
}

}  // namespace oblivion
