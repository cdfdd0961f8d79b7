#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "oblivion/errors.hpp"
#include "oblivion/noise.hpp"
#include "oblivion/rng.hpp"
#include "oblivion/shift1d.hpp"
#include "oblivion/stats.hpp"

using namespace oblivion;

namespace {

std::vector<double> location_batch(const ObliviousNoiseSpec& ob, const ObservationNoiseSpec& obs,
                                   double shift, std::size_t m, std::uint64_t seed) {
    const SampleBatch xi = sample_oblivious(ob, m, derive_seed(seed, 1));
    const SampleBatch y = sample_observation(obs, m, derive_seed(seed, 2));
    std::vector<double> out(m);
    for (std::size_t i = 0; i < m; ++i) out[i] = xi.scalar_at(i) + y.scalar_at(i) + shift;
    return out;
}

ObliviousNoiseSpec two_point_oblivious(double alpha, double magnitude) {
    ObliviousNoiseSpec ob;
    ob.alpha = alpha;
    ob.tail = TailSpec::two_point(magnitude);
    return ob;
}

// Integer-valued batches keep every internal statistic exact, which is what
// the bitwise equivariance assertions rely on.
std::vector<double> integer_batch(double alpha, double shift, std::size_t m, std::uint64_t seed) {
    Rng rng(seed, 0);
    std::vector<double> out(m);
    for (std::size_t i = 0; i < m; ++i)
        out[i] = (rng.bernoulli(alpha) ? 0.0 : (rng.bernoulli(0.5) ? 1000.0 : -1000.0)) + shift;
    return out;
}

}  // namespace

TEST_CASE("config derived quantities") {
    Shift1DConfig cfg;
    cfg.eta = 0.25;
    cfg.alpha = 0.25;
    CHECK(cfg.rounds() == 2);
    CHECK(cfg.k_lo() == 64);
    CHECK(cfg.k_hi(64) == 125678);  // ceil((16 + 64^0.25)^4)
    cfg.bounded_variance_mode = true;
    CHECK(cfg.k_hi(64) == 4096);  // ceil((1/(alpha*eta))^3) under the polynomial rule
    cfg.bounded_variance_mode = false;
    cfg.u_cap = 1000;
    CHECK(cfg.k_hi(64) == 1000);
    cfg.eta = 0.6;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("rough estimate: exact on noiseless shifted copies") {
    std::vector<double> s2{0.5, -1.25, 2.0, 3.5, -0.75};
    std::vector<double> s1;
    for (double v : s2) s1.push_back(v + 7.0);
    CHECK(rough_estimate(s1, s2, 1000, 3) == 7.0);
    CHECK_THROWS_AS(rough_estimate({}, s2, 10, 1), ArgumentError);
}

TEST_CASE("rough estimate: atom-dominated median for symmetric tails") {
    const auto ob = two_point_oblivious(0.3, 1000.0);
    const SampleBatch xi1 = sample_oblivious(ob, 100000, 5);
    const SampleBatch xi2 = sample_oblivious(ob, 100000, 6);
    std::vector<double> s1(xi1.scalars().begin(), xi1.scalars().end());
    for (auto& v : s1) v += 7.3;
    std::vector<double> s2(xi2.scalars().begin(), xi2.scalars().end());
    const double r = rough_estimate(s1, s2, 200000, 9);
    CHECK(std::abs(r - 7.3) <= 1e-9);
}

TEST_CASE("rough estimate: within the claimed band under noise") {
    const auto ob = two_point_oblivious(0.25, 1000.0);
    const auto obs = ObservationNoiseSpec::gaussian(1.0);
    for (std::uint64_t seed : {1, 2, 3}) {
        const auto s1 = location_batch(ob, obs, 7.3, 100000, derive_seed(seed, 11));
        const auto s2 = location_batch(ob, obs, 0.0, 100000, derive_seed(seed, 12));
        const double r = rough_estimate(s1, s2, 200000, seed);
        CHECK(std::abs(r - 7.3) <= 20.0);  // 10 * sigma / sqrt(alpha)
    }
}

TEST_CASE("fine step: identical batches give delta exactly zero") {
    Shift1DConfig cfg;
    cfg.eta = 0.25;
    cfg.alpha = 0.25;
    cfg.sigma = 1.0;
    Rng rng(7, 0);
    std::vector<double> s(20000);
    for (auto& v : s) v = rng.bernoulli(0.25) ? 0.0 : rng.gaussian();
    const FineStepResult r = fine_step(s, s, 8.0, cfg);
    CHECK(r.delta == 0.0);
    CHECK(r.k >= cfg.k_lo());
    CHECK(r.k <= cfg.k_hi(cfg.k_lo()));
}

TEST_CASE("fine step: recovers a small translation of a point-mass batch exactly") {
    Shift1DConfig cfg;
    cfg.eta = 0.25;
    cfg.alpha = 0.25;
    cfg.sigma = 1.0;
    const double c = 0.25;  // dyadic, far below A*sigma
    const auto xi = sample_oblivious(two_point_oblivious(0.25, 1000.0), 30000, 11);
    std::vector<double> s2(xi.scalars().begin(), xi.scalars().end());
    std::vector<double> s1 = s2;
    for (auto& v : s1) v += c;
    const FineStepResult r = fine_step(s1, s2, 8.0, cfg);
    // Retained sets are the zero atoms only, all equal, so the conditional
    // means are exact.
    CHECK(r.delta == c);
}

TEST_CASE("fine step: chosen k satisfies the band-mass inequality stated via p_hat") {
    Shift1DConfig cfg;
    cfg.eta = 0.25;
    cfg.alpha = 0.25;
    cfg.sigma = 1.0;
    Rng rng(13, 0);
    std::vector<double> s1(20000), s2(20000);
    for (auto& v : s1) v = (rng.bernoulli(0.25) ? 0.0 : rng.gaussian(0.0, 40.0)) + rng.gaussian();
    for (auto& v : s2) v = (rng.bernoulli(0.25) ? 0.0 : rng.gaussian(0.0, 40.0)) + rng.gaussian();
    const double a_factor = 8.0;
    const FineStepResult r = fine_step(s1, s2, a_factor, cfg);
    REQUIRE(r.found);
    const double phat = p_hat(s1, a_factor, cfg.sigma, r.k, cfg.c_near, cfg.c_far) +
                        p_hat(s2, a_factor, cfg.sigma, r.k, cfg.c_near, cfg.c_far);
    const double radius = a_factor * cfg.sigma * double(r.k);
    const double mass = empirical_prob(s1, Interval::closed(0.0, radius)) +
                        empirical_prob(s2, Interval::closed(0.0, radius));
    CHECK(phat < cfg.eta * mass + cfg.slack_const * cfg.eta / double(r.k));
    // And no smaller index in range satisfies it.
    for (std::size_t k = cfg.k_lo(); k < r.k; ++k) {
        const double pk = p_hat(s1, a_factor, cfg.sigma, k, cfg.c_near, cfg.c_far) +
                          p_hat(s2, a_factor, cfg.sigma, k, cfg.c_near, cfg.c_far);
        const double rk = a_factor * cfg.sigma * double(k);
        const double mk = empirical_prob(s1, Interval::closed(0.0, rk)) +
                          empirical_prob(s2, Interval::closed(0.0, rk));
        CHECK(!(pk < cfg.eta * mk + cfg.slack_const * cfg.eta / double(k)));
    }
}

TEST_CASE("fine step: conditional-mean difference tracks E[z] - E[z'] under heavy tails") {
    // Pareto-tailed oblivious noise, gaussian vs recentered-Pareto observation
    // noise; both observation means are zero. Threshold 2*eta*A*sigma, the
    // constant calibrated once against this implementation.
    ObliviousNoiseSpec ob;
    ob.alpha = 0.25;
    ob.tail = TailSpec::symmetric_pareto(1.2, 5.0);
    const auto obs1 = ObservationNoiseSpec::gaussian(1.0);
    const auto obs2 = ObservationNoiseSpec::recentered_pareto(0.5);
    Shift1DConfig cfg;
    cfg.eta = 0.25;
    cfg.alpha = 0.25;
    cfg.sigma = std::max(obs1.stddev(), obs2.stddev());
    const double a_factor = 4.0 / std::sqrt(cfg.alpha);
    const double bound = 2.0 * cfg.eta * a_factor * cfg.sigma;
    int ok = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const std::size_t m = 200000;
        const SampleBatch xi1 = sample_oblivious(ob, m, derive_seed(seed, 1));
        const SampleBatch xi2 = sample_oblivious(ob, m, derive_seed(seed, 2));
        const SampleBatch y1 = sample_observation(obs1, m, derive_seed(seed, 3));
        const SampleBatch y2 = sample_observation(obs2, m, derive_seed(seed, 4));
        std::vector<double> s1(m), s2(m);
        for (std::size_t i = 0; i < m; ++i) {
            s1[i] = xi1.scalar_at(i) + y1.scalar_at(i);
            s2[i] = xi2.scalar_at(i) + y2.scalar_at(i);
        }
        const FineStepResult r = fine_step(s1, s2, a_factor, cfg);
        if (std::abs(r.delta) <= bound) ++ok;
    }
    CHECK(ok >= 18);
}

TEST_CASE("fine step: empty conditional set raises an estimation error") {
    Shift1DConfig cfg;
    cfg.eta = 0.25;
    cfg.alpha = 0.9;  // L small so the scan radius stays below the data
    cfg.sigma = 1e-6;
    std::vector<double> s(100, 5000.0);
    CHECK_THROWS_AS(fine_step(s, s, 1.0, cfg), EstimationError);
}

TEST_CASE("shift1d: exact recovery with no noise at all") {
    Shift1DConfig cfg;
    cfg.eta = 0.25;
    cfg.alpha = 0.25;
    cfg.sigma = 1.0;
    const std::size_t m = 8000;
    std::vector<double> s1(m, 7.3), s2(m, 0.0);
    const ShiftEstimate est = shift1d(s1, s2, cfg, 99);
    CHECK(est.value == 7.3);
    CHECK(!est.rough_only);
    CHECK(est.trace.size() == cfg.rounds() - 1);
}

TEST_CASE("shift1d: pareto-benchmark accuracy and refinement gain (3-seed slice)") {
    const auto ob = two_point_oblivious(0.25, 1000.0);
    const auto obs1 = ObservationNoiseSpec::gaussian(1.0);
    const auto obs2 = ObservationNoiseSpec::recentered_pareto(0.5);
    Shift1DConfig cfg;
    cfg.eta = 0.25;
    cfg.alpha = 0.25;
    cfg.sigma = std::max(obs1.stddev(), obs2.stddev());
    for (std::uint64_t seed : {1, 2, 3}) {
        const auto s1 = location_batch(ob, obs1, 7.3, 400000, derive_seed(seed, 21));
        const auto s2 = location_batch(ob, obs2, 0.0, 400000, derive_seed(seed, 22));
        const ShiftEstimate est = shift1d(s1, s2, cfg, seed);
        CHECK(std::abs(est.value - 7.3) <= 0.5);
        CHECK(std::abs(est.value - 7.3) < std::abs(est.rough - 7.3));
    }
}

TEST_CASE("shift1d: determinism is bitwise") {
    const auto ob = two_point_oblivious(0.3, 500.0);
    const auto obs = ObservationNoiseSpec::gaussian(1.0);
    Shift1DConfig cfg;
    cfg.eta = 0.25;
    cfg.alpha = 0.3;
    cfg.sigma = 1.0;
    const auto s1 = location_batch(ob, obs, 3.0, 40000, 77);
    const auto s2 = location_batch(ob, obs, 0.0, 40000, 78);
    const ShiftEstimate a = shift1d(s1, s2, cfg, 5);
    const ShiftEstimate b = shift1d(s1, s2, cfg, 5);
    CHECK(a.value == b.value);
    CHECK(a.rough == b.rough);
    REQUIRE(a.trace.size() == b.trace.size());
    for (std::size_t i = 0; i < a.trace.size(); ++i) {
        CHECK(a.trace[i].k == b.trace[i].k);
        CHECK(a.trace[i].delta == b.trace[i].delta);
    }
    const ShiftEstimate c = shift1d(s1, s2, cfg, 6);
    CHECK(a.value != c.value);
}

TEST_CASE("shift1d: translation equivariance is exact on integer data") {
    Shift1DConfig cfg;
    cfg.eta = 0.25;
    cfg.alpha = 0.3;
    cfg.sigma = 1.0;
    const std::size_t m = 40000;
    const auto s1 = integer_batch(0.3, 7.0, m, 1001);
    const auto s2 = integer_batch(0.3, 0.0, m, 1002);

    const ShiftEstimate base = shift1d(s1, s2, cfg, 42);

    std::vector<double> s1_shifted = s1;
    for (auto& v : s1_shifted) v += 64.0;
    CHECK(shift1d(s1_shifted, s2, cfg, 42).value == base.value + 64.0);

    std::vector<double> s2_shifted = s2;
    for (auto& v : s2_shifted) v += 64.0;
    CHECK(shift1d(s1, s2_shifted, cfg, 42).value == base.value - 64.0);
}

TEST_CASE("shift1d: scale equivariance is exact for power-of-two factors") {
    Shift1DConfig cfg;
    cfg.eta = 0.25;
    cfg.alpha = 0.3;
    cfg.sigma = 1.0;
    const std::size_t m = 40000;
    const auto s1 = integer_batch(0.3, 7.0, m, 2001);
    const auto s2 = integer_batch(0.3, 0.0, m, 2002);
    const ShiftEstimate base = shift1d(s1, s2, cfg, 11);
    for (double lambda : {0.5, 2.0, 4.0}) {
        std::vector<double> t1 = s1, t2 = s2;
        for (auto& v : t1) v *= lambda;
        for (auto& v : t2) v *= lambda;
        Shift1DConfig scaled = cfg;
        scaled.sigma = cfg.sigma * lambda;
        CHECK(shift1d(t1, t2, scaled, 11).value == base.value * lambda);
    }
}

TEST_CASE("shift1d: trace scale shrinks geometrically and k stays in range") {
    const auto ob = two_point_oblivious(0.3, 1000.0);
    const auto obs = ObservationNoiseSpec::gaussian(1.0);
    Shift1DConfig cfg;
    cfg.eta = 0.2;
    cfg.alpha = 0.3;
    cfg.sigma = 1.0;
    cfg.T_override = 4;
    const auto s1 = location_batch(ob, obs, 2.0, 60000, 300);
    const auto s2 = location_batch(ob, obs, 0.0, 60000, 301);
    const ShiftEstimate est = shift1d(s1, s2, cfg, 17);
    REQUIRE(est.trace.size() == 3);
    const double a0 = cfg.A0_multiplier / std::sqrt(cfg.alpha);
    CHECK(est.trace[0].scale == a0);
    CHECK(est.trace[1].scale == a0 * cfg.eta);
    CHECK(est.trace[2].scale == a0 * cfg.eta * cfg.eta);
    for (const auto& r : est.trace) {
        if (r.skipped) continue;
        CHECK(r.k >= cfg.k_lo());
        CHECK(r.k <= cfg.k_hi(cfg.k_lo()));
    }
}

TEST_CASE("shift1d: argument errors") {
    Shift1DConfig cfg;
    cfg.eta = 0.25;
    cfg.alpha = 0.25;
    cfg.sigma = 1.0;
    std::vector<double> tiny(100, 0.0);
    CHECK_THROWS_WITH_AS(shift1d(tiny, tiny, cfg, 1), doctest::Contains("at least"),
                         ArgumentError);
    std::vector<double> a(8000, 0.0), b(8001, 0.0);
    CHECK_THROWS_AS(shift1d(a, b, cfg, 1), ArgumentError);
}

TEST_CASE("shift1d: bounded-variance mode uses the polynomial index cap") {
    ObliviousNoiseSpec ob;
    ob.alpha = 0.3;
    ob.tail = TailSpec::uniform(2.0);
    ob.bounded_variance_mode = true;
    ob.sigma_xi = 2.0;
    const auto obs = ObservationNoiseSpec::gaussian(1.0);
    Shift1DConfig cfg;
    cfg.eta = 0.25;
    cfg.alpha = 0.3;
    cfg.sigma = 1.0;
    cfg.bounded_variance_mode = true;
    CHECK(cfg.k_hi(cfg.k_lo()) == 2371);  // ceil((1/(0.3*0.25))^3)
    const auto s1 = location_batch(ob, obs, 1.5, 40000, 400);
    const auto s2 = location_batch(ob, obs, 0.0, 40000, 401);
    const ShiftEstimate est = shift1d(s1, s2, cfg, 23);
    CHECK(std::abs(est.value - 1.5) <= 0.5);
}

TEST_CASE("trace renders to one csv row per round") {
    const auto ob = two_point_oblivious(0.3, 1000.0);
    const auto obs = ObservationNoiseSpec::gaussian(1.0);
    Shift1DConfig cfg;
    cfg.eta = 0.2;
    cfg.alpha = 0.3;
    cfg.sigma = 1.0;
    cfg.T_override = 3;
    const auto s1 = location_batch(ob, obs, 2.0, 40000, 500);
    const auto s2 = location_batch(ob, obs, 0.0, 40000, 501);
    const ShiftEstimate est = shift1d(s1, s2, cfg, 3);
    const std::string csv = trace_csv(est);
    const std::size_t rows = std::count(csv.begin(), csv.end(), '\n');
    CHECK(rows == est.trace.size() + 1);  // header + rounds
    CHECK(csv.rfind("round,scale,k,", 0) == 0);
}
