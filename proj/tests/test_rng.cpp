#include <doctest.h>

#include <cmath>
#include <vector>

#include "oblivion/rng.hpp"

using namespace oblivion;

TEST_CASE("fixed seed reproduces the exact sequence") {
    Rng a(42, 7), b(42, 7);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("distinct streams from one seed differ") {
    Rng a(42, 1), b(42, 2);
    std::size_t same = 0;
    for (int i = 0; i < 1000; ++i)
        if (a.next_u64() == b.next_u64()) ++same;
    CHECK(same == 0);
}

TEST_CASE("uniform moments") {
    Rng rng(3, 0);
    const int n = 200000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = rng.next_double();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        sum += u;
        sum2 += u * u;
    }
    CHECK(std::abs(sum / n - 0.5) < 0.005);
    CHECK(std::abs(sum2 / n - 1.0 / 3.0) < 0.005);
}

TEST_CASE("gaussian moments") {
    Rng rng(11, 0);
    const int n = 200000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double g = rng.gaussian();
        sum += g;
        sum2 += g * g;
    }
    CHECK(std::abs(sum / n) < 0.01);
    CHECK(std::abs(sum2 / n - 1.0) < 0.02);
}

TEST_CASE("below has no visible modulo bias on small ranges") {
    Rng rng(5, 0);
    std::vector<int> counts(7, 0);
    const int n = 700000;
    for (int i = 0; i < n; ++i) ++counts[rng.below(7)];
    for (int c : counts) CHECK(std::abs(c - n / 7) < 2000);
}

TEST_CASE("pareto survival matches the closed form") {
    Rng rng(9, 0);
    const int n = 400000;
    int above2 = 0, above5 = 0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.pareto(2.5, 1.0);
        CHECK(x >= 1.0);
        if (x > 2.0) ++above2;
        if (x > 5.0) ++above5;
    }
    CHECK(std::abs(above2 / double(n) - std::pow(2.0, -2.5)) < 0.004);
    CHECK(std::abs(above5 / double(n) - std::pow(5.0, -2.5)) < 0.002);
}

TEST_CASE("derive_seed separates substreams") {
    CHECK(derive_seed(1, 2, 3) != derive_seed(1, 3, 2));
    CHECK(derive_seed(1, 2) != derive_seed(2, 1));
    Rng a(derive_seed(10, 0), 0), b(derive_seed(10, 1), 0);
    CHECK(a.next_u64() != b.next_u64());
}
