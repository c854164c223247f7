#include <doctest.h>

#include <cmath>

#include "gabor/lattice.hpp"
#include "gabor/rng.hpp"
#include "gabor/weights.hpp"

using namespace gabor;

TEST_CASE("catalogued weights are positive and submultiplicative") {
    const Weight families[] = {Weight::constant(), Weight::polynomial(2.0),
                               Weight::subexponential(1.0, 0.5),
                               Weight::exponential(1.5)};
    SplitMix64 rng(7);
    for (const Weight& w : families) {
        for (int trial = 0; trial < 200; ++trial) {
            const double t1 = 20.0 * (rng.uniform() - 0.5);
            const double t2 = 20.0 * (rng.uniform() - 0.5);
            CHECK(w(t1) > 0.0);
            CHECK(w(t1 + t2) <= w(t1) * w(t2) * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("GRS catalogue verdicts") {
    CHECK(grs_catalogue(Weight::polynomial(2.0)));
    CHECK(grs_catalogue(Weight::subexponential(1.0, 0.5)));
    CHECK(grs_catalogue(Weight::constant()));
    CHECK_FALSE(grs_catalogue(Weight::exponential(1.0)));
}

TEST_CASE("weight constructors validate parameters") {
    CHECK_THROWS_AS(Weight::polynomial(0.5), Error);
    CHECK_THROWS_AS(Weight::subexponential(1.0, 1.5), Error);
    CHECK_THROWS_AS(Weight::subexponential(-1.0, 0.5), Error);
    CHECK_THROWS_AS(Weight::exponential(0.0), Error);
}

TEST_CASE("lattice derives exact rational geometry") {
    // a = 1 s at dt = 1/32, ab = 1/2
    const Lattice lat(1, 2, 32, 1, 32);
    CHECK(lat.a() == doctest::Approx(1.0));
    CHECK(lat.b() == doctest::Approx(0.5));
    CHECK(lat.ab() == doctest::Approx(0.5));
    CHECK(lat.inv_b_samples() == 64);
    CHECK(lat.inv_b() == doctest::Approx(2.0));
    CHECK(lat.tf() == doctest::Approx(2.0));
    CHECK(lat.regime() == FrameRegime::oversampled);

    const Lattice critical(1, 1, 32, 1, 32);
    CHECK(critical.regime() == FrameRegime::critical);
    const Lattice under(3, 2, 33, 1, 32);
    CHECK(under.regime() == FrameRegime::undersampled);
}

TEST_CASE("lattice construction validates inputs") {
    CHECK_THROWS_AS(Lattice(2, 4, 32, 1, 32), Error);   // not coprime
    CHECK_THROWS_AS(Lattice(0, 1, 32, 1, 32), Error);   // non-positive
    CHECK_THROWS_AS(Lattice(10, 13, 32, 1, 32), Error); // p does not divide a_samples
    CHECK_NOTHROW(Lattice(10, 13, 320, 1, 320));
}

TEST_CASE("adjoint steps land on the grid for the sweep lattices") {
    for (auto [p, q] : {std::pair{1, 2}, {2, 3}, {10, 13}, {10, 11}}) {
        const Lattice lat(p, q, 320, 1, 320);
        CHECK(lat.inv_b_samples() * p == 320 * q);
        CHECK(lat.ab() == doctest::Approx(double(p) / double(q)));
    }
}
