#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lcf/errors.hpp"
#include "lcf/spectra.hpp"

using namespace lcf;

namespace {

MassSpectrum random_triple(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.01, 10.0);
    while (true) {
        std::vector<double> m{u(rng), u(rng), u(rng)};
        std::sort(m.begin(), m.end());
        if (m[1] - m[0] > 1e-3 * m[2] && m[2] - m[1] > 1e-3 * m[2])
            return MassSpectrum(m);
    }
}

}  // namespace

TEST_CASE("mixing coefficients for masses 1,2,3") {
    const auto mix = solve_mixing(MassSpectrum({1, 2, 3}));
    CHECK(mix.d[0] == doctest::Approx(1.0 / 12).epsilon(1e-14));
    CHECK(mix.d[1] == doctest::Approx(-1.0 / 6).epsilon(1e-14));
    CHECK(mix.d[2] == doctest::Approx(1.0 / 12).epsilon(1e-14));
    for (double r : mix.residuals)
        CHECK(r < 1e-14);
    // sum m^2 d = 1/6 and sum m = 6
    const double m2d = mix.d[0] + 4 * mix.d[1] + 9 * mix.d[2];
    CHECK(m2d == doctest::Approx(1.0 / 6).epsilon(1e-14));
    CHECK(mix.mass_identity == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("mixing constraints for masses 1,2,4") {
    const auto mix = solve_mixing(MassSpectrum({1, 2, 4}));
    for (double r : mix.residuals)
        CHECK(r < 1e-14);
}

TEST_CASE("closed form agrees with linear solve on random triples") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto spec = random_triple(rng);
        const auto mix = solve_mixing(spec);
        double dmax = 0;
        for (double x : mix.d)
            dmax = std::max(dmax, std::abs(x));
        const double scale1 = dmax, scale2 = dmax * spec.max(),
                     scale3 = dmax * std::pow(spec.max(), 3);
        CHECK(mix.residuals[0] / scale1 < 1e-11);
        CHECK(mix.residuals[1] / scale2 < 1e-11);
        CHECK(mix.residuals[2] / scale3 < 1e-11);
        CHECK(mix.closed_form_gap < 1e-12);
        CHECK(mix.mass_identity == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("log constants for masses 1,2,3") {
    constexpr double pi3 = std::numbers::pi * std::numbers::pi * std::numbers::pi;
    const auto c = log_constants(MassSpectrum({1, 2, 3}));
    const double s3_expected = -8.0 / 3.0 * std::log(2.0) + 4.5 * std::log(3.0);
    CHECK(32 * pi3 * c.s3 == doctest::Approx(s3_expected).epsilon(1e-13));
    CHECK(32 * pi3 * c.s3 == doctest::Approx(3.095363).epsilon(1e-6));
    // independent: sigma0 = ln 36 - 3 * 32 pi^3 s3, sigma2 = 3 (sum m^2 ln m^2)/14 - 3 * 32 pi^3 s3
    CHECK(c.sigma0 == doctest::Approx(std::log(36.0) - 3 * s3_expected).epsilon(1e-13));
    CHECK(c.sigma2 == doctest::Approx(3 * (4 * std::log(4.0) + 9 * std::log(9.0)) / 14 -
                                      3 * s3_expected)
                          .epsilon(1e-13));
    CHECK(c.sigma0 == doctest::Approx(-5.702572).epsilon(1e-6));
    CHECK(c.sigma2 == doctest::Approx(-3.860331).epsilon(1e-6));
}

TEST_CASE("sigma constants depend only on mass ratios") {
    const auto base = log_constants(MassSpectrum({1, 2, 3}));
    const auto doubled = log_constants(MassSpectrum({2, 4, 6}));
    CHECK(std::abs(doubled.sigma0 - base.sigma0) < 1e-12);
    CHECK(std::abs(doubled.sigma2 - base.sigma2) < 1e-12);

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const auto spec = random_triple(rng);
        const auto c = log_constants(spec);
        for (double L : {0.5, 3.0, 100.0}) {
            const auto cl = log_constants(spec.scaled(L));
            CHECK(std::abs(cl.sigma0 - c.sigma0) < 1e-10);
            CHECK(std::abs(cl.sigma2 - c.sigma2) < 1e-10);
        }
    }
}

TEST_CASE("spectrum validation") {
    CHECK_THROWS_AS(MassSpectrum({1, 1, 3}), DegenerateMasses);
    CHECK_THROWS_AS(MassSpectrum({1, 1 + 1e-12, 3}), DegenerateMasses);
    CHECK_THROWS_AS(MassSpectrum({3, 2, 1}), InvalidMasses);
    CHECK_THROWS_AS(MassSpectrum({-1, 2, 3}), InvalidMasses);
    CHECK_THROWS_AS(MassSpectrum({}), InvalidMasses);
    CHECK_THROWS_AS(solve_mixing(MassSpectrum({1, 2, 3, 4})), WrongGenerationCount);
    CHECK_THROWS_AS(solve_mixing(MassSpectrum({1, 2})), WrongGenerationCount);
    try {
        MassSpectrum({1, 1, 3});
    } catch (const DegenerateMasses& e) {
        CHECK(std::string(e.what()).find("m1 and m2") != std::string::npos);
    }
}

TEST_CASE("moments") {
    const MassSpectrum spec({1, 2, 3});
    CHECK(spec.moment(1) == 6);
    CHECK(spec.moment(2) == 14);
    CHECK(spec.moment(3) == 36);
}
