#include <doctest.h>

#include <cmath>
#include <random>

#include "lcf/axial.hpp"
#include "lcf/errors.hpp"

using namespace lcf;

namespace {

double worst(const std::map<std::string, double>& r) {
    double w = 0.0;
    for (const auto& [k, v] : r)
        w = std::max(w, v);
    return w;
}

MassSpectrum random_spectrum(std::mt19937_64& rng, int g) {
    std::uniform_real_distribution<double> u(0.1, 10.0);
    while (true) {
        std::vector<double> m(g);
        for (auto& x : m)
            x = u(rng);
        std::sort(m.begin(), m.end());
        bool ok = true;
        for (int i = 0; i + 1 < g; ++i)
            ok = ok && m[i + 1] - m[i] > 1e-3 * m.back();
        if (ok)
            return MassSpectrum(m);
    }
}

Vec4 random_u(std::mt19937_64& rng, double lo, double hi, double scale) {
    std::uniform_real_distribution<double> c(-scale, scale);
    while (true) {
        Vec4 u(c(rng), c(rng), c(rng), c(rng));
        const double uu = mdot(u, u);
        if (uu > lo && uu < hi)
            return u;
    }
}

}  // namespace

TEST_CASE("gamma matrices") {
    const auto& g = gamma_matrices();
    const double eta[4] = {1, -1, -1, -1};
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            const Mat4 ac = g[a] * g[b] + g[b] * g[a];
            const Mat4 want = (a == b ? 2.0 * eta[a] : 0.0) * Mat4::Identity();
            CHECK((ac - want).cwiseAbs().maxCoeff() < 1e-15);
        }
    CHECK((gamma5() * gamma5() - Mat4::Identity()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((gamma5().adjoint() - gamma5()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((chi_left() * chi_right()).cwiseAbs().maxCoeff() < 1e-15);
    const Vec4 v(0.3, 1.0, -2.0, 0.5);
    CHECK(((slash(v) * slash(v)) - mdot(v, v) * Mat4::Identity()).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((spin_adjoint(slash(v)) - slash(v)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("smax closed form") {
    const MassSpectrum a({1, 2, 3});
    CHECK(smax(a) == doctest::Approx(4.5).epsilon(1e-14));
    CHECK(feasibility_bound(a) == doctest::Approx(-1.265625).epsilon(1e-14));
    CHECK(feasibility_bound(a) == doctest::Approx(-9.0 / 256 * 36).epsilon(1e-14));
    CHECK(smax(MassSpectrum({1, 2, 4})) == doctest::Approx(10.5).epsilon(1e-14));
    CHECK(smax_oracle(a) == doctest::Approx(4.5).epsilon(1e-12));
    const MassSpectrum b({1, 1.5, 2, 5});
    const double want = std::max((5 - 1.5) * 0.5 * 7.5, (5 - 2.0) * 1.0 * 8.0);
    CHECK(smax(b) == doctest::Approx(want).epsilon(1e-14));
    CHECK(smax_oracle(b) == doctest::Approx(smax(b)).epsilon(1e-12));
    CHECK(smax_oracle(a.scaled(2.0)) == doctest::Approx(8.0 * smax(a)).epsilon(1e-12));
    CHECK_THROWS_AS(smax(MassSpectrum({1, 2})), WrongGenerationCount);
}

TEST_CASE("smax agrees with the vertex enumeration") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const auto s = random_spectrum(rng, 3 + trial % 3);
        CHECK(smax_oracle(s) == doctest::Approx(smax(s)).epsilon(1e-10));
    }
}

TEST_CASE("phase closure") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    int closed = 0;
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<double> rho(2 + trial % 7);
        for (auto& r : rho)
            r = u(rng);
        const auto pc = phase_closure(rho);
        for (std::size_t k = 0; k < rho.size(); ++k)
            CHECK(std::abs(std::abs(pc.values[k]) - rho[k]) < 1e-14);
        if (pc.polygon) {
            CHECK(pc.closure < 1e-12);
            ++closed;
        }
    }
    CHECK(closed > 300);
    CHECK_FALSE(phase_closure({0.1, 0.2, 1.0}).polygon);
    CHECK(phase_closure({1.0, 1.0}).closure < 1e-15);
}

TEST_CASE("zero u gives the identity") {
    const auto s = construct(MassSpectrum({1, 2, 3}), Vec4::Zero());
    CHECK(s.kase == AxialCase::Null);
    CHECK((s.U - MatX::Identity(12, 12)).cwiseAbs().maxCoeff() == 0.0);
    for (const auto& [k, v] : s.residuals)
        CHECK(v < 1e-15);
}

TEST_CASE("timelike example") {
    const MassSpectrum m({1, 2, 3});
    const auto s = construct(m, Vec4(0.1, 0, 0, 0));
    CHECK(s.kase == AxialCase::Timelike);
    CHECK(worst(s.residuals) < 1e-9);
    CHECK(s.v_check > 0.0);
    CHECK(s.mn_residual < 1e-10);
    Eigen::SelfAdjointEigenSolver<MatX> es(s.V);
    CHECK(es.eigenvalues()(0) > 0.0);
}

TEST_CASE("infeasible spacelike u") {
    const MassSpectrum m({1, 2, 3});
    CHECK_THROWS_AS(construct(m, Vec4(0, 2, 0, 0)), Infeasible);
    CHECK_NOTHROW(construct(m, Vec4(0, 1.12, 0, 0)));
    CHECK_THROWS_AS(construct(m, Vec4(0, 1.13, 0, 0)), Infeasible);
}

TEST_CASE("random timelike u") {
    std::mt19937_64 rng(21);
    for (const auto& m : {MassSpectrum({1, 2, 3}), MassSpectrum({1, 1.5, 2, 5})}) {
        for (int trial = 0; trial < 50; ++trial) {
            const auto s = construct(m, random_u(rng, 1e-4, 1e9, 1.0));
            CHECK(s.kase == AxialCase::Timelike);
            CHECK(worst(s.residuals) < 1e-9);
            CHECK(s.v_check > 0.0);
            CHECK(s.mn_residual < 1e-10 * s.V.cwiseAbs().maxCoeff());
        }
    }
}

TEST_CASE("random spacelike u") {
    std::mt19937_64 rng(22);
    for (const auto& m : {MassSpectrum({1, 2, 3}), MassSpectrum({1, 1.5, 2, 5})}) {
        const double bound = feasibility_bound(m);
        const int g = m.g();
        for (int trial = 0; trial < 50; ++trial) {
            const auto s = construct(m, random_u(rng, bound, -1e-4, 3.0));
            CHECK(s.kase == AxialCase::Spacelike);
            CHECK(worst(s.residuals) < 1e-9);
            CHECK(s.v_check < 1e-10);
            CHECK(s.mn_residual < 1e-10);
            CHECK(s.closure < 1e-12);
            double sd = 0, smd = 0, sabs = 0, st = 0;
            for (int b = 0; b < g; ++b) {
                sd += s.d[b];
                smd += m[b] * s.d[b];
                sabs += std::abs(s.d[b]);
                st += s.tau[b];
                CHECK(std::abs(s.d[b]) <= s.tau[b] / 2 + 1e-12);
            }
            CHECK(std::abs(sd) < 1e-12);
            CHECK(std::abs(smd) < 1e-12 * m.max());
            CHECK(sabs <= g / 2.0 + 1e-12);
            CHECK(std::abs(st - g) < 1e-12);
        }
    }
}

TEST_CASE("spacelike u at the feasibility bound") {
    const MassSpectrum m({1, 2, 3});
    const double r = std::sqrt(-feasibility_bound(m));
    for (double f : {1 - 1e-6, 1 - 1e-14, 1.0}) {
        const auto s = construct(m, Vec4(0.0, 0.0, r * f, 0.0));
        CHECK(worst(s.residuals) < 1e-9);
        CHECK(s.closure < 1e-12);
    }
}

TEST_CASE("null u") {
    const MassSpectrum m({1, 2, 3});
    const Vec4 u(0.05, 0.03, 0.0, 0.04);
    const auto s = construct(m, u);
    CHECK(s.kase == AxialCase::Null);
    CHECK(s.residuals.at("cc1") < 1e-12);
    CHECK(s.residuals.at("cc3") < 1e-12);
    CHECK(s.residuals.at("cc0") < 1e-12);
    CHECK(s.residuals.at("remY2") < 1e-12);
    // second-order remainder for xi with a component along u
    const auto big = construct(m, 10.0 * u);
    CHECK(big.residuals.at("cc0_general") > 50.0 * s.residuals.at("cc0_general"));
}

TEST_CASE("U tends to the identity linearly") {
    const MassSpectrum m({1, 2, 3});
    for (const Vec4& uh : {Vec4(0.2, 1.0, 0.3, -0.1), Vec4(0.5, 0.3, 0.0, 0.4)}) {
        auto delta = [&](double eps) {
            return MatX(construct(m, eps * uh).U - MatX::Identity(12, 12));
        };
        const MatX d2 = delta(1e-2), d3 = delta(1e-3);
        const double ratio = d2.cwiseAbs().maxCoeff() / d3.cwiseAbs().maxCoeff();
        CHECK(ratio == doctest::Approx(10.0).epsilon(0.05));
        const double quad = (d2 / 1e-2 - d3 / 1e-3).cwiseAbs().maxCoeff();
        CHECK(quad < 0.05 * (d2 / 1e-2).cwiseAbs().maxCoeff());
    }
}

TEST_CASE("corrupted U is detected") {
    const MassSpectrum m({1, 2, 3});
    for (const Vec4& u : {Vec4(0.1, 0.02, 0, 0), Vec4(0.0, 0.5, 0.2, 0.0)}) {
        auto s = construct(m, u);
        CHECK(worst(s.residuals) < 1e-9);
        s.U(1, 4) += 1e-3;
        CHECK(worst(verify_conditions(s, m)) > 1e-5);
    }
}
