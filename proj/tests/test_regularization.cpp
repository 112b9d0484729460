#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lcf/errors.hpp"
#include "lcf/regularization.hpp"

using namespace lcf;

namespace {

constexpr double kPi = std::numbers::pi;

const BasicRatios& exp_ratios() {
    static const BasicRatios r = basic_ratios(RegularizationModel::exponential());
    return r;
}

const BasicRatios& cutoff_ratios() {
    static const BasicRatios r = basic_ratios(RegularizationModel::cutoff());
    return r;
}

}  // namespace

TEST_CASE("factor values") {
    const auto ex = RegularizationModel::exponential();
    const cplx v = eval_factor(ex, T(0), 1.0, 1.0, 0.01);
    CHECK(std::abs(v.real()) < 1e-15);
    CHECK(v.imag() == doctest::Approx(-100.0 / (16 * kPi3)).epsilon(1e-14));
    CHECK(v.imag() == doctest::Approx(-0.201569).epsilon(1e-5));
    CHECK(eval_factor(ex, Tbar(0), 1.0, 1.0, 0.01).imag() ==
          doctest::Approx(0.201569).epsilon(1e-5));
    // [p] does not change the value
    CHECK(eval_factor(ex, T(0, 2), 1.3, 1.0, 0.01) == eval_factor(ex, T(0, 0), 1.3, 1.0, 0.01));

    const double r = 1.5, eps = 0.02;
    const cplx c = eval_factor(RegularizationModel::cutoff(), T(0), r, r, eps);
    CHECK(std::abs(c.real()) < 1e-15);
    CHECK(c.imag() == doctest::Approx(-1.0 / (16 * kPi3 * r * eps)).epsilon(1e-14));
    const cplx q = eval_factor(RegularizationModel::cutoff(kCutoffPrefactorQuoted), T(0), r, r, eps);
    CHECK(q.imag() == doctest::Approx(-1.0 / (32 * kPi3 * r * eps)).epsilon(1e-14));
}

TEST_CASE("T(-1) is -(2/r) d/dt T(0)") {
    for (auto model : {RegularizationModel::exponential(), RegularizationModel::cutoff()}) {
        const double r = 1.0, eps = 0.01;
        for (double x : {-7.3, -1.0, -0.26, -0.24, -0.01, 0.0, 0.1, 0.249, 0.251, 3.0, 40.0}) {
            const double t = r + eps * x, h = 1e-5 * eps;
            const cplx d = (eval_factor(model, T(0), t + h, r, eps) -
                            eval_factor(model, T(0), t - h, r, eps)) /
                           (2 * h);
            const cplx want = -2.0 / r * d;
            const cplx got = eval_factor(model, T(-1), t, r, eps);
            CHECK(std::abs(got - want) < 1e-7 * std::abs(got));
        }
    }
}

TEST_CASE("cutoff profile is continuous across the series switch") {
    const auto cut = RegularizationModel::cutoff();
    for (double x : {0.25, -0.25}) {
        const double eps = 0.01;
        for (auto f : {T(0), T(-1)}) {
            const cplx a = eval_factor(cut, f, 1.0 + eps * x * (1 - 1e-12), 1.0, eps);
            const cplx b = eval_factor(cut, f, 1.0 + eps * x * (1 + 1e-12), 1.0, eps);
            CHECK(std::abs(a - b) < 1e-10 * std::abs(a));
        }
    }
}

TEST_CASE("factors that cannot be evaluated") {
    const auto ex = RegularizationModel::exponential();
    CHECK_THROWS_AS(eval_factor(ex, T(1), 1, 1, 0.01), UnsupportedFactor);
    CHECK_THROWS_AS(eval_factor(ex, T(-2), 1, 1, 0.01), UnsupportedFactor);
    CHECK_THROWS_AS(eval_factor(ex, Tcurly(0), 1, 1, 0.01), UnsupportedFactor);
    CHECK_THROWS_AS(eval_factor(ex, T(0), 1, 0, 0.01), UnsupportedFactor);
    CHECK_THROWS_AS(weak_eval(ex, FractionSum(SimpleFraction(1, {T(1), T(0)})), 1.0),
                    UnsupportedFactor);
}

TEST_CASE("exponential basic fractions are pointwise proportional") {
    const auto ex = RegularizationModel::exponential();
    const auto c = encode_basic_fractions();
    const double r = 1.0, eps = 1e-3;
    for (int i = 0; i < 4; ++i) {
        const cplx ref = eval_sum(ex, c[i], r, r, eps) / eval_sum(ex, c[1], r, r, eps);
        for (double x : {-20.0, -3.0, -0.5, 0.7, 4.0, 50.0}) {
            const cplx q = eval_sum(ex, c[i], r + eps * x, r, eps) /
                           eval_sum(ex, c[1], r + eps * x, r, eps);
            CHECK(std::abs(q - ref) < 1e-8 * std::abs(ref));
        }
    }
}

TEST_CASE("weak evaluation without T(1) factors has no logarithm") {
    const auto c = encode_basic_fractions();
    for (auto model : {RegularizationModel::exponential(), RegularizationModel::cutoff()}) {
        const auto w = weak_eval(model, c[1], 1.0);
        CHECK(std::abs(w.log_coefficient) < 1e-8 * std::abs(w.pole_coefficient));
        CHECK(w.reliable);
        CHECK(w.fit_residual < 1e-6);
    }
}

TEST_CASE("constant integrand on the literal window") {
    WeakOptions opt;
    opt.window = Window::Literal;
    const FractionSum one(SimpleFraction(1, {T(0)}, {T(0)}));
    CHECK(one.degree() == 0);
    const auto w = weak_eval(RegularizationModel::exponential(), one, 1.0, opt);
    CHECK(w.pole_coefficient.real() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::abs(w.pole_coefficient.imag()) < 1e-12);
}

TEST_CASE("total derivatives integrate to zero on the full line") {
    const auto c = encode_basic_fractions();
    const auto d = nabla(SimpleFraction(1, {T(0), T(0), Tbar(0)}));
    // the values are round-off, so the relative fit residual means nothing here
    WeakOptions loose;
    loose.fit_threshold = 1.0;
    for (auto model : {RegularizationModel::exponential(), RegularizationModel::cutoff()}) {
        const double scale = std::abs(weak_eval(model, c[1], 1.0).pole_coefficient);
        const auto w = weak_eval(model, d, 1.0, loose);
        CHECK(std::abs(w.pole_coefficient) < 1e-6 * scale);
    }
}

TEST_CASE("pole coefficients do not depend on r") {
    const auto c = encode_basic_fractions();
    for (auto model : {RegularizationModel::exponential(), RegularizationModel::cutoff()}) {
        for (int i : {0, 1, 3}) {
            const cplx ref = weak_eval(model, c[i], 1.0).pole_coefficient;
            for (double r : {0.5, 2.0}) {
                const cplx v = weak_eval(model, c[i], r).pole_coefficient;
                CHECK(std::abs(v - ref) < 1e-5 * std::abs(ref));
            }
        }
    }
}

TEST_CASE("ratios for the exponential model") {
    const auto& r = exp_ratios();
    CHECK(r.r2 == doctest::Approx(-2.0).epsilon(1e-6));
    CHECK(r.r3 == doctest::Approx(2.0).epsilon(1e-6));
    // value of the c0 fraction as it is written
    CHECK(r.r0 == doctest::Approx(-7.0 / 6).epsilon(1e-6));
}

TEST_CASE("ratios for the cutoff model") {
    const auto& r = cutoff_ratios();
    CHECK(r.r2 == doctest::Approx(-3.0).epsilon(1e-6));
    CHECK(r.r3 == doctest::Approx(3.0).epsilon(1e-6));
    CHECK(r.r0 == doctest::Approx(-7.0 / 4).epsilon(1e-6));
    const auto& e = exp_ratios();
    for (double q : {r.r0 / e.r0, r.r2 / e.r2, r.r3 / e.r3}) {
        CHECK(q >= 2.0 / 3 - 1e-6);
        CHECK(q <= 1.5 + 1e-6);
    }
}

TEST_CASE("ratios do not depend on the eps grid") {
    WeakOptions opt;
    opt.eps_over_r = geometric_grid(1e-5, 1e-3, 6);
    for (auto model : {RegularizationModel::exponential(), RegularizationModel::cutoff()}) {
        const auto a = basic_ratios(model);
        const auto b = basic_ratios(model, 1.0, opt);
        CHECK(b.r0 == doctest::Approx(a.r0).epsilon(1e-5));
        CHECK(b.r2 == doctest::Approx(a.r2).epsilon(1e-5));
        CHECK(b.r3 == doctest::Approx(a.r3).epsilon(1e-5));
    }
}

TEST_CASE("fit failure is reported") {
    WeakOptions opt;
    opt.fit_threshold = 0.0;
    opt.eps_over_r = geometric_grid(1e-4, 1e-2, 6);
    const auto c = encode_basic_fractions();
    CHECK_THROWS_AS(weak_eval(RegularizationModel::cutoff(), c[0], 1.0, opt), FitFailure);
    opt.eps_over_r = {1e-3};
    CHECK_THROWS_AS(weak_eval(RegularizationModel::cutoff(), c[0], 1.0, opt), FitFailure);
}

TEST_CASE("field constants from given ratios") {
    const MassSpectrum s({1, 2, 3});
    const auto a = field_constants_from_ratios(s, -0.5, -2.0, 2.0);
    CHECK(a.C0 == doctest::Approx(5.202572).epsilon(1e-6));
    CHECK(a.M2 == doctest::Approx(12.319).epsilon(1e-4));
    CHECK(a.e() == doctest::Approx(4.771).epsilon(1e-3));
    CHECK(a.e2 == doctest::Approx(12 * kPi * kPi / a.C0).epsilon(1e-14));
    CHECK(a.M2 == doctest::Approx(a.mass_term / a.C0).epsilon(1e-14));
    const auto b = field_constants_from_ratios(s, -0.75, -3.0, 3.0);
    CHECK(b.C0 == doctest::Approx(4.952572).epsilon(1e-6));
    CHECK(b.M2 == doctest::Approx(8.499).epsilon(1e-3));
    CHECK_THROWS_AS(field_constants_from_ratios(s, -10.0, -2.0, 2.0), NonPositiveC0);
}

TEST_CASE("field constants of the models") {
    const MassSpectrum s({1, 2, 3});
    const auto& r = exp_ratios();
    const auto fc = field_constants(s, RegularizationModel::exponential());
    const auto ref = field_constants_from_ratios(s, r.r0, r.r2, r.r3);
    CHECK(fc.C0 == doctest::Approx(ref.C0).epsilon(1e-12));
    CHECK(fc.C0 == doctest::Approx(5.702572 - 7.0 / 6).epsilon(1e-6));
    CHECK(fc.M2 > 0.0);
    // scaling the masses keeps e and scales M
    const auto big = field_constants_from_ratios(s.scaled(5.0), r.r0, r.r2, r.r3);
    CHECK(big.e() == doctest::Approx(ref.e()).epsilon(1e-10));
    CHECK(big.M() == doctest::Approx(5.0 * ref.M()).epsilon(1e-10));
    CHECK_THROWS_AS(field_constants(MassSpectrum({1, 2}), RegularizationModel::exponential()),
                    WrongGenerationCount);
}

TEST_CASE("scan over mass ratios") {
    const auto& r = exp_ratios();
    const auto res = scan_with_ratios(r, {1.1, 5.0, 12}, {1.2, 6.0, 13});
    CHECK(res.rows.size() == 12 * 13);
    CHECK(res.rows[1].ratio2 == doctest::Approx(1.1));
    CHECK(res.rows[1].ratio3 == doctest::Approx(1.6));
    int ok = 0;
    for (const auto& row : res.rows) {
        if (row.ratio3 <= row.ratio2) {
            CHECK(row.status == RowStatus::Invalid);
            continue;
        }
        if (row.status != RowStatus::Ok)
            continue;
        ++ok;
        CHECK(row.M2_over_m1sq > 0.0);
        CHECK(row.e > 0.0);
    }
    CHECK(ok + res.nonpositive + res.invalid == static_cast<int>(res.rows.size()));
    CHECK(ok > 0);

    const auto near = scan_with_ratios(r, {1.05, 1.05, 1}, {1.1, 1.1, 1});
    const auto far = scan_with_ratios(r, {3, 3, 1}, {5, 5, 1});
    CHECK(near.rows[0].e > far.rows[0].e);

    // one grid point is the same as a direct evaluation, also with a different m1
    const auto one = scan_with_ratios(r, {2, 2, 1}, {3, 3, 1});
    const auto fc = field_constants_from_ratios(MassSpectrum({7, 14, 21}), r.r0, r.r2, r.r3);
    CHECK(one.rows[0].e == doctest::Approx(fc.e()).epsilon(1e-9));
    CHECK(one.rows[0].M_over_m1 == doctest::Approx(fc.M() / 7).epsilon(1e-9));
}

TEST_CASE("scan rows with non-positive C0 are kept and counted") {
    BasicRatios r;
    r.r0 = -20.0;
    r.r2 = -2.0;
    r.r3 = 2.0;
    const auto res = scan_with_ratios(r, {2, 3, 2}, {4, 5, 2});
    CHECK(res.rows.size() == 4);
    CHECK(res.nonpositive == 4);
    for (const auto& row : res.rows)
        CHECK(row.status == RowStatus::NonPositiveC0);
}
