#pragma once

#include <array>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "lcf/fraction.hpp"
#include "lcf/quadrature.hpp"
#include "lcf/spectra.hpp"

namespace lcf {

using cplx = std::complex<double>;

inline constexpr double kPi3 = std::numbers::pi * std::numbers::pi * std::numbers::pi;
// Coefficient k in T^(0) = k / (2 r (t - r - i eps)).
inline constexpr double kExponentialPrefactor = -1.0 / (8.0 * kPi3);
// Cutoff normalization with the same eps -> 0 limit as the exponential model.
inline constexpr double kCutoffPrefactor = -1.0 / (8.0 * kPi3);
// Normalization of the cutoff model as it is usually quoted.
inline constexpr double kCutoffPrefactorQuoted = -1.0 / (16.0 * kPi3);

enum class RegKind { Exponential, HardCutoff };

struct RegularizationModel {
    RegKind kind = RegKind::Exponential;
    double prefactor = kExponentialPrefactor;

    static RegularizationModel exponential() { return {RegKind::Exponential, kExponentialPrefactor}; }
    static RegularizationModel cutoff(double k = kCutoffPrefactor) { return {RegKind::HardCutoff, k}; }
    std::string name() const;
};

// Only T^(0) and T^(-1) (any [p], optionally conjugated) can be evaluated.
cplx eval_factor(const RegularizationModel& model, const Factor& f, double t, double r, double eps);
cplx eval_fraction(const RegularizationModel& model, const SimpleFraction& f, double t, double r,
                   double eps);
cplx eval_sum(const RegularizationModel& model, const FractionSum& s, double t, double r,
              double eps);

enum class Window {
    FullLine,  // whole transversal line, extrapolated in the window size
    Literal,   // [r - eps, r + eps]
};

std::vector<double> geometric_grid(double lo, double hi, int n);

struct WeakOptions {
    Window window = Window::FullLine;
    std::vector<double> eps_over_r = geometric_grid(1e-4, 1e-2, 8);
    // full line: half-widths 2 pi N (in units of eps) used for the extrapolation
    std::vector<int> periods = {4, 8, 16, 32};
    double fit_threshold = 1e-6;
    double rel_tol = 1e-12;
};

struct WeakValue {
    cplx pole_coefficient;
    cplx log_coefficient;
    double fit_residual = 0.0;
    bool reliable = true;
};

// Fits E(eps) eps^(L-1) (i r)^L = a + b log(eps r) over the eps grid.
WeakValue weak_eval(const RegularizationModel& model, const FractionSum& f, double r,
                    const WeakOptions& opt = {});

struct BasicRatios {
    double r0 = 0.0, r2 = 0.0, r3 = 0.0;
    std::array<cplx, 4> pole{};
};

BasicRatios basic_ratios(const RegularizationModel& model, double r = 1.0,
                         const WeakOptions& opt = {});

struct FieldConstants {
    double r0 = 0.0, r2 = 0.0, r3 = 0.0;
    double sigma0 = 0.0, sigma2 = 0.0;
    double C0 = 0.0;
    double mass_term = 0.0;
    double e2 = 0.0;
    double M2 = 0.0;
    double e() const;
    double M() const;
};

// C0 = r0 - sigma0, mass_term = r2 (sum m)^2 + r3 sum m^2 - 2 sigma2 sum m^2.
FieldConstants field_constants_from_ratios(const MassSpectrum& spec, double r0, double r2,
                                           double r3);
FieldConstants field_constants(const MassSpectrum& spec, const RegularizationModel& model,
                               const WeakOptions& opt = {});

struct Range {
    double lo = 0.0, hi = 0.0;
    int n = 1;
    std::vector<double> values() const;
};

enum class RowStatus { Ok, NonPositiveC0, Invalid };

struct ScanRow {
    double ratio2 = 0.0, ratio3 = 0.0;
    RowStatus status = RowStatus::Ok;
    double e = 0.0, M_over_m1 = 0.0, M2_over_m1sq = 0.0;
};

struct ScanResult {
    std::vector<ScanRow> rows;
    int nonpositive = 0;
    int invalid = 0;
    BasicRatios ratios;
};

// Rows in row-major order (m2 outer, m3 inner) for masses (1, ratio2, ratio3).
ScanResult scan(const RegularizationModel& model, const Range& m2, const Range& m3,
                const WeakOptions& opt = {});
ScanResult scan_with_ratios(const BasicRatios& ratios, const Range& m2, const Range& m3);

}  // namespace lcf
