#pragma once

#include <complex>
#include <vector>

#include "lcf/spectra.hpp"

namespace lcf {

// p = 0: 6 int_0^1 (a - a^2) ln|1 - (a - a^2) q2/m^2| da
// p = 2:   int_0^1           ln|1 - (a - a^2) q2/m^2| da
double fhat_quadrature(double m, int p, double q2);

// Closed form g_p(z) at z = q2 / (4 m^2) approached from the upper half plane.
double fhat_closed(double m, int p, double q2);

// Complex closed form before taking the real part (exposed for branch checks).
std::complex<double> g_closed_complex(int p, double z);

struct SpectralResidual {
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
};

// ln|1 - q2/b| against int_b^inf (PP 1/(q2 - a) + 1/a) da.
SpectralResidual spectral_identity(double q2, double b);
inline double spectral_identity_residual(double q2, double b) {
    return spectral_identity(q2, b).residual;
}

// V_a(r) = -exp(-sqrt(a) r) / (4 pi r)
double yukawa(double a, double r);

// int_{4m^2}^inf sqrt(a - 4m^2) (a + 2m^2) a^{-7/2} da in the original variable.
double uehling_moment_quadrature(double m);

// Short-range part of the static potential of a point charge Z.
double static_correction(const MassSpectrum& spec, double Z, double e2, double r);

// int_0^inf static_correction(r) 4 pi r^2 dr
double static_correction_integral(const MassSpectrum& spec, double Z, double e2);

// Z e^4 / (60 pi^2) sum m^-2
double uehling_coefficient(const MassSpectrum& spec, double Z, double e2);

double coulomb(double Z, double e2, double r);

}  // namespace lcf
