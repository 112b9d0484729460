#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace lcf {

struct QuadOptions {
    double epsabs = 1e-12;
    double epsrel = 1e-10;
    std::size_t limit = 20000;  // subinterval budget
};

struct QuadResult {
    double value = 0.0;
    double abserr = 0.0;
};

using RealFn = std::function<double(double)>;
using ComplexFn = std::function<std::complex<double>(double)>;

// Adaptive Gauss-Kronrod (15 point rule) on a finite interval.
QuadResult integrate(const RealFn& f, double a, double b, const QuadOptions& opt = {});

// Adaptive rule with extrapolation, tolerates integrable endpoint singularities.
QuadResult integrate_singular(const RealFn& f, double a, double b, const QuadOptions& opt = {});

// Integrable singularities at the given interior points (endpoints are added).
QuadResult integrate_points(const RealFn& f, std::vector<double> points,
                            const QuadOptions& opt = {});

// int_a^b f(x) W(x) dx with W = (x-a)^alpha (b-x)^beta log^mu(x-a) log^nu(b-x), mu, nu in {0, 1}.
QuadResult integrate_weighted(const RealFn& f, double a, double b, double alpha, double beta,
                              int mu, int nu, const QuadOptions& opt = {});

// Semi-infinite range [a, inf).
QuadResult integrate_upper(const RealFn& f, double a, const QuadOptions& opt = {});

// Cauchy principal value of int_a^b f(x) / (x - c) dx.
QuadResult integrate_cauchy(const RealFn& f, double a, double b, double c,
                            const QuadOptions& opt = {});

// Real and imaginary parts integrated separately with the 15 point rule.
std::complex<double> integrate_complex(const ComplexFn& f, double a, double b,
                                       const QuadOptions& opt = {});

}  // namespace lcf
