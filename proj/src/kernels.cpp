#include "lcf/kernels.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "lcf/errors.hpp"
#include "lcf/quadrature.hpp"

namespace lcf {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

void check_mass(double m) {
    if (!(m > 0.0))
        throw PreconditionViolation("kernel mass must be positive");
}

// Power series in z, valid for |z| < 1; used close to z = 0 where the closed form cancels.
double g_series(int p, double z) {
    double sum = 0.0;
    double term_pow = 1.0;  // (4z)^k
    for (int k = 1; k < 60; ++k) {
        term_pow *= 4.0 * z;
        // int_0^1 (a - a^2)^j da = (j!)^2 / (2j+1)!
        const int j = (p == 0) ? k + 1 : k;
        const double beta = std::exp(2.0 * std::lgamma(j + 1.0) - std::lgamma(2.0 * j + 2.0));
        const double t = term_pow / k * beta * (p == 0 ? 6.0 : 1.0);
        sum -= t;
        if (std::abs(t) < 1e-18 * std::abs(sum))
            break;
    }
    return sum;
}

}  // namespace

double fhat_quadrature(double m, int p, double q2) {
    check_mass(m);
    if (p != 0 && p != 2)
        throw PreconditionViolation("kernel index p must be 0 or 2");
    if (q2 == 0.0)
        return 0.0;
    const double s = q2 / (m * m);
    // interior roots r, 1 - r of the log argument when q2 > 4 m^2
    const bool split = s > 4.0;
    const double r = split ? 2.0 / (s * (1.0 + std::sqrt(1.0 - 4.0 / s))) : 0.0;
    auto weight = [&](double a) { return p == 0 ? 6.0 * (a - a * a) : 1.0; };
    // symmetric about a = 1/2
    QuadOptions q;
    q.epsabs = 1e-15;
    q.epsrel = 1e-13;
    if (!split) {
        auto f = [&](double a) { return weight(a) * std::log(std::abs(1.0 - (a - a * a) * s)); };
        return 2.0 * integrate_points(f, {0.0, 0.5}, q).value;
    }
    // log|1 - w s| = log s + log|a - r| + log(1 - r - a); the middle term goes into the weight
    auto smooth = [&](double a) { return weight(a) * (std::log(s) + std::log(1.0 - r - a)); };
    const double regular = integrate(smooth, 0.0, 0.5, q).value;
    const double left = integrate_weighted(weight, 0.0, r, 0.0, 0.0, 0, 1, q).value;
    const double right = integrate_weighted(weight, r, 0.5, 0.0, 0.0, 1, 0, q).value;
    return 2.0 * (regular + left + right);
}

cplx g_closed_complex(int p, double z) {
    if (p != 0 && p != 2)
        throw PreconditionViolation("kernel index p must be 0 or 2");
    if (z == 0.0)
        return 0.0;
    if (z == 1.0)
        return p == 0 ? -8.0 / 3.0 : -2.0;
    if (std::abs(z) < 0.05)
        return g_series(p, z);

    // z approached from the upper half plane
    const cplx s = std::sqrt(cplx(z * (z - 1.0), std::copysign(0.0, 2.0 * z - 1.0)));
    cplx arg = 1.0 - 2.0 * z + 2.0 * s;
    if (std::abs(arg) < 0.5)
        arg = 1.0 / (1.0 - 2.0 * z - 2.0 * s);  // same value, no cancellation
    cplx L = std::log(arg);
    if (L.imag() < -0.5 * kPi)  // cut along the negative imaginary axis
        L += cplx(0.0, 2.0 * kPi);
    const cplx bracket = L - cplx(0.0, z > 1.0 ? kPi : 0.0);
    if (p == 0)
        return -(3.0 + 5.0 * z) / (3.0 * z) + (1.0 + z - 2.0 * z * z) / (2.0 * z * s) * bracket;
    return -2.0 - s / z * bracket;
}

double fhat_closed(double m, int p, double q2) {
    check_mass(m);
    const cplx v = g_closed_complex(p, q2 / (4.0 * m * m));
    if (std::abs(v.imag()) > 1e-9 * std::max(1.0, std::abs(v.real()))) {
        std::ostringstream os;
        os << "closed form kernel has imaginary part " << v.imag() << " at q2 = " << q2;
        throw BranchFailure(os.str());
    }
    return v.real();
}

SpectralResidual spectral_identity(double q2, double b) {
    if (!(b > 0.0))
        throw PreconditionViolation("spectral identity needs b > 0");
    if (q2 == b)
        throw PreconditionViolation("spectral identity needs q2 != b");
    SpectralResidual out;
    out.lhs = std::log(std::abs(1.0 - q2 / b));
    if (q2 == 0.0)
        return out;

    const double A = 1e8 * std::max(b, std::abs(q2));
    auto f = [q2](double a) { return q2 / (a * (q2 - a)); };
    QuadOptions q;
    q.epsabs = 1e-14;
    q.epsrel = 1e-13;

    auto piecewise = [&](std::vector<double> pts) {
        double sum = 0.0;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i)
            sum += integrate(f, pts[i], pts[i + 1], q).value;
        return sum;
    };
    std::vector<double> geo;
    for (double a = b; a < A; a *= 2.0)
        geo.push_back(a);
    geo.push_back(A);
    const double tail = std::log1p(-q2 / A);

    if (q2 < b) {
        out.rhs = piecewise(geo) + tail;
    } else {
        // symmetric deleted neighbourhood around the pole, extrapolated to zero width
        const double scale = 0.5 * std::min(q2 - b, q2);
        const double hs[3] = {1e-2 * scale, 1e-3 * scale, 1e-4 * scale};
        double vals[3];
        for (int k = 0; k < 3; ++k) {
            const double h = hs[k];
            std::vector<double> left, right;
            for (double a : geo) {
                if (a < q2 - scale)
                    left.push_back(a);
                else if (a > q2 + scale)
                    right.push_back(a);
            }
            for (double w = h; w < scale; w *= 2.0) {
                left.push_back(q2 - w);
                right.push_back(q2 + w);
            }
            left.push_back(q2 - scale);
            right.push_back(q2 + scale);
            std::sort(left.begin(), left.end());
            std::sort(right.begin(), right.end());
            vals[k] = piecewise(left) + piecewise(right);
        }
        // error is odd in h
        Eigen::Matrix3d M;
        Eigen::Vector3d y;
        for (int k = 0; k < 3; ++k) {
            const double t = hs[k] / scale;
            M(k, 0) = 1.0;
            M(k, 1) = t;
            M(k, 2) = t * t * t;
            y(k) = vals[k];
        }
        out.rhs = M.fullPivLu().solve(y)(0) + tail;
    }
    out.residual = std::abs(out.lhs - out.rhs);
    return out;
}

double yukawa(double a, double r) {
    if (!(a >= 0.0) || !(r > 0.0))
        throw PreconditionViolation("Yukawa potential needs a >= 0 and r > 0");
    return -std::exp(-std::sqrt(a) * r) / (4.0 * kPi * r);
}

double uehling_moment_quadrature(double m) {
    check_mass(m);
    const double m2 = m * m;
    auto f = [m2](double a) {
        return std::sqrt(std::max(a - 4.0 * m2, 0.0)) * (a + 2.0 * m2) * std::pow(a, -3.5);
    };
    QuadOptions q;
    q.epsabs = 0.0;
    q.epsrel = 1e-12;
    return integrate_upper(f, 4.0 * m2, q).value;
}

namespace {

// sum over generations of int_{4m^2}^inf V_a(r) sqrt(a - 4m^2)(a + 2m^2) a^{-5/2} da,
// with a = 4 m^2 / u^2 the weight becomes sqrt(1 - u^2)(2 + u^2)/u on (0, 1].
double correction_integral(const MassSpectrum& spec, double r, double epsrel) {
    double total = 0.0;
    for (double m : spec.masses()) {
        auto f = [m, r](double u) {
            if (u <= 0.0)
                return 0.0;
            const double x = 2.0 * m * r / u;
            if (x > 700.0)
                return 0.0;
            return -std::exp(-x) / (4.0 * kPi * r) * std::sqrt(1.0 - u * u) * (2.0 + u * u) / u;
        };
        QuadOptions q;
        q.epsabs = 0.0;
        q.epsrel = epsrel;
        total += integrate_singular(f, 0.0, 1.0, q).value;
    }
    return total;
}

}  // namespace

double static_correction(const MassSpectrum& spec, double Z, double e2, double r) {
    if (!(r > 0.0))
        throw PreconditionViolation("static correction needs r > 0");
    if (Z == 0.0)
        return 0.0;
    return Z * e2 * e2 / (12.0 * kPi * kPi) * correction_integral(spec, r, 1e-12);
}

double static_correction_integral(const MassSpectrum& spec, double Z, double e2) {
    if (Z == 0.0)
        return 0.0;
    auto f = [&](double r) {
        if (r <= 0.0)
            return 0.0;
        return correction_integral(spec, r, 1e-11) * 4.0 * kPi * r * r;
    };
    QuadOptions q;
    q.epsabs = 0.0;
    q.epsrel = 1e-9;
    return Z * e2 * e2 / (12.0 * kPi * kPi) * integrate_upper(f, 0.0, q).value;
}

double uehling_coefficient(const MassSpectrum& spec, double Z, double e2) {
    if (spec.g() != 3)
        throw WrongGenerationCount("Uehling coefficient is stated for 3 generations");
    double s = 0.0;
    for (double m : spec.masses())
        s += 1.0 / (m * m);
    return Z * e2 * e2 / (60.0 * kPi * kPi) * s;
}

double coulomb(double Z, double e2, double r) {
    if (!(r > 0.0))
        throw PreconditionViolation("Coulomb potential needs r > 0");
    return -Z * e2 / (4.0 * kPi * r);
}

}  // namespace lcf
