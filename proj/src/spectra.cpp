#include "lcf/spectra.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "lcf/errors.hpp"

namespace lcf {

MassSpectrum::MassSpectrum(std::vector<double> masses) : masses_(std::move(masses)) {
    if (masses_.empty())
        throw InvalidMasses("mass spectrum is empty");
    for (std::size_t i = 0; i < masses_.size(); ++i) {
        if (!(masses_[i] > 0.0) || !std::isfinite(masses_[i])) {
            std::ostringstream os;
            os << "mass m" << i + 1 << " = " << masses_[i] << " is not a positive number";
            throw InvalidMasses(os.str());
        }
    }
    const double top = *std::max_element(masses_.begin(), masses_.end());
    for (std::size_t i = 0; i + 1 < masses_.size(); ++i) {
        const double gap = masses_[i + 1] - masses_[i];
        if (std::abs(gap) < kDegeneracyThreshold * top) {
            std::ostringstream os;
            os << "masses m" << i + 1 << " and m" << i + 2 << " are degenerate (" << masses_[i]
               << ", " << masses_[i + 1] << ")";
            throw DegenerateMasses(os.str());
        }
        if (gap < 0.0) {
            std::ostringstream os;
            os << "masses must be strictly increasing, but m" << i + 1 << " = " << masses_[i]
               << " > m" << i + 2 << " = " << masses_[i + 1];
            throw InvalidMasses(os.str());
        }
    }
}

double MassSpectrum::moment(int k) const {
    double s = 0.0;
    for (double m : masses_)
        s += std::pow(m, k);
    return s;
}

MassSpectrum MassSpectrum::scaled(double factor) const {
    std::vector<double> out = masses_;
    for (double& m : out)
        m *= factor;
    return MassSpectrum(out);
}

std::vector<double> mixing_closed_form(const MassSpectrum& spec) {
    const int g = spec.g();
    const double total = spec.moment(1);
    std::vector<double> d(g);
    for (int b = 0; b < g; ++b) {
        double prod = total;
        for (int a = 0; a < g; ++a)
            if (a != b)
                prod *= spec[b] - spec[a];
        d[b] = 1.0 / prod;
    }
    return d;
}

MixingCoefficients solve_mixing(const MassSpectrum& spec) {
    if (spec.g() != 3) {
        std::ostringstream os;
        os << "mixing system needs exactly 3 generations, got " << spec.g();
        throw WrongGenerationCount(os.str());
    }
    Eigen::Matrix3d a;
    for (int b = 0; b < 3; ++b) {
        a(0, b) = 1.0;
        a(1, b) = spec[b];
        a(2, b) = spec[b] * spec[b] * spec[b];
    }
    const Eigen::Vector3d rhs(0.0, 0.0, 1.0);
    const auto lu = a.fullPivLu();
    Eigen::Vector3d sol = lu.solve(rhs);
    // refinement steps with the residual accumulated in extended precision
    for (int it = 0; it < 2; ++it) {
        Eigen::Vector3d res;
        for (int i = 0; i < 3; ++i) {
            long double acc = -static_cast<long double>(rhs(i));
            for (int b = 0; b < 3; ++b)
                acc += static_cast<long double>(a(i, b)) * sol(b);
            res(i) = static_cast<double>(acc);
        }
        sol -= lu.solve(res);
    }

    MixingCoefficients out;
    out.d = {sol(0), sol(1), sol(2)};
    const Eigen::Vector3d r = a * sol - rhs;
    out.residuals = {std::abs(r(0)), std::abs(r(1)), std::abs(r(2))};

    const auto closed = mixing_closed_form(spec);
    const double dmax = sol.cwiseAbs().maxCoeff();
    for (int b = 0; b < 3; ++b)
        out.closed_form_gap = std::max(out.closed_form_gap, std::abs(closed[b] - sol(b)) / dmax);

    double m2d = 0.0;
    for (int b = 0; b < 3; ++b)
        m2d += spec[b] * spec[b] * sol(b);
    out.mass_identity = spec.moment(1) * m2d;
    return out;
}

LogConstants log_constants(const MassSpectrum& spec, const MixingCoefficients& mix) {
    if (spec.g() != 3)
        throw WrongGenerationCount("log constants need exactly 3 generations");
    constexpr double pi3 = std::numbers::pi * std::numbers::pi * std::numbers::pi;
    LogConstants c;
    double s3 = 0.0, s0 = 0.0, s2 = 0.0;
    for (int b = 0; b < 3; ++b) {
        const double m = spec[b];
        const double lm = std::log(m * m);
        s3 += mix.d[b] * m * m * m * lm;
        s0 += lm;
        s2 += m * m * lm;
    }
    c.s3 = s3 / (32.0 * pi3);
    c.s0_const = s0 / (3.0 * 32.0 * pi3);
    c.s2_const = s2 / (32.0 * pi3 * spec.moment(2));
    c.sigma0 = 96.0 * pi3 * (c.s0_const - c.s3);
    c.sigma2 = 96.0 * pi3 * (c.s2_const - c.s3);
    return c;
}

LogConstants log_constants(const MassSpectrum& spec) {
    return log_constants(spec, solve_mixing(spec));
}

}  // namespace lcf
