#include "lcf/regularization.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <sstream>

#include "lcf/errors.hpp"

namespace lcf {

namespace {

constexpr cplx I(0.0, 1.0);

// h(x) = (1 - e^{-ix}) / x and its derivative.
void cutoff_profile(double x, cplx& h, cplx& dh) {
    if (std::abs(x) < 0.25) {
        // h = sum_j -(-i)^{j+1} x^j / (j+1)!
        h = 0.0;
        dh = 0.0;
        cplx mi_pow = -I;  // (-i)^{j+1}
        double fact = 1.0;  // (j+1)!
        double xp = 1.0;    // x^j
        double xpm = 0.0;   // x^{j-1}
        for (int j = 0; j < 24; ++j) {
            h -= mi_pow * xp / fact;
            if (j > 0)
                dh -= mi_pow * double(j) * xpm / fact;
            xpm = xp;
            xp *= x;
            mi_pow *= -I;
            fact *= double(j + 2);
        }
        return;
    }
    const double s = std::sin(x), c = std::cos(x), sh = std::sin(0.5 * x);
    h = cplx(2.0 * sh * sh, s) / x;
    dh = cplx(x * s - 2.0 * sh * sh, x * c - s) / (x * x);
}

}  // namespace

std::string RegularizationModel::name() const {
    return kind == RegKind::Exponential ? "exp" : "cutoff";
}

cplx eval_factor(const RegularizationModel& model, const Factor& f, double t, double r,
                 double eps) {
    if (f.curly)
        throw UnsupportedFactor("curly factor " + f.str() + " has no numerical value");
    if (f.n != 0 && f.n != -1)
        throw UnsupportedFactor("factor " + f.str() + " cannot be evaluated on the light cone");
    if (!(r > 0.0) || !(eps > 0.0))
        throw UnsupportedFactor("need r > 0 and eps > 0");
    const double k = model.prefactor;
    cplx v;
    if (model.kind == RegKind::Exponential) {
        const cplx w(t - r, -eps);
        v = (f.n == 0) ? k / (2.0 * r * w) : k / (r * r * w * w);
    } else {
        const double x = (t - r) / eps;
        cplx h, dh;
        cutoff_profile(x, h, dh);
        v = (f.n == 0) ? k * h / (2.0 * r * eps) : -k * dh / (r * r * eps * eps);
    }
    return f.conj ? std::conj(v) : v;
}

cplx eval_fraction(const RegularizationModel& model, const SimpleFraction& f, double t, double r,
                   double eps) {
    cplx v = f.coef.convert_to<double>() * std::pow(std::numbers::pi, f.pi_power);
    for (const auto& x : f.num)
        v *= eval_factor(model, x, t, r, eps);
    for (const auto& x : f.den)
        v /= eval_factor(model, x, t, r, eps);
    return v;
}

cplx eval_sum(const RegularizationModel& model, const FractionSum& s, double t, double r,
              double eps) {
    cplx v = 0.0;
    for (const auto& term : s.terms())
        v += eval_fraction(model, term, t, r, eps);
    return v;
}

std::vector<double> geometric_grid(double lo, double hi, int n) {
    std::vector<double> out;
    if (n == 1)
        return {lo};
    for (int i = 0; i < n; ++i)
        out.push_back(lo * std::pow(hi / lo, double(i) / (n - 1)));
    return out;
}

namespace {

// Integral of the normalized integrand over x = (t - r)/eps for a single eps.
cplx normalized_integral(const RegularizationModel& model, const FractionSum& f, int L, double r,
                         double eps, const WeakOptions& opt) {
    const cplx norm = std::pow(eps, L) * std::pow(I * r, L);
    auto y = [&](double x) { return eval_sum(model, f, r + eps * x, r, eps) * norm; };

    const double scale = std::max({std::abs(y(0.0)), std::abs(y(1.0)), std::abs(y(-1.0))});
    QuadOptions q;
    q.epsrel = opt.rel_tol;
    q.epsabs = std::max(opt.rel_tol * scale * 1e-2, std::numeric_limits<double>::min());

    if (opt.window == Window::Literal)
        return integrate_complex(y, -1.0, 1.0, q);

    // Panels of width pi; the partial sums over growing windows are extrapolated in 1/X.
    std::vector<cplx> partial;
    cplx acc = 0.0;
    int done = 0;
    for (int N : opt.periods) {
        for (int k = 2 * done; k < 2 * N; ++k) {
            const double a = k * std::numbers::pi, b = (k + 1) * std::numbers::pi;
            acc += integrate_complex(y, a, b, q);
            acc += integrate_complex(y, -b, -a, q);
        }
        done = N;
        partial.push_back(acc);
    }
    const int m = static_cast<int>(opt.periods.size());
    Eigen::MatrixXd V(m, m);
    Eigen::VectorXcd rhs(m);
    for (int i = 0; i < m; ++i) {
        const double h = 1.0 / (2.0 * std::numbers::pi * opt.periods[i]);
        for (int j = 0; j < m; ++j)
            V(i, j) = std::pow(h, j);
        rhs(i) = partial[i];
    }
    const Eigen::VectorXcd coef = V.cast<cplx>().colPivHouseholderQr().solve(rhs);
    return coef(0);
}

}  // namespace

WeakValue weak_eval(const RegularizationModel& model, const FractionSum& f, double r,
                    const WeakOptions& opt) {
    const int L = f.degree();
    const auto& grid = opt.eps_over_r;
    if (grid.size() < 2)
        throw FitFailure("weak evaluation needs at least two eps values");
    const int n = static_cast<int>(grid.size());
    Eigen::MatrixXd A(n, 2);
    Eigen::VectorXcd y(n);
    for (int i = 0; i < n; ++i) {
        const double eps = grid[i] * r;
        A(i, 0) = 1.0;
        A(i, 1) = std::log(eps * r);
        y(i) = normalized_integral(model, f, L, r, eps, opt);
    }
    const Eigen::VectorXcd c = A.cast<cplx>().colPivHouseholderQr().solve(y);
    WeakValue out;
    out.pole_coefficient = c(0);
    out.log_coefficient = c(1);
    const double ymax = y.cwiseAbs().maxCoeff();
    const Eigen::VectorXcd res = A.cast<cplx>() * c - y;
    out.fit_residual = ymax > 0.0 ? res.cwiseAbs().maxCoeff() / ymax : 0.0;
    out.reliable = out.fit_residual <= opt.fit_threshold;
    if (!out.reliable) {
        std::ostringstream os;
        os << "weak evaluation fit residual " << out.fit_residual << " exceeds "
           << opt.fit_threshold;
        throw FitFailure(os.str());
    }
    return out;
}

BasicRatios basic_ratios(const RegularizationModel& model, double r, const WeakOptions& opt) {
    const auto c = encode_basic_fractions();
    BasicRatios out;
    for (int i = 0; i < 4; ++i)
        out.pole[i] = weak_eval(model, c[i], r, opt).pole_coefficient;
    const double s = 96.0 * kPi3;
    double* dst[3] = {&out.r0, &out.r2, &out.r3};
    const int src[3] = {0, 2, 3};
    for (int j = 0; j < 3; ++j) {
        const cplx q = s * out.pole[src[j]] / out.pole[1];
        if (std::abs(q.imag()) > 1e-6 * std::max(1.0, std::abs(q))) {
            std::ostringstream os;
            os << "ratio c" << src[j] << "/c1 is not real: " << q;
            throw FitFailure(os.str());
        }
        *dst[j] = q.real();
    }
    return out;
}

double FieldConstants::e() const { return std::sqrt(e2); }

double FieldConstants::M() const {
    return M2 > 0.0 ? std::sqrt(M2) : std::numeric_limits<double>::quiet_NaN();
}

FieldConstants field_constants_from_ratios(const MassSpectrum& spec, double r0, double r2,
                                           double r3) {
    const auto lc = log_constants(spec);
    FieldConstants fc;
    fc.r0 = r0;
    fc.r2 = r2;
    fc.r3 = r3;
    fc.sigma0 = lc.sigma0;
    fc.sigma2 = lc.sigma2;
    fc.C0 = r0 - lc.sigma0;
    const double s1 = spec.moment(1), s2 = spec.moment(2);
    fc.mass_term = r2 * s1 * s1 + r3 * s2 - 2.0 * lc.sigma2 * s2;
    if (!(fc.C0 > 0.0)) {
        std::ostringstream os;
        os << "C0 = " << fc.C0 << " is not positive, coupling undefined";
        throw NonPositiveC0(os.str());
    }
    fc.e2 = 12.0 * std::numbers::pi * std::numbers::pi / fc.C0;
    fc.M2 = fc.mass_term / fc.C0;
    return fc;
}

FieldConstants field_constants(const MassSpectrum& spec, const RegularizationModel& model,
                               const WeakOptions& opt) {
    if (spec.g() != 3)
        throw WrongGenerationCount("field constants need exactly 3 generations");
    const auto br = basic_ratios(model, 1.0, opt);
    return field_constants_from_ratios(spec, br.r0, br.r2, br.r3);
}

std::vector<double> Range::values() const {
    if (n == 1)
        return {lo};
    std::vector<double> out;
    for (int i = 0; i < n; ++i)
        out.push_back(lo + (hi - lo) * double(i) / double(n - 1));
    return out;
}

ScanResult scan_with_ratios(const BasicRatios& ratios, const Range& m2, const Range& m3) {
    ScanResult out;
    out.ratios = ratios;
    for (double a : m2.values()) {
        for (double b : m3.values()) {
            ScanRow row;
            row.ratio2 = a;
            row.ratio3 = b;
            try {
                const MassSpectrum spec({1.0, a, b});
                const auto fc = field_constants_from_ratios(spec, ratios.r0, ratios.r2, ratios.r3);
                row.e = fc.e();
                row.M2_over_m1sq = fc.M2;
                row.M_over_m1 = fc.M();
            } catch (const NonPositiveC0&) {
                row.status = RowStatus::NonPositiveC0;
                ++out.nonpositive;
            } catch (const DomainError&) {
                row.status = RowStatus::Invalid;
                ++out.invalid;
            }
            out.rows.push_back(row);
        }
    }
    return out;
}

ScanResult scan(const RegularizationModel& model, const Range& m2, const Range& m3,
                const WeakOptions& opt) {
    return scan_with_ratios(basic_ratios(model, 1.0, opt), m2, m3);
}

}  // namespace lcf
