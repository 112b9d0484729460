#include "lcf/chains.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <sstream>

#include "lcf/errors.hpp"

namespace lcf {

namespace {

constexpr cplx I(0.0, 1.0);

double max_abs(const Mat4& a) { return a.cwiseAbs().maxCoeff(); }

cplx random_complex(std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    const double re = nd(rng);
    return {re, nd(rng)};
}

Mat4 commutator(const Mat4& a, const Mat4& b) { return a * b - b * a; }

}  // namespace

double ChainSurrogate::contraction_defect() const {
    return std::abs(mdot(xi, xibar) - (z() + zbar()) / 2.0);
}

ChainSurrogate ChainSurrogate::adjoint() const {
    ChainSurrogate a = *this;
    a.xi = xibar.conjugate();
    a.xibar = xi.conjugate();
    a.Tm1 = std::conj(Tm1bar);
    a.Tm1bar = std::conj(Tm1);
    a.T0 = std::conj(T0bar);
    a.T0bar = std::conj(T0);
    return a;
}

ChainSurrogate random_surrogate(std::mt19937_64& rng, int g) {
    std::normal_distribution<double> nd;
    std::uniform_real_distribution<double> ud(0.2, 2.0);
    ChainSurrogate s;
    s.g = g;
    // future-directed timelike real part
    Vec4 a(0.0, nd(rng), nd(rng), nd(rng));
    a(0) = a.tail<3>().norm() + ud(rng);
    Vec4 dir(nd(rng), nd(rng), nd(rng), 0.0);
    dir = dir.tail<3>().norm() > 0.0 ? Vec4(dir / dir.norm()) : Vec4(0, 1, 0, 0);
    const double t = ud(rng);
    const Vec4 b = t * Vec4(1.0, dir(0), dir(1), dir(2));
    s.xi = a.cast<cplx>() + I * b.cast<cplx>();
    s.xibar = s.xi.conjugate();
    s.Tm1 = random_complex(rng);
    s.Tm1bar = std::conj(s.Tm1);
    s.T0 = s.z() * s.Tm1 / 4.0;
    s.T0bar = std::conj(s.T0);
    return s;
}

CVec4 frame_vector(const ChainSurrogate& s) {
    if ((s.xibar - s.xi.conjugate()).cwiseAbs().maxCoeff() > 1e-12 * s.xi.cwiseAbs().maxCoeff())
        throw PreconditionViolation("frame vector needs xibar = conj(xi)");
    const Eigen::Vector4d eta(1, -1, -1, -1);
    Eigen::Matrix<double, 2, 4> M;
    M.row(0) = s.xi.real().cwiseProduct(eta).transpose();
    M.row(1) = s.xi.imag().cwiseProduct(eta).transpose();
    Eigen::FullPivLU<Eigen::Matrix<double, 2, 4>> lu(M);
    const Eigen::MatrixXd K = lu.kernel();
    for (int k = 0; k < K.cols(); ++k) {
        const Vec4 u = K.col(k);
        const double uu = mdot(u, u);
        if (uu < -1e-12 * u.squaredNorm())
            return I * (u / std::sqrt(-uu)).cast<cplx>();
    }
    throw DegenerateZ("no spacelike vector orthogonal to xi");
}

Mat4 random_symmetric_chain(std::mt19937_64& rng) {
    Mat4 P;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            P(i, j) = random_complex(rng);
    return P * spin_adjoint(P);
}

SpectrumReport conjugate_pairing(const Mat4& A, double tol) {
    const double scale = std::max(1.0, max_abs(A));
    if (max_abs(A - spin_adjoint(A)) > 1e-12 * scale)
        throw PreconditionViolation("chain is not symmetric under the spin adjoint");
    Eigen::ComplexEigenSolver<Mat4> es(A);
    SpectrumReport r;
    for (int k = 0; k < 4; ++k)
        r.eigenvalues[k] = es.eigenvalues()(k);

    std::array<int, 4> perm{0, 1, 2, 3};
    double best_max = 1e300, best_sum = 1e300;
    do {
        double mx = 0.0, sum = 0.0;
        for (int k = 0; k < 4; ++k) {
            const double d = std::abs(r.eigenvalues[k] - std::conj(r.eigenvalues[perm[k]]));
            mx = std::max(mx, d);
            sum += d;
        }
        if (mx < best_max || (mx == best_max && sum < best_sum)) {
            best_max = mx;
            best_sum = sum;
            r.pairing = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    r.max_distance = best_max;
    r.paired = best_max <= tol;

    const Mat4& W = es.eigenvectors();
    const Mat4 Wi = W.inverse();
    Mat4 sum = Mat4::Zero();
    for (int k = 0; k < 4; ++k) {
        const Mat4 Pk = W.col(k) * Wi.row(k);
        sum += Pk;
        Eigen::JacobiSVD<Mat4> svd(Pk);
        const auto& sv = svd.singularValues();
        int rank = 0;
        for (int i = 0; i < 4; ++i)
            rank += sv(i) > 1e-10 * sv(0);
        r.projector_rank_defect += std::abs(rank - 1) + std::abs(Pk.trace() - 1.0);
    }
    r.completeness_residual = max_abs(sum - Mat4::Identity());
    return r;
}

std::array<cplx, 5> char_poly(const Mat4& M) {
    std::array<cplx, 5> c{};
    c[0] = 1.0;
    Mat4 Mk = Mat4::Zero();
    for (int k = 1; k <= 4; ++k) {
        Mk = M * (Mk + c[k - 1] * Mat4::Identity());
        c[k] = -Mk.trace() / double(k);
    }
    return c;
}

double same_spectrum(const Mat4& B, const Mat4& C) {
    const Mat4 BC = B * C, CB = C * B;
    const auto a = char_poly(BC), b = char_poly(CB);
    const double n = std::max(BC.norm(), CB.norm());
    double worst = 0.0;
    for (int k = 1; k <= 4; ++k) {
        const double scale = std::max({std::abs(a[k]), std::abs(b[k]), std::pow(n, k)});
        if (scale > 0.0)
            worst = std::max(worst, std::abs(a[k] - b[k]) / scale);
    }
    return worst;
}

Mat4 vacuum_projector(const ChainSurrogate& s, int sign) {
    const cplx z = s.z(), zb = s.zbar();
    if (std::abs(z - zb) < 1e-10 * std::max(std::abs(z), std::abs(zb))) {
        std::ostringstream os;
        os << "z and zbar coincide: z = " << z << ", zbar = " << zb;
        throw DegenerateZ(os.str());
    }
    const Mat4 c = commutator(slash(s.xi), slash(s.xibar)) / (z - zb);
    return (Mat4::Identity() + double(sign) * c) / 2.0;
}

VacuumSpectrum vacuum_spectrum(const ChainSurrogate& s) {
    VacuumSpectrum out;
    const double g2 = double(s.g) * s.g;
    out.F_plus = vacuum_projector(s, +1);
    out.F_minus = vacuum_projector(s, -1);
    out.lambda_plus = g2 * s.T0 * s.Tm1bar;
    out.lambda_minus = g2 * s.Tm1 * s.T0bar;

    const Mat4& Fp = out.F_plus;
    const Mat4& Fm = out.F_minus;
    out.idempotent = std::max(max_abs(Fp * Fp - Fp), max_abs(Fm * Fm - Fm));
    out.orthogonal = std::max(max_abs(Fp * Fm), max_abs(Fm * Fp));
    out.complete = max_abs(Fp + Fm - Mat4::Identity());
    for (const Mat4* F : {&Fp, &Fm}) {
        Eigen::JacobiSVD<Mat4> svd(*F);
        const auto& sv = svd.singularValues();
        int rank = 0;
        for (int i = 0; i < 4; ++i)
            rank += sv(i) > 1e-10 * sv(0);
        out.rank = std::max({out.rank, std::abs(F->trace() - 2.0), double(std::abs(rank - 2))});
    }
    out.adjoint_swap = max_abs(spin_adjoint(Fp) - vacuum_projector(s.adjoint(), -1));

    const cplx tt = s.Tm1 * s.Tm1bar;
    const Mat4 A0 = g2 / 4.0 * slash(s.xi) * slash(s.xibar) * tt;
    const Mat4 rest = A0 - g2 / 4.0 * tt * (s.z() * Fp + s.zbar() * Fm);
    const double n = max_abs(A0);
    out.decomposition = n > 0.0 ? max_abs(rest) / n : max_abs(rest);
    return out;
}

ChiralSpectrum chiral_spectrum(const ChainSurrogate& s, double Lambda_L, double Lambda_R) {
    const VacuumSpectrum vs = vacuum_spectrum(s);
    ChiralSpectrum out;
    out.nu_left = std::exp(-I * (Lambda_L - Lambda_R));
    out.nu_right = std::conj(out.nu_left);
    out.eigenvalues = {ChiralEigenvalue{Chirality::Left, +1, out.nu_left * vs.lambda_plus},
                       ChiralEigenvalue{Chirality::Left, -1, out.nu_left * vs.lambda_minus},
                       ChiralEigenvalue{Chirality::Right, +1, out.nu_right * vs.lambda_plus},
                       ChiralEigenvalue{Chirality::Right, -1, out.nu_right * vs.lambda_minus}};
    double lo = 1e300, hi = 0.0;
    for (const auto& e : out.eigenvalues) {
        lo = std::min(lo, std::abs(e.value));
        hi = std::max(hi, std::abs(e.value));
    }
    out.moduli_spread = hi > 0.0 ? (hi - lo) / hi : 0.0;

    // A = (chi_L nu_L + chi_R nu_R) g^2/4 xi-slash xibar-slash Tm1 Tm1bar, checked against the
    // z-form of the eigenvalues
    const double g2 = double(s.g) * s.g;
    const cplx tt = s.Tm1 * s.Tm1bar;
    const Mat4 A = (chi_left() * out.nu_left + chi_right() * out.nu_right) * g2 / 4.0 *
                   slash(s.xi) * slash(s.xibar) * tt;
    const double n = std::max(max_abs(A), 1e-300);
    for (const auto& e : out.eigenvalues) {
        const Mat4& chi = e.c == Chirality::Left ? chi_left() : chi_right();
        const cplx nu = e.c == Chirality::Left ? out.nu_left : out.nu_right;
        const Mat4 P = chi * (e.sign > 0 ? vs.F_plus : vs.F_minus);
        const cplx lam = nu * g2 / 4.0 * tt * (e.sign > 0 ? s.z() : s.zbar());
        out.eigen_residual = std::max(out.eigen_residual, max_abs(A * P - lam * P) / n);
    }
    return out;
}

cplx q_factor(const ChainSurrogate& s, double mu) {
    const double g3 = double(s.g) * s.g * s.g;
    return (1.0 - 4.0 * mu) * (g3 * s.T0 * s.Tm1 * s.Tm1bar);
}

std::string FrameComponents::label(int i) {
    const char cs[2] = {'L', 'R'};
    const char ss[2] = {'+', '-'};
    std::string out = "F^";
    out += cs[i >> 3 & 1];
    out += cs[i >> 2 & 1];
    out += '_';
    out += ss[i >> 1 & 1];
    out += ss[i & 1];
    return out;
}

FrameComponents null_frame_components(const Mat4& B, const ChainSurrogate& s, const CVec4& v) {
    const double scale = std::max(s.xi.norm(), s.xibar.norm());
    const double bad = std::max({std::abs(mdot(v, s.xi)) / scale, std::abs(mdot(v, s.xibar)) / scale,
                                 std::abs(mdot(v, v) - 1.0),
                                 (v.conjugate() + v).cwiseAbs().maxCoeff()});
    if (bad > 1e-10) {
        std::ostringstream os;
        os << "frame vector violates the orthogonality/normalization conditions by " << bad;
        throw BadFrameVector(os.str());
    }
    const Mat4 F = vacuum_projector(s, +1);
    const Mat4 x = slash(s.xi), vs = slash(v);
    const cplx z = s.z();
    FrameComponents out;
    for (int c = 0; c < 2; ++c) {
        const Mat4& chi = c == 0 ? chi_left() : chi_right();
        const Mat4 CB = chi * B;
        const int o = 1 - c;
        auto put = [&](int cp, int sgn, int sgnp, const Mat4& M, cplx factor) {
            out.values[FrameComponents::index(c, cp, sgn, sgnp)] = factor * (M * CB).trace();
        };
        put(c, 0, 0, F, 1.0);
        put(o, 0, 0, F * vs, 1.0);
        put(c, 0, 1, x * F * vs, 1.0);
        put(o, 0, 1, x * F, 1.0);
        put(c, 1, 0, F * vs * x, 1.0 / z);
        put(o, 1, 0, F * x, 1.0 / z);
        put(c, 1, 1, x * F * x, 1.0 / z);
        put(o, 1, 1, x * F * vs * x, 1.0 / z);
    }
    return out;
}

RVec4 el_residual(const FieldConstants& fc, const RVec4& j, const RVec4& A, const RVec4& J) {
    constexpr double k = 12.0 * std::numbers::pi * std::numbers::pi;
    return fc.C0 * j - fc.mass_term * A - k * J;
}

RVec4 el_current(const FieldConstants& fc, const RVec4& j, const RVec4& A) {
    constexpr double k = 12.0 * std::numbers::pi * std::numbers::pi;
    return (fc.C0 * j - fc.mass_term * A) / k;
}

bool ChainSelftest::pass() const {
    return pairing < 1e-9 && same_spectrum < 1e-9 && idempotent < 1e-11 && orthogonal < 1e-11 &&
           complete < 1e-11 && rank < 1e-11 && adjoint_swap < 1e-11 && decomposition < 1e-11 &&
           chiral_moduli < 1e-12 && frame_adjoint < 1e-9 && q_at_quarter == 0.0;
}

ChainSelftest chain_selftest(int trials, unsigned long long seed) {
    if (trials < 1)
        throw PreconditionViolation("selftest needs at least one trial");
    ChainSelftest r;
    r.trials = trials;
    std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
    for (int k = 0; k < trials; ++k) {
        std::seed_seq sq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(k)};
        std::mt19937_64 rng(sq);

        const Mat4 A = random_symmetric_chain(rng);
        r.pairing = std::max(r.pairing, conjugate_pairing(A).max_distance / std::max(1.0, max_abs(A)));

        const Mat4 B = random_symmetric_chain(rng), C = random_symmetric_chain(rng);
        r.same_spectrum = std::max(r.same_spectrum, same_spectrum(B, C));

        const ChainSurrogate s = random_surrogate(rng, 3 + k % 3);
        const VacuumSpectrum vs = vacuum_spectrum(s);
        r.idempotent = std::max(r.idempotent, vs.idempotent);
        r.orthogonal = std::max(r.orthogonal, vs.orthogonal);
        r.complete = std::max(r.complete, vs.complete);
        r.rank = std::max(r.rank, vs.rank);
        r.adjoint_swap = std::max(r.adjoint_swap, vs.adjoint_swap);
        r.decomposition = std::max(r.decomposition, vs.decomposition);

        const double LL = ang(rng), LR = ang(rng);
        r.chiral_moduli = std::max(r.chiral_moduli, chiral_spectrum(s, LL, LR).moduli_spread);
        r.q_at_quarter = std::max(r.q_at_quarter, std::abs(q_factor(s, 0.25)));

        // F^{cc'}_{ss'}(B*) = conj F^{c'bar cbar}_{s'bar sbar}(B)
        const CVec4 v = frame_vector(s);
        const auto fb = null_frame_components(B, s, v);
        const auto fa = null_frame_components(spin_adjoint(B), s, v);
        double n = 0.0, d = 0.0;
        for (int c = 0; c < 2; ++c)
            for (int cp = 0; cp < 2; ++cp)
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b) {
                        n = std::max(n, std::abs(fb(c, cp, a, b)));
                        d = std::max(d, std::abs(fa(c, cp, a, b) - std::conj(fb(1 - cp, 1 - c, 1 - b, 1 - a))));
                    }
        r.frame_adjoint = std::max(r.frame_adjoint, n > 0.0 ? d / n : d);
    }
    return r;
}

}  // namespace lcf
