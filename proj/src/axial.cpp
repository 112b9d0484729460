#include "lcf/axial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include "lcf/errors.hpp"

namespace lcf {

namespace {

using VecX = Eigen::VectorXcd;
constexpr cplx I(0.0, 1.0);

void check_generations(const MassSpectrum& spec) {
    if (spec.g() < 3)
        throw WrongGenerationCount("axial construction needs at least 3 generations");
}

// Index of the inner mass that maximizes the smax product, and the product itself.
std::pair<int, double> best_inner(const MassSpectrum& spec) {
    const int g = spec.g();
    const double m1 = spec[0], mg = spec[g - 1];
    int best = 1;
    double val = -1.0;
    for (int a = 1; a < g - 1; ++a) {
        const double ma = spec[a];
        const double p = (mg - ma) * (ma - m1) * (m1 + ma + mg);
        if (p > val) {
            val = p;
            best = a;
        }
    }
    return {best, val};
}

// d supported on {1, a, g} with sum d = 0, sum m d = 0, sum m^3 d = S.
std::vector<double> support_d(const MassSpectrum& spec, int a, double S) {
    const int g = spec.g();
    const int idx[3] = {0, a, g - 1};
    Eigen::Matrix3d A;
    for (int j = 0; j < 3; ++j) {
        const double m = spec[idx[j]];
        A(0, j) = 1.0;
        A(1, j) = m;
        A(2, j) = m * m * m;
    }
    const Eigen::Vector3d x = A.fullPivLu().solve(Eigen::Vector3d(0.0, 0.0, S));
    std::vector<double> d(g, 0.0);
    for (int j = 0; j < 3; ++j)
        d[idx[j]] = x(j);
    return d;
}

MatX identity(int n) { return MatX::Identity(n, n); }

// Unitary W with W x = y (up to normalization): a plane rotation after a phase along x.
MatX unit_map(const VecX& x, const VecX& y) {
    const int n = static_cast<int>(x.size());
    const VecX xh = x / x.norm();
    const VecX yh = y / y.norm();
    const cplx ip = xh.dot(yh);
    const double th = std::abs(ip) > 0.0 ? std::arg(ip) : 0.0;
    const VecX y0 = std::exp(-I * th) * yh;
    const double c = xh.dot(y0).real();
    const VecX w = y0 - c * xh;
    const double s = w.norm();
    MatX R = identity(n);
    if (s > 1e-15) {
        const VecX wh = w / s;
        R += (c - 1.0) * (xh * xh.adjoint() + wh * wh.adjoint()) +
             s * (wh * xh.adjoint() - xh * wh.adjoint());
    }
    const MatX phase = identity(n) + (std::exp(I * th) - 1.0) * (xh * xh.adjoint());
    return R * phase;
}

double max_abs(const MatX& a) { return a.cwiseAbs().maxCoeff(); }

MatX diag(const std::vector<double>& m, int power) {
    const int g = static_cast<int>(m.size());
    MatX out = MatX::Zero(g, g);
    for (int i = 0; i < g; ++i)
        out(i, i) = std::pow(m[i], power);
    return out;
}

void build_null(const MassSpectrum& spec, AxialSolution& s) {
    const int g = spec.g();
    s.kase = AxialCase::Null;
    s.v = s.u;
    s.tau.assign(g, 1.0);
    s.l = VecX::Ones(g);
    s.m = s.l;
    s.n = s.l;
    s.V = identity(g);
    if (s.u.isZero(0.0)) {
        s.d.assign(g, 0.0);
        s.G = MatX::Zero(g, g);
        s.U = identity(4 * g);
        return;
    }
    s.d = support_d(spec, best_inner(spec).first, 4.0);
    VecX dv(g);
    for (int i = 0; i < g; ++i)
        dv(i) = s.d[i];
    s.G = -I * (dv * s.l.transpose() - s.l * dv.transpose()) / double(g);
    // (gamma5 v-slash)^2 = v^2 = 0, so the first-order form is already the exponential
    s.U = identity(4 * g) - I * kron(gamma5() * slash(s.v), s.G);
}

bool build_timelike(const MassSpectrum& spec, double eta, AxialSolution& s) {
    const int g = spec.g();
    const VecX& l = s.l;
    VecX mv(g), nv(g);
    for (int b = 0; b < g; ++b) {
        const double x = 1.0 + eta * spec[b] / spec.max();
        mv(b) = 1.0 / x;
        nv(b) = (1.0 - 2.0 * I * s.d[b]) * x;
    }
    // equal norms of m and n are needed for the trace conditions
    const double lam = std::sqrt(nv.norm() / mv.norm());
    mv *= lam;
    nv /= lam;

    // smallest Hermitian V with V m = l, V l = n that is the identity off span{m, l}:
    // V = Y (X^* Y)^{-1} Y^* + (1 - X (X^* X)^{-1} X^*), X = [m, l], Y = [l, n]
    MatX X(g, 2), Y(g, 2);
    X << mv, l;
    Y << l, nv;
    MatX H = X.adjoint() * Y;
    H = (H + H.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<MatX> hs(H);
    if (!(hs.eigenvalues()(0) > 1e-14 * hs.eigenvalues()(1)))
        return false;
    const MatX Q = identity(g) - X * (X.adjoint() * X).ldlt().solve(X.adjoint());
    MatX V = Y * H.ldlt().solve(Y.adjoint()) + Q;
    V = (V + V.adjoint()) / 2.0;

    Eigen::SelfAdjointEigenSolver<MatX> es(V);
    const auto& ev = es.eigenvalues();
    if (!(ev(0) > 1e-12 * ev(g - 1)))
        return false;
    const MatX& W = es.eigenvectors();
    const MatX Vi = W * ev.cwiseInverse().asDiagonal() * W.adjoint();
    s.G = W * ev.array().log().matrix().asDiagonal() * W.adjoint();
    s.V = V;
    s.m = mv;
    s.n = nv;
    s.eta = eta;
    s.v_check = ev(0);
    s.tau.assign(g, 1.0);

    const MatX ch = (V + Vi) / 2.0, sh = (V - Vi) / 2.0;
    s.U = kron(Mat4::Identity(), ch) - kron(I * gamma5() * slash(s.v), sh);
    return true;
}

void build_spacelike(const MassSpectrum& spec, AxialSolution& s) {
    const int g = spec.g();
    const VecX& l = s.l;
    double sumd2 = 0.0, sumabs = 0.0;
    for (double x : s.d) {
        sumd2 += x * x;
        sumabs += std::abs(x);
    }
    VecX mv(g), nv(g);
    s.tau.assign(g, 0.0);
    if (4.0 * sumd2 <= g) {
        // real solution: n = s + d/s, m = s - d/s with |n| = |m| = sqrt(g)
        const double q = 1.0 - 4.0 * sumd2 / g;
        const double sc = std::sqrt((1.0 + std::sqrt(std::max(q, 0.0))) / 2.0);
        for (int b = 0; b < g; ++b) {
            nv(b) = sc + s.d[b] / sc;
            mv(b) = sc - s.d[b] / sc;
            s.tau[b] = sc * sc + s.d[b] * s.d[b] / (sc * sc);
        }
        s.closure = std::abs(nv.sum() - mv.sum());
    } else {
        std::vector<double> rho(2 * g);
        const double slack = std::max((g - 2.0 * sumabs) / g, 0.0);
        for (int b = 0; b < g; ++b) {
            const double a = std::abs(s.d[b]);
            s.tau[b] = 2.0 * a + slack;
            rho[b] = std::sqrt(2.0 * (a + s.d[b]) + slack);
            rho[g + b] = std::sqrt(2.0 * (a - s.d[b]) + slack);
        }
        const PhaseClosure pc = phase_closure(rho);
        for (int b = 0; b < g; ++b) {
            nv(b) = pc.values[b];
            mv(b) = -std::conj(pc.values[g + b]);
        }
        const double ph = std::arg(mv.dot(nv)) / 2.0;
        mv *= std::exp(I * ph);
        nv *= std::exp(-I * ph);
        s.closure = pc.closure;
    }

    const MatX V1 = unit_map(mv, l);
    const VecX lt = V1 * l;
    const MatX P = l * l.adjoint() / double(g);
    const VecX lp = lt - P * lt;
    const VecX np = nv - P * nv;
    MatX V2 = identity(g);
    if (lp.norm() > 1e-15 && np.norm() > 1e-15)
        V2 = P + unit_map(lp, np) * (identity(g) - P);
    const MatX V = V2 * V1;
    s.V = V;
    s.m = mv;
    s.n = nv;
    s.v_check = max_abs(V.adjoint() * V - identity(g));

    Eigen::ComplexEigenSolver<MatX> es(V);
    const MatX& W = es.eigenvectors();
    VecX angles(g);
    for (int i = 0; i < g; ++i)
        angles(i) = std::arg(es.eigenvalues()(i));
    s.G = W * angles.asDiagonal() * W.inverse();

    const MatX Vi = V.adjoint();
    const MatX cs = (V + Vi) / 2.0, sn = (V - Vi) / (2.0 * I);
    s.U = kron(Mat4::Identity(), cs) - kron(I * gamma5() * slash(s.v), sn);
}

}  // namespace

double smax(const MassSpectrum& spec) {
    check_generations(spec);
    return spec.g() / 4.0 * best_inner(spec).second;
}

double smax_oracle(const MassSpectrum& spec) {
    check_generations(spec);
    const int g = spec.g();
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < g; ++i)
        for (int j = i + 1; j < g; ++j)
            for (int k = j + 1; k < g; ++k) {
                const int idx[3] = {i, j, k};
                for (int signs = 0; signs < 8; ++signs) {
                    Eigen::Matrix3d A;
                    double sg[3];
                    for (int c = 0; c < 3; ++c) {
                        const double m = spec[idx[c]];
                        sg[c] = (signs >> c & 1) ? -1.0 : 1.0;
                        A(0, c) = 1.0;
                        A(1, c) = m;
                        A(2, c) = sg[c];
                    }
                    Eigen::FullPivLU<Eigen::Matrix3d> lu(A);
                    if (!lu.isInvertible())
                        continue;
                    const Eigen::Vector3d x = lu.solve(Eigen::Vector3d(0.0, 0.0, g / 2.0));
                    bool ok = true;
                    double obj = 0.0;
                    for (int c = 0; c < 3; ++c) {
                        if (x(c) * sg[c] < -1e-12)
                            ok = false;
                        obj += std::pow(spec[idx[c]], 3) * x(c);
                    }
                    if (ok)
                        best = std::max(best, obj);
                }
            }
    return best;
}

double feasibility_bound(const MassSpectrum& spec) {
    const double s = smax(spec) / 4.0;
    return -s * s;
}

PhaseClosure phase_closure(const std::vector<double>& rho) {
    PhaseClosure out;
    const int K = static_cast<int>(rho.size());
    out.values.assign(K, 0.0);
    if (K == 0)
        return out;
    std::vector<int> order(K);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return rho[a] < rho[b]; });
    const double total = std::accumulate(rho.begin(), rho.end(), 0.0);
    out.polygon = 2.0 * rho[order.back()] <= total * (1.0 + 1e-14);
    if (K == 1) {
        out.values[0] = rho[0];
        out.closure = rho[0];
        return out;
    }

    // walk the smaller moduli on the real axis until the partial sum lands in the annulus
    // that the two largest moduli can close
    const double A = rho[order[K - 1]], B = rho[order[K - 2]];
    const double lo = A - B, hi = A + B;
    double z = 0.0;
    bool inside = false;
    for (int k = 0; k < K - 2; ++k) {
        const double r = rho[order[k]];
        double sg = 1.0;
        if (!inside) {
            z += r;
            inside = z >= lo;
        } else if (z + r <= hi) {
            z += r;
        } else {
            z -= r;
            sg = -1.0;
        }
        out.values[order[k]] = sg * r;
    }
    const double w = -z;
    double bang = 0.0, aang = 0.0;
    if (B == 0.0) {
        aang = A > 0.0 ? std::arg(cplx(w / A)) : 0.0;
    } else if (std::abs(w) < 1e-300) {
        aang = std::numbers::pi;
    } else {
        const double cb = std::clamp((w * w + B * B - A * A) / (2.0 * w * B), -1.0, 1.0);
        bang = std::acos(cb);
        aang = std::arg(w - std::exp(I * bang) * B);
    }
    out.values[order[K - 2]] = std::exp(I * bang) * B;
    out.values[order[K - 1]] = std::exp(I * aang) * A;
    cplx sum = 0.0;
    for (const auto& v : out.values)
        sum += v;
    out.closure = std::abs(sum);
    return out;
}

const char* case_name(AxialCase c) {
    switch (c) {
    case AxialCase::Null:
        return "null";
    case AxialCase::Timelike:
        return "timelike";
    case AxialCase::Spacelike:
        return "spacelike";
    }
    return "?";
}

AxialSolution construct(const MassSpectrum& spec, const Vec4& u) {
    check_generations(spec);
    if (!u.allFinite())
        throw PreconditionViolation("u must be finite");
    const int g = spec.g();
    AxialSolution s;
    s.u = u;
    s.l = VecX::Ones(g);

    const double uu = mdot(u, u);
    if (std::abs(uu) <= 1e-12 * u.squaredNorm()) {
        build_null(spec, s);
    } else if (uu > 0.0) {
        s.kase = AxialCase::Timelike;
        s.v = u / std::sqrt(uu);
        s.d = support_d(spec, best_inner(spec).first, 4.0 * std::sqrt(uu));
        double dmax = 0.0;
        for (double x : s.d)
            dmax = std::max(dmax, std::abs(x));
        bool ok = false;
        for (double c : {10.0, 3.0, 30.0, 1.0, 100.0})
            if ((ok = build_timelike(spec, c * dmax, s)))
                break;
        if (!ok)
            throw NumericalError("timelike construction did not give a positive definite V");
    } else {
        const double bound = feasibility_bound(spec);
        if (uu < bound * (1.0 + 1e-12)) {
            std::ostringstream os;
            os << "<u,u> = " << uu << " is below the feasibility bound " << bound;
            throw Infeasible(os.str());
        }
        s.kase = AxialCase::Spacelike;
        s.v = u / std::sqrt(-uu);
        const auto [a, prod] = best_inner(spec);
        const double sm = g / 4.0 * prod;
        s.d = support_d(spec, a, sm);
        const double scale = 4.0 * std::sqrt(-uu) / sm;
        for (auto& x : s.d)
            x *= scale;
        build_spacelike(spec, s);
    }
    s.mn_residual = std::max((s.V * s.m - s.l).cwiseAbs().maxCoeff(),
                             (s.V * s.l - s.n).cwiseAbs().maxCoeff());
    s.residuals = verify_conditions(s, spec);
    return s;
}

std::map<std::string, double> verify_conditions(const AxialSolution& sol, const MassSpectrum& spec,
                                                unsigned seed) {
    const int g = spec.g();
    const MatX& U = sol.U;
    const MatX Ui = U.partialPivLu().inverse();
    const MatX M1 = diag(spec.masses(), 1), M2 = diag(spec.masses(), 2),
               M3 = diag(spec.masses(), 3);
    double sm2d = 0.0;
    for (int b = 0; b < g; ++b)
        sm2d += spec[b] * spec[b] * sol.d[b];

    auto ptr = [&](const Mat4& s, const MatX& G) { return partial_trace(U * kron(s, G) * Ui, g); };
    // residual relative to the larger of the left side and the unconjugated value s tr(G),
    // so that a vanishing left side does not inflate it
    auto rel = [](const Mat4& lhs, const Mat4& rest, const Mat4& s, const MatX& G) {
        const double n = std::max(lhs.cwiseAbs().maxCoeff(), std::abs(G.trace()) * s.cwiseAbs().maxCoeff());
        return n > 0.0 ? rest.cwiseAbs().maxCoeff() / n : rest.cwiseAbs().maxCoeff();
    };
    // remainder after removing the best multiple of X
    auto off = [](const Mat4& L, const Mat4& X) {
        const cplx c = (X.adjoint() * L).trace() / (X.adjoint() * X).trace();
        return Mat4(L - c * X);
    };

    std::map<std::string, double> r;
    const Mat4 L1 = ptr(Mat4::Identity(), M1);
    r["cc1"] = rel(L1, off(L1, Mat4::Identity()), Mat4::Identity(), M1);
    const Mat4 L3 = ptr(Mat4::Identity(), M3);
    r["cc3"] = rel(L3, off(Mat4(L3 - 8.0 * gamma5() * slash(sol.u)), Mat4::Identity()),
                   Mat4::Identity(), M3);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    const Vec4& v = sol.v;
    const double vv = mdot(v, v);
    const bool null = sol.kase == AxialCase::Null;
    double cc0 = 0.0, c6 = 0.0, cc0_general = 0.0;
    for (int trial = 0; trial < 4; ++trial) {
        Vec4 xi(nd(rng), nd(rng), nd(rng), nd(rng));
        std::vector<std::pair<Vec4, bool>> parts;  // (vector, along v)
        if (null) {
            const Mat4 Lg = ptr(slash(xi), identity(g));
            cc0_general = std::max(cc0_general, rel(Lg, off(Lg, slash(xi)), slash(xi), identity(g)));
            if (!v.isZero(0.0)) {
                const Vec4 w(1.0, 0.0, 0.0, 0.0);
                xi -= mdot(v, xi) / mdot(v, w) * w;
            }
            parts.push_back({xi, false});
        } else {
            const Vec4 par = mdot(xi, v) / vv * v;
            parts.push_back({xi - par, false});
            parts.push_back({par, true});
        }
        for (const auto& [x, along] : parts) {
            const Mat4 X = slash(x);
            const Mat4 L0 = ptr(X, identity(g));
            cc0 = std::max(cc0, rel(L0, off(L0, X), X, identity(g)));
            const Mat4 L6 = ptr(X, M2);
            if (!along) {
                const Mat4 sv = slash(v);
                const Mat4 T = L6 + gamma5() * (X * sv - sv * X) * sm2d;
                c6 = std::max(c6, rel(L6, off(T, X), X, M2));
            } else {
                // least squares on span{X, i gamma5}
                Eigen::Matrix<cplx, 16, 2> B;
                const Mat4 ig5 = I * gamma5();
                for (int k = 0; k < 16; ++k) {
                    B(k, 0) = X(k % 4, k / 4);
                    B(k, 1) = ig5(k % 4, k / 4);
                }
                Eigen::Matrix<cplx, 16, 1> y;
                for (int k = 0; k < 16; ++k)
                    y(k) = L6(k % 4, k / 4);
                const Eigen::Vector2cd coef = B.colPivHouseholderQr().solve(y);
                const double n = std::max(L6.cwiseAbs().maxCoeff(), M2.trace().real() * X.cwiseAbs().maxCoeff());
                c6 = std::max(c6, (y - B * coef).cwiseAbs().maxCoeff() / (n > 0.0 ? n : 1.0));
            }
        }
    }
    r["cc0"] = cc0;
    r["remY2"] = c6;
    if (null)
        r["cc0_general"] = cc0_general;
    return r;
}

}  // namespace lcf
