#pragma once

#include <array>
#include <random>
#include <string>

#include "lcf/gamma.hpp"
#include "lcf/regularization.hpp"

namespace lcf {

// Leading-order data of a vacuum closed chain. xi and xibar are separate vectors and the
// T-values are separate numbers; the identities below need the contraction rule
// xi.xibar = (z + zbar)/2, and the adjoint relations need xibar = conj(xi).
struct ChainSurrogate {
    CVec4 xi = CVec4::Zero();
    CVec4 xibar = CVec4::Zero();
    cplx Tm1 = 0.0, Tm1bar = 0.0, T0 = 0.0, T0bar = 0.0;
    int g = 3;

    cplx z() const { return mdot(xi, xi); }
    cplx zbar() const { return mdot(xibar, xibar); }
    // |xi.xibar - (z + zbar)/2|
    double contraction_defect() const;
    // surrogate of the formal adjoint: xi <- conj(xibar), xibar <- conj(xi), T <-> conj(Tbar)
    ChainSurrogate adjoint() const;
};

// xibar = conj(xi) with a null imaginary part and a future-directed timelike real part,
// Tbar = conj(T), T0 = z Tm1 / 4.
ChainSurrogate random_surrogate(std::mt19937_64& rng, int g = 3);

// Unit v = i u with real spacelike u orthogonal to Re xi and Im xi; needs xibar = conj(xi).
CVec4 frame_vector(const ChainSurrogate& s);

// A = P P* with P* = g0 P^dagger g0 for a random complex P.
Mat4 random_symmetric_chain(std::mt19937_64& rng);

struct SpectrumReport {
    std::array<cplx, 4> eigenvalues{};
    std::array<int, 4> pairing{};  // eigenvalues[k] ~ conj(eigenvalues[pairing[k]])
    double max_distance = 0.0;
    bool paired = false;  // max_distance <= tol
    // sum_k |tr P_k - 1| over the rank-one spectral projectors
    double projector_rank_defect = 0.0;
    // |sum_k P_k - 1|
    double completeness_residual = 0.0;
};

// Throws PreconditionViolation unless A = g0 A^dagger g0 to 1e-12 (relative).
SpectrumReport conjugate_pairing(const Mat4& A, double tol = 1e-9);

// Coefficients of det(x - M) by the Faddeev-LeVerrier recursion, c[0] = 1.
std::array<cplx, 5> char_poly(const Mat4& M);

// Largest difference of the characteristic polynomial coefficients of BC and CB, each
// relative to max(|a_k|, |b_k|, |BC|^k).
double same_spectrum(const Mat4& B, const Mat4& C);

// (1 +- [xi-slash, xibar-slash]/(z - zbar))/2; throws DegenerateZ when z ~ zbar.
Mat4 vacuum_projector(const ChainSurrogate& s, int sign);

struct VacuumSpectrum {
    cplx lambda_plus, lambda_minus;
    Mat4 F_plus, F_minus;
    double idempotent = 0.0;   // max |F^2 - F|
    double orthogonal = 0.0;   // max |F+ F-|, |F- F+|
    double complete = 0.0;     // |F+ + F- - 1|
    double rank = 0.0;         // max(|tr F - 2|, |numerical rank - 2|)
    double adjoint_swap = 0.0; // |(F+)* - F- of the adjoint surrogate|
    // |A0 - l+ F+ - l- F-| / |A0| with A0 = g^2/4 xi-slash xibar-slash Tm1 Tm1bar and
    // l+ = g^2 z Tm1 Tm1bar / 4, l- = g^2 zbar Tm1 Tm1bar / 4
    double decomposition = 0.0;
};

VacuumSpectrum vacuum_spectrum(const ChainSurrogate& s);

enum class Chirality { Left, Right };

struct ChiralEigenvalue {
    Chirality c;
    int sign;  // +1 or -1
    cplx value;
};

struct ChiralSpectrum {
    std::array<ChiralEigenvalue, 4> eigenvalues;
    cplx nu_left, nu_right;
    double moduli_spread = 0.0;   // (max |lambda| - min |lambda|) / max |lambda|
    double eigen_residual = 0.0;  // |A chi_c F_s - lambda chi_c F_s| relative to |A|
};

// lambda^{L/R}_pm = nu_{L/R} lambda_pm with nu_L = conj(nu_R) = exp(-i (Lambda_L - Lambda_R)).
ChiralSpectrum chiral_spectrum(const ChainSurrogate& s, double Lambda_L, double Lambda_R);

// Scalar factor of Q in the vacuum: (1 - 4 mu) g^3 T0 Tm1 Tm1bar.
cplx q_factor(const ChainSurrogate& s, double mu);

// Matrix entries F^{cc'}_{ss'}(B) in the double null spinor frame. Index order is
// (c, c', s, s') with L = 0, R = 1, + = 0, - = 1.
struct FrameComponents {
    std::array<cplx, 16> values{};
    static int index(int c, int cp, int s, int sp) { return ((c * 2 + cp) * 2 + s) * 2 + sp; }
    cplx operator()(int c, int cp, int s, int sp) const { return values[index(c, cp, s, sp)]; }
    static std::string label(int i);
};

// v must satisfy v.xi = v.xibar = 0, v.v = 1, conj(v) = -v to 1e-10 (else BadFrameVector).
FrameComponents null_frame_components(const Mat4& B, const ChainSurrogate& s, const CVec4& v);

using RVec4 = Eigen::Vector4d;

// C0 j - mass_term A - 12 pi^2 J
RVec4 el_residual(const FieldConstants& fc, const RVec4& j, const RVec4& A, const RVec4& J);
// J with zero residual
RVec4 el_current(const FieldConstants& fc, const RVec4& j, const RVec4& A);

struct ChainSelftest {
    int trials = 0;
    double pairing = 0.0;
    double same_spectrum = 0.0;
    double idempotent = 0.0, orthogonal = 0.0, complete = 0.0, rank = 0.0, adjoint_swap = 0.0;
    double decomposition = 0.0;
    double chiral_moduli = 0.0;
    double frame_adjoint = 0.0;
    double q_at_quarter = 0.0;
    bool pass() const;
};

// Random-trial suite; trial k uses its own generator seeded from (seed, k).
ChainSelftest chain_selftest(int trials, unsigned long long seed);

}  // namespace lcf
