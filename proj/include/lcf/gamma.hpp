#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>

namespace lcf {

using cplx = std::complex<double>;
using Mat4 = Eigen::Matrix4cd;
using Vec4 = Eigen::Vector4d;
using CVec4 = Eigen::Vector4cd;
using MatX = Eigen::MatrixXcd;

// Dirac representation, signature (+,-,-,-).
const std::array<Mat4, 4>& gamma_matrices();
// gamma5 = i g0 g1 g2 g3
const Mat4& gamma5();
// (1 - gamma5)/2 and (1 + gamma5)/2
const Mat4& chi_left();
const Mat4& chi_right();

Mat4 slash(const Vec4& v);
Mat4 slash(const CVec4& v);

double mdot(const Vec4& a, const Vec4& b);
// Bilinear (no complex conjugation).
cplx mdot(const CVec4& a, const CVec4& b);

// Adjoint with respect to the spin scalar product: g0 A^dagger g0.
Mat4 spin_adjoint(const Mat4& a);

// Spinor-major tensor product S (x) G for a 4x4 spinor part and a g x g generation part.
MatX kron(const Mat4& s, const MatX& g);

// Contracts the generation index with the all-ones vector l: (l^dagger B l) blockwise.
Mat4 partial_trace(const MatX& b, int g);

}  // namespace lcf
