#include "lcf/gamma.hpp"

namespace lcf {

namespace {

std::array<Mat4, 4> make_gammas() {
    const cplx i(0.0, 1.0);
    Eigen::Matrix2cd s[3];
    s[0] << 0, 1, 1, 0;
    s[1] << 0, -i, i, 0;
    s[2] << 1, 0, 0, -1;
    std::array<Mat4, 4> g;
    g[0].setZero();
    g[0].topLeftCorner<2, 2>().setIdentity();
    g[0].bottomRightCorner<2, 2>() = -Eigen::Matrix2cd::Identity();
    for (int k = 0; k < 3; ++k) {
        g[k + 1].setZero();
        g[k + 1].topRightCorner<2, 2>() = s[k];
        g[k + 1].bottomLeftCorner<2, 2>() = -s[k];
    }
    return g;
}

}  // namespace

const std::array<Mat4, 4>& gamma_matrices() {
    static const std::array<Mat4, 4> g = make_gammas();
    return g;
}

const Mat4& gamma5() {
    static const Mat4 g5 = [] {
        const auto& g = gamma_matrices();
        return Mat4(cplx(0.0, 1.0) * g[0] * g[1] * g[2] * g[3]);
    }();
    return g5;
}

const Mat4& chi_left() {
    static const Mat4 m = (Mat4::Identity() - gamma5()) / 2.0;
    return m;
}

const Mat4& chi_right() {
    static const Mat4 m = (Mat4::Identity() + gamma5()) / 2.0;
    return m;
}

Mat4 slash(const CVec4& v) {
    const auto& g = gamma_matrices();
    return g[0] * v(0) - g[1] * v(1) - g[2] * v(2) - g[3] * v(3);
}

Mat4 slash(const Vec4& v) { return slash(CVec4(v.cast<cplx>())); }

double mdot(const Vec4& a, const Vec4& b) {
    return a(0) * b(0) - a(1) * b(1) - a(2) * b(2) - a(3) * b(3);
}

cplx mdot(const CVec4& a, const CVec4& b) {
    return a(0) * b(0) - a(1) * b(1) - a(2) * b(2) - a(3) * b(3);
}

Mat4 spin_adjoint(const Mat4& a) {
    const auto& g0 = gamma_matrices()[0];
    return g0 * a.adjoint() * g0;
}

MatX kron(const Mat4& s, const MatX& g) {
    const auto n = g.rows();
    MatX out(4 * n, 4 * n);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            out.block(i * n, j * n, n, n) = s(i, j) * g;
    return out;
}

Mat4 partial_trace(const MatX& b, int g) {
    Mat4 out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            out(i, j) = b.block(i * g, j * g, g, g).sum();
    return out;
}

}  // namespace lcf
