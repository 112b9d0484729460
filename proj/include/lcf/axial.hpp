#pragma once

#include <map>
#include <string>
#include <vector>

#include "lcf/gamma.hpp"
#include "lcf/spectra.hpp"

namespace lcf {

// (g/4) max_a (m_g - m_a)(m_a - m_1)(m_1 + m_a + m_g) over the inner masses.
double smax(const MassSpectrum& spec);
// Maximum of sum m^3 d under sum d = 0, sum m d = 0, sum |d| = g/2 by vertex enumeration.
double smax_oracle(const MassSpectrum& spec);
// Lower bound on <u,u>: -(smax/4)^2
double feasibility_bound(const MassSpectrum& spec);

struct PhaseClosure {
    std::vector<cplx> values;  // same order as the input moduli
    double closure = 0.0;      // |sum values|
    bool polygon = false;      // largest modulus <= sum of the others
};

// Chooses phases for the given moduli so that the values sum to zero, when possible.
PhaseClosure phase_closure(const std::vector<double>& rho);

enum class AxialCase { Null, Timelike, Spacelike };
const char* case_name(AxialCase c);

struct AxialSolution {
    AxialCase kase = AxialCase::Null;
    Vec4 u = Vec4::Zero();
    Vec4 v = Vec4::Zero();
    std::vector<double> tau, d;
    Eigen::VectorXcd l, m, n;
    MatX V;
    MatX G;  // generator: V = exp(G) (timelike) or exp(iG) (spacelike)
    MatX U;
    double eta = 0.0;  // timelike rescaling parameter
    double closure = 0.0;
    // min eigenvalue of V (timelike) or ||V^dagger V - 1|| (spacelike)
    double v_check = 0.0;
    // max(|V m - l|, |V l - n|)
    double mn_residual = 0.0;
    std::map<std::string, double> residuals;
};

// Throws Infeasible when <u,u> is below the feasibility bound.
AxialSolution construct(const MassSpectrum& spec, const Vec4& u);

// Recomputes the trace conditions from U alone. Each residual is relative to
// max(|lhs|, |tr G| |s|), s the spinor input and G the generation matrix of the condition.
// Keys: cc0, cc1, cc3, remY2.
std::map<std::string, double> verify_conditions(const AxialSolution& sol, const MassSpectrum& spec,
                                                unsigned seed = 1);

}  // namespace lcf
