#pragma once

#include <array>
#include <vector>

namespace lcf {

// Minimal relative gap (m_{b+1} - m_b) / m_g accepted between neighbouring masses.
inline constexpr double kDegeneracyThreshold = 1e-8;

class MassSpectrum {
public:
    // Throws InvalidMasses for empty, non-positive or unordered input and
    // DegenerateMasses when two neighbours are closer than the threshold.
    explicit MassSpectrum(std::vector<double> masses);

    const std::vector<double>& masses() const { return masses_; }
    int g() const { return static_cast<int>(masses_.size()); }
    double operator[](int i) const { return masses_[i]; }
    double max() const { return masses_.back(); }

    // sum_b m_b^k
    double moment(int k) const;

    MassSpectrum scaled(double factor) const;

private:
    std::vector<double> masses_;
};

struct MixingCoefficients {
    std::vector<double> d;
    // |sum d|, |sum m d|, |sum m^3 d - 1|
    std::array<double, 3> residuals{};
    // max relative deviation between the closed form and the linear solve
    double closed_form_gap = 0.0;
    // (sum m) * (sum m^2 d), equal to one for three generations
    double mass_identity = 0.0;
};

MixingCoefficients solve_mixing(const MassSpectrum& spec);

// d_b = 1 / [(sum m) prod_{a != b} (m_b - m_a)]
std::vector<double> mixing_closed_form(const MassSpectrum& spec);

struct LogConstants {
    double s3 = 0.0;
    double s0_const = 0.0;
    double s2_const = 0.0;
    double sigma0 = 0.0;
    double sigma2 = 0.0;
};

LogConstants log_constants(const MassSpectrum& spec, const MixingCoefficients& mix);
LogConstants log_constants(const MassSpectrum& spec);

}  // namespace lcf
