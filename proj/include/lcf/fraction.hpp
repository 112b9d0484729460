#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace lcf {

using Rational = boost::multiprecision::cpp_rational;

// Regularized factor T^(n)_[p] (or T^(n)_{p} when curly), possibly conjugated.
// Member order fixes the canonical sort order.
struct Factor {
    bool conj = false;
    int n = 0;
    int p = 0;
    bool curly = false;

    int degree() const { return 1 - n; }
    Factor shifted(int dn) const;
    Factor conjugate() const;
    std::string str() const;

    auto operator<=>(const Factor&) const = default;
};

inline Factor T(int n, int p = 0) { return Factor{false, n, p, false}; }
inline Factor Tbar(int n, int p = 0) { return Factor{true, n, p, false}; }
inline Factor Tcurly(int n, int p = 0) { return Factor{false, n, p, true}; }

// coef * pi^pi_power * prod(num) / prod(den)
struct SimpleFraction {
    Rational coef{1};
    int pi_power = 0;
    std::vector<Factor> num;
    std::vector<Factor> den;

    SimpleFraction() = default;
    SimpleFraction(Rational c, std::vector<Factor> numerator, std::vector<Factor> denominator = {},
                   int pi = 0);

    // Sorts both multisets and cancels common factors.
    void normalize();
    int degree() const;
    SimpleFraction conjugate() const;
    std::string str() const;

    // Key without the coefficient; equal keys can be merged.
    std::tuple<int, std::vector<Factor>, std::vector<Factor>> key() const {
        return {pi_power, num, den};
    }
};

SimpleFraction operator*(const SimpleFraction& a, const SimpleFraction& b);

class FractionSum {
public:
    FractionSum() = default;
    FractionSum(SimpleFraction f);  // NOLINT(implicit)
    FractionSum(std::vector<SimpleFraction> terms);

    const std::vector<SimpleFraction>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // Degree of a homogeneous sum; throws DegreeMismatch otherwise, 0 for the empty sum.
    int degree() const;
    bool homogeneous() const;

    FractionSum conjugate() const;
    std::string str() const;

    FractionSum& operator+=(const FractionSum& o);
    FractionSum& operator-=(const FractionSum& o);
    FractionSum& operator*=(const Rational& c);

    friend FractionSum operator+(FractionSum a, const FractionSum& b) { return a += b; }
    friend FractionSum operator-(FractionSum a, const FractionSum& b) { return a -= b; }
    friend FractionSum operator*(FractionSum a, const Rational& c) { return a *= c; }
    friend FractionSum operator*(const Rational& c, FractionSum a) { return a *= c; }
    friend FractionSum operator*(const SimpleFraction& f, const FractionSum& s);
    friend bool operator==(const FractionSum& a, const FractionSum& b);

private:
    void normalize();
    std::vector<SimpleFraction> terms_;
};

// X - conj(X)
FractionSum minus_cc(const FractionSum& x);

int degree(const SimpleFraction& f);

// Leibniz and quotient rule with nabla T^(n) = T^(n-1), conjugates included.
FractionSum nabla(const SimpleFraction& f);
FractionSum nabla(const FractionSum& s);

// z^(n)_[p] T^(n)_[p] = -4 (n T^(n+1)_[p] + T^(n+2)_{p}); conjugated when conj is set.
FractionSum contract_z(int n, int p, bool conj = false);

struct IbpResult {
    bool equivalent = false;
    std::size_t generators = 0;
};

// Decides whether a - b lies in the span of nabla(h) for h from a finite generating set.
IbpResult ibp_check(const FractionSum& a, const FractionSum& b);
inline bool ibp_equivalent(const FractionSum& a, const FractionSum& b) {
    return ibp_check(a, b).equivalent;
}

inline constexpr std::size_t kIbpGeneratorCap = 200;

// The four basic fractions c0..c3 with the c.c. brackets expanded.
std::vector<FractionSum> encode_basic_fractions();

// Simple fraction multiplying a macroscopic factor, labelled by that factor.
struct NPart {
    std::string factor;
    FractionSum fraction;
};

struct EncodedN {
    std::string name;
    std::vector<NPart> parts;

    const FractionSum& part(const std::string& factor) const;
};

// N1 .. N6 for g generations. Factor labels: "1", "Y^2", "YY", "mYd" (m Y sum m^2 d),
// "m3d" (sum m^3 d), "s0-s3", "YY*mYd", "YY*(s2-s3)".
std::vector<EncodedN> encode_n_fractions(int g);

}  // namespace lcf
