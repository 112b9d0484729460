#include "lcf/fraction.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <set>
#include <sstream>

#include "lcf/errors.hpp"

namespace lcf {

Factor Factor::shifted(int dn) const {
    Factor f = *this;
    f.n += dn;
    return f;
}

Factor Factor::conjugate() const {
    Factor f = *this;
    f.conj = !f.conj;
    return f;
}

std::string Factor::str() const {
    std::ostringstream os;
    os << "T(" << n << ",";
    if (curly)
        os << "{" << p << "}";
    else
        os << p;
    if (conj)
        os << ",bar";
    os << ")";
    return os.str();
}

SimpleFraction::SimpleFraction(Rational c, std::vector<Factor> numerator,
                               std::vector<Factor> denominator, int pi)
    : coef(std::move(c)), pi_power(pi), num(std::move(numerator)), den(std::move(denominator)) {
    normalize();
}

void SimpleFraction::normalize() {
    std::sort(num.begin(), num.end());
    std::sort(den.begin(), den.end());
    std::vector<Factor> n2, d2;
    std::set_difference(num.begin(), num.end(), den.begin(), den.end(), std::back_inserter(n2));
    std::set_difference(den.begin(), den.end(), num.begin(), num.end(), std::back_inserter(d2));
    num = std::move(n2);
    den = std::move(d2);
}

int SimpleFraction::degree() const {
    int d = 0;
    for (const auto& f : num)
        d += f.degree();
    for (const auto& f : den)
        d -= f.degree();
    return d;
}

SimpleFraction SimpleFraction::conjugate() const {
    SimpleFraction out = *this;
    for (auto& f : out.num)
        f = f.conjugate();
    for (auto& f : out.den)
        f = f.conjugate();
    out.normalize();
    return out;
}

std::string SimpleFraction::str() const {
    std::ostringstream os;
    bool first = true;
    auto put = [&](const std::string& s) {
        if (!first)
            os << "*";
        os << s;
        first = false;
    };
    if (coef != 1 || (num.empty() && pi_power == 0))
        put(coef.str());
    if (pi_power != 0)
        put("pi^" + std::to_string(pi_power));
    for (const auto& f : num)
        put(f.str());
    for (const auto& f : den)
        os << "/" << f.str();
    return os.str();
}

SimpleFraction operator*(const SimpleFraction& a, const SimpleFraction& b) {
    std::vector<Factor> num = a.num, den = a.den;
    num.insert(num.end(), b.num.begin(), b.num.end());
    den.insert(den.end(), b.den.begin(), b.den.end());
    return SimpleFraction(a.coef * b.coef, num, den, a.pi_power + b.pi_power);
}

int degree(const SimpleFraction& f) { return f.degree(); }

FractionSum::FractionSum(SimpleFraction f) : terms_{std::move(f)} { normalize(); }

FractionSum::FractionSum(std::vector<SimpleFraction> terms) : terms_(std::move(terms)) {
    normalize();
}

void FractionSum::normalize() {
    std::map<std::tuple<int, std::vector<Factor>, std::vector<Factor>>, SimpleFraction> merged;
    for (auto t : terms_) {
        t.normalize();
        auto k = t.key();
        auto it = merged.find(k);
        if (it == merged.end())
            merged.emplace(std::move(k), std::move(t));
        else
            it->second.coef += t.coef;
    }
    terms_.clear();
    for (auto& [k, t] : merged)
        if (t.coef != 0)
            terms_.push_back(std::move(t));
}

bool FractionSum::homogeneous() const {
    for (const auto& t : terms_)
        if (t.degree() != terms_.front().degree())
            return false;
    return true;
}

int FractionSum::degree() const {
    if (terms_.empty())
        return 0;
    if (!homogeneous())
        throw DegreeMismatch("sum of fractions is not homogeneous: " + str());
    return terms_.front().degree();
}

FractionSum FractionSum::conjugate() const {
    std::vector<SimpleFraction> out;
    for (const auto& t : terms_)
        out.push_back(t.conjugate());
    return FractionSum(out);
}

std::string FractionSum::str() const {
    if (terms_.empty())
        return "0";
    std::string s;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        std::string t = terms_[i].str();
        if (i > 0)
            s += (t.front() == '-') ? " - " + t.substr(1) : " + " + t;
        else
            s += t;
    }
    return s;
}

FractionSum& FractionSum::operator+=(const FractionSum& o) {
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    normalize();
    return *this;
}

FractionSum& FractionSum::operator-=(const FractionSum& o) {
    for (auto t : o.terms_) {
        t.coef = -t.coef;
        terms_.push_back(std::move(t));
    }
    normalize();
    return *this;
}

FractionSum& FractionSum::operator*=(const Rational& c) {
    for (auto& t : terms_)
        t.coef *= c;
    normalize();
    return *this;
}

FractionSum operator*(const SimpleFraction& f, const FractionSum& s) {
    std::vector<SimpleFraction> out;
    for (const auto& t : s.terms_)
        out.push_back(f * t);
    return FractionSum(out);
}

bool operator==(const FractionSum& a, const FractionSum& b) { return (a - b).is_zero(); }

FractionSum minus_cc(const FractionSum& x) { return x - x.conjugate(); }

FractionSum nabla(const SimpleFraction& f) {
    std::vector<SimpleFraction> out;
    for (std::size_t i = 0; i < f.num.size(); ++i) {
        auto num = f.num;
        num[i] = num[i].shifted(-1);
        out.emplace_back(f.coef, num, f.den, f.pi_power);
    }
    for (std::size_t j = 0; j < f.den.size(); ++j) {
        auto num = f.num;
        num.push_back(f.den[j].shifted(-1));
        auto den = f.den;
        den.push_back(f.den[j]);
        out.emplace_back(-f.coef, num, den, f.pi_power);
    }
    return FractionSum(out);
}

FractionSum nabla(const FractionSum& s) {
    FractionSum out;
    for (const auto& t : s.terms())
        out += nabla(t);
    return out;
}

FractionSum contract_z(int n, int p, bool conj) {
    if (n < -1)
        throw UnsupportedFactor("contraction rule needs n >= -1");
    auto lift = [conj](Factor f) { return conj ? f.conjugate() : f; };
    std::vector<SimpleFraction> out;
    if (n != 0)
        out.emplace_back(Rational(-4 * n), std::vector<Factor>{lift(T(n + 1, p))});
    out.emplace_back(Rational(-4), std::vector<Factor>{lift(Tcurly(n + 2, p))});
    return FractionSum(out);
}

namespace {

using Key = std::tuple<int, std::vector<Factor>, std::vector<Factor>>;

using Vec = std::map<Key, Rational>;

// Sparse echelon basis keyed by leading entry; vectors are stored with leading coefficient 1.
class Echelon {
public:
    // Eliminates every entry of v that has a pivot in the basis.
    void reduce(Vec& v) const {
        auto it = v.begin();
        while (it != v.end()) {
            auto b = rows_.find(it->first);
            if (b == rows_.end()) {
                ++it;
                continue;
            }
            const Key lead = it->first;
            const Rational f = it->second;
            // basis rows only have entries at or after their pivot
            for (const auto& [k, x] : b->second)
                v[k] -= f * x;
            for (auto jt = v.lower_bound(lead); jt != v.end();)
                jt = (jt->second == 0) ? v.erase(jt) : std::next(jt);
            it = v.lower_bound(lead);
        }
    }

    void insert(Vec v) {
        reduce(v);
        if (v.empty())
            return;
        const Rational inv = 1 / v.begin()->second;
        for (auto& [k, x] : v)
            x *= inv;
        const Key lead = v.begin()->first;
        rows_.emplace(lead, std::move(v));
    }

    bool contains(Vec v) const {
        reduce(v);
        return v.empty();
    }

private:
    std::map<Key, Vec> rows_;
};

// Does target lie in the span of cols? Exact elimination over the rationals.
bool in_span(const std::vector<Vec>& cols, const Vec& target) {
    Echelon e;
    for (const auto& c : cols)
        e.insert(c);
    return e.contains(target);
}

std::map<Key, Rational> expand(const FractionSum& s) {
    std::map<Key, Rational> out;
    for (const auto& t : s.terms())
        out[t.key()] += t.coef;
    return out;
}

}  // namespace

IbpResult ibp_check(const FractionSum& a, const FractionSum& b) {
    if (!a.homogeneous() || !b.homogeneous())
        throw DegreeMismatch("integration by parts needs homogeneous sums");
    if (!a.is_zero() && !b.is_zero() && a.degree() != b.degree()) {
        std::ostringstream os;
        os << "degrees differ: " << a.degree() << " vs " << b.degree();
        throw DegreeMismatch(os.str());
    }
    const FractionSum diff = a - b;
    IbpResult res;
    if (diff.is_zero()) {
        res.equivalent = true;
        return res;
    }

    // Candidates one degree lower: raise one numerator n or lower one denominator n.
    std::set<Key> seen;
    std::vector<SimpleFraction> gens;
    auto add = [&](SimpleFraction h) {
        h.coef = 1;
        h.normalize();
        auto k = h.key();
        if (gens.size() < kIbpGeneratorCap && seen.insert(k).second)
            gens.push_back(std::move(h));
    };
    for (const auto& t : diff.terms()) {
        for (std::size_t i = 0; i < t.num.size(); ++i) {
            auto h = t;
            h.num[i] = h.num[i].shifted(+1);
            add(h);
        }
        for (std::size_t j = 0; j < t.den.size(); ++j) {
            auto h = t;
            h.den[j] = h.den[j].shifted(-1);
            add(h);
        }
    }
    std::vector<std::map<Key, Rational>> cols;
    for (const auto& h : gens)
        cols.push_back(expand(nabla(h)));
    res.generators = gens.size();
    res.equivalent = in_span(cols, expand(diff));
    return res;
}

const FractionSum& EncodedN::part(const std::string& factor) const {
    for (const auto& p : parts)
        if (p.factor == factor)
            return p.fraction;
    throw std::out_of_range("no part '" + factor + "' in " + name);
}

namespace {

SimpleFraction frac(Rational c, std::vector<Factor> num, std::vector<Factor> den = {}, int pi = 0) {
    return SimpleFraction(std::move(c), std::move(num), std::move(den), pi);
}

// Prefactor c / T0bar used by every basic fraction.
SimpleFraction over_t0bar(Rational c, int pi = 0) { return frac(std::move(c), {}, {Tbar(0)}, pi); }

// T^(-1) T^(-1)bar (T^(0) - T^(0)bar)
FractionSum tt_difference() {
    return FractionSum(std::vector<SimpleFraction>{frac(1, {T(-1), Tbar(-1), T(0)}),
                                                   frac(-1, {T(-1), Tbar(-1), Tbar(0)})});
}

}  // namespace

std::vector<FractionSum> encode_basic_fractions() {
    const Rational r27 = 27, r6 = 6;  // 3^3 and 2*3
    const FractionSum c0_bracket = FractionSum(std::vector<SimpleFraction>{
        frac(r27, {T(0), T(0), Tbar(0), Tbar(-1)}),
        frac(-r6, {T(0, 1), T(0, 2), Tbar(0), Tbar(-1)})});
    FractionSum c0 = over_t0bar(Rational(1, 6)) * minus_cc(c0_bracket);
    FractionSum c1 = over_t0bar(-9) * tt_difference();
    FractionSum c2 = over_t0bar(-6) * minus_cc(frac(1, {T(-1), T(0), Tbar(0, 1), Tbar(0, 1)}));
    FractionSum c3 = over_t0bar(-6) * minus_cc(frac(1, {T(0, 1), T(0, 2), Tbar(0), Tbar(-1)}));
    return {c0, c1, c2, c3};
}

std::vector<EncodedN> encode_n_fractions(int g) {
    const Rational G = g, G2 = g * g, G3 = g * g * g;
    std::vector<EncodedN> out;

    {
        FractionSum bracket(std::vector<SimpleFraction>{frac(1, {T(0), T(0), Tbar(0), Tbar(-1)}),
                                                        frac(-2, {T(1), T(-1), Tbar(0), Tbar(-1)})});
        out.push_back({"N1", {{"1", over_t0bar(G3 / 6) * minus_cc(bracket)}}});
    }
    out.push_back(
        {"N2",
         {{"Y^2", over_t0bar(-2 * G) * minus_cc(frac(1, {T(-1), T(0), Tbar(0, 1), Tbar(0, 1)}))},
          {"YY", over_t0bar(-2 * G2) * minus_cc(frac(1, {T(-1), T(1, 2), Tbar(-1), Tbar(0)}))}}});
    out.push_back({"N3", {{"1", over_t0bar(G2 / 8, -1) * minus_cc(frac(1, {T(-1), Tbar(0), Tbar(-1)}))}}});
    out.push_back(
        {"N4",
         {{"mYd", over_t0bar(-2 * G) * minus_cc(frac(1, {T(0, 1), T(0, 2), Tbar(-1), Tbar(0)}))},
          {"m3d", over_t0bar(2 * G2) * minus_cc(frac(1, {T(1, 3), T(-1), Tbar(-1), Tbar(0)}))}}});
    out.push_back(
        {"N5",
         {{"1", over_t0bar(G3 / 6) * minus_cc(frac(1, {T(0), T(0), Tbar(0), Tbar(-1)}))},
          {"mYd", over_t0bar(-G / 3) * minus_cc(frac(1, {T(0, 2), T(0, 1), Tbar(0), Tbar(-1)}))},
          {"s0-s3", over_t0bar(G * G2 / 3) * tt_difference()}}});
    out.push_back(
        {"N6",
         {{"Y^2", over_t0bar(-2 * G) * minus_cc(frac(1, {T(-1), T(0), Tbar(0, 1), Tbar(0, 1)}))},
          {"YY*mYd",
           over_t0bar(-2 * G) * minus_cc(frac(1, {T(0, 2), T(0, 1), Tbar(0), Tbar(-1)}))},
          {"YY*(s2-s3)", over_t0bar(2 * G2) * tt_difference()}}});
    return out;
}

}  // namespace lcf
