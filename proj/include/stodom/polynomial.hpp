#pragma once

#include "stodom/rational.hpp"

#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace stodom {

/// Dense univariate polynomial over the rationals. Coefficient i multiplies
/// x^i; trailing zeros are always trimmed, so the zero polynomial has no
/// coefficients and degree() == -1.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coefficients);
    Polynomial(std::initializer_list<Rational> coefficients);

    static Polynomial constant(const Rational& c);
    /// x - root
    static Polynomial linear_root(const Rational& root);
    /// scale * (x - root)^power
    static Polynomial shifted_power(const Rational& root, unsigned power, const Rational& scale = Rational(1));

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    std::span<const Rational> coefficients() const { return coeffs_; }
    /// Coefficient of x^i (zero beyond the degree).
    Rational coefficient(std::size_t i) const;
    const Rational& leading() const { return coeffs_.back(); }

    Rational operator()(const Rational& x) const { return eval(x); }
    Rational eval(const Rational& x) const;

    Polynomial derivative() const;
    /// P with P' = *this and P(anchor) = value_at_anchor.
    Polynomial antiderivative(const Rational& anchor, const Rational& value_at_anchor) const;
    /// q(t) = p(t + shift)
    Polynomial taylor_shift(const Rational& shift) const;
    /// q(x) = p(-x)
    Polynomial reflect() const;
    /// Scaled so the leading coefficient is one (zero stays zero).
    Polynomial monic() const;

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Rational& c);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }
    friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
    friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

    std::string str(const std::string& var = "x") const;

private:
    void trim();
    std::vector<Rational> coeffs_;
};

struct DivMod {
    Polynomial quotient;
    Polynomial remainder;
};

DivMod divmod(const Polynomial& a, const Polynomial& b);
/// Monic greatest common divisor (zero when both inputs are zero).
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// ca * a + cb * b, canonical.
Polynomial poly_combine(const Polynomial& a, const Polynomial& b, const Rational& ca, const Rational& cb);
inline Rational poly_eval(const Polynomial& p, const Rational& x) { return p.eval(x); }
inline Polynomial poly_antiderivative(const Polynomial& p, const Rational& anchor, const Rational& value) {
    return p.antiderivative(anchor, value);
}

}  // namespace stodom
