#include "stodom/polynomial.hpp"

#include "stodom/error.hpp"

#include <sstream>

namespace stodom {

Polynomial::Polynomial(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

Polynomial::Polynomial(std::initializer_list<Rational> coefficients) : coeffs_(coefficients) { trim(); }

Polynomial Polynomial::constant(const Rational& c) { return Polynomial({c}); }

Polynomial Polynomial::linear_root(const Rational& root) { return Polynomial({-root, Rational(1)}); }

Polynomial Polynomial::shifted_power(const Rational& root, unsigned power, const Rational& scale) {
    // scale * sum_k C(power, k) x^k (-root)^(power - k)
    std::vector<Rational> c(power + 1);
    const Rational neg = -root;
    Rational neg_pow(1);
    for (unsigned j = 0; j <= power; ++j) {
        const unsigned k = power - j;
        c[k] = scale * binomial(power, k) * neg_pow;
        neg_pow *= neg;
    }
    return Polynomial(std::move(c));
}

void Polynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Rational Polynomial::coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }

Rational Polynomial::eval(const Rational& x) const {
    Rational acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc *= x;
        acc += *it;
    }
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Rational> c(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) c[i - 1] = coeffs_[i] * Rational(static_cast<long>(i));
    return Polynomial(std::move(c));
}

Polynomial Polynomial::antiderivative(const Rational& anchor, const Rational& value_at_anchor) const {
    std::vector<Rational> c(coeffs_.size() + 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i + 1] = coeffs_[i] / Rational(static_cast<long>(i + 1));
    Polynomial p(std::move(c));
    const Rational offset = value_at_anchor - p.eval(anchor);
    p += constant(offset);
    return p;
}

Polynomial Polynomial::taylor_shift(const Rational& shift) const {
    // Horner in polynomial form: q = (...(a_n (t + s) + a_{n-1})(t + s) + ...)
    Polynomial q;
    const Polynomial t_plus_s({shift, Rational(1)});
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        q = q * t_plus_s;
        q += constant(*it);
    }
    return q;
}

Polynomial Polynomial::reflect() const {
    std::vector<Rational> c = coeffs_;
    for (std::size_t i = 1; i < c.size(); i += 2) c[i] = -c[i];
    return Polynomial(std::move(c));
}

Polynomial Polynomial::monic() const {
    if (is_zero()) return {};
    return *this * leading().inverse();
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
    if (c.is_zero()) {
        coeffs_.clear();
        return *this;
    }
    for (auto& a : coeffs_) a *= c;
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Polynomial(std::move(c));
}

std::string Polynomial::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Rational& c = coeffs_[static_cast<std::size_t>(i)];
        if (c.is_zero()) continue;
        const bool negative = c.sign() < 0;
        const Rational mag = c.abs();
        if (first) {
            if (negative) os << "-";
        } else {
            os << (negative ? " - " : " + ");
        }
        first = false;
        const bool unit = mag == Rational(1);
        if (i == 0 || !unit) os << mag.str();
        if (i >= 1) {
            if (!unit) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

DivMod divmod(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw Error(ErrorCode::InvalidArgument, "polynomial division by zero");
    std::vector<Rational> rem(a.coefficients().begin(), a.coefficients().end());
    const int db = b.degree();
    const int da = a.degree();
    if (da < db) return {Polynomial(), a};
    std::vector<Rational> quo(static_cast<std::size_t>(da - db + 1));
    const Rational inv_lead = b.leading().inverse();
    for (int k = da - db; k >= 0; --k) {
        const Rational factor = rem[static_cast<std::size_t>(k + db)] * inv_lead;
        quo[static_cast<std::size_t>(k)] = factor;
        if (factor.is_zero()) continue;
        for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k + j)] -= factor * b.coefficient(static_cast<std::size_t>(j));
    }
    rem.resize(static_cast<std::size_t>(db));
    return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
    Polynomial x = a, y = b;
    while (!y.is_zero()) {
        Polynomial r = divmod(x, y).remainder;
        x = std::move(y);
        y = r.monic();
    }
    return x.monic();
}

Polynomial poly_combine(const Polynomial& a, const Polynomial& b, const Rational& ca, const Rational& cb) {
    return a * ca + b * cb;
}

}  // namespace stodom
