#include "stodom/rational.hpp"

#include "stodom/error.hpp"

#include <cctype>
#include <ostream>

namespace stodom {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::DomainMismatch: return "DomainMismatch";
        case ErrorCode::NonIntegrable: return "NonIntegrable";
        case ErrorCode::MassNotOne: return "MassNotOne";
        case ErrorCode::NegativeMass: return "NegativeMass";
        case ErrorCode::EmptySupport: return "EmptySupport";
        case ErrorCode::SupportCapExceeded: return "SupportCapExceeded";
        case ErrorCode::OrderOutOfRange: return "OrderOutOfRange";
        case ErrorCode::MomentHypothesisViolated: return "MomentHypothesisViolated";
        case ErrorCode::GenerationExhausted: return "GenerationExhausted";
        case ErrorCode::UnknownSuite: return "UnknownSuite";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::ValidationError: return "ValidationError";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

namespace {

mpz_class pow10(unsigned e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
    return r;
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

[[noreturn]] void bad_literal(std::string_view text) {
    throw Error(ErrorCode::ParseError, "malformed rational literal '" + std::string(text) + "'");
}

mpz_class parse_integer(std::string_view text, std::string_view whole) {
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    if (!all_digits(text)) bad_literal(whole);
    mpz_class v(std::string(text), 10);
    return negative ? mpz_class(-v) : v;
}

}  // namespace

Rational::Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational::Rational(long num, long den) : Rational(mpz_class(num), mpz_class(den)) {}

Rational Rational::parse(std::string_view text) {
    const std::string_view whole = text;
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) bad_literal(whole);

    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        const mpz_class num = parse_integer(text.substr(0, slash), whole);
        const std::string_view den_text = text.substr(slash + 1);
        if (!all_digits(den_text)) bad_literal(whole);
        const mpz_class den(std::string(den_text), 10);
        if (den == 0) bad_literal(whole);
        return Rational(num, den);
    }

    bool negative = false;
    if (text.front() == '-' || text.front() == '+') {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }

    long exponent = 0;
    if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        const mpz_class ev = parse_integer(text.substr(e + 1), whole);
        if (!ev.fits_slong_p() || ::abs(ev) > 100000) bad_literal(whole);
        exponent = ev.get_si();
        text = text.substr(0, e);
    }

    std::string digits;
    long fraction_digits = 0;
    if (const auto dot = text.find('.'); dot != std::string_view::npos) {
        const std::string_view int_part = text.substr(0, dot);
        const std::string_view frac_part = text.substr(dot + 1);
        if (int_part.empty() && frac_part.empty()) bad_literal(whole);
        if (!int_part.empty() && !all_digits(int_part)) bad_literal(whole);
        if (!frac_part.empty() && !all_digits(frac_part)) bad_literal(whole);
        digits = std::string(int_part) + std::string(frac_part);
        fraction_digits = static_cast<long>(frac_part.size());
    } else {
        if (!all_digits(text)) bad_literal(whole);
        digits = std::string(text);
    }

    mpz_class num(digits, 10);
    if (negative) num = -num;
    const long scale = exponent - fraction_digits;
    if (scale >= 0) return Rational(mpq_class(num * pow10(static_cast<unsigned>(scale))));
    return Rational(num, pow10(static_cast<unsigned>(-scale)));
}

Rational Rational::pow(unsigned exponent) const {
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), exponent);
    mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), exponent);
    return Rational(mpq_class(n, d));
}

Rational Rational::inverse() const {
    if (is_zero()) throw Error(ErrorCode::InvalidArgument, "inverse of zero");
    return Rational(mpq_class(q_.get_den(), q_.get_num()));
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw Error(ErrorCode::InvalidArgument, "division by zero");
    q_ /= o.q_;
    return *this;
}

std::string Rational::decimal(int significant) const {
    if (is_zero()) return "0";
    const mpq_class a = ::abs(q_);

    // Exponent e with 10^e <= a < 10^(e+1).
    long e = static_cast<long>(mpz_sizeinbase(a.get_num_mpz_t(), 10)) -
             static_cast<long>(mpz_sizeinbase(a.get_den_mpz_t(), 10));
    auto scaled_at_least_ten_pow = [&](long k) {
        mpq_class p = k >= 0 ? mpq_class(pow10(static_cast<unsigned>(k)))
                             : mpq_class(mpz_class(1), pow10(static_cast<unsigned>(-k)));
        return a >= p;
    };
    while (!scaled_at_least_ten_pow(e)) --e;
    while (scaled_at_least_ten_pow(e + 1)) ++e;

    const long shift = significant - 1 - e;
    mpq_class scaled = shift >= 0 ? mpq_class(a * pow10(static_cast<unsigned>(shift)))
                                  : mpq_class(a / pow10(static_cast<unsigned>(-shift)));
    // Round half away from zero.
    mpq_class half = scaled + mpq_class(1, 2);
    mpz_class digits_int;
    mpz_fdiv_q(digits_int.get_mpz_t(), half.get_num_mpz_t(), half.get_den_mpz_t());
    if (digits_int == pow10(static_cast<unsigned>(significant))) {
        digits_int /= 10;
        ++e;
    }
    std::string digits = digits_int.get_str();

    std::string out = sgn(q_) < 0 ? "-" : "";
    if (e >= -5 && e < significant) {
        std::string int_part, frac_part;
        if (e >= 0) {
            int_part = digits.substr(0, static_cast<size_t>(e + 1));
            frac_part = digits.substr(static_cast<size_t>(e + 1));
        } else {
            int_part = "0";
            frac_part = std::string(static_cast<size_t>(-e - 1), '0') + digits;
        }
        while (!frac_part.empty() && frac_part.back() == '0') frac_part.pop_back();
        out += int_part;
        if (!frac_part.empty()) out += "." + frac_part;
    } else {
        std::string frac_part = digits.substr(1);
        while (!frac_part.empty() && frac_part.back() == '0') frac_part.pop_back();
        out += digits.substr(0, 1);
        if (!frac_part.empty()) out += "." + frac_part;
        out += (e < 0 ? "e-" : "e+");
        const long ae = e < 0 ? -e : e;
        if (ae < 10) out += "0";
        out += std::to_string(ae);
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational factorial(unsigned n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(mpq_class(f));
}

Rational binomial(unsigned n, unsigned k) {
    if (k > n) return Rational(0);
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return Rational(mpq_class(b));
}

Rational midpoint(const Rational& a, const Rational& b) { return (a + b) / Rational(2); }

Rational simplest_between(const Rational& lo_in, const Rational& hi_in) {
    Rational lo = lo_in, hi = hi_in;
    if (hi < lo) std::swap(lo, hi);
    if (lo.sign() <= 0 && hi.sign() >= 0) return Rational(0);
    if (hi.sign() < 0) return -simplest_between(-hi, -lo);

    // Continued-fraction descent for 0 < lo <= hi, accumulating convergents.
    mpz_class h2 = 0, h1 = 1, k2 = 1, k1 = 0;
    mpq_class a = lo.raw(), b = hi.raw();
    for (;;) {
        mpz_class fl, cl;
        mpz_fdiv_q(fl.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
        mpz_cdiv_q(cl.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
        const bool integer_inside = cl <= b;
        const mpz_class term = integer_inside ? cl : fl;
        const mpz_class h = term * h1 + h2;
        const mpz_class k = term * k1 + k2;
        h2 = h1;
        h1 = h;
        k2 = k1;
        k1 = k;
        if (integer_inside) break;
        const mpq_class na = 1 / mpq_class(b - fl);
        const mpq_class nb = 1 / mpq_class(a - fl);
        a = na;
        b = nb;
    }
    return Rational(h1, k1);
}

}  // namespace stodom
