#pragma once

#include "stodom/polynomial.hpp"

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace stodom {

/// A rational or one of the two infinities.
class Extended {
public:
    Extended() = default;
    Extended(const Rational& v) : kind_(Kind::Finite), value_(v) {}
    Extended(int v) : Extended(Rational(v)) {}

    static Extended neg_infinity() { return Extended(Kind::NegInf); }
    static Extended pos_infinity() { return Extended(Kind::PosInf); }

    bool is_finite() const { return kind_ == Kind::Finite; }
    bool is_neg_infinity() const { return kind_ == Kind::NegInf; }
    bool is_pos_infinity() const { return kind_ == Kind::PosInf; }
    /// Requires is_finite().
    const Rational& value() const;

    std::string str() const;

    friend bool operator==(const Extended& a, const Extended& b);
    friend std::strong_ordering operator<=>(const Extended& a, const Extended& b);

private:
    enum class Kind { NegInf, Finite, PosInf };
    explicit Extended(Kind k) : kind_(k) {}
    Kind kind_ = Kind::Finite;
    Rational value_;
};

/// Which end of each piece is closed. Only matters for curves with jumps
/// (continuity class -1): CDF steps are right-continuous and use [l, u);
/// quantile steps are left-continuous and use (l, u]. The outermost finite
/// domain endpoints are always included.
enum class Closure { LeftClosed, RightClosed };

struct Piece {
    Extended lower;
    Extended upper;
    Polynomial poly;

    friend bool operator==(const Piece&, const Piece&) = default;
};

class PiecewisePolynomial {
public:
    PiecewisePolynomial() = default;
    /// Pieces must be contiguous, sorted and non-empty. Continuity at shared
    /// breakpoints up to `continuity_class` derivatives is verified exactly.
    PiecewisePolynomial(std::vector<Piece> pieces, int continuity_class, Closure closure = Closure::LeftClosed);

    const std::vector<Piece>& pieces() const { return pieces_; }
    int continuity_class() const { return continuity_; }
    Closure closure() const { return closure_; }
    Extended domain_lower() const { return pieces_.front().lower; }
    Extended domain_upper() const { return pieces_.back().upper; }
    /// Interior breakpoints, sorted.
    std::vector<Rational> breakpoints() const;

    /// Index of the piece owning x under the closure convention.
    std::size_t locate(const Rational& x) const;
    Rational operator()(const Rational& x) const { return eval(x); }
    Rational eval(const Rational& x) const;

    bool is_identically_zero() const;
    /// Piecewise derivative; continuity class drops by one (never below -1).
    PiecewisePolynomial derivative() const;
    /// Exact integral over [a, b] within the domain.
    Rational integrate(const Rational& a, const Rational& b) const;

    friend bool operator==(const PiecewisePolynomial&, const PiecewisePolynomial&) = default;

private:
    std::vector<Piece> pieces_;
    int continuity_ = -1;
    Closure closure_ = Closure::LeftClosed;
};

/// cf * f + cg * g over the refinement of both breakpoint sets. Throws
/// Error(DomainMismatch) when the domains differ.
PiecewisePolynomial pw_linear_combine(const PiecewisePolynomial& f, const PiecewisePolynomial& g,
                                      const Rational& cf, const Rational& cg);

/// from_left: G(x) = integral of f from the lower domain end to x.
/// otherwise: G(x) = integral of f from x to the upper domain end.
/// Throws Error(NonIntegrable) when an infinite anchor tail is not zero.
PiecewisePolynomial pw_antiderivative(const PiecewisePolynomial& f, bool from_left);

}  // namespace stodom
