#pragma once

#include "stodom/polynomial.hpp"

#include <optional>
#include <vector>

namespace stodom {

enum class SignVerdict { NonnegativeEverywhere, NegativeSomewhere };

/// Certificate for a pointwise p >= 0 decision. When the verdict is
/// NegativeSomewhere, p(*witness) < 0 exactly. touch_points lists every
/// rational zero of p inside the examined set (irrational zeros are not
/// representable and are omitted).
struct SignReport {
    SignVerdict verdict = SignVerdict::NonnegativeEverywhere;
    std::optional<Rational> witness;
    std::optional<Rational> witness_value;
    std::vector<Rational> touch_points;
    /// Largest value of p among the sample points used for the decision;
    /// a point where p > 0, if any exists in the examined set.
    std::optional<Rational> positive_point;

    bool nonnegative() const { return verdict == SignVerdict::NonnegativeEverywhere; }
};

/// Square-free part p / gcd(p, p'), monic.
Polynomial square_free_part(const Polynomial& p);

/// Sturm chain of a square-free polynomial.
class SturmSequence {
public:
    explicit SturmSequence(const Polynomial& square_free);
    /// Sign variations at x (zeros dropped).
    int variations(const Rational& x) const;
    /// Number of distinct roots in (a, b], requires a not a root.
    int count_roots(const Rational& a, const Rational& b) const { return variations(a) - variations(b); }

private:
    std::vector<Polynomial> chain_;
};

/// A real root isolated exactly: either a rational value or an open
/// interval (lower, upper) with rational, non-root endpoints containing
/// exactly one irrational root.
struct IsolatedRoot {
    bool exact = false;
    Rational value;
    Rational lower;
    Rational upper;
};

/// All distinct real roots of p in [lo, hi], sorted. p must be nonzero.
std::vector<IsolatedRoot> isolate_roots(const Polynomial& p, const Rational& lo, const Rational& hi);

/// Exact decision of p(x) >= 0 on the closed interval [lo, hi].
SignReport nonneg_on_interval(const Polynomial& p, const Rational& lo, const Rational& hi);

/// Exact decision of p(x) >= 0 for all x >= lo.
SignReport nonneg_on_ray(const Polynomial& p, const Rational& lo);

/// Exact decision of p(x) >= 0 for all x <= hi.
SignReport nonneg_on_left_ray(const Polynomial& p, const Rational& hi);

}  // namespace stodom
