#include "stodom/error.hpp"
#include "stodom/falsifier.hpp"
#include "stodom/piecewise.hpp"
#include "stodom/sign.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace stodom;
using stodom::test::R;

namespace {

Rational draw(SplitMix64& rng, long lo, long hi, long den) { return Rational(rng.between(lo, hi), rng.between(1, den)); }

Polynomial random_poly(SplitMix64& rng, int max_degree) {
    const int deg = static_cast<int>(rng.between(0, max_degree));
    std::vector<Rational> c;
    for (int i = 0; i <= deg; ++i) c.push_back(draw(rng, -9, 9, 6));
    // Sometimes square a factor so even-multiplicity roots appear.
    if (rng.below(3) == 0) {
        const Polynomial f = Polynomial::linear_root(draw(rng, -4, 4, 3));
        return Polynomial(c) * f * f;
    }
    return Polynomial(c);
}

}  // namespace

// ---------------------------------------------------------------------------
// Rational

TEST(Rational, ParsesFractionsIntegersAndDecimals) {
    EXPECT_EQ(R("13/4"), Rational(13, 4));
    EXPECT_EQ(R("-4.1"), Rational(-41, 10));
    EXPECT_EQ(R("0.9"), Rational(9, 10));
    EXPECT_EQ(R("42"), Rational(42));
    EXPECT_EQ(R("1e-3"), Rational(1, 1000));
    EXPECT_EQ(R("2.5E2"), Rational(250));
    EXPECT_EQ(R("6/4"), Rational(3, 2));
    EXPECT_EQ(R("-6/4"), Rational(-3, 2));
}

TEST(Rational, RejectsMalformedLiterals) {
    for (const char* bad : {"", "abc", "1/0", "1.2.3", "--1", "1/", "e5", "0x10", "-6/-4"}) {
        try {
            (void)Rational::parse(bad);
            ADD_FAILURE() << "accepted '" << bad << "'";
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::ParseError) << bad;
        }
    }
}

TEST(Rational, CanonicalFormAndText) {
    const Rational r(-10, 4);
    EXPECT_EQ(r.numerator(), -5);
    EXPECT_EQ(r.denominator(), 2);
    EXPECT_EQ(r.str(), "-5/2");
    EXPECT_EQ(Rational(7).str(), "7");
    EXPECT_EQ(Rational(1, 3).decimal(12), "0.333333333333");
    EXPECT_EQ(Rational(2, 3).decimal(12), "0.666666666667");
    EXPECT_EQ(Rational(5, 4).decimal(12), "1.25");
    EXPECT_EQ(Rational(0).decimal(12), "0");
    EXPECT_EQ(Rational(-1, 8).decimal(12), "-0.125");
}

TEST(Rational, ArithmeticIsExact) {
    Rational acc;
    for (int i = 1; i <= 50; ++i) acc += Rational(1, i * (i + 1));
    EXPECT_EQ(acc, Rational(50, 51));
    EXPECT_EQ(Rational(3, 7).pow(3), Rational(27, 343));
    EXPECT_EQ(factorial(10), Rational(3628800));
    EXPECT_EQ(binomial(10, 3), Rational(120));
    EXPECT_EQ(Rational(-3, 4).abs(), Rational(3, 4));
    EXPECT_EQ(Rational(-3, 4).inverse(), Rational(-4, 3));
}

TEST(Rational, SimplestBetween) {
    EXPECT_EQ(simplest_between(Rational(1, 3), Rational(1, 2)), Rational(1, 2));
    EXPECT_EQ(simplest_between(R("0.31"), R("0.32")), Rational(5, 16));
    EXPECT_EQ(simplest_between(Rational(3, 2), Rational(5, 2)), Rational(2));
    EXPECT_EQ(simplest_between(R("-0.32"), R("-0.31")), Rational(-5, 16));
    EXPECT_EQ(simplest_between(Rational(7, 9), Rational(7, 9)), Rational(7, 9));
}

// ---------------------------------------------------------------------------
// Polynomial

TEST(Polynomial, TrimsAndEvaluates) {
    const Polynomial p{Rational(1), Rational(0), Rational(3), Rational(0)};
    EXPECT_EQ(p.degree(), 2);
    EXPECT_EQ(p.eval(Rational(2)), Rational(13));
    EXPECT_EQ(Polynomial().degree(), -1);
    EXPECT_TRUE((p - p).is_zero());
    EXPECT_EQ(Polynomial::shifted_power(Rational(1), 2, Rational(3)), (Polynomial{Rational(3), Rational(-6), Rational(3)}));
}

TEST(Polynomial, DerivativeUndoesAntiderivative) {
    SplitMix64 rng(11);
    for (int t = 0; t < 200; ++t) {
        const Polynomial p = random_poly(rng, 8);
        const Rational anchor = draw(rng, -5, 5, 4);
        const Rational value = draw(rng, -5, 5, 4);
        const Polynomial q = p.antiderivative(anchor, value);
        EXPECT_EQ(q.derivative(), p);
        EXPECT_EQ(q.eval(anchor), value);
    }
}

TEST(Polynomial, ShiftReflectAndDivision) {
    SplitMix64 rng(12);
    for (int t = 0; t < 200; ++t) {
        const Polynomial a = random_poly(rng, 7);
        Polynomial b = random_poly(rng, 4);
        if (b.is_zero()) b = Polynomial::constant(Rational(1));
        const Rational s = draw(rng, -4, 4, 3);
        const Rational x = draw(rng, -4, 4, 5);
        EXPECT_EQ(a.taylor_shift(s).eval(x), a.eval(x + s));
        EXPECT_EQ(a.reflect().eval(x), a.eval(-x));
        const DivMod qr = divmod(a, b);
        EXPECT_EQ(qr.quotient * b + qr.remainder, a);
        EXPECT_LT(qr.remainder.degree(), b.degree() == 0 ? 0 : b.degree());
    }
}

TEST(Polynomial, GcdFindsCommonFactor) {
    const Polynomial f = Polynomial::linear_root(Rational(1, 2));
    const Polynomial g = Polynomial::linear_root(Rational(3));
    const Polynomial h = Polynomial::linear_root(Rational(-2));
    EXPECT_EQ(gcd(f * g * Rational(6), f * h), f);
    EXPECT_EQ(gcd(g, h), Polynomial::constant(Rational(1)));
}

// ---------------------------------------------------------------------------
// Sign decisions

TEST(Sign, DoubleRootIsTouchNotNegative) {
    const Polynomial p = Polynomial::shifted_power(Rational(1), 2);
    const SignReport r = nonneg_on_interval(p, Rational(0), Rational(2));
    EXPECT_TRUE(r.nonnegative());
    ASSERT_EQ(r.touch_points.size(), 1u);
    EXPECT_EQ(r.touch_points[0], Rational(1));
}

TEST(Sign, SimpleRootGivesExactWitness) {
    // (x - 1)^2 (x - 2) dips below zero on [0, 2).
    const Polynomial p = Polynomial::shifted_power(Rational(1), 2) * Polynomial::linear_root(Rational(2));
    const SignReport r = nonneg_on_interval(p, Rational(0), Rational(3));
    ASSERT_FALSE(r.nonnegative());
    ASSERT_TRUE(r.witness);
    EXPECT_LT(p.eval(*r.witness), Rational(0));
    EXPECT_EQ(*r.witness_value, p.eval(*r.witness));
}

TEST(Sign, IrrationalRootsAreIsolated) {
    const Polynomial p{Rational(-2), Rational(0), Rational(1)};  // x^2 - 2
    const auto roots = isolate_roots(p, Rational(0), Rational(2));
    ASSERT_EQ(roots.size(), 1u);
    EXPECT_FALSE(roots[0].exact);
    EXPECT_LT(roots[0].lower * roots[0].lower, Rational(2));
    EXPECT_GT(roots[0].upper * roots[0].upper, Rational(2));
    const SignReport r = nonneg_on_interval(p, Rational(1), Rational(2));
    EXPECT_FALSE(r.nonnegative());
    EXPECT_TRUE(r.touch_points.empty());
    EXPECT_TRUE(nonneg_on_interval(p, Rational(3, 2), Rational(2)).nonnegative());
}

TEST(Sign, EndpointZeroIsReported) {
    const Polynomial p = Polynomial::linear_root(Rational(0));  // x on [0, 1]
    const SignReport r = nonneg_on_interval(p, Rational(0), Rational(1));
    EXPECT_TRUE(r.nonnegative());
    ASSERT_EQ(r.touch_points.size(), 1u);
    EXPECT_EQ(r.touch_points[0], Rational(0));
}

TEST(Sign, Rays) {
    const Polynomial p{Rational(0), Rational(-1), Rational(1)};  // x^2 - x
    EXPECT_TRUE(nonneg_on_ray(p, Rational(1)).nonnegative());
    EXPECT_FALSE(nonneg_on_ray(p, Rational(1, 2)).nonnegative());
    EXPECT_TRUE(nonneg_on_left_ray(p, Rational(0)).nonnegative());
    const SignReport r = nonneg_on_ray(-Polynomial::linear_root(Rational(100)), Rational(0));
    ASSERT_FALSE(r.nonnegative());
    EXPECT_GT(*r.witness, Rational(100));
    // Leading term decides far out: -x^3 + 1000 x^2 goes negative beyond 1000.
    const Polynomial q{Rational(0), Rational(0), Rational(1000), Rational(-1)};
    const SignReport far = nonneg_on_ray(q, Rational(0));
    ASSERT_FALSE(far.nonnegative());
    EXPECT_LT(q.eval(*far.witness), Rational(0));
}

TEST(Sign, MatchesDenseSamplingOnRandomPolynomials) {
    SplitMix64 rng(2024);
    int negatives = 0;
    for (int t = 0; t < 1000; ++t) {
        const Polynomial p = random_poly(rng, 8);
        Rational lo = draw(rng, -6, 6, 4);
        Rational hi = lo + draw(rng, 1, 8, 3);
        const SignReport r = nonneg_on_interval(p, lo, hi);
        bool sampled_negative = false;
        for (int i = 0; i <= 4096; ++i) {
            if (p.eval(lo + (hi - lo) * Rational(i, 4096)).sign() < 0) {
                sampled_negative = true;
                break;
            }
        }
        if (r.nonnegative()) {
            EXPECT_FALSE(sampled_negative) << p.str() << " on [" << lo << ", " << hi << "]";
            for (const auto& z : r.touch_points) {
                EXPECT_TRUE(p.eval(z).is_zero());
                EXPECT_TRUE(z >= lo && z <= hi);
            }
        } else {
            ++negatives;
            ASSERT_TRUE(r.witness);
            EXPECT_TRUE(*r.witness >= lo && *r.witness <= hi);
            EXPECT_LT(p.eval(*r.witness), Rational(0)) << p.str();
        }
    }
    EXPECT_GT(negatives, 100);
}

TEST(Sign, SturmCountsDistinctRoots) {
    // (x-1)(x-2)(x-3) with a doubled factor at 2.
    const Polynomial p = Polynomial::linear_root(Rational(1)) * Polynomial::shifted_power(Rational(2), 2) *
                         Polynomial::linear_root(Rational(3));
    const SturmSequence s(square_free_part(p));
    EXPECT_EQ(s.count_roots(Rational(0), Rational(4)), 3);
    EXPECT_EQ(s.count_roots(Rational(3, 2), Rational(5, 2)), 1);
}

// ---------------------------------------------------------------------------
// Piecewise polynomials

namespace {

PiecewisePolynomial hat() {
    // 0 on (-inf, 0), x on [0, 1), 2 - x on [1, 2), 0 on [2, inf)
    return PiecewisePolynomial({{Extended::neg_infinity(), Rational(0), Polynomial()},
                                {Rational(0), Rational(1), Polynomial::linear_root(Rational(0))},
                                {Rational(1), Rational(2), Polynomial{Rational(2), Rational(-1)}},
                                {Rational(2), Extended::pos_infinity(), Polynomial()}},
                               0);
}

}  // namespace

TEST(Piecewise, ValidatesLayoutAndContinuity) {
    EXPECT_NO_THROW(hat());
    try {
        PiecewisePolynomial({{Rational(0), Rational(1), Polynomial()}, {Rational(2), Rational(3), Polynomial()}}, -1);
        ADD_FAILURE() << "gap accepted";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
    }
    // A jump declared as continuous.
    EXPECT_THROW(PiecewisePolynomial({{Rational(0), Rational(1), Polynomial::constant(Rational(0))},
                                      {Rational(1), Rational(2), Polynomial::constant(Rational(1))}},
                                     0),
                 Error);
}

TEST(Piecewise, ClosureDecidesOwnerOfBreakpoint) {
    const std::vector<Piece> steps{{Rational(0), Rational(1), Polynomial::constant(Rational(5))},
                                   {Rational(1), Rational(2), Polynomial::constant(Rational(7))}};
    const PiecewisePolynomial left(steps, -1, Closure::LeftClosed);
    const PiecewisePolynomial right(steps, -1, Closure::RightClosed);
    EXPECT_EQ(left.eval(Rational(1)), Rational(7));
    EXPECT_EQ(right.eval(Rational(1)), Rational(5));
    EXPECT_EQ(left.eval(Rational(2)), Rational(7));
    EXPECT_EQ(right.eval(Rational(0)), Rational(5));
    EXPECT_THROW((void)left.eval(Rational(3)), Error);
}

TEST(Piecewise, EvaluatesAndIntegrates) {
    const auto h = hat();
    EXPECT_EQ(h.eval(Rational(1, 2)), Rational(1, 2));
    EXPECT_EQ(h.eval(Rational(3, 2)), Rational(1, 2));
    EXPECT_EQ(h.eval(Rational(-7)), Rational(0));
    EXPECT_EQ(h.integrate(Rational(-1), Rational(3)), Rational(1));
    EXPECT_EQ(h.integrate(Rational(1, 2), Rational(3, 2)), Rational(3, 4));
    EXPECT_EQ(h.breakpoints(), (std::vector<Rational>{Rational(0), Rational(1), Rational(2)}));
}

TEST(Piecewise, LinearCombinationIsBilinear) {
    SplitMix64 rng(5);
    for (int t = 0; t < 100; ++t) {
        auto random_pw = [&] {
            std::vector<Piece> pieces;
            Rational at = draw(rng, -3, 0, 2);
            const int count = static_cast<int>(rng.between(1, 4));
            for (int i = 0; i < count; ++i) {
                const Rational next = at + draw(rng, 1, 3, 2);
                pieces.push_back({at, next, random_poly(rng, 3)});
                at = next;
            }
            // Common domain [-5, 10] for both operands.
            pieces.front().lower = Rational(-5);
            pieces.back().upper = Rational(10);
            return PiecewisePolynomial(pieces, -1);
        };
        const auto f = random_pw();
        const auto g = random_pw();
        const Rational a = draw(rng, -3, 3, 2), b = draw(rng, -3, 3, 2);
        const auto h = pw_linear_combine(f, g, a, b);
        for (int i = 0; i < 20; ++i) {
            const Rational x = Rational(-5) + Rational(15) * Rational(static_cast<long>(rng.between(0, 1000)), 1000);
            EXPECT_EQ(h.eval(x), a * f.eval(x) + b * g.eval(x));
        }
    }
}

TEST(Piecewise, DomainMismatchIsRejected) {
    const PiecewisePolynomial f({{Rational(0), Rational(1), Polynomial()}}, -1);
    const PiecewisePolynomial g({{Rational(0), Rational(2), Polynomial()}}, -1);
    try {
        (void)pw_linear_combine(f, g, Rational(1), Rational(1));
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DomainMismatch);
    }
}

TEST(Piecewise, AntiderivativeFromEitherEnd) {
    const auto h = hat();
    const auto from_left = pw_antiderivative(h, true);
    const auto from_right = pw_antiderivative(h, false);
    EXPECT_EQ(from_left.continuity_class(), 1);
    EXPECT_EQ(from_left.eval(Rational(1)), Rational(1, 2));
    EXPECT_EQ(from_left.eval(Rational(5)), Rational(1));
    EXPECT_EQ(from_right.eval(Rational(1)), Rational(1, 2));
    EXPECT_EQ(from_right.eval(Rational(-3)), Rational(1));
    EXPECT_EQ(from_left.derivative().eval(Rational(3, 2)), h.eval(Rational(3, 2)));
    // Integrating a nonzero tail towards infinity diverges.
    const PiecewisePolynomial ramp({{Extended::neg_infinity(), Rational(0), Polynomial::constant(Rational(1))},
                                    {Rational(0), Extended::pos_infinity(), Polynomial::constant(Rational(1))}},
                                   0);
    try {
        (void)pw_antiderivative(ramp, true);
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NonIntegrable);
    }
}
