#pragma once

#include "stodom/sign.hpp"
#include "stodom/transforms.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace stodom {

/// Relation of the first argument X to the second Y: LeftDominated means
/// X <= Y in the tested order, RightDominated means Y <= X.
enum class Relation { LeftDominated, RightDominated, Equivalent, Incomparable };
enum class OrderKind { SD, ISD, StrongISD };

std::string_view to_string(Relation r);
std::string_view to_string(OrderKind k);

/// A point where the tested inequality fails, with the (positive) size of
/// the failure.
struct Witness {
    Rational point;
    Rational gap;
};

struct PieceCertificate {
    Extended lower;
    Extended upper;
    Polynomial difference;
    SignReport nonnegative;  // decision of difference >= 0 on the piece
    SignReport nonpositive;  // decision of -difference >= 0 on the piece
};

/// Outcome of comparing X and Y. The difference curve is oriented so that
/// X <= Y holds iff it is nonnegative:
///   SD:  F_X^[n] - F_Y^[n]      ISD:  F_Y^[-n] - F_X^[-n]
/// witness_left refutes X <= Y (difference < 0 there), witness_right refutes
/// Y <= X (difference > 0 there). Dominance is strict exactly when the
/// opposite witness exists, so LeftDominated / RightDominated are always
/// strict and Equivalent never is.
struct Verdict {
    OrderKind kind = OrderKind::SD;
    int order = 1;
    Relation relation = Relation::Equivalent;
    bool strict = false;
    std::optional<Witness> witness_left;
    std::optional<Witness> witness_right;
    PiecewisePolynomial difference;
    std::vector<PieceCertificate> certificate;

    bool left_holds() const { return relation == Relation::LeftDominated || relation == Relation::Equivalent; }
    bool right_holds() const { return relation == Relation::RightDominated || relation == Relation::Equivalent; }
};

Verdict sd_compare(const DiscreteDistribution& x, const DiscreteDistribution& y, int n);
Verdict isd_compare(const DiscreteDistribution& x, const DiscreteDistribution& y, int n);

struct OrderStatEquality {
    unsigned k;
    Rational left;
    Rational right;
    bool equal;
};

/// Strong n-ISD: n-ISD plus exact equality of mu_{1:j} for j = 1..n-1.
/// When an equality fails the relation is Incomparable and
/// failed_equality names the first failing j; the witnesses are those of
/// the underlying n-ISD comparison.
struct StrongVerdict {
    Verdict verdict;
    Verdict isd;
    std::vector<OrderStatEquality> equalities;
    std::optional<unsigned> failed_equality;
};

StrongVerdict strong_isd_compare(const DiscreteDistribution& x, const DiscreteDistribution& y, int n);

}  // namespace stodom
