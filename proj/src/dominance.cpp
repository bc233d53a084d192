#include "stodom/dominance.hpp"

#include "stodom/error.hpp"

namespace stodom {

std::string_view to_string(Relation r) {
    switch (r) {
        case Relation::LeftDominated: return "LeftDominated";
        case Relation::RightDominated: return "RightDominated";
        case Relation::Equivalent: return "Equivalent";
        case Relation::Incomparable: return "Incomparable";
    }
    return "Unknown";
}

std::string_view to_string(OrderKind k) {
    switch (k) {
        case OrderKind::SD: return "sd";
        case OrderKind::ISD: return "isd";
        case OrderKind::StrongISD: return "strong-isd";
    }
    return "unknown";
}

namespace {

void keep_larger(std::optional<Witness>& slot, const Rational& point, const Rational& gap) {
    if (!slot || gap > slot->gap) slot = Witness{point, gap};
}

/// Moves a boundary witness w (where sign(p(w)) == want) towards `inside`
/// until it lies strictly between; p keeps its sign near w by continuity.
Rational pull_inside(const Polynomial& p, const Rational& w, Rational inside, int want) {
    for (;;) {
        const Rational m = midpoint(inside, w);
        if (p.eval(m).sign() == want) return m;
        inside = m;
    }
}

SignReport decide_piece(const Polynomial& p, const Piece& piece) {
    if (piece.lower.is_neg_infinity() && piece.upper.is_pos_infinity()) {
        SignReport r = nonneg_on_ray(p, Rational(0));
        if (r.nonnegative()) r = nonneg_on_left_ray(p, Rational(0));
        return r;
    }
    if (piece.lower.is_neg_infinity()) return nonneg_on_left_ray(p, piece.upper.value());
    if (piece.upper.is_pos_infinity()) return nonneg_on_ray(p, piece.lower.value());
    return nonneg_on_interval(p, piece.lower.value(), piece.upper.value());
}

/// Representative point of a step piece under the comparison's point set.
Rational step_point(const Piece& piece, bool open_unit_interval) {
    if (open_unit_interval) return midpoint(piece.lower.value(), piece.upper.value());
    if (piece.lower.is_finite()) return piece.lower.value();
    return piece.upper.value() - Rational(1);
}

Verdict decide(OrderKind kind, int n, PiecewisePolynomial difference, bool open_unit_interval) {
    Verdict v;
    v.kind = kind;
    v.order = n;
    const bool steps = difference.continuity_class() < 0;
    for (const auto& piece : difference.pieces()) {
        PieceCertificate cert{piece.lower, piece.upper, piece.poly, {}, {}};
        if (steps) {
            // Constant on the piece.
            const Rational c = piece.poly.coefficient(0);
            const Rational at = step_point(piece, open_unit_interval);
            if (c.sign() < 0) {
                cert.nonnegative = SignReport{SignVerdict::NegativeSomewhere, at, c, {}, {}};
                cert.nonpositive.positive_point = at;
                keep_larger(v.witness_left, at, -c);
            } else if (c.sign() > 0) {
                cert.nonpositive = SignReport{SignVerdict::NegativeSomewhere, at, -c, {}, {}};
                cert.nonnegative.positive_point = at;
                keep_larger(v.witness_right, at, c);
            }
        } else {
            cert.nonnegative = decide_piece(piece.poly, piece);
            cert.nonpositive = decide_piece(-piece.poly, piece);
            auto place = [&](const SignReport& r, int want) {
                Rational w = *r.witness;
                if (open_unit_interval && (w.is_zero() || w == Rational(1))) {
                    const Rational inside = w.is_zero() ? piece.upper.value() : piece.lower.value();
                    w = pull_inside(piece.poly, w, inside, want);
                }
                return w;
            };
            if (!cert.nonnegative.nonnegative()) {
                const Rational w = place(cert.nonnegative, -1);
                keep_larger(v.witness_left, w, -piece.poly.eval(w));
            }
            if (!cert.nonpositive.nonnegative()) {
                const Rational w = place(cert.nonpositive, +1);
                keep_larger(v.witness_right, w, piece.poly.eval(w));
            }
        }
        v.certificate.push_back(std::move(cert));
    }
    if (v.witness_left && v.witness_right) v.relation = Relation::Incomparable;
    else if (v.witness_left) v.relation = Relation::RightDominated;
    else if (v.witness_right) v.relation = Relation::LeftDominated;
    else v.relation = Relation::Equivalent;
    v.strict = v.relation == Relation::LeftDominated || v.relation == Relation::RightDominated;
    v.difference = std::move(difference);
    return v;
}

}  // namespace

Verdict sd_compare(const DiscreteDistribution& x, const DiscreteDistribution& y, int n) {
    check_order(n);
    auto diff = pw_linear_combine(integrated_cdf(x, n).curve, integrated_cdf(y, n).curve, Rational(1), Rational(-1));
    return decide(OrderKind::SD, n, std::move(diff), false);
}

Verdict isd_compare(const DiscreteDistribution& x, const DiscreteDistribution& y, int n) {
    check_order(n);
    auto diff = pw_linear_combine(integrated_quantile(y, n).curve, integrated_quantile(x, n).curve, Rational(1),
                                  Rational(-1));
    return decide(OrderKind::ISD, n, std::move(diff), true);
}

StrongVerdict strong_isd_compare(const DiscreteDistribution& x, const DiscreteDistribution& y, int n) {
    check_order(n, 2);
    StrongVerdict s;
    s.isd = isd_compare(x, y, n);
    for (unsigned j = 1; j + 1 <= static_cast<unsigned>(n); ++j) {
        OrderStatEquality e{j, min_orderstat_mean(x, j), min_orderstat_mean(y, j), false};
        e.equal = e.left == e.right;
        if (!e.equal && !s.failed_equality) s.failed_equality = j;
        s.equalities.push_back(std::move(e));
    }
    s.verdict = s.isd;
    s.verdict.kind = OrderKind::StrongISD;
    if (s.isd.relation != Relation::Equivalent && s.failed_equality) {
        s.verdict.relation = Relation::Incomparable;
        s.verdict.strict = false;
    }
    return s;
}

}  // namespace stodom
