#include "stodom/piecewise.hpp"

#include "stodom/error.hpp"

#include <algorithm>

namespace stodom {

const Rational& Extended::value() const {
    if (kind_ != Kind::Finite) throw Error(ErrorCode::InvalidArgument, "value() of an infinite bound");
    return value_;
}

std::string Extended::str() const {
    switch (kind_) {
        case Kind::NegInf: return "-inf";
        case Kind::PosInf: return "+inf";
        case Kind::Finite: break;
    }
    return value_.str();
}

bool operator==(const Extended& a, const Extended& b) {
    if (a.kind_ != b.kind_) return false;
    return a.kind_ != Extended::Kind::Finite || a.value_ == b.value_;
}

std::strong_ordering operator<=>(const Extended& a, const Extended& b) {
    if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
    if (a.kind_ != Extended::Kind::Finite) return std::strong_ordering::equal;
    return a.value_ <=> b.value_;
}

PiecewisePolynomial::PiecewisePolynomial(std::vector<Piece> pieces, int continuity_class, Closure closure)
    : pieces_(std::move(pieces)), continuity_(continuity_class), closure_(closure) {
    if (pieces_.empty()) throw Error(ErrorCode::InvalidArgument, "piecewise polynomial without pieces");
    if (continuity_ < -1) throw Error(ErrorCode::InvalidArgument, "continuity class below -1");
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        if (!(pieces_[i].lower < pieces_[i].upper)) throw Error(ErrorCode::InvalidArgument, "empty piece");
        if (i + 1 < pieces_.size() && pieces_[i].upper != pieces_[i + 1].lower) {
            throw Error(ErrorCode::InvalidArgument, "pieces are not contiguous");
        }
    }
    for (std::size_t i = 0; i + 1 < pieces_.size(); ++i) {
        const Rational& x = pieces_[i].upper.value();
        Polynomial l = pieces_[i].poly, r = pieces_[i + 1].poly;
        for (int d = 0; d <= continuity_; ++d) {
            if (l.eval(x) != r.eval(x)) {
                throw Error(ErrorCode::InvalidArgument,
                            "continuity class " + std::to_string(continuity_) + " violated at " + x.str());
            }
            l = l.derivative();
            r = r.derivative();
        }
    }
}

std::vector<Rational> PiecewisePolynomial::breakpoints() const {
    std::vector<Rational> out;
    for (std::size_t i = 0; i + 1 < pieces_.size(); ++i) out.push_back(pieces_[i].upper.value());
    return out;
}

std::size_t PiecewisePolynomial::locate(const Rational& x) const {
    const Extended ex(x);
    if (ex < domain_lower() || ex > domain_upper()) {
        throw Error(ErrorCode::InvalidArgument, "point " + x.str() + " outside the domain");
    }
    if (closure_ == Closure::LeftClosed) {
        // First piece with x < upper; the closed right domain end belongs to the last piece.
        auto it = std::upper_bound(pieces_.begin(), pieces_.end(), ex,
                                   [](const Extended& v, const Piece& p) { return v < p.upper; });
        if (it == pieces_.end()) return pieces_.size() - 1;
        return static_cast<std::size_t>(it - pieces_.begin());
    }
    // First piece with x <= upper.
    auto it = std::lower_bound(pieces_.begin(), pieces_.end(), ex,
                               [](const Piece& p, const Extended& v) { return p.upper < v; });
    return static_cast<std::size_t>(it - pieces_.begin());
}

Rational PiecewisePolynomial::eval(const Rational& x) const { return pieces_[locate(x)].poly.eval(x); }

bool PiecewisePolynomial::is_identically_zero() const {
    return std::all_of(pieces_.begin(), pieces_.end(), [](const Piece& p) { return p.poly.is_zero(); });
}

PiecewisePolynomial PiecewisePolynomial::derivative() const {
    std::vector<Piece> out = pieces_;
    for (auto& p : out) p.poly = p.poly.derivative();
    return PiecewisePolynomial(std::move(out), std::max(continuity_ - 1, -1), closure_);
}

Rational PiecewisePolynomial::integrate(const Rational& a, const Rational& b) const {
    if (b < a) return -integrate(b, a);
    if (Extended(a) < domain_lower() || Extended(b) > domain_upper()) {
        throw Error(ErrorCode::InvalidArgument, "integration range outside the domain");
    }
    Rational total;
    for (const auto& p : pieces_) {
        const Extended lo = std::max(p.lower, Extended(a));
        const Extended hi = std::min(p.upper, Extended(b));
        if (!(lo < hi)) continue;
        const Polynomial prim = p.poly.antiderivative(Rational(0), Rational(0));
        total += prim.eval(hi.value()) - prim.eval(lo.value());
    }
    return total;
}

PiecewisePolynomial pw_linear_combine(const PiecewisePolynomial& f, const PiecewisePolynomial& g,
                                      const Rational& cf, const Rational& cg) {
    if (f.domain_lower() != g.domain_lower() || f.domain_upper() != g.domain_upper()) {
        throw Error(ErrorCode::DomainMismatch, "domains differ: [" + f.domain_lower().str() + ", " +
                                                   f.domain_upper().str() + "] vs [" + g.domain_lower().str() +
                                                   ", " + g.domain_upper().str() + "]");
    }
    Closure closure = f.closure();
    if (f.continuity_class() < 0 && g.continuity_class() < 0) {
        if (f.closure() != g.closure()) throw Error(ErrorCode::DomainMismatch, "step functions with different closure");
    } else if (f.continuity_class() >= 0) {
        closure = g.closure();
    }

    std::vector<Extended> cuts;
    cuts.push_back(f.domain_lower());
    {
        std::vector<Rational> bp = f.breakpoints();
        const std::vector<Rational> bg = g.breakpoints();
        bp.insert(bp.end(), bg.begin(), bg.end());
        std::sort(bp.begin(), bp.end());
        bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
        for (auto& r : bp) cuts.emplace_back(r);
    }
    cuts.push_back(f.domain_upper());

    std::vector<Piece> out;
    std::size_t i = 0, j = 0;
    const auto& fp = f.pieces();
    const auto& gp = g.pieces();
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        while (fp[i].upper <= cuts[k]) ++i;
        while (gp[j].upper <= cuts[k]) ++j;
        out.push_back(Piece{cuts[k], cuts[k + 1], poly_combine(fp[i].poly, gp[j].poly, cf, cg)});
    }
    return PiecewisePolynomial(std::move(out), std::min(f.continuity_class(), g.continuity_class()), closure);
}

PiecewisePolynomial pw_antiderivative(const PiecewisePolynomial& f, bool from_left) {
    std::vector<Piece> out = f.pieces();
    if (from_left) {
        Rational running;
        for (std::size_t i = 0; i < out.size(); ++i) {
            Piece& p = out[i];
            if (p.lower.is_neg_infinity()) {
                if (!p.poly.is_zero()) throw Error(ErrorCode::NonIntegrable, "left tail integral diverges");
                continue;
            }
            p.poly = p.poly.antiderivative(p.lower.value(), running);
            if (p.upper.is_finite()) running = p.poly.eval(p.upper.value());
        }
    } else {
        Rational running;
        for (std::size_t i = out.size(); i-- > 0;) {
            Piece& p = out[i];
            if (p.upper.is_pos_infinity()) {
                if (!p.poly.is_zero()) throw Error(ErrorCode::NonIntegrable, "right tail integral diverges");
                continue;
            }
            // G' = -f with G(upper) = running.
            p.poly = (-p.poly).antiderivative(p.upper.value(), running);
            if (p.lower.is_finite()) running = p.poly.eval(p.lower.value());
        }
    }
    return PiecewisePolynomial(std::move(out), f.continuity_class() + 1, f.closure());
}

}  // namespace stodom
