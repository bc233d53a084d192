#include "stodom/transforms.hpp"

#include "stodom/error.hpp"

namespace stodom {

std::string_view to_string(CurveKind kind) {
    switch (kind) {
        case CurveKind::CDF: return "cdf";
        case CurveKind::Survival: return "survival";
        case CurveKind::Quantile: return "quantile";
        case CurveKind::UpperQuantile: return "upper-quantile";
    }
    return "unknown";
}

CurveKind parse_curve_kind(std::string_view text) {
    if (text == "cdf") return CurveKind::CDF;
    if (text == "survival") return CurveKind::Survival;
    if (text == "quantile") return CurveKind::Quantile;
    if (text == "upper-quantile") return CurveKind::UpperQuantile;
    throw Error(ErrorCode::InvalidArgument, "unknown curve kind '" + std::string(text) + "'");
}

void check_order(int n, int lo) {
    if (n < lo || n > kMaxOrder) {
        throw Error(ErrorCode::OrderOutOfRange,
                    "order " + std::to_string(n) + " outside " + std::to_string(lo) + ".." + std::to_string(kMaxOrder));
    }
}

namespace {

unsigned power_of(int n) { return static_cast<unsigned>(n - 1); }

}  // namespace

IntegratedCurve integrated_cdf(const DiscreteDistribution& d, int n) {
    check_order(n);
    const auto& atoms = d.atoms();
    std::vector<Piece> pieces;
    pieces.push_back(Piece{Extended::neg_infinity(), atoms.front().value, Polynomial()});
    const Rational scale = factorial(power_of(n)).inverse();
    Polynomial running;
    Rational cumulative;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        const Extended upper = i + 1 < atoms.size() ? Extended(atoms[i + 1].value) : Extended::pos_infinity();
        if (n == 1) {
            cumulative += atoms[i].mass;
            running = Polynomial::constant(cumulative);
        } else {
            running += Polynomial::shifted_power(atoms[i].value, power_of(n), scale * atoms[i].mass);
        }
        pieces.push_back(Piece{atoms[i].value, upper, running});
    }
    return {CurveKind::CDF, n, PiecewisePolynomial(std::move(pieces), n - 2, Closure::LeftClosed), d};
}

IntegratedCurve integrated_survival(const DiscreteDistribution& d, int n) {
    check_order(n);
    const auto& atoms = d.atoms();
    const Rational sign = power_of(n) % 2 == 0 ? Rational(1) : Rational(-1);
    const Rational scale = sign * factorial(power_of(n)).inverse();
    // Built right to left: on [x_k, x_{k+1}) only atoms above x_k contribute.
    std::vector<Piece> reversed;
    reversed.push_back(Piece{atoms.back().value, Extended::pos_infinity(), Polynomial()});
    Polynomial running;
    Rational tail;
    for (std::size_t i = atoms.size(); i-- > 0;) {
        const Extended lower = i > 0 ? Extended(atoms[i - 1].value) : Extended::neg_infinity();
        if (n == 1) {
            tail += atoms[i].mass;
            running = Polynomial::constant(tail);
        } else {
            running += Polynomial::shifted_power(atoms[i].value, power_of(n), scale * atoms[i].mass);
        }
        reversed.push_back(Piece{lower, atoms[i].value, running});
    }
    std::vector<Piece> pieces(reversed.rbegin(), reversed.rend());
    return {CurveKind::Survival, n, PiecewisePolynomial(std::move(pieces), n - 2, Closure::LeftClosed), d};
}

IntegratedCurve integrated_quantile(const DiscreteDistribution& d, int n) {
    check_order(n);
    const QuantileStep q = quantile(d);
    const Rational scale = factorial(power_of(n)).inverse();
    std::vector<Piece> pieces;
    // completed = sum over finished atoms of x_i [(p - c_{i-1})^(n-1) - (p - c_i)^(n-1)]
    Polynomial completed;
    for (std::size_t k = 0; k < q.values.size(); ++k) {
        const Rational& lo = q.cut_points[k];
        const Rational& hi = q.cut_points[k + 1];
        const Rational& x = q.values[k];
        if (n == 1) {
            pieces.push_back(Piece{lo, hi, Polynomial::constant(x)});
            continue;
        }
        const Polynomial open_term = Polynomial::shifted_power(lo, power_of(n), scale * x);
        pieces.push_back(Piece{lo, hi, completed + open_term});
        completed += open_term - Polynomial::shifted_power(hi, power_of(n), scale * x);
    }
    return {CurveKind::Quantile, n, PiecewisePolynomial(std::move(pieces), n - 2, Closure::RightClosed), d};
}

IntegratedCurve integrated_upper_quantile(const DiscreteDistribution& d, int n) {
    check_order(n);
    const QuantileStep q = quantile(d);
    const Rational sign = power_of(n) % 2 == 0 ? Rational(1) : Rational(-1);
    const Rational scale = sign * factorial(power_of(n)).inverse();
    std::vector<Piece> reversed;
    // completed = sum over atoms above the piece of x_i [(c_i - p)^(n-1) - (c_{i-1} - p)^(n-1)]
    Polynomial completed;
    for (std::size_t k = q.values.size(); k-- > 0;) {
        const Rational& lo = q.cut_points[k];
        const Rational& hi = q.cut_points[k + 1];
        const Rational& x = q.values[k];
        if (n == 1) {
            reversed.push_back(Piece{lo, hi, Polynomial::constant(x)});
            continue;
        }
        const Polynomial open_term = Polynomial::shifted_power(hi, power_of(n), scale * x);
        reversed.push_back(Piece{lo, hi, completed + open_term});
        completed += open_term - Polynomial::shifted_power(lo, power_of(n), scale * x);
    }
    std::vector<Piece> pieces(reversed.rbegin(), reversed.rend());
    return {CurveKind::UpperQuantile, n, PiecewisePolynomial(std::move(pieces), n - 2, Closure::RightClosed), d};
}

IntegratedCurve integrated_curve(const DiscreteDistribution& d, CurveKind kind, int n) {
    switch (kind) {
        case CurveKind::CDF: return integrated_cdf(d, n);
        case CurveKind::Survival: return integrated_survival(d, n);
        case CurveKind::Quantile: return integrated_quantile(d, n);
        case CurveKind::UpperQuantile: return integrated_upper_quantile(d, n);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown curve kind");
}

IntegratedCurve integrated_curve_by_recursion(const DiscreteDistribution& d, CurveKind kind, int n) {
    check_order(n);
    IntegratedCurve c = integrated_curve(d, kind, 1);
    const bool from_left = kind == CurveKind::CDF || kind == CurveKind::Quantile;
    for (int k = 2; k <= n; ++k) c.curve = pw_antiderivative(c.curve, from_left);
    c.order = n;
    return c;
}

AsymptotePoly asymptote(const DiscreteDistribution& d, int n) {
    check_order(n, 2);
    // E[(x - X)^(n-1)] / (n-1)!: the x^k coefficient is C(n-1, k) (-1)^(n-1-k) mu_(n-1-k) / (n-1)!.
    const unsigned m = power_of(n);
    const Rational scale = factorial(m).inverse();
    std::vector<Rational> c(m + 1);
    for (unsigned k = 0; k <= m; ++k) {
        const Rational sign = (m - k) % 2 == 0 ? Rational(1) : Rational(-1);
        c[k] = scale * sign * binomial(m, k) * raw_moment(d, m - k);
    }
    return {n, n % 2 == 0 ? AsymptoteSide::LowerEven : AsymptoteSide::UpperOdd, Polynomial(std::move(c))};
}

Rational orderstat_expansion(const DiscreteDistribution& d, int n, const Rational& p) {
    check_order(n, 3);
    if (p.sign() < 0 || p >= Rational(1)) {
        throw Error(ErrorCode::InvalidArgument, "orderstat_expansion needs 0 <= p < 1, got " + p.str());
    }
    const unsigned m = power_of(n);
    const Rational one_minus = Rational(1) - p;
    Rational sum;
    for (unsigned j = 1; j <= m; ++j) {
        const Rational sign = j % 2 == 0 ? Rational(1) : Rational(-1);
        sum += sign * binomial(m, j) * one_minus.pow(m - j) * min_orderstat_mean(d, j);
    }
    const Rational parity = n % 2 == 1 ? Rational(1) : Rational(-1);
    return parity * sum / factorial(m);
}

}  // namespace stodom
