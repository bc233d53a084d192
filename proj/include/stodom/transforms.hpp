#pragma once

#include "stodom/distribution.hpp"
#include "stodom/piecewise.hpp"

#include <string_view>

namespace stodom {

/// CDF:           F^[n](x)   = E[(x - X)_+^(n-1)] / (n-1)!            on (-inf, inf)
/// Survival:      F~^[n](x)  = E[(X - x)_+^(n-1)] / (n-1)!            on (-inf, inf)
/// Quantile:      F^[-n](p)  = repeated integral of F^-1 from 0       on [0, 1]
/// UpperQuantile: F~^[-n](p) = repeated integral of F^-1 towards 1    on [0, 1]
enum class CurveKind { CDF, Survival, Quantile, UpperQuantile };

std::string_view to_string(CurveKind kind);
/// Accepts "cdf", "survival", "quantile", "upper-quantile".
CurveKind parse_curve_kind(std::string_view text);

struct IntegratedCurve {
    CurveKind kind;
    int order;
    PiecewisePolynomial curve;
    DiscreteDistribution source;
};

enum class AsymptoteSide { LowerEven, UpperOdd };

/// Polynomial that coincides with F^[n] to the right of the support:
/// the lower asymptote C_n for even n, the upper asymptote D_n for odd n.
struct AsymptotePoly {
    int order;
    AsymptoteSide side;
    Polynomial poly;
};

/// Throws Error(OrderOutOfRange) unless lo <= n <= kMaxOrder.
void check_order(int n, int lo = 1);

IntegratedCurve integrated_cdf(const DiscreteDistribution& d, int n);
IntegratedCurve integrated_survival(const DiscreteDistribution& d, int n);
IntegratedCurve integrated_quantile(const DiscreteDistribution& d, int n);
IntegratedCurve integrated_upper_quantile(const DiscreteDistribution& d, int n);
IntegratedCurve integrated_curve(const DiscreteDistribution& d, CurveKind kind, int n);

/// Same curves built by repeated piecewise antidifferentiation of the
/// order-one step function; used to cross-check the closed forms.
IntegratedCurve integrated_curve_by_recursion(const DiscreteDistribution& d, CurveKind kind, int n);

AsymptotePoly asymptote(const DiscreteDistribution& d, int n);

/// Moment side of the order-statistic expansion,
///   s_n (1-p)^(n-1)/(n-1)! * sum_{j=1}^{n-1} (-1)^j C(n-1, j) (1-p)^(-j) mu_{1:j},
/// with s_n = +1 for odd n and -1 for even n. Equals F^[-n](p) - F~^[-n](p)
/// for odd n and F^[-n](p) + F~^[-n](p) for even n. Requires 0 <= p < 1.
Rational orderstat_expansion(const DiscreteDistribution& d, int n, const Rational& p);

}  // namespace stodom
