#include "stodom/noise_lab.hpp"

#include "stodom/error.hpp"

#include <map>

namespace stodom {

std::string_view to_string(NoiseStatus s) {
    switch (s) {
        case NoiseStatus::Found: return "Found";
        case NoiseStatus::NotFound: return "NotFound";
        case NoiseStatus::PreconditionRefuted: return "PreconditionRefuted";
    }
    return "Unknown";
}

NoisePrecondition noise_precondition(const DiscreteDistribution& x, const DiscreteDistribution& y, int n) {
    check_order(n);
    NoisePrecondition r;
    const unsigned un = static_cast<unsigned>(n);
    const Rational ex = raw_moment(x, un);
    const Rational ey = raw_moment(y, un);
    r.gamma = (un % 2 == 0 ? ey - ex : ex - ey) / factorial(un);
    for (unsigned k = 1; k < un; ++k) {
        if (raw_moment(x, k) != raw_moment(y, k)) {
            r.failing_moment = static_cast<int>(k);
            return r;
        }
    }
    r.ok = r.gamma.sign() > 0;
    if (!r.ok) r.failing_moment = n;
    return r;
}

Rational dominance_gap_integral(const DiscreteDistribution& x, const DiscreteDistribution& y, int n) {
    check_order(n);
    for (unsigned k = 1; k < static_cast<unsigned>(n); ++k) {
        if (raw_moment(x, k) != raw_moment(y, k)) {
            throw Error(ErrorCode::MomentHypothesisViolated,
                        "moment " + std::to_string(k) + " differs, the gap integral diverges");
        }
    }
    const auto diff =
        pw_linear_combine(integrated_cdf(y, n).curve, integrated_cdf(x, n).curve, Rational(1), Rational(-1));
    if (!diff.pieces().back().poly.is_zero()) {
        throw Error(ErrorCode::MomentHypothesisViolated, "tail of the gap is not identically zero");
    }
    const Rational lo = std::min(x.min_value(), y.min_value());
    const Rational hi = std::max(x.max_value(), y.max_value());
    return diff.integrate(lo, hi);
}

namespace {

/// Signed measure P(X = v) - P(Y = v) restricted to the points where it is nonzero.
std::map<Rational, Rational> signed_difference(const DiscreteDistribution& x, const DiscreteDistribution& y) {
    std::map<Rational, Rational> m;
    for (const auto& a : x.atoms()) m[a.value] += a.mass;
    for (const auto& a : y.atoms()) m[a.value] -= a.mass;
    std::erase_if(m, [](const auto& kv) { return kv.second.is_zero(); });
    return m;
}

// Convolving with Z shifts the extreme points of the signed measure by the
// extreme points of Z and scales their masses by the positive edge masses of Z,
// so the sign of the difference curve right at either edge never changes.

/// +1 when Y carries the excess at the lowest differing point, -1 when X does, 0 if X = Y.
int bottom_germ(const std::map<Rational, Rational>& diff) {
    if (diff.empty()) return 0;
    return -diff.begin()->second.sign();
}

/// +1 when X carries the excess at the highest differing point, -1 when Y does, 0 if X = Y.
int top_germ(const std::map<Rational, Rational>& diff) {
    if (diff.empty()) return 0;
    return diff.rbegin()->second.sign();
}

Rational lcm_of_denominators(const DiscreteDistribution& x, const DiscreteDistribution& y) {
    mpz_class l = 1;
    for (const auto* d : {&x, &y}) {
        for (const auto& a : d->atoms()) {
            mpz_class den = a.value.denominator();
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
        }
    }
    return Rational(mpq_class(l));
}

DiscreteDistribution uniform_lattice(int k, const Rational& step) {
    std::vector<Rational> values;
    for (int j = -k; j <= k; ++j) values.push_back(step * Rational(j));
    return DiscreteDistribution::uniform(values);
}

}  // namespace

std::optional<std::string> edge_obstruction(const DiscreteDistribution& x, const DiscreteDistribution& y, int n) {
    check_order(n);
    const auto diff = signed_difference(x, y);
    // Just above the bottom of X+Z only the lowest differing atom matters.
    if (bottom_germ(diff) < 0) {
        return "bottom edge: X carries more mass than Y at the lowest point where they differ (" +
               diff.begin()->first.str() + ")";
    }
    // With moments matched below n, F_Y^[n] - F_X^[n] = (-1)^(n-1) (F~_X^[n] - F~_Y^[n]),
    // so near the top its sign is (-1)^(n-1) times the top germ.
    const int top = top_germ(diff);
    if (top != 0 && (n % 2 == 1 ? top : -top) < 0) {
        return std::string(n % 2 == 1 ? "top edge: Y" : "top edge: X") +
               " carries more mass at the highest point where they differ (" + diff.rbegin()->first.str() + ")";
    }
    return std::nullopt;
}

namespace {

/// Half-widths 1, 2, 4, ... up to k_max used by the smoothing pass.
int doubling_count(int k_max) {
    int c = 0;
    for (int k = 1; k <= k_max; k *= 2) ++c;
    return c;
}

}  // namespace

int noise_candidate_count(const SearchBudget& budget) {
    const int smoothing = budget.max_smoothing >= 2 ? (budget.max_smoothing - 1) * doubling_count(budget.k_max) : 0;
    return 1 + budget.k_max + budget.widening_steps + smoothing;
}

DiscreteDistribution noise_candidate(int index, const Rational& step, const SearchBudget& budget) {
    if (index < 0 || index >= noise_candidate_count(budget)) {
        throw Error(ErrorCode::InvalidArgument, "noise candidate index out of range");
    }
    if (index == 0) return DiscreteDistribution::point_mass(Rational(0));
    index -= 1;
    if (index < budget.k_max) return uniform_lattice(index + 1, step);
    index -= budget.k_max;
    if (index < budget.widening_steps) return uniform_lattice(4, step * Rational(2).pow(static_cast<unsigned>(index + 1)));
    index -= budget.widening_steps;
    // Convolution power r of uniform noise with half-width k: discrete B-spline.
    const int per_order = doubling_count(budget.k_max);
    const int r = 2 + index / per_order;
    const int k = 1 << (index % per_order);
    const DiscreteDistribution base = uniform_lattice(k, step);
    DiscreteDistribution z = base;
    for (int i = 1; i < r; ++i) z = convolve(z, base, budget.support_cap);
    return z;
}

namespace {

/// Walks the candidates in order; stops at the first Z whose comparison of
/// the convolved pair comes out LeftDominated and strict.
template <class Compare>
void scan(const DiscreteDistribution& x, const DiscreteDistribution& y, const SearchBudget& budget,
          NoiseSearchReport& r, Compare compare) {
    const Rational step = budget.step ? *budget.step : lcm_of_denominators(x, y).inverse();
    const int total = noise_candidate_count(budget);
    int skipped = 0;
    for (int i = 0; i < total; ++i) {
        std::optional<DiscreteDistribution> z, xz, yz;
        try {
            z = noise_candidate(i, step, budget);
            xz = convolve(x, *z, budget.support_cap);
            yz = convolve(y, *z, budget.support_cap);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::SupportCapExceeded) throw;
            ++skipped;
            continue;
        }
        ++r.candidates_tried;
        Verdict v = compare(*xz, *yz);
        if (v.relation == Relation::LeftDominated && v.strict) {
            r.status = NoiseStatus::Found;
            r.z = std::move(z);
            r.verdict = std::move(v);
            return;
        }
    }
    r.status = NoiseStatus::NotFound;
    r.diagnostics.push_back("no candidate among " + std::to_string(total) + " worked");
    if (skipped > 0) r.diagnostics.push_back(std::to_string(skipped) + " candidates skipped by the support cap");
}

}  // namespace

NoiseSearchReport noise_search(const DiscreteDistribution& x, const DiscreteDistribution& y, int n,
                               const SearchBudget& budget) {
    const NoisePrecondition pre = noise_precondition(x, y, n);
    NoiseSearchReport r;
    r.gamma = pre.gamma;
    r.budget = budget;
    if (!pre.ok) {
        r.status = NoiseStatus::PreconditionRefuted;
        r.diagnostics.push_back("moment condition fails at k = " + std::to_string(*pre.failing_moment));
        return r;
    }
    if (auto why = edge_obstruction(x, y, n)) {
        r.status = NoiseStatus::NotFound;
        r.diagnostics.push_back("no finitely supported Z exists: " + *why);
        return r;
    }
    scan(x, y, budget, r, [n](const DiscreteDistribution& xz, const DiscreteDistribution& yz) {
        return sd_compare(yz, xz, n);
    });
    return r;
}

NoiseSearchReport isd_noise_probe(const DiscreteDistribution& x, const DiscreteDistribution& y, int n,
                                  const SearchBudget& budget) {
    check_order(n, 3);
    NoiseSearchReport r;
    r.budget = budget;
    const unsigned un = static_cast<unsigned>(n);
    r.gamma = min_orderstat_mean(x, un) - min_orderstat_mean(y, un);
    for (unsigned k = 1; k < un; ++k) {
        if (min_orderstat_mean(x, k) != min_orderstat_mean(y, k)) {
            r.status = NoiseStatus::PreconditionRefuted;
            r.diagnostics.push_back("mu_1_" + std::to_string(k) + " differs");
            return r;
        }
    }
    if (r.gamma.sign() <= 0) {
        r.status = NoiseStatus::PreconditionRefuted;
        r.diagnostics.push_back("mu_1_" + std::to_string(n) + " of X is not larger");
        return r;
    }
    scan(x, y, budget, r, [n](const DiscreteDistribution& xz, const DiscreteDistribution& yz) {
        return isd_compare(xz, yz, n);
    });
    return r;
}


}  // namespace stodom
