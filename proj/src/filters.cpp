#include "stodom/filters.hpp"

#include "stodom/dominance.hpp"
#include "stodom/transforms.hpp"

#include <algorithm>

namespace stodom {

std::string_view to_string(CheckTarget t) {
    switch (t) {
        case CheckTarget::LeftDominance: return "left";
        case CheckTarget::RightDominance: return "right";
        case CheckTarget::Information: return "info";
    }
    return "unknown";
}

std::string_view to_string(FilterOutcome o) {
    switch (o) {
        case FilterOutcome::RefutesLeftDominance: return "RefutesLeftDominance";
        case FilterOutcome::RefutesRightDominance: return "RefutesRightDominance";
        case FilterOutcome::RefutesBoth: return "RefutesBoth";
        case FilterOutcome::Inconclusive: return "Inconclusive";
    }
    return "Unknown";
}

namespace {

bool refutes(const FilterReport& r, CheckTarget t) {
    return std::any_of(r.checks.begin(), r.checks.end(),
                       [t](const FilterCheck& c) { return c.target == t && !c.satisfied; });
}

void settle(FilterReport& r) {
    const bool left = r.refutes_left();
    const bool right = r.refutes_right();
    if (left && right) r.outcome = FilterOutcome::RefutesBoth;
    else if (left) r.outcome = FilterOutcome::RefutesLeftDominance;
    else if (right) r.outcome = FilterOutcome::RefutesRightDominance;
    else r.outcome = FilterOutcome::Inconclusive;
}

Rational alternate(unsigned power, const Rational& v) { return power % 2 == 0 ? v : -v; }

/// Adds the pair of checks "a (rel) b" for X <= Y and "b (rel) a" for Y <= X,
/// both reported with X's quantity on the left.
void add_pair(FilterReport& r, const std::string& name, const Rational& a, const Rational& b, bool strict) {
    const bool left_ok = strict ? a < b : a <= b;
    const bool right_ok = strict ? b < a : b <= a;
    r.checks.push_back({name, a, b, strict ? "<" : "<=", left_ok, CheckTarget::LeftDominance});
    r.checks.push_back({name, a, b, strict ? ">" : ">=", right_ok, CheckTarget::RightDominance});
}

}  // namespace

bool FilterReport::refutes_left() const { return refutes(*this, CheckTarget::LeftDominance); }
bool FilterReport::refutes_right() const { return refutes(*this, CheckTarget::RightDominance); }

FilterReport sd_moment_filter(const DiscreteDistribution& x, const DiscreteDistribution& y, int n) {
    check_order(n);
    FilterReport r;
    for (int k = 1; k <= n; ++k) {
        const Rational ex = raw_moment(x, static_cast<unsigned>(k));
        const Rational ey = raw_moment(y, static_cast<unsigned>(k));
        const std::string tag = "moment_" + std::to_string(k);
        if (ex == ey) {
            r.checks.push_back({tag + " equal", ex, ey, "==", true, CheckTarget::Information});
            continue;
        }
        // X <= Y needs (-1)^(k-1) E[X^k] below (-1)^(k-1) E[Y^k].
        const unsigned sign_power = static_cast<unsigned>(k - 1);
        add_pair(r, k < n ? tag + " order" : tag + " strict order", alternate(sign_power, ex),
                 alternate(sign_power, ey), true);
        settle(r);
        return r;
    }
    r.notes.push_back("moments agree up to order " + std::to_string(n) +
                      ": strict dominance impossible, only equivalence remains");
    settle(r);
    return r;
}

FilterReport isd_orderstat_filter(const DiscreteDistribution& x, const DiscreteDistribution& y, int n) {
    check_order(n, 3);
    FilterReport r;
    const unsigned top = static_cast<unsigned>(n) + 1;
    std::vector<Rational> mx(top + 1), my(top + 1);
    for (unsigned k = 1; k <= top; ++k) {
        mx[k] = min_orderstat_mean(x, k);
        my[k] = min_orderstat_mean(y, k);
    }
    const unsigned m = static_cast<unsigned>(n) - 1;
    for (unsigned k = m; k <= top; ++k) add_pair(r, "mu_1_" + std::to_string(k) + " monotone", mx[k], my[k], false);

    // Equality chain downward from n-1.
    unsigned broken = 0;
    for (unsigned i = m; i >= 1; --i) {
        if (mx[i] != my[i]) {
            broken = i;
            break;
        }
        r.checks.push_back({"mu_1_" + std::to_string(i) + " equal", mx[i], my[i], "==", true, CheckTarget::Information});
    }
    if (broken != 0 && broken < m) {
        const unsigned sign_power = m - broken;
        add_pair(r, "mu_1_" + std::to_string(broken) + " alternating", alternate(sign_power, mx[broken]),
                 alternate(sign_power, my[broken]), false);
    }
    if (broken == 0) {
        // Strict dominance pushes F^[-n-1](1) strictly apart.
        if (mx[n] == my[n]) {
            r.checks.push_back({"mu_1_" + std::to_string(n) + " strict", mx[n], my[n], "==", true,
                                CheckTarget::Information});
            r.notes.push_back("mu_1_k agree up to k = " + std::to_string(n) +
                              ": strict dominance impossible, only equivalence remains");
        } else {
            add_pair(r, "mu_1_" + std::to_string(n) + " strict", mx[n], my[n], true);
        }
    }
    // Hypothesis mu_{1:k} equal for k = 2..n only (k = 1 left free).
    bool upper_equal = true;
    for (unsigned k = 2; k <= static_cast<unsigned>(n); ++k) upper_equal = upper_equal && mx[k] == my[k];
    if (upper_equal && mx[1] != my[1]) {
        const unsigned sign_power = static_cast<unsigned>(n);
        add_pair(r, "mean strict", alternate(sign_power, mx[1]), alternate(sign_power, my[1]), true);
    }
    settle(r);
    return r;
}

bool filter_consistency_audit(const DiscreteDistribution& x, const DiscreteDistribution& y, int n) {
    check_order(n);
    const Verdict sd = sd_compare(x, y, n);
    const FilterReport fs = sd_moment_filter(x, y, n);
    if ((fs.refutes_left() && sd.left_holds()) || (fs.refutes_right() && sd.right_holds())) return false;
    if (n >= 3) {
        const Verdict isd = isd_compare(x, y, n);
        const FilterReport fi = isd_orderstat_filter(x, y, n);
        if ((fi.refutes_left() && isd.left_holds()) || (fi.refutes_right() && isd.right_holds())) return false;
    }
    return true;
}

}  // namespace stodom
