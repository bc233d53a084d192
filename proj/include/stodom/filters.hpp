#pragma once

#include "stodom/distribution.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace stodom {

/// Which dominance a necessary condition speaks about. Left is X <= Y in the
/// tested order, Right is Y <= X. Information checks never refute.
enum class CheckTarget { LeftDominance, RightDominance, Information };

/// RefutesBoth arises when the two orientations each violate a condition.
enum class FilterOutcome { RefutesLeftDominance, RefutesRightDominance, RefutesBoth, Inconclusive };

std::string_view to_string(CheckTarget t);
std::string_view to_string(FilterOutcome o);

struct FilterCheck {
    std::string name;
    Rational quantity_left;   // the X-side quantity
    Rational quantity_right;  // the Y-side quantity
    std::string required_relation;  // relation quantity_left ? quantity_right must satisfy
    bool satisfied = true;
    CheckTarget target = CheckTarget::Information;
};

struct FilterReport {
    FilterOutcome outcome = FilterOutcome::Inconclusive;
    std::vector<FilterCheck> checks;
    std::vector<std::string> notes;

    bool refutes_left() const;
    bool refutes_right() const;
};

/// Moment conditions for n-SD. Looks for the first k in 1..n with
/// E[X^k] != E[Y^k]; for k < n the non-strict moment-order inequality
/// applies, for k = n the strict one (a non-strict dominance with a differing
/// moment is automatically strict).
FilterReport sd_moment_filter(const DiscreteDistribution& x, const DiscreteDistribution& y, int n);

/// Order-statistic conditions for n-ISD, n >= 3: mu_{1:k} monotonicity for
/// k >= n-1, the alternating chain below n-1, and the strict conditions once
/// the chain is fully equal.
FilterReport isd_orderstat_filter(const DiscreteDistribution& x, const DiscreteDistribution& y, int n);

/// True iff no filter refutes a direction that the exact decision confirms.
bool filter_consistency_audit(const DiscreteDistribution& x, const DiscreteDistribution& y, int n);

}  // namespace stodom
