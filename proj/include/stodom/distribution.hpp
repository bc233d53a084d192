#pragma once

#include "stodom/rational.hpp"

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace stodom {

inline constexpr int kMaxOrder = 12;  // N_MAX: highest integration order supported
inline constexpr std::size_t kDefaultSupportCap = 1'000'000;

struct Atom {
    Rational value;
    Rational mass;

    friend bool operator==(const Atom&, const Atom&) = default;
};

/// Finitely supported distribution: values strictly increasing, every mass
/// positive, masses summing to exactly one. Only constructible through
/// dist_validate (or the trusted factories below), so the invariant always
/// holds.
class DiscreteDistribution {
public:
    const std::vector<Atom>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }
    const Rational& min_value() const { return atoms_.front().value; }
    const Rational& max_value() const { return atoms_.back().value; }

    static DiscreteDistribution point_mass(const Rational& at);
    /// Equal masses on the given values (duplicates merged).
    static DiscreteDistribution uniform(std::span<const Rational> values);

    friend bool operator==(const DiscreteDistribution&, const DiscreteDistribution&) = default;

private:
    friend DiscreteDistribution dist_validate(std::vector<std::pair<Rational, Rational>> raw);
    std::vector<Atom> atoms_;
};

/// Sorts by value, merges duplicate values by summing masses, drops zero
/// masses. Throws Error(NegativeMass | EmptySupport | MassNotOne).
DiscreteDistribution dist_validate(std::vector<std::pair<Rational, Rational>> raw);

/// Left-continuous inverse of the CDF: value x_i on (c_{i-1}, c_i], with
/// c_0 = 0 and c_m = 1. The value at p = 0 is x_1.
struct QuantileStep {
    std::vector<Rational> cut_points;
    std::vector<Rational> values;

    Rational operator()(const Rational& p) const;
};

Rational raw_moment(const DiscreteDistribution& d, unsigned j);
Rational mean(const DiscreteDistribution& d);
Rational variance(const DiscreteDistribution& d);
QuantileStep quantile(const DiscreteDistribution& d);
/// Rebuilds the distribution from its quantile step.
DiscreteDistribution from_quantile(const QuantileStep& q);

/// E[min(X_1, ..., X_k)] for k iid copies, via the survival-power sum
/// sum_i x_i [S_{i-1}^k - S_i^k].
Rational min_orderstat_mean(const DiscreteDistribution& d, unsigned k);

/// Distribution of the independent sum. Throws Error(SupportCapExceeded)
/// when |support(a)| * |support(b)| exceeds cap.
DiscreteDistribution convolve(const DiscreteDistribution& a, const DiscreteDistribution& b,
                              std::size_t cap = kDefaultSupportCap);

}  // namespace stodom
