#pragma once

// Shared fixtures and independent oracles for the test binaries. Oracles
// evaluate the defining sums atom by atom and never touch the piecewise
// machinery they are used to check.

#include "stodom/distribution.hpp"
#include "stodom/rational.hpp"

#include <cmath>
#include <functional>
#include <initializer_list>
#include <utility>
#include <vector>

namespace stodom::test {

inline Rational R(const char* text) { return Rational::parse(text); }

inline DiscreteDistribution dist(std::initializer_list<std::pair<const char*, const char*>> atoms) {
    std::vector<std::pair<Rational, Rational>> raw;
    for (const auto& [v, m] : atoms) raw.emplace_back(R(v), R(m));
    return dist_validate(std::move(raw));
}

// Reference pairs with hand-checked values.
inline DiscreteDistribution jump_x() { return dist({{"0", "0.5"}, {"10", "0.5"}}); }
inline DiscreteDistribution jump_y() { return dist({{"4", "0.9"}, {"4.1", "0.1"}}); }
inline DiscreteDistribution spread_x() { return dist({{"1", "0.5"}, {"3", "0.5"}}); }
inline DiscreteDistribution spread_y() { return DiscreteDistribution::point_mass(R("2.5")); }
inline DiscreteDistribution three_x() { return dist({{"0", "0.2"}, {"4", "0.5"}, {"5", "0.3"}}); }
inline DiscreteDistribution three_y() { return dist({{"1", "0.2"}, {"3", "0.5"}, {"6", "0.3"}}); }
inline DiscreteDistribution strong_x() { return dist({{"0", "0.2"}, {"4", "0.5"}, {"5", "0.3"}}); }
inline DiscreteDistribution strong_y() { return dist({{"1", "0.2"}, {"13/4", "0.5"}, {"67/12", "0.3"}}); }
/// P(X = -a) = P(X = a) = 1/2, against Y = 0.
inline DiscreteDistribution sym_x(const Rational& a) { return dist_validate({{-a, Rational(1, 2)}, {a, Rational(1, 2)}}); }
inline DiscreteDistribution sym_y() { return DiscreteDistribution::point_mass(Rational(0)); }

inline Rational positive_part_power(const Rational& v, unsigned k) {
    if (v.sign() <= 0) return k == 0 && v.sign() == 0 ? Rational(1) : Rational(0);
    return v.pow(k);
}

/// E[(x - X)_+^(n-1)] / (n-1)!, with P(X <= x) for n = 1.
inline Rational cdf_oracle(const DiscreteDistribution& d, int n, const Rational& x) {
    Rational acc;
    for (const auto& a : d.atoms()) {
        if (n == 1) {
            if (a.value <= x) acc += a.mass;
        } else {
            acc += a.mass * positive_part_power(x - a.value, static_cast<unsigned>(n - 1));
        }
    }
    return n == 1 ? acc : acc / factorial(static_cast<unsigned>(n - 1));
}

/// E[(X - x)_+^(n-1)] / (n-1)!, with P(X > x) for n = 1.
inline Rational survival_oracle(const DiscreteDistribution& d, int n, const Rational& x) {
    Rational acc;
    for (const auto& a : d.atoms()) {
        if (n == 1) {
            if (a.value > x) acc += a.mass;
        } else {
            acc += a.mass * positive_part_power(a.value - x, static_cast<unsigned>(n - 1));
        }
    }
    return n == 1 ? acc : acc / factorial(static_cast<unsigned>(n - 1));
}

inline std::vector<Rational> cut_points(const DiscreteDistribution& d) {
    std::vector<Rational> c{Rational(0)};
    for (const auto& a : d.atoms()) c.push_back(c.back() + a.mass);
    return c;
}

/// Left-continuous quantile: smallest x with F(x) >= p (x_1 at p = 0).
inline Rational quantile_oracle(const DiscreteDistribution& d, const Rational& p) {
    Rational cum;
    for (const auto& a : d.atoms()) {
        cum += a.mass;
        if (cum >= p) return a.value;
    }
    return d.max_value();
}

/// (1/(n-1)!) sum_i x_i [(p - c_{i-1})_+^(n-1) - (p - c_i)_+^(n-1)].
inline Rational quantile_integral_oracle(const DiscreteDistribution& d, int n, const Rational& p) {
    if (n == 1) return quantile_oracle(d, p);
    const auto c = cut_points(d);
    const unsigned m = static_cast<unsigned>(n - 1);
    Rational acc;
    for (std::size_t i = 0; i < d.size(); ++i) {
        acc += d.atoms()[i].value * (positive_part_power(p - c[i], m) - positive_part_power(p - c[i + 1], m));
    }
    return acc / factorial(m);
}

/// (1/(n-1)!) sum_i x_i [(c_i - p)_+^(n-1) - (c_{i-1} - p)_+^(n-1)].
inline Rational upper_quantile_integral_oracle(const DiscreteDistribution& d, int n, const Rational& p) {
    if (n == 1) return quantile_oracle(d, p);
    const auto c = cut_points(d);
    const unsigned m = static_cast<unsigned>(n - 1);
    Rational acc;
    for (std::size_t i = 0; i < d.size(); ++i) {
        acc += d.atoms()[i].value * (positive_part_power(c[i + 1] - p, m) - positive_part_power(c[i] - p, m));
    }
    return acc / factorial(m);
}

/// E[min of k iid draws], enumerating all k-tuples of atoms.
inline Rational enumerate_min_mean(const DiscreteDistribution& d, unsigned k) {
    const auto& atoms = d.atoms();
    Rational total;
    std::function<void(unsigned, std::size_t, const Rational&)> walk = [&](unsigned depth, std::size_t low,
                                                                           const Rational& prob) {
        if (depth == k) {
            total += prob * atoms[low].value;
            return;
        }
        for (std::size_t i = 0; i < atoms.size(); ++i) walk(depth + 1, std::min(low, i), prob * atoms[i].mass);
    };
    walk(0, atoms.size() - 1, Rational(1));
    return total;
}

/// Cauchy repeated-integral formula (1/(n-2)!) int_0^p (p - s)^(n-2) F^-1(s) ds in
/// floating point, 8-point Gauss-Legendre on each constancy interval of F^-1.
inline double quantile_integral_quadrature(const DiscreteDistribution& d, int n, double p) {
    static const double nodes[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                    -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                    0.7966664774136267,  0.9602898564975363};
    static const double weights[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                      0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                      0.2223810344533745, 0.1012285362903763};
    const auto c = cut_points(d);
    double fact = 1;
    for (int i = 2; i <= n - 2; ++i) fact *= i;
    double total = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double lo = c[i].to_double();
        const double hi = std::min(c[i + 1].to_double(), p);
        if (hi <= lo) break;
        const double x = d.atoms()[i].value.to_double();
        const double half = (hi - lo) / 2, mid = (hi + lo) / 2;
        for (int j = 0; j < 8; ++j) {
            const double s = mid + half * nodes[j];
            total += weights[j] * half * std::pow(p - s, n - 2) * x;
        }
    }
    return total / fact;
}

}  // namespace stodom::test
