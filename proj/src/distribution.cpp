#include "stodom/distribution.hpp"

#include "stodom/error.hpp"

#include <algorithm>

namespace stodom {

DiscreteDistribution dist_validate(std::vector<std::pair<Rational, Rational>> raw) {
    for (const auto& [value, mass] : raw) {
        if (mass.sign() < 0) {
            throw Error(ErrorCode::NegativeMass, "negative mass " + mass.str() + " at " + value.str());
        }
    }
    std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    DiscreteDistribution d;
    Rational total;
    for (auto& [value, mass] : raw) {
        total += mass;
        if (!d.atoms_.empty() && d.atoms_.back().value == value) {
            d.atoms_.back().mass += mass;
        } else {
            d.atoms_.push_back(Atom{value, mass});
        }
    }
    std::erase_if(d.atoms_, [](const Atom& a) { return a.mass.is_zero(); });
    if (d.atoms_.empty()) throw Error(ErrorCode::EmptySupport, "distribution has no atom with positive mass");
    if (total != Rational(1)) throw Error(ErrorCode::MassNotOne, "masses sum to " + total.str() + ", expected 1");
    return d;
}

DiscreteDistribution DiscreteDistribution::point_mass(const Rational& at) { return dist_validate({{at, Rational(1)}}); }

DiscreteDistribution DiscreteDistribution::uniform(std::span<const Rational> values) {
    if (values.empty()) throw Error(ErrorCode::EmptySupport, "uniform over no values");
    const Rational w = Rational(1) / Rational(static_cast<long>(values.size()));
    std::vector<std::pair<Rational, Rational>> raw;
    raw.reserve(values.size());
    for (const auto& v : values) raw.emplace_back(v, w);
    return dist_validate(std::move(raw));
}

Rational QuantileStep::operator()(const Rational& p) const {
    if (p.sign() < 0 || p > Rational(1)) throw Error(ErrorCode::InvalidArgument, "quantile level outside [0, 1]");
    // First cut c_i >= p with i >= 1.
    auto it = std::lower_bound(cut_points.begin() + 1, cut_points.end(), p);
    return values[static_cast<std::size_t>(it - cut_points.begin() - 1)];
}

Rational raw_moment(const DiscreteDistribution& d, unsigned j) {
    Rational acc;
    for (const auto& a : d.atoms()) acc += a.mass * a.value.pow(j);
    return acc;
}

Rational mean(const DiscreteDistribution& d) { return raw_moment(d, 1); }

Rational variance(const DiscreteDistribution& d) {
    const Rational m = mean(d);
    return raw_moment(d, 2) - m * m;
}

QuantileStep quantile(const DiscreteDistribution& d) {
    QuantileStep q;
    q.cut_points.push_back(Rational(0));
    Rational running;
    for (const auto& a : d.atoms()) {
        running += a.mass;
        q.cut_points.push_back(running);
        q.values.push_back(a.value);
    }
    return q;
}

DiscreteDistribution from_quantile(const QuantileStep& q) {
    std::vector<std::pair<Rational, Rational>> raw;
    for (std::size_t i = 0; i < q.values.size(); ++i) raw.emplace_back(q.values[i], q.cut_points[i + 1] - q.cut_points[i]);
    return dist_validate(std::move(raw));
}

Rational min_orderstat_mean(const DiscreteDistribution& d, unsigned k) {
    if (k == 0) throw Error(ErrorCode::InvalidArgument, "min_orderstat_mean needs k >= 1");
    Rational acc;
    Rational survival_before(1);
    Rational prev_pow(1);
    for (const auto& a : d.atoms()) {
        const Rational survival_after = survival_before - a.mass;
        const Rational next_pow = survival_after.pow(k);
        acc += a.value * (prev_pow - next_pow);
        survival_before = survival_after;
        prev_pow = next_pow;
    }
    return acc;
}

DiscreteDistribution convolve(const DiscreteDistribution& a, const DiscreteDistribution& b, std::size_t cap) {
    if (a.size() > cap / b.size()) {
        throw Error(ErrorCode::SupportCapExceeded, "convolution support " + std::to_string(a.size()) + " x " +
                                                       std::to_string(b.size()) + " exceeds cap " + std::to_string(cap));
    }
    std::vector<std::pair<Rational, Rational>> raw;
    raw.reserve(a.size() * b.size());
    for (const auto& x : a.atoms()) {
        for (const auto& y : b.atoms()) raw.emplace_back(x.value + y.value, x.mass * y.mass);
    }
    return dist_validate(std::move(raw));
}

}  // namespace stodom
