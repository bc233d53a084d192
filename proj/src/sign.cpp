#include "stodom/sign.hpp"

#include "stodom/error.hpp"

#include <algorithm>

namespace stodom {

Polynomial square_free_part(const Polynomial& p) {
    if (p.degree() <= 0) return p.monic();
    const Polynomial g = gcd(p, p.derivative());
    return divmod(p, g).quotient.monic();
}

SturmSequence::SturmSequence(const Polynomial& square_free) {
    chain_.push_back(square_free);
    if (square_free.degree() <= 0) return;
    chain_.push_back(square_free.derivative());
    while (chain_.back().degree() > 0) {
        Polynomial r = -divmod(chain_[chain_.size() - 2], chain_.back()).remainder;
        if (r.is_zero()) break;
        // Positive rescaling keeps sign patterns and curbs coefficient growth.
        chain_.push_back(r * r.leading().abs().inverse());
    }
}

int SturmSequence::variations(const Rational& x) const {
    int changes = 0;
    int last = 0;
    for (const auto& s : chain_) {
        const int sg = s.eval(x).sign();
        if (sg == 0) continue;
        if (last != 0 && sg != last) ++changes;
        last = sg;
    }
    return changes;
}

namespace {

/// |leading coefficient| of the primitive integer multiple of q. The reduced
/// denominator of any rational root of q divides it.
mpz_class primitive_leading(const Polynomial& q) {
    mpz_class lcm_den = 1;
    for (const auto& c : q.coefficients()) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.denominator().get_mpz_t());
    mpz_class g = 0;
    for (const auto& c : q.coefficients()) {
        const mpz_class v = c.numerator() * (lcm_den / c.denominator());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    }
    const mpz_class lead = q.leading().numerator() * (lcm_den / q.leading().denominator());
    return abs(lead) / g;
}

class Isolator {
public:
    explicit Isolator(const Polynomial& p)
        : q_(square_free_part(p)), sturm_(q_), lc_(primitive_leading(q_)) {
        separation_ = Rational(mpz_class(1), mpz_class(lc_ * lc_));
    }

    std::vector<IsolatedRoot> run(const Rational& lo, const Rational& hi) {
        roots_.clear();
        Rational a = lo, b = hi;
        std::optional<Rational> hi_root;
        const Rational quarter = (hi - lo) / Rational(4);
        if (q_.eval(lo).is_zero()) {
            push_exact(lo);
            a = lo + bracket(lo, quarter);
        }
        if (q_.eval(hi).is_zero()) {
            hi_root = hi;
            b = hi - bracket(hi, quarter);
        }
        if (a < b) search(a, b);
        if (hi_root) push_exact(*hi_root);
        return std::move(roots_);
    }

private:
    void push_exact(const Rational& r) { roots_.push_back(IsolatedRoot{true, r, r, r}); }

    /// Radius eps <= max_eps with q(r +- eps) != 0 and r the only root in
    /// (r - eps, r + eps).
    Rational bracket(const Rational& r, Rational eps) {
        for (;;) {
            const Rational l = r - eps, u = r + eps;
            if (!q_.eval(l).is_zero() && !q_.eval(u).is_zero() && sturm_.count_roots(l, u) == 1) return eps;
            eps /= Rational(2);
        }
    }

    // Requires q(a) != 0 and q(b) != 0.
    void search(const Rational& a, const Rational& b) {
        const int count = sturm_.count_roots(a, b);
        if (count == 0) return;
        if (count == 1) {
            resolve(a, b);
            return;
        }
        const Rational m = midpoint(a, b);
        if (!q_.eval(m).is_zero()) {
            search(a, m);
            search(m, b);
            return;
        }
        const Rational eps = bracket(m, (b - a) / Rational(4));
        search(a, m - eps);
        push_exact(m);
        search(m + eps, b);
    }

    // Exactly one root of q in (a, b); decide whether it is rational.
    void resolve(Rational a, Rational b) {
        if (q_.degree() == 1) {
            push_exact(-q_.coefficient(0) / q_.coefficient(1));
            return;
        }
        const int sign_a = q_.eval(a).sign();
        while (b - a >= separation_) {
            const Rational m = midpoint(a, b);
            const int sm = q_.eval(m).sign();
            if (sm == 0) {
                push_exact(m);
                return;
            }
            if (sm == sign_a) a = m;
            else b = m;
        }
        const Rational s = simplest_between(a, b);
        if (q_.eval(s).is_zero()) {
            push_exact(s);
            return;
        }
        roots_.push_back(IsolatedRoot{false, Rational(), a, b});
    }

    Polynomial q_;
    SturmSequence sturm_;
    mpz_class lc_;
    Rational separation_;
    std::vector<IsolatedRoot> roots_;
};

SignReport constant_report(const Rational& c, const Rational& at) {
    SignReport r;
    if (c.sign() < 0) {
        r.verdict = SignVerdict::NegativeSomewhere;
        r.witness = at;
        r.witness_value = c;
    } else if (c.sign() > 0) {
        r.positive_point = at;
    }
    return r;
}

void add_sample(SignReport& r, const Polynomial& p, const Rational& x,
                std::optional<Rational>& best_positive_value) {
    const Rational v = p.eval(x);
    if (v.sign() < 0) {
        if (!r.witness_value || v < *r.witness_value) {
            r.witness = x;
            r.witness_value = v;
        }
    } else if (v.sign() > 0) {
        if (!best_positive_value || v > *best_positive_value) {
            best_positive_value = v;
            r.positive_point = x;
        }
    }
}

}  // namespace

std::vector<IsolatedRoot> isolate_roots(const Polynomial& p, const Rational& lo, const Rational& hi) {
    if (p.is_zero()) throw Error(ErrorCode::InvalidArgument, "root isolation of the zero polynomial");
    if (!(lo < hi)) throw Error(ErrorCode::InvalidArgument, "root isolation needs lo < hi");
    if (p.degree() == 0) return {};
    return Isolator(p).run(lo, hi);
}

SignReport nonneg_on_interval(const Polynomial& p, const Rational& lo, const Rational& hi) {
    if (!(lo < hi)) throw Error(ErrorCode::InvalidArgument, "nonneg_on_interval needs lo < hi");
    if (p.is_zero()) return {};
    if (p.degree() == 0) return constant_report(p.coefficient(0), lo);

    SignReport report;
    std::optional<Rational> best_positive;
    if (p.degree() == 1) {
        const Rational root = -p.coefficient(0) / p.coefficient(1);
        if (lo <= root && root <= hi) report.touch_points.push_back(root);
        if (root != lo) add_sample(report, p, lo, best_positive);
        if (root != hi) add_sample(report, p, hi, best_positive);
    } else {
        const auto roots = isolate_roots(p, lo, hi);
        // One non-root sample point inside every gap between consecutive roots.
        std::vector<Rational> samples;
        if (roots.empty()) {
            samples.push_back(lo);
            samples.push_back(hi);
        } else {
            const auto& first = roots.front();
            if (!(first.exact && first.value == lo)) samples.push_back(lo);
            for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
                const auto& r = roots[i];
                const auto& s = roots[i + 1];
                if (!r.exact) samples.push_back(r.upper);
                else if (!s.exact) samples.push_back(s.lower);
                else samples.push_back(midpoint(r.value, s.value));
            }
            const auto& last = roots.back();
            if (!(last.exact && last.value == hi)) samples.push_back(hi);
        }
        for (const auto& x : samples) add_sample(report, p, x, best_positive);
        for (const auto& r : roots) {
            if (r.exact) report.touch_points.push_back(r.value);
        }
    }
    if (report.witness) report.verdict = SignVerdict::NegativeSomewhere;
    return report;
}

SignReport nonneg_on_ray(const Polynomial& p, const Rational& lo) {
    if (p.is_zero()) return {};
    if (p.degree() == 0) return constant_report(p.coefficient(0), lo);
    // Cauchy bound: every real root satisfies |x| < 1 + max |a_i / a_n|.
    Rational bound(0);
    const Rational lead = p.leading();
    for (int i = 0; i < p.degree(); ++i) {
        bound = std::max(bound, (p.coefficient(static_cast<std::size_t>(i)) / lead).abs());
    }
    bound += Rational(1);
    const Rational hi = std::max(lo, bound) + Rational(1);
    // Beyond hi the sign is that of p(hi), which the interval check samples.
    return nonneg_on_interval(p, lo, hi);
}

SignReport nonneg_on_left_ray(const Polynomial& p, const Rational& hi) {
    SignReport r = nonneg_on_ray(p.reflect(), -hi);
    if (r.witness) r.witness = -*r.witness;
    if (r.positive_point) r.positive_point = -*r.positive_point;
    for (auto& t : r.touch_points) t = -t;
    std::reverse(r.touch_points.begin(), r.touch_points.end());
    return r;
}

}  // namespace stodom
