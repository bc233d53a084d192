#include "stodom/falsifier.hpp"

#include "stodom/dominance.hpp"
#include "stodom/error.hpp"
#include "stodom/filters.hpp"
#include "stodom/noise_lab.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <thread>

namespace stodom {

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    for (;;) {
        const std::uint64_t v = next();
        if (v < limit) return v % bound;
    }
}

long SplitMix64::between(long lo, long hi) {
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 a(seed ^ (index * 0xd1b54a32d192ed03ULL));
    a.next();
    return a.next();
}

namespace {

constexpr int kRetries = 200;

Rational draw_value(SplitMix64& rng, const GenConfig& cfg) {
    for (;;) {
        const long den = rng.between(1, std::max(1L, cfg.denominator_cap));
        const Rational lo_scaled = cfg.value_lo * Rational(den);
        const Rational hi_scaled = cfg.value_hi * Rational(den);
        mpz_class lo, hi;
        mpz_cdiv_q(lo.get_mpz_t(), lo_scaled.numerator().get_mpz_t(), lo_scaled.denominator().get_mpz_t());
        mpz_fdiv_q(hi.get_mpz_t(), hi_scaled.numerator().get_mpz_t(), hi_scaled.denominator().get_mpz_t());
        if (hi < lo) continue;
        const mpz_class span = hi - lo;
        if (!span.fits_slong_p()) throw Error(ErrorCode::InvalidArgument, "value range too wide for the generator");
        const long offset = rng.between(0, span.get_si());
        return Rational(mpz_class(lo + offset), mpz_class(den));
    }
}

std::vector<Rational> draw_support(SplitMix64& rng, const GenConfig& cfg, int size) {
    std::vector<Rational> values;
    for (int i = 0; i < size; ++i) {
        Rational v = draw_value(rng, cfg);
        for (int t = 0; t < 64 && std::find(values.begin(), values.end(), v) != values.end(); ++t) {
            v = draw_value(rng, cfg);
        }
        values.push_back(v);
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    return values;
}

DiscreteDistribution draw_dist(SplitMix64& rng, const GenConfig& cfg, int size_lo, int size_hi) {
    const int size = static_cast<int>(rng.between(size_lo, std::max(size_lo, size_hi)));
    const std::vector<Rational> values = draw_support(rng, cfg, size);
    const long cap = std::max(1L, cfg.denominator_cap);
    const Rational scale = Rational(cap * static_cast<long>(values.size())).inverse();
    std::vector<std::pair<Rational, Rational>> raw;
    Rational used;
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        const Rational m = Rational(rng.between(1, cap)) * scale;
        used += m;
        raw.emplace_back(values[i], m);
    }
    raw.emplace_back(values.back(), Rational(1) - used);
    return dist_validate(std::move(raw));
}

DiscreteDistribution draw_dist(SplitMix64& rng, const GenConfig& cfg) {
    return draw_dist(rng, cfg, cfg.support_min, cfg.support_max);
}

Rational unit_fraction(SplitMix64& rng) { return Rational(rng.between(1, 9), 10); }

using Matrix = std::vector<std::vector<Rational>>;

/// Solution set of A v = b as v = particular + span(null_basis), or nullopt
/// if inconsistent.
struct AffineSolution {
    std::vector<Rational> particular;
    std::vector<std::vector<Rational>> null_basis;
};

std::optional<AffineSolution> solve_affine(Matrix a, std::vector<Rational> b) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows == 0 ? 0 : a[0].size();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        std::swap(b[p], b[r]);
        const Rational inv = a[r][c].inverse();
        for (auto& v : a[r]) v *= inv;
        b[r] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            const Rational f = a[i][c];
            for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
            b[i] -= f * b[r];
        }
        pivots.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i) {
        if (!b[i].is_zero()) return std::nullopt;
    }
    AffineSolution s;
    s.particular.assign(cols, Rational());
    for (std::size_t i = 0; i < pivots.size(); ++i) s.particular[pivots[i]] = b[i];
    for (std::size_t f = 0; f < cols; ++f) {
        if (std::find(pivots.begin(), pivots.end(), f) != pivots.end()) continue;
        std::vector<Rational> v(cols);
        v[f] = Rational(1);
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a[i][f];
        s.null_basis.push_back(std::move(v));
    }
    return s;
}

/// Open interval of t with base + t * dir satisfying every constraint
/// lhs_i(t) > 0, where lhs_i(t) = base_i + t dir_i; picks a random interior
/// point, or nullopt when the interval is empty.
std::optional<Rational> pick_on_line(const std::vector<Rational>& base, const std::vector<Rational>& dir,
                                     SplitMix64& rng) {
    std::optional<Rational> lo, hi;
    for (std::size_t i = 0; i < base.size(); ++i) {
        if (dir[i].is_zero()) {
            if (base[i].sign() <= 0) return std::nullopt;
            continue;
        }
        const Rational t = -base[i] / dir[i];
        if (dir[i].sign() > 0) {
            if (!lo || t > *lo) lo = t;
        } else {
            if (!hi || t < *hi) hi = t;
        }
    }
    const Rational u = unit_fraction(rng);
    if (lo && hi) {
        if (*lo >= *hi) return std::nullopt;
        return *lo + (*hi - *lo) * u;
    }
    if (lo) return *lo + u;
    if (hi) return *hi - u;
    return u;
}

std::optional<DiscreteDistribution> try_moment_match(const DiscreteDistribution& x, const std::vector<Rational>& support,
                                                     int k, SplitMix64& rng) {
    const std::size_t s = support.size();
    Matrix a(static_cast<std::size_t>(k) + 1, std::vector<Rational>(s));
    std::vector<Rational> b(static_cast<std::size_t>(k) + 1);
    for (int j = 0; j <= k; ++j) {
        for (std::size_t i = 0; i < s; ++i) a[j][i] = support[i].pow(static_cast<unsigned>(j));
        b[j] = raw_moment(x, static_cast<unsigned>(j));
    }
    const auto sol = solve_affine(std::move(a), std::move(b));
    if (!sol || sol->null_basis.empty()) return std::nullopt;
    // Free coordinates are masses, so feasible points are particular + lambda * (positive mix of the basis).
    std::vector<Rational> dir(s);
    for (const auto& v : sol->null_basis) {
        const Rational w(rng.between(1, 10));
        for (std::size_t i = 0; i < s; ++i) dir[i] += w * v[i];
    }
    const auto t = pick_on_line(sol->particular, dir, rng);
    if (!t) return std::nullopt;
    std::vector<std::pair<Rational, Rational>> raw;
    for (std::size_t i = 0; i < s; ++i) raw.emplace_back(support[i], sol->particular[i] + *t * dir[i]);
    DiscreteDistribution y = dist_validate(std::move(raw));
    if (y == x) return std::nullopt;
    return y;
}

[[noreturn]] void exhausted(const std::string& what) {
    throw Error(ErrorCode::GenerationExhausted, what + ": no valid draw after " + std::to_string(kRetries) + " retries");
}

}  // namespace

DiscreteDistribution gen_random_dist(const GenConfig& cfg) {
    SplitMix64 rng(cfg.seed);
    return draw_dist(rng, cfg);
}

DiscreteDistribution gen_moment_matched_to(const DiscreteDistribution& x, const std::vector<Rational>& y_support,
                                           int k, std::uint64_t seed) {
    if (k < 0) throw Error(ErrorCode::InvalidArgument, "match order must be >= 0");
    if (y_support.size() < static_cast<std::size_t>(k) + 2) {
        throw Error(ErrorCode::GenerationExhausted, "support of size " + std::to_string(y_support.size()) +
                                                        " cannot match " + std::to_string(k + 1) + " moment equations");
    }
    SplitMix64 rng(seed);
    std::vector<Rational> support = y_support;
    std::sort(support.begin(), support.end());
    for (int t = 0; t < kRetries; ++t) {
        if (auto y = try_moment_match(x, support, k, rng)) return *y;
    }
    exhausted("moment-matched distribution");
}

std::pair<DiscreteDistribution, DiscreteDistribution> gen_moment_matched_pair(const GenConfig& cfg, int k) {
    if (k < 0) throw Error(ErrorCode::InvalidArgument, "match order must be >= 0");
    SplitMix64 rng(cfg.seed);
    const DiscreteDistribution x = draw_dist(rng, cfg);
    const int lo = std::max(cfg.support_min, k + 2);
    const int hi = std::max(cfg.support_max, k + 2);
    for (int t = 0; t < kRetries; ++t) {
        const auto support = draw_support(rng, cfg, static_cast<int>(rng.between(lo, hi)));
        if (support.size() < static_cast<std::size_t>(k) + 2) continue;
        if (auto y = try_moment_match(x, support, k, rng)) return {x, *y};
    }
    exhausted("moment-matched pair");
}

std::pair<DiscreteDistribution, DiscreteDistribution> gen_orderstat_matched_pair(const GenConfig& cfg, int k) {
    if (k < 0) throw Error(ErrorCode::InvalidArgument, "match order must be >= 0");
    SplitMix64 rng(cfg.seed);
    const int lo = std::max({cfg.support_min, k, 1});
    const int hi = std::max(cfg.support_max, lo);
    for (int t = 0; t < kRetries; ++t) {
        const DiscreteDistribution x = draw_dist(rng, cfg, lo, hi);
        const auto& atoms = x.atoms();
        const std::size_t s = atoms.size();
        if (s < static_cast<std::size_t>(k)) continue;
        // mu_{1:j} = sum_i y_i (S_{i-1}^j - S_i^j) is linear in the values y.
        Matrix a(static_cast<std::size_t>(k), std::vector<Rational>(s));
        std::vector<Rational> b(static_cast<std::size_t>(k));
        for (int j = 1; j <= k; ++j) {
            Rational before(1);
            for (std::size_t i = 0; i < s; ++i) {
                const Rational after = before - atoms[i].mass;
                a[j - 1][i] = before.pow(static_cast<unsigned>(j)) - after.pow(static_cast<unsigned>(j));
                before = after;
            }
            b[j - 1] = min_orderstat_mean(x, static_cast<unsigned>(j));
        }
        const auto sol = solve_affine(std::move(a), std::move(b));
        if (!sol) continue;
        std::vector<Rational> base = sol->particular;
        std::vector<Rational> dir(s);
        for (const auto& v : sol->null_basis) {
            const Rational f = draw_value(rng, cfg);
            const Rational g(rng.between(-5, 5));
            for (std::size_t i = 0; i < s; ++i) {
                base[i] += f * v[i];
                dir[i] += g * v[i];
            }
        }
        // Strictly increasing values: y_{i+1} - y_i > 0 along the line.
        std::vector<Rational> gap_base, gap_dir;
        for (std::size_t i = 0; i + 1 < s; ++i) {
            gap_base.push_back(base[i + 1] - base[i]);
            gap_dir.push_back(dir[i + 1] - dir[i]);
        }
        const auto lambda = pick_on_line(gap_base, gap_dir, rng);
        if (!lambda) continue;
        std::vector<std::pair<Rational, Rational>> raw;
        for (std::size_t i = 0; i < s; ++i) raw.emplace_back(base[i] + *lambda * dir[i], atoms[i].mass);
        DiscreteDistribution y = dist_validate(std::move(raw));
        if (y == x && !sol->null_basis.empty()) continue;
        return {x, y};
    }
    exhausted("order-statistic-matched pair");
}

// ---------------------------------------------------------------------------
// Property suites

namespace {

struct AttemptResult {
    bool counted = false;
    std::vector<Violation> violations;
    std::vector<SuiteWitness> witnesses;
    std::map<std::string, long long> counters;
};

struct Attempt {
    std::uint64_t seed;
    GenConfig cfg;
    SplitMix64 rng;
    AttemptResult out;

    Attempt(std::uint64_t s, const GenConfig& base) : seed(s), cfg(base), rng(s) { cfg.seed = mix_seed(s, 1); }

    void count(const std::string& key) { ++out.counters[key]; }
    void violate(const DiscreteDistribution& x, const DiscreteDistribution& y, int n, std::string property,
                 std::string details) {
        out.violations.push_back({seed, x, y, n, std::move(property), std::move(details)});
    }
    void witness(const DiscreteDistribution& x, const DiscreteDistribution& y, int n, std::string note) {
        out.witnesses.push_back({seed, x, y, n, std::move(note)});
    }
};

/// Y derived from X by moving mass up (first order) or by a mean-preserving
/// spread (second order), or drawn independently; orientation randomized.
std::pair<DiscreteDistribution, DiscreteDistribution> related_pair(Attempt& a) {
    SplitMix64& rng = a.rng;
    const DiscreteDistribution x = draw_dist(rng, a.cfg);
    const long mode = rng.between(0, 3);
    std::vector<std::pair<Rational, Rational>> raw;
    for (const auto& at : x.atoms()) raw.emplace_back(at.value, at.mass);
    if (mode == 0) {
        GenConfig other = a.cfg;
        other.seed = mix_seed(a.seed, 2);
        SplitMix64 r2(other.seed);
        DiscreteDistribution y = draw_dist(r2, other);
        return {x, y};
    }
    const std::size_t i = static_cast<std::size_t>(rng.below(raw.size()));
    if (mode == 1 || mode == 3) {
        // Move part of atom i up.
        const Rational part = raw[i].second * unit_fraction(rng);
        raw[i].second -= part;
        raw.emplace_back(raw[i].first + Rational(rng.between(1, 20), 4), part);
    }
    if (mode == 2 || mode == 3) {
        // Split part of atom j into two points around it, keeping the mean.
        const std::size_t j = static_cast<std::size_t>(rng.below(raw.size()));
        const Rational part = raw[j].second * unit_fraction(rng);
        const Rational down(rng.between(1, 12), 4);
        const Rational up(rng.between(1, 12), 4);
        // Weights w_down, w_up with w_down * down = w_up * up.
        const Rational w_down = part * up / (up + down);
        const Rational w_up = part - w_down;
        raw[j].second -= part;
        const Rational centre = raw[j].first;
        raw.emplace_back(centre - down, w_down);
        raw.emplace_back(centre + up, w_up);
    }
    DiscreteDistribution y = dist_validate(std::move(raw));
    if (rng.below(2) == 0) return {x, y};
    return {y, x};
}

std::string relation_text(const Verdict& v) {
    return std::string(to_string(v.relation)) + (v.strict ? " strict" : "");
}

Rational alt(unsigned power, const Rational& v) { return power % 2 == 0 ? v : -v; }

void suite_fishburn(Attempt& a) {
    const int n = 2 + static_cast<int>(a.rng.below(4));
    const int k = static_cast<int>(a.rng.below(static_cast<std::uint64_t>(n - 1)));
    std::optional<std::pair<DiscreteDistribution, DiscreteDistribution>> pair;
    if (k == 0) {
        pair = related_pair(a);
    } else {
        try {
            pair = gen_moment_matched_pair(a.cfg, k);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::GenerationExhausted) throw;
            a.count("generation_exhausted");
            return;
        }
    }
    const auto& [x, y] = *pair;
    const Verdict v = sd_compare(x, y, n);
    if (v.relation != Relation::LeftDominated && v.relation != Relation::RightDominated) return;
    // big >=_n small
    const DiscreteDistribution& big = v.relation == Relation::LeftDominated ? y : x;
    const DiscreteDistribution& small = v.relation == Relation::LeftDominated ? x : y;
    a.out.counted = true;
    a.count("verified_n" + std::to_string(n));
    unsigned agree = 0;  // moments 1..agree are equal
    while (agree < static_cast<unsigned>(n) && raw_moment(big, agree + 1) == raw_moment(small, agree + 1)) ++agree;
    a.count("prefix_" + std::to_string(agree));
    for (unsigned kk = 0; kk + 2 <= static_cast<unsigned>(n) && kk <= agree; ++kk) {
        const Rational lhs = alt(kk, raw_moment(big, kk + 1));
        const Rational rhs = alt(kk, raw_moment(small, kk + 1));
        if (!(lhs >= rhs)) {
            a.violate(big, small, n, "moment order k=" + std::to_string(kk),
                      lhs.str() + " < " + rhs.str() + " for the dominating side");
        }
    }
    if (agree + 1 >= static_cast<unsigned>(n)) {
        const unsigned m = static_cast<unsigned>(n) - 1;
        const Rational lhs = alt(m, raw_moment(big, m + 1));
        const Rational rhs = alt(m, raw_moment(small, m + 1));
        a.count("strict_checked");
        if (!(lhs > rhs)) {
            a.violate(big, small, n, "strict moment order", lhs.str() + " <= " + rhs.str());
        }
    }
}

std::optional<std::pair<DiscreteDistribution, DiscreteDistribution>> orderstat_or_related(Attempt& a, int k) {
    if (k <= 0) return related_pair(a);
    try {
        return gen_orderstat_matched_pair(a.cfg, k);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::GenerationExhausted) throw;
        a.count("generation_exhausted");
        return std::nullopt;
    }
}

void suite_isd_orderstat(Attempt& a) {
    const int n = 3 + static_cast<int>(a.rng.below(3));
    const long mode = a.rng.between(0, 2);
    const auto pair = orderstat_or_related(a, mode == 0 ? 0 : n - 3 + static_cast<int>(mode));
    if (!pair) return;
    const Verdict v = isd_compare(pair->first, pair->second, n);
    if (v.relation != Relation::LeftDominated && v.relation != Relation::RightDominated) return;
    // lower <=_n^- upper
    const DiscreteDistribution& lower = v.relation == Relation::LeftDominated ? pair->first : pair->second;
    const DiscreteDistribution& upper = v.relation == Relation::LeftDominated ? pair->second : pair->first;
    a.out.counted = true;
    a.count("verified_n" + std::to_string(n));
    const unsigned un = static_cast<unsigned>(n);
    std::vector<Rational> ml(un + 3), mu(un + 3);
    for (unsigned k = 1; k <= un + 2; ++k) {
        ml[k] = min_orderstat_mean(lower, k);
        mu[k] = min_orderstat_mean(upper, k);
    }
    for (unsigned k = un - 1; k <= un + 2; ++k) {
        if (!(ml[k] <= mu[k])) {
            a.violate(lower, upper, n, "mu_1_" + std::to_string(k) + " monotone", ml[k].str() + " > " + mu[k].str());
        }
    }
    // Alternating chain: with mu_{1:(n-1-j)} equal for j = 0..k,
    // (-1)^(k+1) mu_{1:(n-2-k)} is ordered like the distributions.
    for (unsigned k = 0; k + 2 < un; ++k) {
        if (ml[un - 1 - k] != mu[un - 1 - k]) break;
        const unsigned idx = un - 2 - k;
        const Rational lhs = alt(k + 1, ml[idx]);
        const Rational rhs = alt(k + 1, mu[idx]);
        a.count("chain_depth_" + std::to_string(k));
        if (!(lhs <= rhs)) {
            a.violate(lower, upper, n, "alternating mu_1_" + std::to_string(idx), lhs.str() + " > " + rhs.str());
        }
    }
    bool strong = true;
    for (unsigned k = 1; k < un; ++k) strong = strong && ml[k] == mu[k];
    if (strong) {
        a.count("strong");
        if (!(ml[un] < mu[un])) {
            a.violate(lower, upper, n, "strict mu_1_n", ml[un].str() + " >= " + mu[un].str());
        }
    }
}

/// Checks the strict order-statistic statement exactly as the theorem
/// states it: X <_n^- Y strongly implies mu^X_{1:n} > mu^Y_{1:n}.
void suite_strict_orderstat(Attempt& a) {
    const int n = 3 + static_cast<int>(a.rng.below(3));
    const auto pair = orderstat_or_related(a, n - 1);
    if (!pair) return;
    const StrongVerdict s = strong_isd_compare(pair->first, pair->second, n);
    if (s.verdict.relation != Relation::LeftDominated && s.verdict.relation != Relation::RightDominated) return;
    const bool left = s.verdict.relation == Relation::LeftDominated;
    const DiscreteDistribution& lower = left ? pair->first : pair->second;
    const DiscreteDistribution& upper = left ? pair->second : pair->first;
    a.out.counted = true;
    a.count("strong_n" + std::to_string(n));
    const Rational ml = min_orderstat_mean(lower, static_cast<unsigned>(n));
    const Rational mu = min_orderstat_mean(upper, static_cast<unsigned>(n));
    if (!(ml > mu)) {
        a.violate(lower, upper, n, "mu_1_n strictly larger on the dominated side",
                  "mu^X_{1:n} = " + ml.str() + ", mu^Y_{1:n} = " + mu.str());
    }
}

void suite_low_order(Attempt& a) {
    const int n = 1 + static_cast<int>(a.rng.below(2));
    const auto [x, y] = related_pair(a);
    const Verdict sd = sd_compare(x, y, n);
    const Verdict isd = isd_compare(x, y, n);
    a.out.counted = true;
    a.count(std::string("relation_") + std::string(to_string(sd.relation)));
    if (sd.relation != isd.relation || sd.strict != isd.strict) {
        a.violate(x, y, n, "sd and isd agree", "sd " + relation_text(sd) + ", isd " + relation_text(isd));
    }
}

void suite_monotonicity(Attempt& a) {
    const auto [x, y] = related_pair(a);
    a.out.counted = true;
    for (const bool inverse : {false, true}) {
        std::vector<Relation> rel;
        for (int n = 1; n <= 6; ++n) rel.push_back((inverse ? isd_compare(x, y, n) : sd_compare(x, y, n)).relation);
        for (int n = 1; n <= 5; ++n) {
            const Relation now = rel[n - 1];
            const Relation next = rel[n];
            if (now != Relation::LeftDominated && now != Relation::RightDominated) continue;
            a.count(std::string(inverse ? "isd" : "sd") + "_dominated_at_" + std::to_string(n));
            if (next != now) {
                a.violate(x, y, n, std::string(inverse ? "isd" : "sd") + " order monotone",
                          std::string(to_string(now)) + " at n, " + std::string(to_string(next)) + " at n+1");
            }
        }
    }
}

void suite_separation(Attempt& a) {
    const auto [x, y] = related_pair(a);
    const Verdict sd = sd_compare(x, y, 3);
    const Verdict isd = isd_compare(x, y, 3);
    a.out.counted = true;
    const bool sd_dom = sd.relation == Relation::LeftDominated || sd.relation == Relation::RightDominated;
    const bool isd_dom = isd.relation == Relation::LeftDominated || isd.relation == Relation::RightDominated;
    if (sd_dom) a.count("sd_dominated");
    if (isd_dom) a.count("isd_dominated");
    if (sd.relation != isd.relation && (sd_dom || isd_dom)) {
        a.count("separations");
        a.witness(x, y, 3, "sd " + relation_text(sd) + ", isd " + relation_text(isd));
    }
}

/// Pair satisfying the noise precondition at order n, or nullopt.
std::optional<std::pair<DiscreteDistribution, DiscreteDistribution>> noise_pair(Attempt& a, int n) {
    std::optional<std::pair<DiscreteDistribution, DiscreteDistribution>> pair;
    if (n == 1) {
        pair = related_pair(a);
    } else {
        try {
            pair = gen_moment_matched_pair(a.cfg, n - 1);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::GenerationExhausted) throw;
            a.count("generation_exhausted");
            return std::nullopt;
        }
    }
    if (noise_precondition(pair->first, pair->second, n).ok) return pair;
    if (noise_precondition(pair->second, pair->first, n).ok) return std::make_pair(pair->second, pair->first);
    a.count("precondition_tied");
    return std::nullopt;
}

void suite_noise(Attempt& a) {
    const int n = 1 + static_cast<int>(a.rng.below(2));
    const auto pair = noise_pair(a, n);
    if (!pair) return;
    const auto& [x, y] = *pair;
    SearchBudget budget;
    budget.k_max = 16;
    budget.widening_steps = 6;
    budget.max_smoothing = 2;
    a.out.counted = true;
    const NoiseSearchReport r = noise_search(x, y, n, budget);
    const std::string tag = "_n" + std::to_string(n);
    a.count(std::string(to_string(r.status)) + tag);
    if (r.status == NoiseStatus::NotFound && edge_obstruction(x, y, n)) a.count("edge_obstructed" + tag);
    if (r.status == NoiseStatus::Found) {
        const Verdict v = sd_compare(convolve(y, *r.z), convolve(x, *r.z), n);
        if (v.relation != Relation::LeftDominated || !v.strict) {
            a.violate(x, y, n, "found noise re-verifies", "independent check gave " + relation_text(v));
        }
    }
}

/// Open-question experiment: equal mu_{1:k} below n, mu^X_{1:n} larger;
/// does some Z give X+Z <_n^- Y+Z? Outcomes are only counted.
void suite_noise_isd(Attempt& a) {
    const int n = 3 + static_cast<int>(a.rng.below(2));
    const auto pair = orderstat_or_related(a, n - 1);
    if (!pair) return;
    const unsigned un = static_cast<unsigned>(n);
    const Rational mx = min_orderstat_mean(pair->first, un);
    const Rational my = min_orderstat_mean(pair->second, un);
    if (mx == my) {
        a.count("precondition_tied");
        return;
    }
    const DiscreteDistribution& x = mx > my ? pair->first : pair->second;
    const DiscreteDistribution& y = mx > my ? pair->second : pair->first;
    SearchBudget budget;
    budget.k_max = 8;
    budget.widening_steps = 4;
    budget.max_smoothing = 0;
    a.out.counted = true;
    const NoiseSearchReport r = isd_noise_probe(x, y, n, budget);
    a.count(std::string(to_string(r.status)) + "_n" + std::to_string(n));
    if (r.status == NoiseStatus::Found) {
        const Verdict v = isd_compare(convolve(x, *r.z), convolve(y, *r.z), n);
        if (v.relation != Relation::LeftDominated || !v.strict) {
            a.violate(x, y, n, "found noise re-verifies", "independent check gave " + relation_text(v));
        }
        a.witness(x, y, n, "Z with " + std::to_string(r.z->size()) + " atoms gives X+Z <_n^- Y+Z");
    }
}

/// E[min of k draws] by enumerating every k-tuple of atoms.
Rational enumerate_min_mean(const DiscreteDistribution& d, unsigned k) {
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

void suite_orderstat_oracle(Attempt& a) {
    GenConfig small = a.cfg;
    small.support_max = std::min(small.support_max, 6);
    small.support_min = std::min(small.support_min, small.support_max);
    const DiscreteDistribution d = draw_dist(a.rng, small);
    const unsigned k = 1 + static_cast<unsigned>(a.rng.below(6));
    a.out.counted = true;
    const Rational survival = min_orderstat_mean(d, k);
    const Rational integral =
        factorial(k) * integrated_quantile(d, static_cast<int>(k) + 1).curve.eval(Rational(1));
    const Rational brute = enumerate_min_mean(d, k);
    if (survival != integral || survival != brute) {
        a.violate(d, d, static_cast<int>(k), "mu_1_k representations agree",
                  survival.str() + " / " + integral.str() + " / " + brute.str());
    }
}

void suite_asymptote(Attempt& a) {
    const DiscreteDistribution d = draw_dist(a.rng, a.cfg);
    const int n = 2 + static_cast<int>(a.rng.below(5));
    a.out.counted = true;
    const AsymptotePoly asy = asymptote(d, n);
    const IntegratedCurve c = integrated_cdf(d, n);
    if (!(c.curve.pieces().back().poly == asy.poly)) {
        a.violate(d, d, n, "last piece equals asymptote", c.curve.pieces().back().poly.str());
    }
    for (const Rational& t : {d.max_value(), d.max_value() + Rational(1), d.max_value() + Rational(37, 3)}) {
        if (c.curve.eval(t) != asy.poly.eval(t)) a.violate(d, d, n, "asymptote exact beyond support", "at " + t.str());
    }
    const Rational mu = mean(d);
    Polynomial expected;
    if (n == 2) expected = Polynomial::linear_root(mu);
    if (n == 3) {
        const Polynomial shift = Polynomial::linear_root(mu);
        expected = shift * shift * Rational(1, 2) + Polynomial::constant(variance(d) / Rational(2));
    }
    if ((n == 2 || n == 3) && !(expected == asy.poly)) a.violate(d, d, n, "low-order asymptote closed form", asy.poly.str());
}

void suite_gamma(Attempt& a) {
    const int n = 1 + static_cast<int>(a.rng.below(5));
    std::pair<DiscreteDistribution, DiscreteDistribution> pair;
    try {
        pair = gen_moment_matched_pair(a.cfg, n - 1);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::GenerationExhausted) throw;
        a.count("generation_exhausted");
        return;
    }
    const auto& [x, y] = pair;
    a.out.counted = true;
    const unsigned un = static_cast<unsigned>(n);
    const Rational diff = raw_moment(y, un) - raw_moment(x, un);
    const Rational expected = (un % 2 == 0 ? diff : -diff) / factorial(un);
    const Rational got = dominance_gap_integral(x, y, n);
    if (got != expected) a.violate(x, y, n, "gap integral identity", got.str() + " != " + expected.str());
}

void suite_filter_soundness(Attempt& a) {
    const int n = 1 + static_cast<int>(a.rng.below(5));
    const auto [x, y] = related_pair(a);
    a.out.counted = true;
    if (!filter_consistency_audit(x, y, n)) a.violate(x, y, n, "filters sound", "a filter refuted a confirmed dominance");
}

using SuiteFn = void (*)(Attempt&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
    static const std::vector<std::pair<std::string, SuiteFn>> suites = {
        {"fishburn", suite_fishburn},
        {"isd-orderstat", suite_isd_orderstat},
        {"strict-orderstat", suite_strict_orderstat},
        {"low-order-equivalence", suite_low_order},
        {"monotonicity", suite_monotonicity},
        {"separation", suite_separation},
        {"noise", suite_noise},
        {"noise-isd", suite_noise_isd},
        {"orderstat-oracle", suite_orderstat_oracle},
        {"asymptote", suite_asymptote},
        {"gamma", suite_gamma},
        {"filter-soundness", suite_filter_soundness},
    };
    return suites;
}

SuiteFn find_suite(std::string_view name) {
    for (const auto& [n, fn] : registry()) {
        if (n == name) return fn;
    }
    throw Error(ErrorCode::UnknownSuite, "unknown suite '" + std::string(name) + "'");
}

AttemptResult run_attempt(SuiteFn fn, std::uint64_t seed, const GenConfig& cfg) {
    Attempt a(seed, cfg);
    fn(a);
    return std::move(a.out);
}

void merge(PropertySuiteReport& r, AttemptResult&& res) {
    ++r.attempts;
    if (res.counted) ++r.trials;
    for (auto& v : res.violations) r.violations.push_back(std::move(v));
    for (auto& w : res.witnesses) r.witnesses.push_back(std::move(w));
    for (const auto& [k, c] : res.counters) r.counters[k] += c;
}

}  // namespace

std::vector<std::string> suite_names() {
    std::vector<std::string> names;
    for (const auto& entry : registry()) names.push_back(entry.first);
    return names;
}

PropertySuiteReport run_property_suite(std::string_view name, int trials, const GenConfig& cfg, int threads) {
    const SuiteFn fn = find_suite(name);
    PropertySuiteReport report;
    report.suite_name = std::string(name);
    if (trials <= 0) return report;
    const long long cap = 50LL * trials + 100;
    const int workers = std::max(1, threads);
    long long next = 0;
    while (report.trials < trials && next < cap) {
        const long long batch = std::min<long long>(cap - next, std::max<long long>(16, 2LL * (trials - report.trials)));
        std::vector<AttemptResult> results(static_cast<std::size_t>(batch));
        auto work = [&](int w) {
            for (long long i = w; i < batch; i += workers) {
                results[static_cast<std::size_t>(i)] =
                    run_attempt(fn, mix_seed(cfg.seed, static_cast<std::uint64_t>(next + i)), cfg);
            }
        };
        if (workers == 1) {
            work(0);
        } else {
            std::vector<std::thread> pool;
            for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
            for (auto& t : pool) t.join();
        }
        for (auto& res : results) {
            if (report.trials >= trials) break;
            merge(report, std::move(res));
        }
        next += batch;
    }
    return report;
}

PropertySuiteReport replay_property_attempt(std::string_view name, std::uint64_t seed, const GenConfig& cfg) {
    PropertySuiteReport report;
    report.suite_name = std::string(name);
    merge(report, run_attempt(find_suite(name), seed, cfg));
    return report;
}

}  // namespace stodom
