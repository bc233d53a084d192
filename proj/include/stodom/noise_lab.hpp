#pragma once

#include "stodom/dominance.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stodom {

struct NoisePrecondition {
    bool ok = false;
    Rational gamma;
    std::optional<int> failing_moment;
};

/// E[X^k] = E[Y^k] for k < n and (-1)^(n-1) E[X^n] > (-1)^(n-1) E[Y^n].
/// gamma = (-1)^n (E[Y^n] - E[X^n]) / n! is computed either way.
NoisePrecondition noise_precondition(const DiscreteDistribution& x, const DiscreteDistribution& y, int n);

/// Integral over the line of F_Y^[n] - F_X^[n]. Needs equal moments below n
/// (Error(MomentHypothesisViolated) names the first failing k).
Rational dominance_gap_integral(const DiscreteDistribution& x, const DiscreteDistribution& y, int n);

/// Reason why no finitely supported Z can give X+Z >_n Y+Z, if one can be
/// read off the support edges. Assumes the moment precondition holds.
std::optional<std::string> edge_obstruction(const DiscreteDistribution& x, const DiscreteDistribution& y, int n);

struct SearchBudget {
    int k_max = 64;                       // uniform lattice half-widths 1..k_max
    int widening_steps = 12;              // uniform noise with step h * 2^j, j = 1..widening_steps
    int max_smoothing = 4;                // convolution powers 2..max_smoothing of uniform noise, half-widths 1, 2, 4, ..
    std::size_t support_cap = kDefaultSupportCap;
    std::optional<Rational> step;         // lattice step; default 1 / lcm of all denominators
};

enum class NoiseStatus { Found, NotFound, PreconditionRefuted };
std::string_view to_string(NoiseStatus s);

struct NoiseSearchReport {
    NoiseStatus status = NoiseStatus::NotFound;
    std::optional<DiscreteDistribution> z;
    std::optional<Verdict> verdict;  // Y+Z against X+Z
    Rational gamma;
    int candidates_tried = 0;
    SearchBudget budget;
    std::vector<std::string> diagnostics;
};

/// Number of candidates the budget admits, and the i-th one. The order is
/// fixed, and raising any budget field only adds candidates.
int noise_candidate_count(const SearchBudget& budget);
DiscreteDistribution noise_candidate(int index, const Rational& step, const SearchBudget& budget);

/// Searches the candidate family for Z with X+Z >_n Y+Z strictly (sd_compare
/// of Y+Z against X+Z returning LeftDominated). Candidates exceeding the
/// support cap are skipped and counted in the diagnostics.
NoiseSearchReport noise_search(const DiscreteDistribution& x, const DiscreteDistribution& y, int n,
                               const SearchBudget& budget = {});

/// Experimental inverse analogue, n >= 3: given mu_{1:k} equal for k < n and
/// mu^X_{1:n} > mu^Y_{1:n}, looks for Z with X+Z <_n^- Y+Z strictly. No
/// existence result backs this; NotFound says nothing. gamma carries
/// mu^X_{1:n} - mu^Y_{1:n}.
NoiseSearchReport isd_noise_probe(const DiscreteDistribution& x, const DiscreteDistribution& y, int n,
                                  const SearchBudget& budget = {});

}  // namespace stodom
