#pragma once

#include "stodom/distribution.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace stodom {

/// SplitMix64 (Steele, Lea, Flood 2014): 64-bit state, golden-gamma
/// increment, murmur-style finalizer. Same output on every platform.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();
    /// Uniform on [0, bound), bound > 0, by rejection.
    std::uint64_t below(std::uint64_t bound);
    /// Uniform on [lo, hi], lo <= hi.
    long between(long lo, long hi);

private:
    std::uint64_t state_;
};

/// Seed of the index-th child stream of seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

struct GenConfig {
    int support_min = 1;
    int support_max = 5;
    Rational value_lo = Rational(0);
    Rational value_hi = Rational(10);
    long denominator_cap = 10;
    std::uint64_t seed = 0;
};

/// Support size, values (denominators <= cap) and masses all come from the
/// seeded stream; the last atom takes the residual mass.
DiscreteDistribution gen_random_dist(const GenConfig& cfg);

/// X drawn freely, Y on a random support of size >= k + 2 with masses
/// solving sum_i q_i s_i^j = E[X^j], j = 0..k, exactly. Throws
/// Error(GenerationExhausted) after 200 rejected draws.
std::pair<DiscreteDistribution, DiscreteDistribution> gen_moment_matched_pair(const GenConfig& cfg, int k);

/// Same system for a fixed X and a fixed Y support.
DiscreteDistribution gen_moment_matched_to(const DiscreteDistribution& x, const std::vector<Rational>& y_support,
                                           int k, std::uint64_t seed);

/// Y keeps X's masses; its values solve mu_{1:j}(Y) = mu_{1:j}(X), j = 1..k,
/// and must come out strictly increasing. Throws Error(GenerationExhausted).
std::pair<DiscreteDistribution, DiscreteDistribution> gen_orderstat_matched_pair(const GenConfig& cfg, int k);

struct Violation {
    std::uint64_t seed;
    DiscreteDistribution x;
    DiscreteDistribution y;
    int order;
    std::string property;
    std::string details;
};

struct SuiteWitness {
    std::uint64_t seed;
    DiscreteDistribution x;
    DiscreteDistribution y;
    int order;
    std::string note;
};

struct PropertySuiteReport {
    std::string suite_name;
    int trials = 0;    // trials that exercised the property
    int attempts = 0;  // generated cases, including skipped ones
    std::vector<Violation> violations;
    std::vector<SuiteWitness> witnesses;
    std::map<std::string, long long> counters;

    bool passed() const { return violations.empty(); }
};

std::vector<std::string> suite_names();

/// Runs attempts with seeds mix_seed(cfg.seed, a), a = 0, 1, ..., until
/// `trials` of them exercise the property (or 50 * trials + 100 attempts).
/// Attempts may run on `threads` workers; aggregation is in attempt order,
/// so the report does not depend on the thread count.
/// Throws Error(UnknownSuite).
PropertySuiteReport run_property_suite(std::string_view name, int trials, const GenConfig& cfg, int threads = 1);

/// Re-runs the single attempt with the given seed (as recorded in a
/// violation or witness).
PropertySuiteReport replay_property_attempt(std::string_view name, std::uint64_t seed, const GenConfig& cfg);

}  // namespace stodom
