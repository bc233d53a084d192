#pragma once

#include "stodom/dominance.hpp"
#include "stodom/falsifier.hpp"
#include "stodom/filters.hpp"
#include "stodom/noise_lab.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace stodom {

struct NamedDistribution {
    std::string name;
    DiscreteDistribution dist;
};

/// {"name": ..., "atoms": [{"value": "13/4", "mass": "0.5"}, ...]}; values and
/// masses are decimal or "p/q" strings. Throws Error(ParseError) naming the
/// line or field, Error(ValidationError) when the atoms do not form a
/// distribution (the message starts with the underlying code, e.g. MassNotOne).
NamedDistribution parse_distribution(const std::string& text);
NamedDistribution load_distribution(const std::string& path);
/// Canonical form: atoms in increasing order, rationals as "p/q" (or "p").
std::string dump_distribution(const NamedDistribution& d);

struct CurvePoint {
    Rational t;
    Rational value;
};

struct CurveSample {
    int order;
    CurveKind kind;
    std::vector<CurvePoint> points;
};

/// grid_size equally spaced points over [0, 1] (quantile kinds) or
/// [min - 1, max + 1] (CDF kinds). Throws Error(InvalidArgument) for
/// grid_size < 2.
CurveSample export_curve(const DiscreteDistribution& d, CurveKind kind, int n, int grid_size);
/// "t,value" header, 12 significant digits, LF line endings.
std::string curve_csv(const CurveSample& sample);

/// Command-line entry point; JSON goes to out, usage errors to err.
/// Exit codes: 0 success with a positive answer, 1 negative or
/// inconclusive answer, 2 usage or input error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace stodom
