#include "stodom/io.hpp"

#include "stodom/error.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <sstream>

namespace stodom {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Distribution files

namespace {

Rational field_rational(const Json& atom, const char* key, std::size_t index) {
    const std::string where = "atoms[" + std::to_string(index) + "]." + key;
    if (!atom.contains(key)) throw Error(ErrorCode::ParseError, "missing field " + where);
    const Json& v = atom.at(key);
    if (!v.is_string()) throw Error(ErrorCode::ParseError, where + " must be a string literal");
    try {
        return Rational::parse(v.get<std::string>());
    } catch (const Error& e) {
        throw Error(ErrorCode::ParseError, where + ": " + e.what());
    }
}

}  // namespace

NamedDistribution parse_distribution(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
    if (!doc.is_object()) throw Error(ErrorCode::ParseError, "top level must be an object");
    NamedDistribution out;
    if (doc.contains("name")) {
        if (!doc["name"].is_string()) throw Error(ErrorCode::ParseError, "field name must be a string");
        out.name = doc["name"].get<std::string>();
    }
    if (!doc.contains("atoms") || !doc["atoms"].is_array()) {
        throw Error(ErrorCode::ParseError, "field atoms must be an array");
    }
    std::vector<std::pair<Rational, Rational>> raw;
    std::size_t i = 0;
    for (const Json& atom : doc["atoms"]) {
        if (!atom.is_object()) throw Error(ErrorCode::ParseError, "atoms[" + std::to_string(i) + "] must be an object");
        raw.emplace_back(field_rational(atom, "value", i), field_rational(atom, "mass", i));
        ++i;
    }
    try {
        out.dist = dist_validate(std::move(raw));
    } catch (const Error& e) {
        throw Error(ErrorCode::ValidationError, std::string(to_string(e.code())) + ": " + e.what());
    }
    return out;
}

NamedDistribution load_distribution(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_distribution(buf.str());
    } catch (const Error& e) {
        throw Error(e.code(), path + ": " + e.what());
    }
}

namespace {

Json atoms_json(const DiscreteDistribution& d) {
    Json atoms = Json::array();
    for (const auto& a : d.atoms()) atoms.push_back({{"value", a.value.str()}, {"mass", a.mass.str()}});
    return atoms;
}

Json distribution_json(const NamedDistribution& d) { return {{"name", d.name}, {"atoms", atoms_json(d.dist)}}; }

}  // namespace

std::string dump_distribution(const NamedDistribution& d) { return distribution_json(d).dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Curve export

CurveSample export_curve(const DiscreteDistribution& d, CurveKind kind, int n, int grid_size) {
    check_order(n);
    if (grid_size < 2) throw Error(ErrorCode::InvalidArgument, "grid size must be at least 2");
    const IntegratedCurve c = integrated_curve(d, kind, n);
    const bool unit = kind == CurveKind::Quantile || kind == CurveKind::UpperQuantile;
    const Rational lo = unit ? Rational(0) : d.min_value() - Rational(1);
    const Rational hi = unit ? Rational(1) : d.max_value() + Rational(1);
    CurveSample s{n, kind, {}};
    for (int i = 0; i < grid_size; ++i) {
        const Rational t = lo + (hi - lo) * Rational(i, grid_size - 1);
        s.points.push_back({t, c.curve.eval(t)});
    }
    return s;
}

std::string curve_csv(const CurveSample& sample) {
    std::string out = "t,value\n";
    for (const auto& p : sample.points) out += p.t.decimal(12) + "," + p.value.decimal(12) + "\n";
    return out;
}

// ---------------------------------------------------------------------------
// Report pieces

namespace {

Json optional_rational(const std::optional<Rational>& r) { return r ? Json(r->str()) : Json(nullptr); }

Json rationals(const std::vector<Rational>& v) {
    Json a = Json::array();
    for (const auto& r : v) a.push_back(r.str());
    return a;
}

Json polynomial_json(const Polynomial& p) {
    Json c = Json::array();
    for (int i = 0; i <= p.degree(); ++i) c.push_back(p.coefficient(static_cast<unsigned>(i)).str());
    return c;
}

Json piecewise_json(const PiecewisePolynomial& f) {
    Json pieces = Json::array();
    for (const auto& p : f.pieces()) {
        pieces.push_back({{"lower", p.lower.str()},
                          {"upper", p.upper.str()},
                          {"coefficients", polynomial_json(p.poly)},
                          {"polynomial", p.poly.str("t")}});
    }
    return {{"continuity_class", f.continuity_class()},
            {"closure", f.closure() == Closure::LeftClosed ? "left-closed" : "right-closed"},
            {"pieces", pieces}};
}

Json witness_json(const std::optional<Witness>& w) {
    if (!w) return nullptr;
    return {{"point", w->point.str()}, {"gap", w->gap.str()}};
}

Json sign_json(const SignReport& r) {
    return {{"holds", r.nonnegative()},
            {"witness", optional_rational(r.witness)},
            {"witness_value", optional_rational(r.witness_value)},
            {"touch_points", rationals(r.touch_points)}};
}

Json verdict_json(const Verdict& v) {
    return {{"kind", std::string(to_string(v.kind))},
            {"order", v.order},
            {"relation", std::string(to_string(v.relation))},
            {"strict", v.strict},
            {"witness_left", witness_json(v.witness_left)},
            {"witness_right", witness_json(v.witness_right)}};
}

Json certificate_json(const Verdict& v) {
    Json pieces = Json::array();
    for (const auto& c : v.certificate) {
        pieces.push_back({{"lower", c.lower.str()},
                          {"upper", c.upper.str()},
                          {"difference", polynomial_json(c.difference)},
                          {"nonnegative", sign_json(c.nonnegative)},
                          {"nonpositive", sign_json(c.nonpositive)}});
    }
    return {{"difference", piecewise_json(v.difference)}, {"pieces", pieces}};
}

Json filter_json(const FilterReport& r) {
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        checks.push_back({{"name", c.name},
                          {"target", std::string(to_string(c.target))},
                          {"quantity_left", c.quantity_left.str()},
                          {"quantity_right", c.quantity_right.str()},
                          {"required_relation", c.required_relation},
                          {"satisfied", c.satisfied}});
    }
    return {{"outcome", std::string(to_string(r.outcome))}, {"checks", checks}, {"notes", r.notes}};
}

Json budget_json(const SearchBudget& b) {
    return {{"k_max", b.k_max},
            {"widening_steps", b.widening_steps},
            {"max_smoothing", b.max_smoothing},
            {"support_cap", b.support_cap},
            {"step", optional_rational(b.step)}};
}

Json noise_json(const NoiseSearchReport& r) {
    return {{"status", std::string(to_string(r.status))},
            {"gamma", r.gamma.str()},
            {"candidates_tried", r.candidates_tried},
            {"z", r.z ? atoms_json(*r.z) : Json(nullptr)},
            {"verdict", r.verdict ? verdict_json(*r.verdict) : Json(nullptr)},
            {"budget", budget_json(r.budget)}};
}

Json suite_json(const PropertySuiteReport& r) {
    Json violations = Json::array();
    for (const auto& v : r.violations) {
        violations.push_back({{"seed", v.seed},
                              {"order", v.order},
                              {"property", v.property},
                              {"details", v.details},
                              {"x", atoms_json(v.x)},
                              {"y", atoms_json(v.y)}});
    }
    Json witnesses = Json::array();
    for (const auto& w : r.witnesses) {
        witnesses.push_back(
            {{"seed", w.seed}, {"order", w.order}, {"note", w.note}, {"x", atoms_json(w.x)}, {"y", atoms_json(w.y)}});
    }
    Json counters = Json::object();
    for (const auto& [k, c] : r.counters) counters[k] = c;
    return {{"suite", r.suite_name},
            {"trials", r.trials},
            {"attempts", r.attempts},
            {"passed", r.passed()},
            {"violations", violations},
            {"witnesses", witnesses},
            {"counters", counters}};
}

Json curve_json(const CurveSample& s) {
    Json points = Json::array();
    for (const auto& p : s.points) {
        points.push_back({{"t", p.t.decimal(12)}, {"value", p.value.decimal(12)}, {"exact_value", p.value.str()}});
    }
    return {{"order", s.order}, {"kind", std::string(to_string(s.kind))}, {"points", points}};
}

// ---------------------------------------------------------------------------
// Commands

struct Report {
    std::string command;
    Json inputs = Json::object();
    Json result = Json::object();
    std::optional<Json> certificate;
    Json diagnostics = Json::array();

    Json doc() const {
        Json d = {{"command", command}, {"inputs", inputs}, {"result", result}};
        if (certificate) d["certificate"] = *certificate;
        d["diagnostics"] = diagnostics;
        return d;
    }
};

Json input_entry(const std::string& path, const NamedDistribution& d) {
    return {{"path", path}, {"name", d.name}, {"atoms", atoms_json(d.dist)}};
}

struct Options {
    std::vector<std::string> files;
    std::string relation = "sd";
    std::string kind = "cdf";
    std::string suite;
    std::string csv_path;
    std::optional<std::string> step;
    int order = 1;
    int upto = 3;
    int grid = 11;
    int trials = 100;
    int threads = 1;
    std::uint64_t seed = 0;
    int support_max = 5;
    long denominator_cap = 10;
    SearchBudget budget;
};

int cmd_compare(const Options& o, Report& r) {
    const auto x = load_distribution(o.files[0]);
    const auto y = load_distribution(o.files[1]);
    r.inputs = {{"x", input_entry(o.files[0], x)}, {"y", input_entry(o.files[1], y)},
                {"relation", o.relation}, {"order", o.order}};
    Verdict v;
    Json extra = Json::object();
    if (o.relation == "sd") {
        v = sd_compare(x.dist, y.dist, o.order);
    } else if (o.relation == "isd") {
        v = isd_compare(x.dist, y.dist, o.order);
    } else {
        const StrongVerdict s = strong_isd_compare(x.dist, y.dist, o.order);
        v = s.verdict;
        Json eq = Json::array();
        for (const auto& e : s.equalities) {
            eq.push_back({{"k", e.k}, {"mu_x", e.left.str()}, {"mu_y", e.right.str()}, {"equal", e.equal}});
        }
        extra["isd_relation"] = std::string(to_string(s.isd.relation));
        extra["orderstat_equalities"] = eq;
        if (s.failed_equality) r.diagnostics.push_back("mu_1_" + std::to_string(*s.failed_equality) + " differs");
    }
    r.result = verdict_json(v);
    for (const auto& [k, val] : extra.items()) r.result[k] = val;
    r.certificate = certificate_json(v);
    return v.relation == Relation::LeftDominated ? 0 : 1;
}

int cmd_moments(const Options& o, Report& r) {
    const auto d = load_distribution(o.files[0]);
    r.inputs = {{"x", input_entry(o.files[0], d)}, {"upto", o.upto}};
    if (o.upto < 1) throw Error(ErrorCode::InvalidArgument, "--upto must be at least 1");
    for (int k = 1; k <= o.upto; ++k) r.result["moment_" + std::to_string(k)] = raw_moment(d.dist, static_cast<unsigned>(k)).str();
    for (int k = 1; k <= o.upto; ++k) {
        r.result["mu_1_" + std::to_string(k)] = min_orderstat_mean(d.dist, static_cast<unsigned>(k)).str();
    }
    r.result["variance"] = variance(d.dist).str();
    return 0;
}

int cmd_transform(const Options& o, Report& r) {
    const auto d = load_distribution(o.files[0]);
    const CurveKind kind = parse_curve_kind(o.kind);
    r.inputs = {{"x", input_entry(o.files[0], d)}, {"kind", o.kind}, {"order", o.order}};
    const IntegratedCurve c = integrated_curve(d.dist, kind, o.order);
    r.result = {{"kind", std::string(to_string(kind))}, {"order", o.order}, {"curve", piecewise_json(c.curve)}};
    return 0;
}

int cmd_asymptote(const Options& o, Report& r) {
    const auto d = load_distribution(o.files[0]);
    r.inputs = {{"x", input_entry(o.files[0], d)}, {"order", o.order}};
    const AsymptotePoly a = asymptote(d.dist, o.order);
    r.result = {{"order", a.order},
                {"side", a.side == AsymptoteSide::LowerEven ? "lower" : "upper"},
                {"coefficients", polynomial_json(a.poly)},
                {"polynomial", a.poly.str("x")},
                {"valid_from", d.dist.max_value().str()}};
    return 0;
}

int cmd_filter(const Options& o, Report& r) {
    const auto x = load_distribution(o.files[0]);
    const auto y = load_distribution(o.files[1]);
    r.inputs = {{"x", input_entry(o.files[0], x)}, {"y", input_entry(o.files[1], y)},
                {"relation", o.relation}, {"order", o.order}};
    const FilterReport f =
        o.relation == "sd" ? sd_moment_filter(x.dist, y.dist, o.order) : isd_orderstat_filter(x.dist, y.dist, o.order);
    r.result = filter_json(f);
    return f.outcome == FilterOutcome::Inconclusive ? 1 : 0;
}

int cmd_noise(const Options& o, Report& r) {
    const auto x = load_distribution(o.files[0]);
    const auto y = load_distribution(o.files[1]);
    SearchBudget b = o.budget;
    if (o.step) b.step = Rational::parse(*o.step);
    r.inputs = {{"x", input_entry(o.files[0], x)}, {"y", input_entry(o.files[1], y)}, {"order", o.order},
                {"budget", budget_json(b)}};
    const NoiseSearchReport n = noise_search(x.dist, y.dist, o.order, b);
    r.result = noise_json(n);
    for (const auto& d : n.diagnostics) r.diagnostics.push_back(d);
    if (n.verdict) r.certificate = certificate_json(*n.verdict);
    return n.status == NoiseStatus::Found ? 0 : 1;
}

int cmd_falsify(const Options& o, Report& r) {
    GenConfig cfg;
    cfg.seed = o.seed;
    cfg.support_max = o.support_max;
    cfg.denominator_cap = o.denominator_cap;
    r.inputs = {{"suite", o.suite},     {"trials", o.trials},
                {"seed", o.seed},       {"support_max", o.support_max},
                {"denominator_cap", o.denominator_cap}};
    const PropertySuiteReport s = run_property_suite(o.suite, o.trials, cfg, o.threads);
    r.result = suite_json(s);
    return s.passed() ? 0 : 1;
}

int cmd_export(const Options& o, Report& r) {
    const auto d = load_distribution(o.files[0]);
    const CurveKind kind = parse_curve_kind(o.kind);
    r.inputs = {{"x", input_entry(o.files[0], d)}, {"kind", o.kind}, {"order", o.order}, {"grid", o.grid}};
    const CurveSample s = export_curve(d.dist, kind, o.order, o.grid);
    r.result = curve_json(s);
    if (!o.csv_path.empty()) {
        std::ofstream csv(o.csv_path, std::ios::binary);
        if (!csv) throw Error(ErrorCode::InvalidArgument, "cannot write " + o.csv_path);
        csv << curve_csv(s);
        r.result["csv"] = o.csv_path;
    }
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact stochastic dominance checks for finitely supported distributions", "stodom"};
    app.require_subcommand(1);
    Options o;

    auto* compare = app.add_subcommand("compare", "Decide X <= Y in n-SD, n-ISD or strong n-ISD");
    compare->add_option("--relation", o.relation)->check(CLI::IsMember({"sd", "isd", "strong-isd"}));
    compare->add_option("--order", o.order);
    compare->add_option("files", o.files, "X and Y distribution files")->required()->expected(2);

    auto* moments = app.add_subcommand("moments", "Raw moments and mu_{1:k}");
    moments->add_option("--upto", o.upto);
    moments->add_option("x", o.files)->required()->expected(1);

    auto* transform = app.add_subcommand("transform", "Exact piecewise form of an integrated curve");
    transform->add_option("--kind", o.kind)->check(CLI::IsMember({"cdf", "survival", "quantile", "upper-quantile"}));
    transform->add_option("--order", o.order);
    transform->add_option("x", o.files)->required()->expected(1);

    auto* asym = app.add_subcommand("asymptote", "Polynomial matching F^[n] beyond the support");
    asym->add_option("--order", o.order);
    asym->add_option("x", o.files)->required()->expected(1);

    auto* filter = app.add_subcommand("filter", "Moment / order-statistic prefilters only");
    filter->add_option("--relation", o.relation)->check(CLI::IsMember({"sd", "isd"}));
    filter->add_option("--order", o.order);
    filter->add_option("files", o.files, "X and Y distribution files")->required()->expected(2);

    auto* noise = app.add_subcommand("noise-search", "Look for Z with X+Z >_n Y+Z");
    noise->add_option("--order", o.order);
    noise->add_option("--k-max", o.budget.k_max);
    noise->add_option("--widening", o.budget.widening_steps);
    noise->add_option("--smoothing", o.budget.max_smoothing);
    noise->add_option("--support-cap", o.budget.support_cap);
    noise->add_option("--step", o.step, "lattice step (default 1 / lcm of denominators)");
    noise->add_option("files", o.files, "X and Y distribution files")->required()->expected(2);

    auto* falsify = app.add_subcommand("falsify", "Run a randomized property suite");
    falsify->add_option("--suite", o.suite)->required();
    falsify->add_option("--trials", o.trials);
    falsify->add_option("--seed", o.seed);
    falsify->add_option("--threads", o.threads);
    falsify->add_option("--support-max", o.support_max);
    falsify->add_option("--denominator-cap", o.denominator_cap);

    auto* exp = app.add_subcommand("export-curve", "Sample an integrated curve on a grid");
    exp->add_option("--kind", o.kind)->check(CLI::IsMember({"cdf", "survival", "quantile", "upper-quantile"}));
    exp->add_option("--order", o.order);
    exp->add_option("--grid", o.grid);
    exp->add_option("--csv", o.csv_path, "also write t,value CSV to this path");
    exp->add_option("x", o.files)->required()->expected(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "stodom: " << e.what() << "\n" << app.help();
        return 2;
    }

    Report r;
    int code = 2;
    try {
        if (compare->parsed()) r.command = "compare", code = cmd_compare(o, r);
        else if (moments->parsed()) r.command = "moments", code = cmd_moments(o, r);
        else if (transform->parsed()) r.command = "transform", code = cmd_transform(o, r);
        else if (asym->parsed()) r.command = "asymptote", code = cmd_asymptote(o, r);
        else if (filter->parsed()) r.command = "filter", code = cmd_filter(o, r);
        else if (noise->parsed()) r.command = "noise-search", code = cmd_noise(o, r);
        else if (falsify->parsed()) r.command = "falsify", code = cmd_falsify(o, r);
        else if (exp->parsed()) r.command = "export-curve", code = cmd_export(o, r);
    } catch (const Error& e) {
        err << "stodom: " << to_string(e.code()) << ": " << e.what() << "\n";
        return 2;
    }
    out << r.doc().dump(2) << "\n";
    return code;
}

}  // namespace stodom
