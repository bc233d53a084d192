#include "stodom/error.hpp"
#include "stodom/io.hpp"
#include "support.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace stodom;
using namespace stodom::test;
namespace fs = std::filesystem;

namespace {

class TempDir {
public:
    TempDir() {
        root_ = fs::temp_directory_path() / ("stodom_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                             "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(root_);
    }
    ~TempDir() { fs::remove_all(root_); }
    std::string write(const std::string& name, const std::string& text) const {
        const fs::path p = root_ / name;
        std::ofstream(p) << text;
        return p.string();
    }
    std::string write(const std::string& name, const DiscreteDistribution& d) const {
        return write(name, dump_distribution({name, d}));
    }

private:
    fs::path root_;
};

struct CliResult {
    int code;
    std::string out;
    std::string err;
    nlohmann::json doc() const { return nlohmann::json::parse(out); }
};

CliResult cli(std::vector<std::string> args) {
    args.insert(args.begin(), "stodom");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST(DistributionFile, ParsesDecimalAndFractionLiterals) {
    const auto y = parse_distribution(R"({"name":"Y","atoms":[{"value":"4","mass":"0.9"},{"value":"4.1","mass":"0.1"}]})");
    EXPECT_EQ(y.name, "Y");
    EXPECT_EQ(y.dist, jump_y());
    const auto z = parse_distribution(
        R"({"name":"Y","atoms":[{"value":"1","mass":"0.2"},{"value":"13/4","mass":"0.5"},{"value":"67/12","mass":"0.3"}]})");
    EXPECT_EQ(z.dist.atoms()[1].value, Rational(13, 4));
    EXPECT_EQ(z.dist, strong_y());
}

TEST(DistributionFile, ValidationAndParseErrors) {
    try {
        (void)parse_distribution(R"({"name":"bad","atoms":[{"value":"0","mass":"0.5"},{"value":"1","mass":"0.49"}]})");
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ValidationError);
        EXPECT_EQ(std::string(e.what()).rfind("MassNotOne", 0), 0u) << e.what();
    }
    auto parse_error = [](const std::string& text) {
        try {
            (void)parse_distribution(text);
        } catch (const Error& e) {
            return e.code() == ErrorCode::ParseError ? std::string(e.what()) : std::string();
        }
        return std::string();
    };
    EXPECT_NE(parse_error("{not json"), "");
    EXPECT_NE(parse_error(R"({"name":"a"})").find("atoms"), std::string::npos);
    EXPECT_NE(parse_error(R"({"name":"a","atoms":[{"value":"x","mass":"1"}]})").find("atoms[0].value"), std::string::npos);
    EXPECT_NE(parse_error(R"({"name":"a","atoms":[{"value":"1","mass":1}]})").find("atoms[0].mass"), std::string::npos);
}

TEST(DistributionFile, RoundTripsExactly) {
    for (const auto& d : {jump_x(), jump_y(), three_y(), strong_y()}) {
        const std::string text = dump_distribution({"d", d});
        const auto back = parse_distribution(text);
        EXPECT_EQ(back.dist, d);
        EXPECT_EQ(dump_distribution(back), text);
    }
    EXPECT_NE(dump_distribution({"d", strong_y()}).find("\"67/12\""), std::string::npos);
}

TEST(DistributionFile, LoadsFromDisk) {
    TempDir dir;
    const auto path = dir.write("y.json", jump_y());
    EXPECT_EQ(load_distribution(path).dist, jump_y());
    try {
        (void)load_distribution(path + ".missing");
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ParseError);
    }
}

TEST(CurveExport, GridValues) {
    const auto s = export_curve(jump_x(), CurveKind::Quantile, 3, 5);
    ASSERT_EQ(s.points.size(), 5u);
    const Rational expected[] = {Rational(0), Rational(0), Rational(0), Rational(5, 16), Rational(5, 4)};
    for (int i = 0; i < 5; ++i) {
        EXPECT_EQ(s.points[i].t, Rational(i, 4));
        EXPECT_EQ(s.points[i].value, expected[i]);
    }
    const auto c = export_curve(DiscreteDistribution::point_mass(Rational(0)), CurveKind::CDF, 2, 3);
    ASSERT_EQ(c.points.size(), 3u);
    EXPECT_EQ(c.points[0].t, Rational(-1));
    EXPECT_EQ(c.points[2].t, Rational(1));
    EXPECT_EQ(c.points[0].value, Rational(0));
    EXPECT_EQ(c.points[1].value, Rational(0));
    EXPECT_EQ(c.points[2].value, Rational(1));
    EXPECT_EQ(export_curve(three_y(), CurveKind::Quantile, 2, 7).points.back().value, mean(three_y()));
    EXPECT_THROW((void)export_curve(three_y(), CurveKind::Quantile, 2, 1), Error);
    EXPECT_THROW((void)export_curve(three_y(), CurveKind::Quantile, 0, 4), Error);
}

TEST(CurveExport, Csv) {
    const auto csv = curve_csv(export_curve(jump_x(), CurveKind::Quantile, 3, 5));
    EXPECT_EQ(csv, "t,value\n0,0\n0.25,0\n0.5,0\n0.75,0.3125\n1,1.25\n");
    const auto thirds = curve_csv(export_curve(spread_x(), CurveKind::Quantile, 2, 4));
    EXPECT_NE(thirds.find("0.333333333333,"), std::string::npos);
}

TEST(Cli, CompareExitCodes) {
    TempDir dir;
    const auto x = dir.write("x.json", jump_x());
    const auto y = dir.write("y.json", jump_y());
    const auto r = cli({"compare", "--order", "3", "--relation", "isd", x, y});
    EXPECT_EQ(r.code, 0) << r.err;
    const auto doc = r.doc();
    EXPECT_EQ(doc["command"], "compare");
    EXPECT_EQ(doc["result"]["relation"], "LeftDominated");
    EXPECT_EQ(doc["result"]["strict"], true);
    EXPECT_TRUE(doc.contains("certificate"));
    EXPECT_TRUE(doc.contains("diagnostics"));

    const auto same = cli({"compare", "--order", "1", "--relation", "sd", x, x});
    EXPECT_EQ(same.code, 1);
    EXPECT_EQ(same.doc()["result"]["relation"], "Equivalent");

    EXPECT_EQ(cli({"compare", "--order", "3", "--relation", "isd", y, x}).code, 1);
    EXPECT_EQ(cli({"compare", "--order", "3", x}).code, 2);
    EXPECT_EQ(cli({"compare", "--order", "0", x, y}).code, 2);
    EXPECT_EQ(cli({"compare", "--relation", "lorenz", x, y}).code, 2);
    EXPECT_EQ(cli({"compare", x, dir.write("bad.json", "{")}).code, 2);
    EXPECT_EQ(cli({"frobnicate"}).code, 2);
}

TEST(Cli, StrongCompare) {
    TempDir dir;
    const auto x = dir.write("x.json", strong_x());
    const auto y = dir.write("y.json", strong_y());
    const auto r = cli({"compare", "--order", "3", "--relation", "strong-isd", x, y});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.doc()["result"]["relation"], "LeftDominated");
}

TEST(Cli, Moments) {
    TempDir dir;
    const auto x = dir.write("x.json", three_x());
    const auto r = cli({"moments", "--upto", "3", x});
    EXPECT_EQ(r.code, 0) << r.err;
    const auto res = r.doc()["result"];
    EXPECT_EQ(res["mu_1_1"], "7/2");
    EXPECT_EQ(res["mu_1_2"], "53/20");
    EXPECT_EQ(res["mu_1_3"], "83/40");
    EXPECT_EQ(res["moment_1"], "7/2");
}

TEST(Cli, TransformAsymptoteAndExport) {
    TempDir dir;
    const auto x = dir.write("x.json", jump_x());
    const auto t = cli({"transform", "--kind", "quantile", "--order", "3", x});
    EXPECT_EQ(t.code, 0) << t.err;
    const auto pieces = t.doc()["result"]["curve"]["pieces"];
    ASSERT_EQ(pieces.size(), 2u);
    EXPECT_EQ(pieces[1]["coefficients"], nlohmann::json::array({"5/4", "-5", "5"}));
    const auto a = cli({"asymptote", "--order", "2", x});
    EXPECT_EQ(a.code, 0) << a.err;
    const auto csv_path = (fs::path(x).parent_path() / "curve.csv").string();
    const auto e = cli({"export-curve", "--kind", "quantile", "--order", "3", "--grid", "5", "--csv", csv_path, x});
    EXPECT_EQ(e.code, 0) << e.err;
    EXPECT_EQ(e.doc()["result"]["points"][3]["exact_value"], "5/16");
    std::ifstream in(csv_path);
    std::stringstream body;
    body << in.rdbuf();
    EXPECT_EQ(body.str(), "t,value\n0,0\n0.25,0\n0.5,0\n0.75,0.3125\n1,1.25\n");
}

TEST(Cli, FilterNoiseAndFalsify) {
    TempDir dir;
    const auto x = dir.write("x.json", jump_x());
    const auto y = dir.write("y.json", jump_y());
    EXPECT_EQ(cli({"filter", "--relation", "sd", "--order", "2", x, y}).code, 0);
    EXPECT_EQ(cli({"filter", "--relation", "isd", "--order", "3", x, x}).code, 1);
    const auto centre = dir.write("c.json", DiscreteDistribution::point_mass(Rational(2)));
    const auto spread = dir.write("s.json", spread_x());
    const auto n = cli({"noise-search", "--order", "2", centre, spread});
    EXPECT_EQ(n.code, 0) << n.err;
    EXPECT_EQ(n.doc()["result"]["status"], "Found");
    const auto obstructed = dir.write("p.json", DiscreteDistribution::point_mass(R("4.9")));
    const auto nf = cli({"noise-search", "--order", "1", x, obstructed});
    EXPECT_EQ(nf.code, 1);
    EXPECT_EQ(nf.doc()["result"]["status"], "NotFound");
    const auto f = cli({"falsify", "--suite", "low-order-equivalence", "--trials", "10", "--seed", "3"});
    EXPECT_EQ(f.code, 0) << f.err;
    EXPECT_EQ(cli({"falsify", "--suite", "nope", "--trials", "1"}).code, 2);
}

TEST(Cli, OutputIsDeterministic) {
    TempDir dir;
    const auto x = dir.write("x.json", three_x());
    const auto y = dir.write("y.json", three_y());
    const std::vector<std::string> args{"compare", "--order", "4", "--relation", "isd", x, y};
    EXPECT_EQ(cli(args).out, cli(args).out);
    const std::vector<std::string> f{"falsify", "--suite", "separation", "--trials", "20", "--seed", "5"};
    EXPECT_EQ(cli(f).out, cli(f).out);
}
