#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "campanato/catalog.hpp"
#include "campanato/curve_io.hpp"
#include "campanato/scenario.hpp"
#include "campanato/verify.hpp"

using namespace campanato;

TEST_CASE("format17 round-trips doubles exactly") {
    for (double v : {0.1, 1.0 / 3.0, 2.0 / std::numbers::e, 1e-17, 123456.789, -0.0}) {
        CHECK(std::stod(format17(v)) == v);
    }
}

TEST_CASE("curve csv: header, rows, and exact round trip") {
    DecayCurve c{CurveAxis::small_scale,
                 {{0.5, 1.0 / 3.0}, {0.25, 2.0 / 7.0}},
                 "test family"};
    std::string csv = curve_csv(c);
    CHECK(csv.substr(0, 16) == "parameter,value\n");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);  // header + 2 rows

    std::istringstream in(csv);
    DecayCurve back = read_curve_csv(in, CurveAxis::small_scale);
    REQUIRE(back.points.size() == c.points.size());
    for (std::size_t i = 0; i < c.points.size(); ++i) {
        CHECK(back.points[i].first == c.points[i].first);    // bitwise
        CHECK(back.points[i].second == c.points[i].second);
    }
}

TEST_CASE("curve svg: single polyline, labels, zero clamped at the floor") {
    DecayCurve c{CurveAxis::shift_distance, {{1.0, 0.5}, {2.0, 0.0}, {4.0, 0.125}}, ""};
    std::string svg = curve_svg(c);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("<polyline") != std::string::npos);
    CHECK(svg.find("shift_distance") != std::string::npos);
    CHECK(svg.find("log10 value") != std::string::npos);
    // exactly one polyline
    CHECK(svg.find("<polyline", svg.find("<polyline") + 1) == std::string::npos);
}

TEST_CASE("scenario: minimal file gets defaults; unknown keys rejected") {
    auto sc = parse_scenario(nlohmann::json{{"function", {{"name", "loglog"}}}});
    CHECK(sc.alpha == 0.0);
    CHECK(sc.resolution[0] == 4096);
    CHECK(sc.box.edge == 4.0);
    CHECK(!sc.curves.small_scales.empty());
    CHECK(sc.header().find("loglog") != std::string::npos);

    CHECK_THROWS_WITH(
        parse_scenario(nlohmann::json{{"function", {{"name", "loglog"}}}, {"bogus", 1}}),
        "unknown key 'bogus' in scenario");
    CHECK_THROWS_AS(
        parse_scenario(nlohmann::json{{"function", {{"name", "loglog"}, {"tail", 2}}}}),
        ScenarioError);
}

TEST_CASE("scenario: bad exponent rejected naming the range") {
    nlohmann::json j{{"function", {{"name", "bump"}}},
                     {"spaces", {{{"kind", "lp"}, {"p", 0.5}}}}};
    try {
        parse_scenario(j);
        FAIL("expected ScenarioError");
    } catch (const ScenarioError& e) {
        CHECK(std::string(e.what()).find("[1, inf)") != std::string::npos);
    }
}

TEST_CASE("scenario: inline samples and unresolvable scales") {
    nlohmann::json j{{"function", {{"samples", std::vector<double>(64, 1.0)}}},
                     {"resolution", 64}};
    auto sc = parse_scenario(j);
    auto f = sc.make_function();
    CHECK(f.samples(0) == 64);
    CHECK(f.at(10) == 1.0);

    nlohmann::json bad{{"function", {{"name", "bump"}}},
                       {"resolution", 64},
                       {"curves", {{"small_scales", {0.01}}}}};
    CHECK_THROWS_AS(parse_scenario(bad), ScenarioError);
}

TEST_CASE("space spec strings cover every backend") {
    Cube b{{0.0, 0.0}, 2.0, 1};
    std::array<int, 2> res{256, 1};
    CHECK(std::holds_alternative<LpSpace>(parse_space_string("l1", b, res)));
    CHECK(std::get<LpSpace>(parse_space_string("lp:1.5", b, res)).p == 1.5);
    CHECK(std::holds_alternative<LinfSpace>(parse_space_string("linf", b, res)));
    CHECK(std::holds_alternative<WeightedLpSpace>(parse_space_string("wlp:2:0.5", b, res)));
    CHECK(std::holds_alternative<VariableLpSpace>(parse_space_string("vlp:2:3", b, res)));
    CHECK(std::holds_alternative<MorreySpace>(parse_space_string("morrey:3:2", b, res)));
    CHECK(std::holds_alternative<LorentzSpace>(parse_space_string("lorentz:2:2", b, res)));
    auto hz = std::get<HerzSpace>(parse_space_string("herz:0.1:2:2", b, res));
    CHECK(hz.homogeneous);
    auto hzi = std::get<HerzSpace>(parse_space_string("herz:0.1:2:2:inhom", b, res));
    CHECK_FALSE(hzi.homogeneous);
    CHECK_THROWS_AS(parse_space_string("wat:1", b, res), ScenarioError);
    Cube b2{{0.0, 0.0}, 2.0, 2};
    CHECK(std::holds_alternative<MixedNormSpace>(parse_space_string("mixed:3:1.5", b2,
                                                                    {64, 64})));
}

TEST_CASE("determinism suite: byte-identical CSV across thread caps") {
    auto r = suite_determinism(123);
    for (const auto& c : r.checks) {
        INFO(c.name);
        CHECK(c.pass);
    }
    CHECK(!r.csv.empty());
}

#ifdef CAMPANATO_CLI_PATH
namespace {
int run_cli(const std::string& args, const std::string& log) {
    std::string cmd = std::string(CAMPANATO_CLI_PATH) + " " + args + " > " + log + " 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}
std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}
}  // namespace

TEST_CASE("cli: exit codes 0/1/2 as specified") {
    CHECK(run_cli("osc --fn loglog --alpha 0 --space l1 --cube -0.1,0.1", "/tmp/c0.log") ==
          0);
    CHECK(run_cli("verify --suite osc_values --seed 7", "/tmp/cv.log") == 0);
    // unknown flag -> usage error
    CHECK(run_cli("osc --nope 1", "/tmp/c2.log") == 2);
    // unknown command -> usage error
    CHECK(run_cli("frobnicate", "/tmp/c2b.log") == 2);
    // bad space parameter -> config error
    CHECK(run_cli("norm --fn bump --space lp:0.5 --cube -1,1", "/tmp/c2c.log") == 2);
    // computation error: cube outside the resolvable grid
    CHECK(run_cli("osc --fn bump --alpha 0 --space l1 --cube 0,0.00001", "/tmp/c1.log") ==
          1);
}

TEST_CASE("cli: decay CSV is byte-identical across runs and thread caps") {
    std::string args =
        "decay --fn loglog --alpha 0 --space l2 --mode small --box -1,1 "
        "--scales 0.5,0.25,0.125 --out ";
    CHECK(run_cli("env", "/tmp/ignore.log") >= 0);  // warm-up, ignore
    int rc1 = std::system(("CAMPANATO_THREADS=1 " CAMPANATO_CLI_PATH " " + args +
                           "/tmp/det1.csv > /dev/null 2>&1")
                              .c_str());
    int rc2 = std::system(("CAMPANATO_THREADS=7 " CAMPANATO_CLI_PATH " " + args +
                           "/tmp/det2.csv > /dev/null 2>&1")
                              .c_str());
    REQUIRE(WEXITSTATUS(rc1) == 0);
    REQUIRE(WEXITSTATUS(rc2) == 0);
    std::string a = slurp("/tmp/det1.csv"), b = slurp("/tmp/det2.csv");
    CHECK(!a.empty());
    CHECK(a == b);
}

TEST_CASE("cli: scenario round trip with fixed seed is byte-identical") {
    const char* scenario = R"({
        "function": {"name": "log_abs"},
        "alpha": 0.0,
        "box": {"edge": 2.0},
        "resolution": 1024,
        "spaces": [{"kind": "lp", "p": 2}],
        "curves": {"small_scales": [0.5, 0.25, 0.125]},
        "seed": 11
    })";
    {
        std::ofstream out("/tmp/scn.json");
        out << scenario;
    }
    int rc1 = run_cli("decay --config /tmp/scn.json --out /tmp/s1.csv", "/tmp/s1.log");
    int rc2 = run_cli("decay --config /tmp/scn.json --out /tmp/s2.csv", "/tmp/s2.log");
    REQUIRE(rc1 == 0);
    REQUIRE(rc2 == 0);
    CHECK(slurp("/tmp/s1.csv") == slurp("/tmp/s2.csv"));
    // defaults echoed in the header
    std::string log = slurp("/tmp/s1.log");
    CHECK(log.find("# thresholds:") != std::string::npos);
    CHECK(log.find("# resolution: 1024") != std::string::npos);

    {
        std::ofstream out("/tmp/bad.json");
        out << R"({"function": {"name": "bump"}, "spaces": [{"kind": "lp", "p": 0.5}]})";
    }
    CHECK(run_cli("decay --config /tmp/bad.json", "/tmp/bad.log") == 2);
    std::string badlog = slurp("/tmp/bad.log");
    CHECK(badlog.find("[1, inf)") != std::string::npos);
}
#endif
