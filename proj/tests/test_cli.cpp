#include "doctest.h"

#include "cli.hpp"
#include "tensorcalc/connection.hpp"
#include "tensorcalc/field_ops.hpp"
#include "tensorcalc/system_file.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace tcalc;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& body) {
    auto p = std::filesystem::temp_directory_path() / ("tcalc_test_" + name);
    std::ofstream(p) << body;
    return p.string();
}

const char* kPolar = R"(# plane polar coordinates
name = polar
dimension = 2
coordinates = r t
metric.1.1 = 1
metric.2.2 = r^2   # g_tt
domain.r = 0.5 2
domain.t = 0.1 pi/2
)";

}  // namespace

TEST_CASE("definition file with metric entries") {
    SystemDefinition d = parse_system_definition(kPolar);
    CHECK(d.name == "polar");
    CHECK(d.dimension == 2);
    CHECK(d.metric.has_value());
    CHECK_FALSE(d.map.has_value());
    CHECK(d.domain[1].hi == doctest::Approx(std::numbers::pi / 2));
    Metric g = build_system(d);
    CHECK(render(christoffel_second(g).at({1, 2, 2})) == "-r");
}

TEST_CASE("definition file with a map") {
    Metric g = build_system(parse_system_definition("dimension = 2\ncoordinates = r t\nmap.1 = r*cos(t)\nmap.2 = r*sin(t)\n"
                                                    "domain.r = 0.5 2\ndomain.t = 0.1 3\n"));
    CHECK(g.oracle().equal(g.g(2, 2), parse("r^2")));
    CHECK(g.g(1, 2).is_zero());
}

TEST_CASE("malformed definitions") {
    auto bad = [](const std::string& text, int line) {
        try {
            (void)parse_system_definition(text);
            FAIL("accepted: " << text);
        } catch (const DefinitionError& e) {
            CHECK_MESSAGE(e.line() == line, e.what());
        }
    };
    bad("dimension = 2\ncoordinates = a\n", 2);
    bad("dimension = 1\ncoordinates = a\nmetric.1.1 = 1 +\ndomain.a = 0 1\n", 3);
    bad("dimension = 1\ncoordinates = a\nmetric.1.1 = b\ndomain.a = 0 1\n", 3);
    bad("dimension = 1\ncoordinates = a\nmetric.1.2 = 1\ndomain.a = 0 1\n", 3);
    bad("dimension = 1\ncoordinates = a\nmetric.1.1 = 1\ndomain.a = 1 0\n", 4);
    bad("dimension = 1\ncoordinates = a\nmetric.1.1 = 1\nsomething\n", 4);
    bad("dimension = 1\ncoordinates = a\nmetric.1.1 = 1\ncolour = red\ndomain.a = 0 1\n", 4);
    bad("dimension = 1\ncoordinates = a\nmetric.1.1 = 1\n", 0);
    bad("dimension = 1\ncoordinates = a\nmetric.1.1 = 1\nmap.1 = a\ndomain.a = 0 1\n", 0);
    bad("dimension = 2\ncoordinates = a b\nmetric.1.2 = 1\nmetric.2.1 = 2\ndomain.a = 0 1\ndomain.b = 0 1\n", 4);
    CHECK_THROWS_AS((void)load_system("builtin:klein_bottle"), std::exception);
    CHECK_THROWS_AS((void)load_system("polar"), DefinitionError);
}

TEST_CASE("curve definition") {
    Metric cyl = builtin_system("cylindrical");
    Curve c = parse_curve_definition("parameter = s\ninterval = 0 2*pi\ncurve.rho = 3/2\ncurve.phi = s\ncurve.z = 0\n", cyl);
    CHECK(c.param == "s");
    CHECK(std::abs(curve_length(c, cyl) - 3 * std::numbers::pi) < 1e-6);
    CHECK_THROWS_AS((void)parse_curve_definition("interval = 0 1\ncurve.rho = 1\ncurve.phi = t\n", cyl), DefinitionError);
    CHECK_THROWS_AS((void)parse_curve_definition("interval = 0 1\ncurve.rho = x\ncurve.phi = t\ncurve.z = 0\n", cyl), DefinitionError);
}

TEST_CASE("christoffel output") {
    Run r = invoke({"christoffel", "--system", "builtin:cylindrical", "--kind", "2"});
    CHECK(r.code == 0);
    CHECK(r.out.find("# system: cylindrical\n") == 0);
    CHECK(r.out.find("Gamma[1,2,2] = -rho\n") != std::string::npos);
    CHECK(r.out.find("Gamma[2,1,2] = 1/rho\n") != std::string::npos);
    r = invoke({"christoffel", "--system", "builtin:cylindrical", "--kind", "1"});
    CHECK(r.out.find("Gamma1[2,2,1] = -rho\n") != std::string::npos);
    CHECK(r.out.find("Gamma1[1,2,2] = rho\n") != std::string::npos);
}

TEST_CASE("flat riemann and exit codes") {
    Run r = invoke({"riemann", "--system", "builtin:cartesian"});
    CHECK(r.code == 0);
    CHECK(r.out.find("all components are zero") != std::string::npos);
    CHECK(invoke({"riemann", "--system", "builtin:nowhere"}).code == 2);
    CHECK(invoke({"frobnicate"}).code == 2);
    CHECK(invoke({"grad", "--field", "f=x^"}).code == 2);
    CHECK(invoke({"grad", "--field", "f=w"}).code == 2);
    CHECK(invoke({"div", "--field", "A=x,y"}).code == 2);
    CHECK(invoke({"christoffel", "--kind", "3"}).code == 2);
    CHECK(invoke({"verify", "--suite", "everything"}).code == 2);
    CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("json output round-trips to the component table") {
    Metric g = builtin_system("spherical");
    Run r = invoke({"christoffel", "--system", "builtin:spherical", "--format", "json"});
    REQUIRE(r.code == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["system"] == "spherical");
    CHECK(doc["signature"] == "udd");
    CHECK(doc["zeros_omitted"] == true);
    TensorField want = christoffel_second(g);
    TensorField got("Gamma", want.signature(), 3);
    for (const auto& c : doc["components"]) {
        Index x = c["index"].get<Index>();
        got.at(x) = normalize(parse(c["expr"].get<std::string>()));
    }
    for (std::size_t k = 0; k < want.size(); ++k) CHECK(normalize(got.flat(k) - want.flat(k)).is_zero());
}

TEST_CASE("operators through the cli") {
    Run r = invoke({"div", "--system", "builtin:spherical", "--field", "A=r,0,0"});
    CHECK(r.out.find("div A = 3\n") != std::string::npos);
    r = invoke({"laplacian", "--system", "builtin:spherical", "--field", "f=r^2"});
    CHECK(r.out.find("lap f = 6\n") != std::string::npos);
    r = invoke({"grad", "--system", "builtin:spherical", "--field", "f=r^2*sin(theta)", "--physical"});
    CHECK(r.out.find("grad f[theta] = r*cos(theta)\n") != std::string::npos);
    r = invoke({"curl", "--system", "builtin:cylindrical", "--field", "A=0,1,0", "--variance", "up"});
    CHECK(r.out.find("# notice:") != std::string::npos);
    CHECK(r.out.find("curl A[3] = 2\n") != std::string::npos);
    CHECK(invoke({"curl", "--system", "builtin:two_sphere", "--field", "A=0,1"}).code == 2);
    CHECK(invoke({"grad", "--system", "builtin:minkowski", "--field", "f=u0", "--physical"}).code == 2);
}

TEST_CASE("length and file systems through the cli") {
    std::string sys = temp_file("polar.sys", kPolar);
    std::string curve = temp_file("arc.curve", "interval = 0 1\ncurve.r = 1\ncurve.t = t\n");
    Run r = invoke({"length", "--system", "file:" + sys, "--curve", curve});
    CHECK(r.code == 0);
    CHECK(r.out.find("# system: polar\n") == 0);
    CHECK(r.out.find("length = 1\n") != std::string::npos);
    std::string broken = temp_file("broken.sys", "dimension = 2\ncoordinates = r t\nmetric.1.1 = (\n");
    r = invoke({"show-metric", "--system", "file:" + broken});
    CHECK(r.code == 2);
    CHECK(r.err.find("line 3") != std::string::npos);
}

TEST_CASE("continuum through the cli") {
    Run r = invoke({"continuum", "strain", "--field", "d=y,0,0"});
    CHECK(r.out.find("gamma[1,2] = 1/2\n") != std::string::npos);
    r = invoke({"continuum", "finger", "--map", "X + 0.7*Y,Y,Z"});
    CHECK(r.out.find("B[1,1] = 149/100\n") != std::string::npos);
    r = invoke({"continuum", "cauchy", "--map", "X + 0.7*Y,Y,Z", "--inverse", "x - 0.7*y,y,z"});
    CHECK(r.out.find("Binv[2,2] = 149/100\n") != std::string::npos);
    r = invoke({"continuum", "traction", "--sigma", "0,tau,0,tau,0,0,0,0,0", "--normal", "0,1,0"});
    CHECK(r.code == 2);  // tau is not a Cartesian coordinate
    r = invoke({"continuum", "traction", "--sigma", "0,x,0,x,0,0,0,0,0", "--normal", "0,1,0"});
    CHECK(r.out.find("T[1] = x\n") != std::string::npos);
    r = invoke({"continuum", "decompose", "--field", "v=-y,x,0"});
    CHECK(r.out.find("Sbar[1,2] = 1\n") != std::string::npos);
    CHECK(r.out.find("# S: all components are zero\n") != std::string::npos);
    CHECK(invoke({"continuum", "finger", "--map", "X+Y,X+Y,Z"}).code == 2);
}

TEST_CASE("verify is deterministic") {
    Run a = invoke({"verify", "--suite", "all", "--seed", "7"});
    Run b = invoke({"verify", "--suite", "all", "--seed", "7"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    Run s = invoke({"verify", "--suite", "all", "--system", "builtin:spherical"});
    CHECK(s.code == 0);
    Run j = invoke({"verify", "--suite", "bianchi", "--system", "builtin:two_sphere", "--format", "json"});
    std::istringstream lines(j.out);
    int n = 0;
    for (std::string line; std::getline(lines, line); ++n) CHECK(nlohmann::json::accept(line));
    CHECK(n > 2);
}
