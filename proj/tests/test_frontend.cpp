#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include <conslaw/cli.hpp>
#include <conslaw/errors.hpp>
#include <conslaw/examples.hpp>
#include <conslaw/render.hpp>
#include <conslaw/syntax.hpp>

#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace conslaw;
using fixtures::G;

namespace
{

struct run_result {
    int code;
    std::string out;
    std::string err;
};

run_result run(const std::vector<std::string> &args)
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_command(args, out, err);
    return {code, out.str(), err.str()};
}

const std::string gkdv_path = std::string(CONSLAW_SOURCE_DIR) + "/systems/gkdv.toml";

const char *minimal = R"(
[system]
independents = ["t", "x"]
fields = ["u"]

[equations]
F = "u[t] - u[x,x]"
)";

} // namespace

TEST_CASE("parse_expression")
{
    CHECK(normalize(parse_expression("u[t] + g*u^p*u[x] + u[x,x,x]"), fixtures::gsig())
          == fixtures::gkdv().equation("F"));
    CHECK(G("t*(3*u[x,x] + g*u^3) - x*u") == fixtures::doc("gkdv").get_multiplier("q5").at("F"));

    const raw_node call = parse_expression("V'(g2*phi)");
    CHECK(call.type == raw_node::kind::call);
    CHECK(call.name == "V");
    CHECK(call.primes == 1);
    REQUIRE(call.children.size() == 1);
    CHECK(call.children[0].type == raw_node::kind::mul);

    const signature &ks = fixtures::doc("kg-potential").system.sig;
    const expr e = normalize(call, ks);
    REQUIRE(e.terms().size() == 1);
    const atom &a = e.terms()[0].mono[0].base;
    CHECK(a.kind() == atom_kind::function);
    CHECK(a.name() == "V");
    CHECK(a.derivative_order() == 1);
    CHECK(a.argument() == parse(ks, "g2*phi"));
    CHECK(parse_expression("u[x, t]").directions == std::vector<std::string>{"t", "x"});
}

TEST_CASE("registry documents load")
{
    const system_document &g = fixtures::doc("gkdv");
    CHECK(g.multipliers.size() == 5);
    CHECK(g.currents.size() == 5);
    CHECK(g.characteristics.size() == 2);
    CHECK(g.pairs.size() == 5);
    CHECK(g.valid_at.at("q5").at("p") == 2);
    const system_document fromfile = load_system_document(gkdv_path);
    CHECK(fromfile.system.equation("F") == g.system.equation("F"));
    CHECK(registry_names().size() == 6);
    CHECK_THROWS_AS((void)resolve_document("no-such-system"), error);
}

TEST_CASE("schema errors")
{
    CHECK_NOTHROW((void)parse_system_document(minimal));

    const std::string loop = std::string(minimal) + "\n[solved]\n\"u[x]\" = \"u[x,x]\"\n";
    CHECK_THROWS_AS((void)parse_system_document(loop), non_terminating_rule_error);

    const std::string undeclared = std::string(minimal) + "\n[multipliers]\nq = { F = \"w\" }\n";
    CHECK_THROWS_AS((void)parse_system_document(undeclared), unknown_identifier_error);

    const std::string bad_current = std::string(minimal) + "\n[currents]\nJ = [\"u\"]\n";
    try {
        (void)parse_system_document(bad_current);
        FAIL("expected a schema error");
    } catch (const schema_error &e) {
        CHECK(std::string(e.what()).find("currents.J") != std::string::npos);
    }

    const std::string bad_label = std::string(minimal) + "\n[multipliers]\nq = { G = \"1\" }\n";
    CHECK_THROWS_AS((void)parse_system_document(bad_label), error);
    CHECK_THROWS_AS((void)parse_system_document("[system\nx = 1"), schema_error);
    const std::string zero_den = std::string(minimal) + "\n[valid_at]\nF = { a = \"1/0\" }\n";
    CHECK_THROWS_AS((void)parse_system_document(zero_den), schema_error);
    CHECK_THROWS_AS((void)parse_system_document("[equations]\nF = \"u\"\n"), schema_error);

    const std::string dup = std::string(R"(
[system]
independents = ["t", "x"]
fields = ["u", "t"]
[equations]
F = "u[t]"
)");
    CHECK_THROWS_AS((void)parse_system_document(dup), name_collision_error);
}

TEST_CASE("specialize documents")
{
    const system_document d = specialize(fixtures::doc("gkdv"), {{"p", 2}});
    CHECK(d.system.equation("F") == parse(d.system.sig, "u[t] + g*u^2*u[x] + u[x,x,x]"));
    CHECK_THROWS_AS((void)specialize(fixtures::doc("gkdv"), {{"p", -1}}), error);
}

TEST_CASE("rendering round-trips")
{
    std::mt19937 rng(oracle::seed + 50);
    for (const auto &name : registry_names()) {
        const system_document &doc = fixtures::doc(name);
        const signature &s = doc.system.sig;
        for (const auto &[label, F] : doc.system.equations) {
            CHECK(parse(s, F.to_string()) == F);
        }
        for (const auto &[n, J] : doc.currents) {
            for (const auto &c : J) {
                CHECK(parse(s, c.to_string()) == c);
            }
        }
        for (int i = 0; i < 20; ++i) {
            const expr e = oracle::random_expr(rng, s);
            CHECK(parse(s, e.to_string()) == e);
        }
    }
    const auto lines = render_current(fixtures::gsig(), fixtures::doc("gkdv").get_current("J1"));
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "t: u");
}

TEST_CASE("json reports round-trip")
{
    report r;
    r.command = "verify-pair";
    r.add(zero_check("zero", expr()));
    r.add(zero_check("nonzero", std::vector<expr>{G("u^2 - 1/(p+1)*u[x]"), G("g")}));
    r.add(check{"partial", verdict::necessary_only, {}, {}});
    r.outputs.push_back({"j", {"t: u", "x: 1/2*u[x]^2"}});
    r.millis = 12.5;
    const std::string text = render_json(r);
    const report back = parse_report_json(text);
    CHECK(back.command == r.command);
    CHECK(back.overall() == verdict::fail);
    REQUIRE(back.checks.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(back.checks[i].name == r.checks[i].name);
        CHECK(back.checks[i].result == r.checks[i].result);
        CHECK(back.checks[i].residuals == r.checks[i].residuals);
    }
    CHECK(back.outputs == r.outputs);
    CHECK(back.millis == r.millis);
    CHECK(render_json(back) == text);
    CHECK_THROWS_AS((void)parse_report_json("{\"command\": 3}"), schema_error);
    CHECK_THROWS_AS((void)parse_report_json("not json"), schema_error);
}

TEST_CASE("cli: weight and determining")
{
    const run_result w = run({"weight", "--system", gkdv_path, "--char", "sc", "--current", "J3"});
    CHECK(w.code == 0);
    CHECK(w.out == "2\n");
    CHECK(run({"weight", "--system", "gkdv", "--char", "sc", "--q", "q2"}).out == "1\n");

    CHECK(run({"determining", "--system", gkdv_path, "--q", "q4", "--set", "p=1"}).code == 0);
    const run_result generic = run({"determining", "--system", gkdv_path, "--q", "q4"});
    CHECK(generic.code == 1);
    CHECK(generic.out.find("fail") != std::string::npos);
    CHECK(run({"determining", "--system", "gkdv", "--q", "q5", "--set", "p=2"}).code == 0);
}

TEST_CASE("cli: exit codes")
{
    CHECK(run({"verify-pair", "--system", "gkdv", "--q", "q2", "--current", "J2"}).code == 0);
    CHECK(run({"verify-pair", "--system", "gkdv", "--q", "q1", "--current", "J2"}).code == 1);
    CHECK(run({"verify-pair", "--system", "gkdv", "--q", "nope", "--current", "J2"}).code == 2);
    CHECK(run({"verify-pair", "--system", "/no/such/file.toml", "--q", "q1", "--current", "J1"}).code == 2);
    CHECK(run({"determining", "--system", "gkdv", "--q", "q4", "--set", "p=-1/0"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"verify-pair", "--bogus"}).code == 2);
    CHECK(run({"theorem1", "--system", "gkdv", "--q", "q3", "--current", "J3", "--char", "dx"}).code == 0);
    // shift is not a symmetry; it only annihilates F q on shell
    CHECK(run({"theorem1", "--system", "linear-wave", "--q", "qa", "--current", "Ja", "--char", "shift"}).code == 1);
    CHECK(run({"theorem1", "--system", "linear-wave", "--q", "qa", "--current", "Ja", "--char", "shift", "--weak"})
              .code
          == 0);
    // scaling moves g: the CLI certifies on the extended system
    CHECK(run({"theorem1", "--system", "gkdv", "--q", "q3", "--current", "J3", "--char", "sc"}).code == 0);
    CHECK(run({"theorem2", "--system", "gkdv", "--q", "q3", "--current", "J3", "--char", "sc"}).code == 0);
    CHECK(run({"equiv", "--system", "gkdv", "--current", "J2", "--current2", "J2"}).code == 1);
    CHECK(run({"examples", "list"}).out.find("kg-phi-n") != std::string::npos);
}

TEST_CASE("cli: json output parses back")
{
    const run_result r = run({"theorem2", "--system", "gkdv", "--q", "q2", "--current", "J2", "--char", "sc", "--json"});
    CHECK(r.code == 0);
    const report back = parse_report_json(r.out);
    CHECK(back.command == "theorem2");
    CHECK(back.overall() == verdict::pass);
    CHECK_FALSE(back.checks.empty());
}

TEST_CASE("cli: output is deterministic")
{
    const std::vector<std::string> args{"split", "--system", "gkdv", "--q", "q3", "--char", "dx"};
    const run_result a = run(args);
    const run_result b = run(args);
    CHECK(a.code == 0);
    auto strip = [](const std::string &text) { return text.substr(0, text.find("millis:")); };
    CHECK(strip(a.out) == strip(b.out));
    CHECK(strip(a.out).size() > 100);
}

TEST_CASE("examples run")
{
    for (const auto &name : registry_names()) {
        const report r = run_example(fixtures::doc(name));
        CHECK_MESSAGE(r.passed(), name);
        CHECK(r.checks.size() > 20);
    }
    const run_result all = run({"examples", "run", "gkdv"});
    CHECK(all.code == 0);
}
