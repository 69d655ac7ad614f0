#include <doctest.h>

#include <random>

#include <conslaw/errors.hpp>
#include <conslaw/syntax.hpp>

#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace conslaw;
using fixtures::G;
using fixtures::gsig;

namespace
{

signature plain()
{
    signature s;
    s.independents = {"t", "x"};
    s.fields = {"u", "v"};
    s.parameters = {"g"};
    s.constants = {"m", "a"};
    s.exponent_constants = {"p"};
    s.functions = {"V"};
    return s;
}

expr P(const std::string &text)
{
    static const signature s = plain();
    return parse(s, text);
}

} // namespace

TEST_CASE("polynomial gcd reduces coefficients")
{
    const coefficient p = coefficient::constant("p");
    const coefficient c = (p * p - coefficient(1)) / (p + coefficient(1));
    CHECK(c == p - coefficient(1));
    CHECK(c.denominator() == polynomial(1));
    const coefficient d = coefficient(2) / (coefficient(2) * p + coefficient(4));
    CHECK(d.to_string() == "1/(p + 2)");
    CHECK((coefficient(0) / (p + coefficient(1))).is_zero());
    CHECK((coefficient(0) / (p + coefficient(1))).denominator() == polynomial(1));
}

TEST_CASE("multivariate gcd")
{
    const polynomial a = polynomial::variable("a");
    const polynomial b = polynomial::variable("b");
    const polynomial f = (a + b) * (a - b) * (a * b + polynomial(3));
    const polynomial g = (a + b) * (a * a + polynomial(1));
    CHECK(gcd(f, g) == a + b);
    CHECK(exact_divide(f, a + b) == (a - b) * (a * b + polynomial(3)));
}

TEST_CASE("normalize: ring identities")
{
    CHECK(P("u*u - u^2").is_zero());
    CHECK(P("u^p*u") == P("u^(p+1)"));
    CHECK(P("(1/(p+1))*(p+1)*u") == P("u"));
    CHECK(P("u[x,t] - u[t,x]").is_zero());
    CHECK(P("(u + v)^2") == P("u^2 + 2*u*v + v^2"));
    CHECK(P("-u^2") == -P("u^2"));
    CHECK(P("2^3") == expr(8));
}

TEST_CASE("normalize agrees with evaluation for a coefficient identity")
{
    std::mt19937 rng(oracle::seed);
    const expr lhs = P("(1/(p+1))*(p+1)*u");
    for (int i = 0; i < 20; ++i) {
        long pv = std::uniform_int_distribution<long>(0, 9)(rng);
        oracle::random_point pt(rng, {{"p", pv}});
        CHECK(pt.eval(lhs) == pt.eval(P("u")));
    }
}

TEST_CASE("normalize: division and exponent errors")
{
    CHECK_THROWS_AS((void)P("u/v"), division_by_expr_error);
    CHECK_THROWS_AS((void)P("u/(p-p)"), pole_error);
    CHECK_THROWS_AS((void)P("u^m"), exponent_error);
    CHECK_THROWS_AS((void)P("u^(1/2)"), exponent_error);
    CHECK_THROWS_AS((void)P("w + 1"), unknown_identifier_error);
    CHECK_THROWS_AS((void)P("g[x]"), derivative_of_parameter_error);
    CHECK_NOTHROW((void)P("u/(m+1)"));
}

TEST_CASE("parser errors carry positions")
{
    try {
        (void)parse_expression("u + * v");
        FAIL("expected a syntax error");
    } catch (const syntax_error &e) {
        CHECK(e.position() == 4);
    }
    CHECK_THROWS_AS((void)parse_expression("u[x"), syntax_error);
    CHECK_THROWS_AS((void)parse_expression("(u + v"), syntax_error);
    CHECK_THROWS_AS((void)parse_expression(""), syntax_error);
}

TEST_CASE("unary minus binds looser than power")
{
    CHECK(P("-u^2") == -(P("u") * P("u")));
    CHECK(P("2^-1*u") == P("u/2"));
    CHECK(P("u^2^1") == P("u^2"));
}

TEST_CASE("partial_atom")
{
    CHECK(partial_atom(G("u[x]^2"), atom::jet("u", multi_index({"x"}))) == G("2*u[x]"));
    CHECK(partial_atom(G("g*u^(p+1)/(p+1)"), atom::jet("u")) == G("g*u^p"));
    const signature ks = fixtures::doc("kg-potential").system.sig;
    CHECK(partial_atom(parse(ks, "V(g2*phi)"), atom::jet("phi")) == parse(ks, "g2*V'(g2*phi)"));
    CHECK(partial_atom(G("u"), atom::coordinate("x")).is_zero());
}

TEST_CASE("partial_atom: Leibniz rule on random expressions")
{
    std::mt19937 rng(oracle::seed + 1);
    const signature s = plain();
    oracle::expr_shape shape;
    shape.functions = true;
    for (int i = 0; i < 100; ++i) {
        const expr a = oracle::random_expr(rng, s, shape);
        const expr b = oracle::random_expr(rng, s, shape);
        for (const atom &x : {atom::jet("u"), atom::jet("v", multi_index({"x"})), atom::coordinate("t")}) {
            CHECK(partial_atom(a * b, x) == partial_atom(a, x) * b + a * partial_atom(b, x));
            CHECK(partial_atom(a + b, x) == partial_atom(a, x) + partial_atom(b, x));
        }
    }
}

TEST_CASE("substitute")
{
    signature s = plain();
    s.fields.push_back("rho");
    const expr rho(atom::jet("rho"));
    CHECK(substitute(rho * P("u"), {{atom::jet("rho"), P("u")}}) == P("u^2"));
    CHECK(substitute(G("u[t]"), {{atom::jet("u", multi_index({"t"})), G("-g*u^p*u[x] - u[x,x,x]")}})
          == G("-g*u^p*u[x] - u[x,x,x]"));
    // simultaneous, not iterated
    CHECK(substitute(P("u + v"), {{atom::jet("u"), P("v")}, {atom::jet("v"), P("u")}}) == P("u + v"));
    CHECK(substitute(P("V(u)"), {{atom::jet("u"), P("2*v")}}) == P("V(2*v)"));
}

TEST_CASE("substitute commutes with normalization")
{
    std::mt19937 rng(oracle::seed + 2);
    const signature s = plain();
    for (int i = 0; i < 50; ++i) {
        const expr a = oracle::random_expr(rng, s);
        const expr b = oracle::random_expr(rng, s);
        const substitution r{{atom::jet("u"), oracle::random_expr(rng, s)}};
        CHECK(substitute(a * b + a, r) == substitute(a, r) * substitute(b, r) + substitute(a, r));
    }
}

TEST_CASE("specialize_constants")
{
    const signature s = plain();
    auto neg = [&](const atom &a) { return s.allows_negative_power(a); };
    CHECK(specialize_constants(P("u^(p+1)"), {{"p", 2}}, neg) == P("u^3"));
    CHECK_THROWS_AS((void)specialize_constants(P("1/(p+1)*u^(p+1)"), {{"p", -1}}, neg), pole_error);
    CHECK(specialize_constants(P("g^(-p)*u^p"), {{"p", 2}}, neg) == P("g^(-2)*u^2"));
    CHECK_THROWS_AS((void)specialize_constants(P("u^(p-3)"), {{"p", 1}}, neg), exponent_error);
    CHECK_THROWS_AS((void)specialize_constants(P("u^p"), {{"p", rational(1, 2)}}, neg), exponent_error);
    CHECK(specialize_constants(P("m*u + V(m*u)"), {{"m", 3}}, neg) == P("3*u + V(3*u)"));
}

TEST_CASE("eval_rational")
{
    evaluation_point pt;
    pt.atoms[atom::jet("u")] = rational(3, 2);
    CHECK(eval_rational(P("u^2"), pt) == rational(9, 4));
    CHECK(eval_rational(expr(), {}) == 0);
    evaluation_point f;
    f.atoms = {{atom::jet("u", multi_index({"t"})), 1},
               {atom::jet("u", multi_index({"x"})), 2},
               {atom::jet("u", multi_index({"x", "x", "x"})), 5},
               {atom::jet("u"), 3},
               {atom::jet("g"), 1}};
    f.constants = {{"p", 2}};
    CHECK(eval_rational(fixtures::gkdv().equation("F"), f) == 24);
    CHECK_THROWS_AS((void)eval_rational(P("v"), pt), missing_assignment_error);
    evaluation_point z;
    z.atoms[atom::jet("g")] = 0;
    CHECK_THROWS_AS((void)eval_rational(P("g^(-1)"), z), pole_error);
}

TEST_CASE("is_zero")
{
    CHECK(P("u*u - u^2").is_zero());
    CHECK(P("u[x,t] - u[t,x]").is_zero());
    const auto &gd = fixtures::doc("gkdv");
    const current &J1 = gd.get_current("J1");
    CHECK((divergence(gsig(), J1) - fixtures::gkdv().equation("F")).is_zero());
}

TEST_CASE("canonical rendering round-trips through the parser")
{
    std::mt19937 rng(oracle::seed + 3);
    const signature s = plain();
    oracle::expr_shape shape;
    shape.functions = true;
    shape.symbolic_exponents = true;
    for (int i = 0; i < 300; ++i) {
        const expr e = oracle::random_expr(rng, s, shape);
        CHECK(parse(s, e.to_string()) == e);
    }
    CHECK(P("1/(p+1)*u^(p+1)").to_string() == "1/(p + 1)*u^(p + 1)");
    CHECK(P("x*u[x,t]").to_string() == "x*u[t,x]");
}

TEST_CASE("multi_index")
{
    const multi_index a({"x", "t", "x"});
    CHECK(a == multi_index({"t", "x", "x"}));
    CHECK(a.order() == 3);
    CHECK(a.count("x") == 2);
    CHECK(a.multiplicity() == 3);
    CHECK(a.sub_indices().size() == 6);
    CHECK(a.contains(multi_index({"x", "x"})));
    CHECK(a.minus(multi_index({"x"})) == multi_index({"t", "x"}));
}
