#include <doctest.h>

#include <random>

#include <conslaw/embedding.hpp>
#include <conslaw/errors.hpp>
#include <conslaw/noether.hpp>
#include <conslaw/syntax.hpp>

#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace conslaw;

namespace
{

signature ue()
{
    signature s;
    s.independents = {"t", "x"};
    s.fields = {"u", "e"};
    return s;
}

const system_document &kdoc()
{
    return fixtures::doc("kg-phi-n");
}

expr K(const std::string &text)
{
    return parse(kdoc().system.sig, text);
}

// sum_J G^J D_J eps, the left side of the integration by parts
expr reassemble(const signature &sig, const ibp_slots &slots, const std::map<std::string, expr> &eps)
{
    expr out;
    for (const auto &[name, by_index] : slots) {
        for (const auto &[J, G] : by_index) {
            out += G * total_derivative(sig, eps.at(name), J);
        }
    }
    return out;
}

} // namespace

TEST_CASE("ibp_split")
{
    const signature s = ue();
    const expr a = parse(s, "u^2*x");
    const expr b = parse(s, "u[t]*u");
    const ibp_result r = ibp_split(s, {{"e", {{multi_index(), a}, {multi_index({"x"}), b}}}});
    CHECK(r.hat.at("e") == a - total_derivative(s, b, "x"));
    CHECK(r.flux[0].is_zero());
    CHECK(r.flux[1] == b * parse(s, "e"));

    const ibp_result one = ibp_split(s, {{"e", {{multi_index({"x"}), expr(1)}}}});
    CHECK(one.hat.at("e").is_zero());
    CHECK(one.flux[1] == parse(s, "e"));
}

TEST_CASE("ibp_split reassembles exactly")
{
    std::mt19937 rng(oracle::seed + 40);
    const signature s = ue();
    oracle::expr_shape shape;
    shape.max_terms = 3;
    shape.max_order = 2;
    for (int i = 0; i < 60; ++i) {
        ibp_slots slots;
        std::uniform_int_distribution<int> count(1, 4);
        for (int k = count(rng); k > 0; --k) {
            std::vector<std::string> dirs;
            for (int o = std::uniform_int_distribution<int>(0, 3)(rng); o > 0; --o) {
                dirs.push_back(std::uniform_int_distribution<int>(0, 1)(rng) ? "t" : "x");
            }
            slots["e"][multi_index(dirs)] += oracle::random_expr(rng, s, shape);
        }
        const ibp_result r = ibp_split(s, slots);
        const expr eps(atom::jet("e"));
        const expr lhs = reassemble(s, slots, {{"e", eps}});
        CHECK(lhs == r.hat.at("e") * eps + divergence(s, r.flux));

        const std::map<std::string, expr> concrete{{"e", oracle::random_expr(rng, s, shape)}};
        const current flux = ibp_flux(s, slots, concrete);
        CHECK(reassemble(s, slots, concrete) == r.hat.at("e") * concrete.at("e") + divergence(s, flux));
    }
}

TEST_CASE("embedding current is the flux of the u-slots of the auxiliary Lagrangian")
{
    for (const std::string name : {"gkdv", "kg-phi-n", "linear-wave"}) {
        const system_document &doc = fixtures::doc(name);
        for (const auto &sym : doc.symmetries) {
            const characteristic &d = doc.get_characteristic(sym);
            const auto [aux, j] = symbolic_embedding_current(doc.system, d);
            std::map<std::string, expr> eps;
            for (const auto &u : doc.system.sig.fields) {
                eps[u] = d.count(u) ? d.at(u) : expr();
            }
            CHECK_MESSAGE(ibp_flux(aux.sig, jet_slots(aux.lagrangian, doc.system.sig.fields), eps) == j,
                          name << " " << sym);
        }
    }
}

TEST_CASE("variation_split")
{
    const signature s = ue();
    const variation_parts v = variation_split(s, parse(s, "1/2*u[x]^2"), {{"u", parse(s, "e")}});
    CHECK(v.euler_part == parse(s, "-u[x,x]*e"));
    CHECK(v.flux[0].is_zero());
    CHECK(v.flux[1] == parse(s, "u[x]*e"));

    const variation_parts k = variation_split(kdoc().system.sig, kdoc().get_lagrangian("L"), {{"phi", K("-phi[t]")}});
    CHECK(k.flux[0] == K("-phi[t]^2"));
    CHECK(k.flux[1] == K("phi[x]*phi[t]"));
}

TEST_CASE("variation_split identity on random Lagrangians")
{
    std::mt19937 rng(oracle::seed + 41);
    const signature s = ue();
    oracle::expr_shape shape;
    shape.max_terms = 3;
    shape.max_order = 3;
    for (int i = 0; i < 60; ++i) {
        const expr L = oracle::random_expr(rng, s, shape);
        const characteristic d{{"u", oracle::random_expr(rng, s, shape)}};
        const variation_parts v = variation_split(s, L, d);
        CHECK(variation(s, L, d) == v.euler_part + divergence(s, v.flux));
        CHECK(v.euler_part == euler_lagrange(s, L, "u") * d.at("u"));
        std::mt19937 pts(oracle::seed + static_cast<unsigned>(i));
        CHECK(oracle::agree_off_shell(pts, variation(s, L, d), v.euler_part + divergence(s, v.flux), 20));
    }
}

TEST_CASE("check_lagrangian_symmetry")
{
    const signature &ks = kdoc().system.sig;
    const expr &L = kdoc().get_lagrangian("L");
    CHECK(check_lagrangian_symmetry(ks, L, {{{"phi", K("-phi[t]")}}, {-L, expr()}}).passed());
    CHECK_FALSE(check_lagrangian_symmetry(ks, L, {{{"phi", K("-phi[t]")}}, {L, expr()}}).passed());

    // auxiliary Lagrangian: system symmetry for u, arbitrary delta rho, K = 0, on shell
    const de_system &sys = fixtures::gkdv();
    auxiliary aux = auxiliary_lagrangian(sys, {{"F", "rho"}});
    const signature s = aux.sig.with_fields({"w"});
    const characteristic d{{"u", parse(s, "-u[x]")}, {"rho", parse(s, "w")}};
    CHECK(check_lagrangian_symmetry(s, aux.lagrangian, {d, {expr(), expr()}}, &sys).passed());
    CHECK_FALSE(check_lagrangian_symmetry(s, aux.lagrangian, {d, {expr(), expr()}}).passed());

    // delta rho = q, delta u = 0 with K = J
    const auto &gd = fixtures::doc("gkdv");
    const symmetry_witness wq{{{"rho", gd.get_multiplier("q3").at("F")}}, gd.get_current("J3")};
    CHECK(check_lagrangian_symmetry(aux.sig, aux.lagrangian, wq).passed());
}

TEST_CASE("noether_current")
{
    const signature &ks = kdoc().system.sig;
    const expr &L = kdoc().get_lagrangian("L");
    const noether_result n = noether_current(ks, L, {{{"phi", K("-phi[t]")}}, {-L, expr()}});
    CHECK(n.certificate.passed());
    CHECK(n.J[0] == K("-phi[t]^2") + L);
    CHECK(n.J[1] == K("phi[x]*phi[t]"));
    CHECK(n.J == kdoc().get_current("JN"));

    const auto &gd = fixtures::doc("gkdv");
    const auxiliary aux = auxiliary_lagrangian(gd.system, {{"F", "rho"}});
    const symmetry_witness wq{{{"rho", gd.get_multiplier("q3").at("F")}}, gd.get_current("J3")};
    const noether_result nq = noether_current(aux.sig, aux.lagrangian, wq);
    CHECK(nq.J == scale(gd.get_current("J3"), coefficient(-1)));

    // K = j gives J = 0 (on shell)
    const characteristic tr{{"phi", K("-phi[t]")}};
    const variation_parts v = variation_split(ks, L, tr);
    const noether_result z = noether_current(ks, L, {tr, v.flux}, &kdoc().system);
    CHECK(is_zero(z.J));

    CHECK_THROWS_AS((void)noether_current(ks, L, {tr, {L, expr()}}), precondition_error);
}

TEST_CASE("Noether identity for every registry Lagrangian symmetry")
{
    for (const auto &name : registry_names()) {
        const system_document &doc = fixtures::doc(name);
        for (const auto &e : doc.noether) {
            const expr &L = doc.get_lagrangian(e.lagrangian);
            const characteristic &d = doc.get_characteristic(e.characteristic);
            const noether_result n = noether_current(doc.system.sig, L, {d, doc.get_current(e.K)});
            CHECK(n.certificate.passed());
            expr lhs = divergence(doc.system.sig, n.J);
            for (const auto &[u, du] : d) {
                lhs += euler_lagrange(doc.system.sig, L, u) * du;
            }
            CHECK_MESSAGE(lhs.is_zero(), name << " " << e.name);
        }
    }
}
