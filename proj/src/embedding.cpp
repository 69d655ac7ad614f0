#include <conslaw/embedding.hpp>

#include <cctype>

#include <conslaw/errors.hpp>
#include <conslaw/noether.hpp>

namespace conslaw
{

namespace
{

std::string identifier_stem(const std::string &prefix, const std::string &label)
{
    std::string s = prefix;
    for (char c : label) {
        s += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
    }
    return s;
}

std::vector<std::string> varied_fields(const characteristic &delta)
{
    std::vector<std::string> out;
    for (const auto &[f, d] : delta) {
        if (!d.is_zero()) {
            out.push_back(f);
        }
    }
    return out;
}

std::map<std::string, expr> eps_of(const characteristic &delta)
{
    return {delta.begin(), delta.end()};
}

// Integration-by-parts flux of the u-slots of L under delta.
current flux_of(const signature &sig, const expr &L, const characteristic &delta)
{
    return ibp_flux(sig, jet_slots(L, varied_fields(delta)), eps_of(delta));
}

current substitute_current(const signature &sig, const current &J, const std::map<std::string, expr> &values)
{
    current out;
    for (const auto &c : J) {
        out.push_back(prolonged_substitute(sig, c, values));
    }
    return out;
}

// Values for the rho fields of aux; labels missing from rho map to 0.
std::map<std::string, expr> rho_values(const auxiliary &aux, const multiplier &rho)
{
    std::map<std::string, expr> out;
    for (const auto &[label, field] : aux.rho) {
        auto it = rho.find(label);
        out[field] = it == rho.end() ? expr() : it->second;
    }
    return out;
}

void check_labels(const de_system &sys, const multiplier &q)
{
    for (const auto &[label, v] : q) {
        if (!sys.has_label(label)) {
            throw unknown_identifier_error("unknown equation label '" + label + "'");
        }
    }
}

} // namespace

auxiliary auxiliary_lagrangian(const de_system &sys, const std::map<std::string, std::string> &rho_names)
{
    auxiliary aux;
    aux.sig = sys.sig;
    for (const auto &[label, F] : sys.equations) {
        std::string name;
        if (auto it = rho_names.find(label); it != rho_names.end()) {
            name = it->second;
        } else {
            name = aux.sig.fresh_name(identifier_stem("rho_", label));
        }
        aux.sig = aux.sig.with_fields({name});
        aux.rho[label] = name;
        aux.lagrangian += F * expr(atom::jet(name));
    }
    return aux;
}

std::map<std::string, expr> adjoint_determining(const de_system &sys, const auxiliary &aux)
{
    std::map<std::string, expr> out;
    for (const auto &u : sys.sig.fields) {
        out[u] = euler_lagrange(aux.sig, aux.lagrangian, u);
    }
    return out;
}

report check_adjoint_symmetry(const de_system &sys, const multiplier &rho)
{
    check_labels(sys, rho);
    report r;
    r.command = "adjoint";
    const auxiliary aux = auxiliary_lagrangian(sys);
    const auto values = rho_values(aux, rho);
    on_shell_reducer red(sys);
    for (const auto &[u, e] : adjoint_determining(sys, aux)) {
        r.add(zero_check("adjoint equation for " + u, red.reduce(prolonged_substitute(aux.sig, e, values))));
    }
    return r;
}

report check_system_symmetry(const de_system &sys, const characteristic &delta)
{
    report r;
    r.command = "symmetry";
    on_shell_reducer red(sys);
    for (const auto &[label, F] : sys.equations) {
        r.add(zero_check("on-shell variation of " + label, red.reduce(variation(sys.sig, F, delta))));
    }
    return r;
}

std::pair<auxiliary, current> symbolic_embedding_current(const de_system &sys, const characteristic &delta)
{
    auxiliary aux = auxiliary_lagrangian(sys);
    current j = flux_of(aux.sig, aux.lagrangian, delta);
    return {std::move(aux), std::move(j)};
}

current embedding_current(const de_system &sys, const multiplier &rho, const characteristic &delta)
{
    check_labels(sys, rho);
    const auto [aux, j] = symbolic_embedding_current(sys, delta);
    return substitute_current(aux.sig, j, rho_values(aux, rho));
}

current multiplier_current(const de_system &sys, const multiplier &q, const characteristic &delta)
{
    return flux_of(sys.sig, contract(sys, q), delta);
}

split_currents split_embedding_current(const de_system &sys, const multiplier &q, const characteristic &delta)
{
    check_labels(sys, q);
    split_currents out;
    out.full = multiplier_current(sys, q, delta);
    out.frozen_q = embedding_current(sys, q, delta);

    signature frozen = sys.sig;
    expr L;
    std::map<std::string, expr> unfreeze;
    for (const auto &[label, value] : q) {
        const std::string name = frozen.fresh_name(identifier_stem("Ft_", label));
        frozen = frozen.with_fields({name});
        L += expr(atom::jet(name)) * value;
        unfreeze[name] = sys.equation(label);
    }
    out.frozen_F = substitute_current(frozen, flux_of(frozen, L, delta), unfreeze);
    return out;
}

theorem1_result theorem1_certificate(const de_system &sys, const multiplier &q, const current &J,
                                     const characteristic &delta, bool weak)
{
    theorem1_result out;
    report &r = out.certificate;
    r.command = "theorem1";
    const expr Fq = contract(sys, q);
    const check pair = zero_check("multiplier identity F q - D J", Fq - divergence(sys.sig, J));
    if (pair.result != verdict::pass) {
        throw precondition_error("(q, J) is not a multiplier/current pair: residual " + pair.residuals.front());
    }
    r.add(pair);
    on_shell_reducer red(sys);
    if (weak) {
        const check c = zero_check("on-shell variation of F q", red.reduce(variation(sys.sig, Fq, delta)));
        if (c.result != verdict::pass) {
            throw precondition_error("delta(F q) does not vanish on shell");
        }
        r.add(c);
    } else {
        const report sym = check_system_symmetry(sys, delta);
        if (!sym.passed()) {
            throw precondition_error("the characteristic is not a symmetry of the system");
        }
        r.append(sym, "symmetry: ");
    }
    out.currents = split_embedding_current(sys, q, delta);
    for (const auto &c : J) {
        out.delta_J.push_back(variation(sys.sig, c, delta));
    }
    const auto &s = out.currents;
    r.add(zero_check("identically conserved j_(Fq) - delta J", divergence(sys.sig, subtract(s.full, out.delta_J))));
    r.add(zero_check("on-shell conservation of delta J", red.reduce(divergence(sys.sig, out.delta_J))));
    r.add(zero_check("split j_(Fq) = j_(F~q) + j_(Fq~)", subtract(s.full, add(s.frozen_F, s.frozen_q))));
    std::vector<expr> reduced;
    for (const auto &c : s.frozen_F) {
        reduced.push_back(red.reduce(c));
    }
    r.add(zero_check("j_(F~q) vanishes on shell", reduced));
    return out;
}

linearization_result linearization_current(const de_system &sys, const std::map<std::string, std::string> &v_names,
                                           const std::optional<multiplier> &rho)
{
    linearization_result out;
    std::vector<std::string> names;
    characteristic delta;
    for (const auto &[u, v] : v_names) {
        if (!sys.sig.is_field(u)) {
            throw unknown_identifier_error("'" + u + "' is not a field");
        }
        names.push_back(v);
        delta[u] = expr(atom::jet(v));
    }
    de_system lin = sys;
    lin.sig = sys.sig.with_fields(names);
    out.sig = lin.sig;
    out.v = v_names;
    if (rho) {
        out.j = embedding_current(lin, *rho, delta);
    } else {
        auto [aux, j] = symbolic_embedding_current(lin, delta);
        out.aux = std::move(aux);
        out.j = std::move(j);
    }
    return out;
}

multiplier_symmetry_result multiplier_symmetry_check(const de_system &sys, const multiplier &q, const current &J)
{
    check_labels(sys, q);
    multiplier_symmetry_result out;
    report &r = out.certificate;
    r.command = "multiplier-symmetry";
    const auxiliary aux = auxiliary_lagrangian(sys);
    characteristic delta;
    for (const auto &[label, value] : q) {
        delta[aux.rho.at(label)] = value;
    }
    r.add(zero_check("delta_q L - D J", variation(aux.sig, aux.lagrangian, delta) - divergence(aux.sig, J)));
    r.add(zero_check("flux of delta_q vanishes", variation_split(aux.sig, aux.lagrangian, delta).flux));
    out.noether = scale(J, coefficient(-1));
    return out;
}

} // namespace conslaw
