#include <conslaw/extension.hpp>

#include <algorithm>

#include <conslaw/conservation.hpp>
#include <conslaw/errors.hpp>

namespace conslaw
{

namespace
{

bool is_promoted(const extended_system &ext, const std::string &name)
{
    return std::find(ext.promoted.begin(), ext.promoted.end(), name) != ext.promoted.end();
}

current map_current(const current &J, const std::function<expr(const expr &)> &f)
{
    current out;
    out.reserve(J.size());
    for (const auto &c : J) {
        out.push_back(f(c));
    }
    return out;
}

// F^a must not contain derivatives of the listed names.
void require_no_derivatives(const de_system &sys, const std::vector<std::string> &names)
{
    for (const auto &[label, F] : sys.equations) {
        for (const auto &a : F.all_atoms()) {
            if (a.kind() == atom_kind::jet && !a.indices().empty()
                && std::find(names.begin(), names.end(), a.name()) != names.end()) {
                throw derivative_of_parameter_error("equation " + label + " contains " + a.to_string());
            }
        }
    }
}

std::string fresh_label(const de_system &sys, const std::string &stem)
{
    if (!sys.has_label(stem)) {
        return stem;
    }
    for (int k = 1;; ++k) {
        std::string s = stem + std::to_string(k);
        if (!sys.has_label(s)) {
            return s;
        }
    }
}

// Appends g[mu] = 0 for every g in names; g must already be a field of sys.sig.
void append_constancy(extended_system &ext, const std::vector<std::string> &names)
{
    de_system &s = ext.system;
    for (const auto &g : names) {
        for (const auto &mu : s.sig.independents) {
            const atom a = atom::jet(g, multi_index({mu}));
            const std::string label = fresh_label(s, g + "_" + mu);
            s.equations.emplace_back(label, expr(a));
            ext.g_labels[{g, mu}] = label;
            if (s.solved) {
                s.solved->push_back({a, expr()});
            }
        }
    }
    s.validate();
}

std::optional<coefficient> common_weight(const signature &sig, const current &J, const characteristic &delta)
{
    std::optional<coefficient> w;
    for (const auto &c : J) {
        if (c.is_zero()) {
            continue;
        }
        auto s = scaling_weight(sig, c, delta);
        if (!s || (w && *w != *s)) {
            return std::nullopt;
        }
        w = s;
    }
    return w;
}

std::vector<expr> reduce_all(const de_system &sys, const current &J)
{
    on_shell_reducer red(sys);
    std::vector<expr> out;
    for (const auto &c : J) {
        out.push_back(red.reduce(c));
    }
    return out;
}

de_system equations_only(const extended_system &ext)
{
    de_system s;
    s.sig = ext.system.sig;
    for (const auto &[label, F] : ext.base.equations) {
        s.equations.emplace_back(label, F);
    }
    return s;
}

expr g_power(const std::string &g, const coefficient &c)
{
    const exponent e = exponent::from_coefficient(c);
    return e.is_zero() ? expr(1) : expr(atom::jet(g), e);
}

// Solves F = 0 for lhs when the factor of lhs is a single monomial.
std::optional<expr> solve_monomial_factor(const expr &F, const atom &lhs)
{
    if (auto r = solve_for(F, lhs)) {
        return r;
    }
    const expr c = partial_atom(F, lhs);
    if (c.terms().size() != 1 || depends_on(c, lhs)) {
        return std::nullopt;
    }
    const expr rest = F - c * expr(lhs);
    if (depends_on(rest, lhs)) {
        return std::nullopt;
    }
    return -rest * pow(c, exponent(-1));
}

} // namespace

extended_system extend_system(const de_system &sys, const std::vector<std::string> &params)
{
    for (const auto &g : params) {
        if (!sys.sig.is_parameter(g)) {
            throw unknown_identifier_error("'" + g + "' is not a parameter");
        }
    }
    require_no_derivatives(sys, params);
    extended_system ext;
    ext.base = sys;
    ext.promoted = params;
    ext.system = sys;
    ext.system.sig = sys.sig.promote(params);
    append_constancy(ext, params);
    return ext;
}

expr with_constant_parameters(const extended_system &ext, const expr &e)
{
    substitution zero;
    for (const auto &a : e.all_atoms()) {
        if (a.kind() == atom_kind::jet && !a.indices().empty() && is_promoted(ext, a.name())) {
            zero[a] = expr();
        }
    }
    return zero.empty() ? e : substitute(e, zero);
}

current with_constant_parameters(const extended_system &ext, const current &J)
{
    return map_current(J, [&](const expr &c) { return with_constant_parameters(ext, c); });
}

parameterized_pair make_parameterized_pair(const extended_system &ext, const multiplier &q, const current &J)
{
    parameterized_pair p{q, J, {}};
    for (const auto &g : ext.promoted) {
        const atom a = atom::jet(g);
        p.theta[g] = map_current(J, [&](const expr &c) { return partial_atom(c, a); });
    }
    return p;
}

lift_result lift_parameterized_multiplier(const extended_system &ext, const multiplier &q, const current &J)
{
    const report base = verify_multiplier_current_pair(ext.base, q, J);
    if (!base.passed()) {
        throw precondition_error("(q, J) is not a pair of the base system: residual "
                                 + base.checks.front().residuals.front());
    }
    lift_result out;
    out.pair = make_parameterized_pair(ext, q, J);
    out.lifted = q;
    const auto &ind = ext.system.sig.independents;
    for (const auto &g : ext.promoted) {
        for (std::size_t m = 0; m < ind.size(); ++m) {
            out.lifted[ext.g_labels.at({g, ind[m]})] = out.pair.theta.at(g)[m];
        }
    }
    report &r = out.certificate;
    r.command = "lift";
    r.append(base, "base: ");
    r.add(zero_check("F q + theta g[mu] - D J with variable g",
                     contract(ext.system, out.lifted) - divergence(ext.system.sig, J)));
    return out;
}

theorem2_result theorem2_current(const extended_system &ext, const multiplier &q, const current &J,
                                 const characteristic &delta)
{
    const report sym = check_system_symmetry(ext.system, delta);
    if (!sym.passed()) {
        throw precondition_error("the characteristic is not a symmetry of the extended system");
    }
    lift_result lift = lift_parameterized_multiplier(ext, q, J);
    theorem2_result out;
    out.pair = lift.pair;
    report &r = out.certificate;
    r.command = "theorem2";
    r.append(sym, "symmetry: ");
    r.append(lift.certificate, "lift: ");

    const signature &sig = ext.system.sig;
    out.j = embedding_current(ext.system, lift.lifted, delta);

    // j = j_(F rho)|_(rho = q) + theta delta g, computed through the F equations alone.
    current jth = embedding_current(equations_only(ext), q, delta);
    for (const auto &g : ext.promoted) {
        auto it = delta.find(g);
        if (it != delta.end()) {
            jth = add(jth, multiply(it->second, out.pair.theta.at(g)));
        }
    }
    r.add(zero_check("j - j_(F rho)|q - theta delta g", subtract(out.j, jth)));

    for (const auto &c : J) {
        out.delta_J.push_back(variation(sig, c, delta));
    }
    characteristic base_delta;
    for (const auto &[f, d] : delta) {
        if (!is_promoted(ext, f)) {
            base_delta[f] = with_constant_parameters(ext, d);
        }
    }
    out.frozen_F = split_embedding_current(ext.base, q, base_delta).frozen_F;
    const current c =
        add(with_constant_parameters(ext, subtract(out.j, out.delta_J)), out.frozen_F);
    r.add(zero_check("identically conserved j - delta J + j_(F~q) for constant g", divergence(ext.base.sig, c)));

    out.omega = common_weight(sig, J, delta);
    if (out.omega && ext.system.solved) {
        out.on_shell_excess = reduce_all(ext.system, subtract(scale(J, *out.omega), out.j));
    }
    return out;
}

restricted_pair restrict_multiplier(const extended_system &ext, const multiplier &q_ext, const current &J_ext)
{
    restricted_pair out;
    for (const auto &[label, v] : q_ext) {
        if (!ext.system.has_label(label)) {
            throw unknown_identifier_error("unknown equation label '" + label + "'");
        }
        if (ext.base.has_label(label)) {
            out.q[label] = with_constant_parameters(ext, v);
        }
    }
    out.J = with_constant_parameters(ext, J_ext);
    const auto &ind = ext.system.sig.independents;
    for (const auto &g : ext.promoted) {
        current th(ind.size());
        for (std::size_t m = 0; m < ind.size(); ++m) {
            auto it = q_ext.find(ext.g_labels.at({g, ind[m]}));
            if (it != q_ext.end()) {
                th[m] = with_constant_parameters(ext, it->second);
            }
        }
        out.theta[g] = std::move(th);
    }
    out.certificate = verify_multiplier_current_pair(ext.base, out.q, out.J);
    out.certificate.command = "restrict";
    return out;
}

report scc_check(const extended_system &ext, const multiplier &q, const characteristic &delta,
                 const coefficient &omega, const std::optional<current> &J)
{
    report r;
    r.command = "scc";
    const expr Fq = contract(ext.system, q);
    r.add(zero_check("delta(F q) - omega F q", variation(ext.system.sig, Fq, delta) - Fq.scaled(omega)));
    std::vector<expr> dg;
    for (const auto &g : ext.promoted) {
        auto it = delta.find(g);
        if (it == delta.end()) {
            continue;
        }
        for (const auto &mu : ext.base.sig.independents) {
            dg.push_back(total_derivative(ext.base.sig, it->second, mu));
        }
    }
    r.add(zero_check("D_mu delta g for constant g", dg));
    if (J) {
        characteristic base_delta;
        for (const auto &[f, d] : delta) {
            base_delta[f] = with_constant_parameters(ext, d);
        }
        const current c = subtract(map_current(*J, [&](const expr &e) {
                                       return with_constant_parameters(
                                           ext, variation(ext.system.sig, e, delta));
                                   }),
                                   scale(*J, omega));
        const expr div = divergence(ext.base.sig, c);
        r.add(zero_check("on-shell divergence of delta J - omega J",
                         ext.base.solved ? on_shell_reduce(ext.base, div) : div));
    }
    return r;
}

adjoint_current_result adjoint_from_current(const extended_system &ext, const current &theta, const std::string &g,
                                            const characteristic &delta)
{
    if (!is_promoted(ext, g)) {
        throw unknown_identifier_error("'" + g + "' is not a promoted parameter");
    }
    const report cons = is_conserved_on_shell(ext.system, theta);
    if (!cons.passed()) {
        throw precondition_error("theta is not conserved on shell");
    }
    adjoint_current_result out;
    const auto &ind = ext.system.sig.independents;
    for (std::size_t m = 0; m < ind.size(); ++m) {
        out.adjoint[ext.g_labels.at({g, ind[m]})] = theta[m];
    }
    report &r = out.certificate;
    r.command = "adjoint-from-current";
    r.append(cons, "theta: ");
    r.append(check_adjoint_symmetry(ext.system, out.adjoint), "adjoint: ");
    out.j = embedding_current(ext.system, out.adjoint, delta);
    auto it = delta.find(g);
    const expr dg = it == delta.end() ? expr() : it->second;
    r.add(zero_check("j - theta delta g", subtract(out.j, multiply(dg, theta))));
    return out;
}

extended_system trivial_extend(const de_system &sys, const std::string &g_stem)
{
    const std::string g = sys.sig.fresh_name(g_stem);
    extended_system ext;
    ext.base = sys;
    ext.promoted = {g};
    ext.system = sys;
    ext.system.sig = sys.sig.with_fields({g});
    ext.system.sig.promoted.push_back(g);
    append_constancy(ext, {g});
    ext.scaling = characteristic{{g, expr(atom::jet(g))}};
    return ext;
}

trivial_lift lift_trivial_multiplier(const extended_system &triv, const multiplier &q, const current &J)
{
    const report base = verify_multiplier_current_pair(triv.base, q, J);
    if (!base.passed()) {
        throw precondition_error("(q, J) is not a pair of the base system");
    }
    const std::string &g = triv.promoted.front();
    const expr ge(atom::jet(g));
    trivial_lift out;
    for (const auto &[label, v] : q) {
        out.lifted[label] = ge * v;
    }
    const auto &ind = triv.system.sig.independents;
    for (std::size_t m = 0; m < ind.size(); ++m) {
        out.lifted[triv.g_labels.at({g, ind[m]})] = J[m];
    }
    out.current_gJ = multiply(ge, J);
    report &r = out.certificate;
    r.command = "trivial-lift";
    r.append(base, "base: ");
    r.add(zero_check("g q F + J g[mu] - D(g J)",
                     contract(triv.system, out.lifted) - divergence(triv.system.sig, out.current_gJ)));
    return out;
}

trivial_projection project_trivial_multiplier(const extended_system &triv, const multiplier &lifted,
                                              const std::optional<current> &J)
{
    const std::string &g = triv.promoted.front();
    const atom ga = atom::jet(g);
    const expr ge(ga);
    trivial_projection out;
    report &r = out.certificate;
    r.command = "project";
    std::vector<expr> form;
    for (const auto &[label, v] : lifted) {
        if (triv.base.has_label(label)) {
            out.q[label] = partial_atom(v, ga);
            form.push_back(v - ge * out.q[label]);
        }
    }
    r.add(zero_check("multiplier has the form g q", form));
    const auto &ind = triv.system.sig.independents;
    out.theta.resize(ind.size());
    std::vector<expr> g_free;
    for (std::size_t m = 0; m < ind.size(); ++m) {
        auto it = lifted.find(triv.g_labels.at({g, ind[m]}));
        if (it != lifted.end()) {
            out.theta[m] = it->second;
            g_free.push_back(partial_atom(it->second, ga));
        }
    }
    r.add(zero_check("theta is free of g", g_free));
    r.append(verify_multiplier_current_pair(triv.base, out.q, out.theta), "base: ");
    if (J) {
        r.add(zero_check("J - theta identically conserved", divergence(triv.base.sig, subtract(*J, out.theta))));
    }
    return out;
}

homogeneous_decomposition homogeneous_decompose(const signature &sig, const expr &e, const characteristic &delta)
{
    homogeneous_decomposition out;
    for (const auto &t : e.terms()) {
        const expr single = expr::from_terms({t});
        auto w = scaling_weight(sig, single, delta);
        if (!w) {
            throw not_homogeneous_error("term " + single.to_string() + " has no weight");
        }
        out[*w] += single;
    }
    return out;
}

std::map<coefficient, current> homogeneous_decompose(const signature &sig, const current &J,
                                                     const characteristic &delta)
{
    std::map<coefficient, current> out;
    for (std::size_t m = 0; m < J.size(); ++m) {
        for (auto &[w, part] : homogeneous_decompose(sig, J[m], delta)) {
            auto &slot = out[w];
            slot.resize(J.size());
            slot[m] = std::move(part);
        }
    }
    return out;
}

inserted_parameter insert_parameter(const de_system &sys, const multiplier &q, const current &J,
                                    const extension_plan &plan, const std::optional<characteristic> &base_scaling)
{
    if ((plan.eta + plan.rho).is_zero()) {
        throw zero_weight_error("eta + rho must be nonzero");
    }
    if (sys.sig.kind_of(plan.g)) {
        throw name_collision_error("name '" + plan.g + "' is already declared");
    }
    characteristic sc;
    if (base_scaling) {
        sc = *base_scaling;
    } else {
        for (const auto &u : sys.sig.fields) {
            sc[u] = expr(atom::jet(u));
        }
    }
    inserted_parameter out;
    de_system &ns = out.system;
    ns.sig = sys.sig;
    ns.sig.parameters.push_back(plan.g);

    auto rebuild = [&](const expr &e, const coefficient &target) {
        expr r;
        for (const auto &[w, part] : homogeneous_decompose(sys.sig, e, sc)) {
            r += g_power(plan.g, target - w) * part;
        }
        return r;
    };
    for (const auto &[label, F] : sys.equations) {
        ns.equations.emplace_back(label, rebuild(F, plan.eta));
    }
    for (const auto &[label, v] : q) {
        out.q[label] = rebuild(v, plan.rho);
    }
    const coefficient jw = plan.eta + plan.rho;
    for (const auto &[w, part] : homogeneous_decompose(sys.sig, J, sc)) {
        out.J.resize(J.size());
        for (std::size_t m = 0; m < J.size(); ++m) {
            out.J[m] += g_power(plan.g, jw - w) * part[m];
        }
    }
    out.J.resize(J.size());

    if (sys.solved) {
        std::vector<solved_rule> rules;
        for (const auto &rule : *sys.solved) {
            std::optional<expr> rhs;
            for (const auto &[label, F] : ns.equations) {
                if (depends_on(F, rule.lhs) && (rhs = solve_monomial_factor(F, rule.lhs))) {
                    break;
                }
            }
            if (!rhs) {
                rules.clear();
                break;
            }
            rules.push_back({rule.lhs, *rhs});
        }
        if (!rules.empty()) {
            ns.solved = std::move(rules);
        }
    }
    ns.validate();

    out.scaling = sc;
    out.scaling[plan.g] = expr(atom::jet(plan.g));
    report &r = out.certificate;
    r.command = "insert-parameter";
    for (const auto &[label, F] : ns.equations) {
        r.add(zero_check("delta F - eta F for " + label, variation(ns.sig, F, out.scaling) - F.scaled(plan.eta)));
    }
    for (const auto &[label, v] : out.q) {
        r.add(zero_check("delta q - rho q for " + label, variation(ns.sig, v, out.scaling) - v.scaled(plan.rho)));
    }
    r.add(zero_check("delta J - (eta + rho) J",
                     subtract(map_current(out.J, [&](const expr &c) { return variation(ns.sig, c, out.scaling); }),
                              scale(out.J, jw))));
    r.append(verify_multiplier_current_pair(ns, out.q, out.J), "pair: ");

    const std::map<std::string, rational> one{{plan.g, 1}};
    substitution g_one{{atom::jet(plan.g), expr(1)}};
    std::vector<expr> round;
    for (std::size_t a = 0; a < ns.equations.size(); ++a) {
        round.push_back(substitute(ns.equations[a].second, g_one) - sys.equations[a].second);
    }
    for (const auto &[label, v] : q) {
        round.push_back(substitute(out.q.at(label), g_one) - v);
    }
    for (std::size_t m = 0; m < J.size(); ++m) {
        round.push_back(substitute(out.J[m], g_one) - J[m]);
    }
    r.add(zero_check("g = 1 recovers the input", round));
    return out;
}

expr rescale_parameter_power(const expr &e, const std::string &g, const exponent &unit)
{
    if (unit.is_zero()) {
        throw exponent_error("the unit exponent must be nonzero");
    }
    const coefficient uc = unit.to_coefficient();
    std::vector<expr::term> terms;
    for (auto t : e.terms()) {
        for (auto &f : t.mono) {
            if (f.base.kind() == atom_kind::jet && f.base.name() == g && f.base.indices().empty()) {
                // f.power = k * unit with k an integer
                const coefficient k = f.power.to_coefficient() * uc.inverse();
                if (!k.is_rational() || k.value().get_den() != 1) {
                    throw exponent_error("g^" + f.power.to_string() + " is not a power of g^" + unit.to_string());
                }
                f.power = exponent(k.value().get_num().get_si());
            }
        }
        terms.push_back(std::move(t));
    }
    return expr::from_terms(std::move(terms));
}

inserted_parameter rescale_parameter_power(const inserted_parameter &in, const std::string &g, const exponent &unit)
{
    inserted_parameter out = in;
    for (auto &[label, F] : out.system.equations) {
        F = rescale_parameter_power(F, g, unit);
    }
    if (out.system.solved) {
        for (auto &rule : *out.system.solved) {
            rule.rhs = rescale_parameter_power(rule.rhs, g, unit);
        }
    }
    for (auto &[label, v] : out.q) {
        v = rescale_parameter_power(v, g, unit);
    }
    for (auto &c : out.J) {
        c = rescale_parameter_power(c, g, unit);
    }
    for (auto &[f, d] : out.scaling) {
        if (f != g) {
            d = rescale_parameter_power(d, g, unit);
        }
    }
    out.scaling[g] = expr(atom::jet(g)).scaled(unit.to_coefficient());
    out.certificate = verify_multiplier_current_pair(out.system, out.q, out.J);
    out.certificate.command = "rescale";
    return out;
}

current current_from_theta(const current &theta, const current &J0, const std::string &g, const rational &g0)
{
    const atom ga = atom::jet(g);
    auto antiderivative = [&](const expr &e) {
        std::vector<expr::term> terms;
        for (auto t : e.terms()) {
            long k = 0;
            auto it = std::find_if(t.mono.begin(), t.mono.end(), [&](const factor &f) { return f.base == ga; });
            if (it != t.mono.end()) {
                if (!it->power.is_integer() || it->power.base() < 0) {
                    throw precondition_error("theta must be polynomial in " + g);
                }
                k = it->power.base();
                it->power = exponent(k + 1);
            } else {
                t.mono.push_back({ga, exponent(1)});
                std::sort(t.mono.begin(), t.mono.end(),
                          [](const factor &a, const factor &b) { return a.base < b.base; });
            }
            for (const auto &f : t.mono) {
                if (f.base != ga && depends_on(expr(f.base), ga)) {
                    throw precondition_error("theta must be polynomial in " + g);
                }
            }
            t.coeff = t.coeff * coefficient(rational(1, k + 1));
            terms.push_back(std::move(t));
        }
        return expr::from_terms(std::move(terms));
    };
    current out;
    for (std::size_t m = 0; m < theta.size(); ++m) {
        const expr A = antiderivative(theta[m]);
        const expr base = m < J0.size() ? J0[m] : expr();
        out.push_back(base + A - substitute(A, {{ga, expr(coefficient(g0))}}));
    }
    return out;
}

} // namespace conslaw
