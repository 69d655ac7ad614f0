#include "oracle.hpp"

#include <conslaw/errors.hpp>

namespace oracle
{

rational random_rational(std::mt19937 &rng, int num, int den)
{
    std::uniform_int_distribution<int> n(-num, num);
    std::uniform_int_distribution<int> d(1, den);
    rational r(n(rng), d(rng));
    r.canonicalize();
    return r;
}

namespace
{

multi_index random_index(std::mt19937 &rng, const signature &sig, int max_order)
{
    std::uniform_int_distribution<int> order(0, max_order);
    std::uniform_int_distribution<std::size_t> dir(0, sig.independents.size() - 1);
    std::vector<std::string> dirs;
    for (int k = order(rng); k > 0; --k) {
        dirs.push_back(sig.independents[dir(rng)]);
    }
    return multi_index(dirs);
}

} // namespace

expr random_expr(std::mt19937 &rng, const signature &sig, const expr_shape &shape)
{
    std::uniform_int_distribution<int> terms(1, shape.max_terms);
    std::uniform_int_distribution<int> factors(0, shape.max_factors);
    std::uniform_int_distribution<int> power(1, shape.max_power);
    std::uniform_int_distribution<int> pick(0, 9);
    std::uniform_int_distribution<std::size_t> field(0, sig.fields.size() - 1);
    expr out;
    for (int t = terms(rng); t > 0; --t) {
        expr mono(random_rational(rng));
        for (int f = factors(rng); f > 0; --f) {
            const int kind = pick(rng);
            if (kind == 0 && shape.coordinates) {
                std::uniform_int_distribution<std::size_t> c(0, sig.independents.size() - 1);
                mono *= expr(atom::coordinate(sig.independents[c(rng)]), exponent(power(rng)));
            } else if (kind == 1 && shape.functions && !sig.functions.empty()) {
                std::uniform_int_distribution<std::size_t> fn(0, sig.functions.size() - 1);
                const expr arg = expr(atom::jet(sig.fields[field(rng)])) + expr(random_rational(rng));
                mono *= expr(atom::function(sig.functions[fn(rng)], 0, arg));
            } else if (kind == 2 && shape.symbolic_exponents && !sig.exponent_constants.empty()) {
                const exponent e = exponent::symbol(sig.exponent_constants.front()) + exponent(power(rng) - 1);
                mono *= expr(atom::jet(sig.fields[field(rng)]), e);
            } else {
                mono *= expr(atom::jet(sig.fields[field(rng)], random_index(rng, sig, shape.max_order)),
                             exponent(power(rng)));
            }
        }
        out += mono;
    }
    return out;
}

expr function_body(const std::string &name, const atom &dummy)
{
    const expr z(dummy);
    const long c = static_cast<long>(name.size());
    return z * z * z - z.scaled(coefficient(2)) + expr(c);
}

rational function_value(const std::string &name, int k, const rational &z)
{
    const rational c = static_cast<long>(name.size());
    switch (k) {
        case 0:
            return z * z * z - 2 * z + c;
        case 1:
            return 3 * z * z - 2;
        case 2:
            return 6 * z;
        case 3:
            return 6;
        default:
            return 0;
    }
}

expr without_functions(const signature &sig, const expr &e)
{
    const atom dummy = atom::coordinate("__z");
    expr out = e;
    for (const auto &f : sig.functions) {
        out = substitute_function(out, f, function_body(f, dummy), dummy);
    }
    return out;
}

rational random_point::eval(const expr &e)
{
    for (const auto &a : e.all_atoms()) {
        if (a.kind() != atom_kind::function && !m_atoms.count(a)) {
            rational v = random_rational(m_rng);
            if (v == 0) {
                v = 1;
            }
            m_atoms[a] = v;
        }
    }
    evaluation_point p{m_atoms, m_constants, function_value};
    return eval_rational(e, p);
}

rational shell_point::value(const atom &a)
{
    if (auto it = m_atoms.find(a); it != m_atoms.end()) {
        return it->second;
    }
    rational v;
    const solved_rule *rule = nullptr;
    if (m_sys.solved && a.kind() == atom_kind::jet) {
        for (const auto &r : *m_sys.solved) {
            if (r.lhs.name() == a.name() && a.indices().contains(r.lhs.indices())) {
                rule = &r;
                break;
            }
        }
    }
    if (rule) {
        const expr prolonged = total_derivative(m_sys.sig, rule->rhs, a.indices().minus(rule->lhs.indices()));
        v = eval(prolonged);
    } else {
        v = random_rational(m_rng);
        if (v == 0) {
            v = 1;
        }
    }
    m_atoms[a] = v;
    return v;
}

rational shell_point::eval(const expr &e)
{
    for (const auto &a : e.all_atoms()) {
        if (a.kind() != atom_kind::function) {
            value(a);
        }
    }
    evaluation_point p{m_atoms, m_constants, function_value};
    return eval_rational(e, p);
}

configuration::configuration(std::mt19937 &rng, const signature &sig, int degree) : m_sig(sig)
{
    std::uniform_int_distribution<int> deg(0, degree);
    for (const auto &f : sig.fields) {
        expr P;
        for (int k = 0; k < 6; ++k) {
            expr mono(random_rational(rng));
            for (const auto &x : sig.independents) {
                mono *= expr(atom::coordinate(x), exponent(deg(rng)));
            }
            P += mono;
        }
        m_fields[f] = P;
    }
}

expr configuration::compose(const expr &e) const
{
    substitution rules;
    for (const auto &a : e.all_atoms()) {
        if (a.kind() != atom_kind::jet) {
            continue;
        }
        auto it = m_fields.find(a.name());
        if (it == m_fields.end()) {
            continue;
        }
        expr d = it->second;
        for (const auto &x : a.indices().directions()) {
            d = partial_atom(d, atom::coordinate(x));
        }
        rules[a] = d;
    }
    return substitute(e, rules);
}

bool total_derivative_agrees(const configuration &c, const expr &e)
{
    const expr composed = c.compose(e);
    for (const auto &x : c.sig().independents) {
        if (c.compose(total_derivative(c.sig(), e, x)) != partial_atom(composed, atom::coordinate(x))) {
            return false;
        }
    }
    return true;
}

bool divergence_matches(const configuration &c, const current &J, const expr &f)
{
    expr div;
    for (std::size_t m = 0; m < J.size(); ++m) {
        div += partial_atom(c.compose(J[m]), atom::coordinate(c.sig().independents[m]));
    }
    return div == c.compose(f);
}

bool agree_off_shell(std::mt19937 &rng, const expr &a, const expr &b, int n,
                     const std::map<std::string, rational> &constants)
{
    for (int i = 0; i < n; ++i) {
        random_point p(rng, constants);
        if (p.eval(a) != p.eval(b)) {
            return false;
        }
    }
    return true;
}

bool agree_on_shell(std::mt19937 &rng, const de_system &sys, const expr &a, const expr &b, int n,
                    const std::map<std::string, rational> &constants)
{
    for (int i = 0; i < n; ++i) {
        shell_point p(sys, rng, constants);
        if (p.eval(a) != p.eval(b)) {
            return false;
        }
    }
    return true;
}

} // namespace oracle
