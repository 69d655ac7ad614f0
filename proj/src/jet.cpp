#include <conslaw/jet.hpp>

#include <algorithm>

#include <conslaw/errors.hpp>

namespace conslaw
{

expr total_derivative(const signature &sig, const expr &e, const std::string &mu)
{
    return apply_derivation(e, [&](const atom &a) -> expr {
        switch (a.kind()) {
            case atom_kind::coordinate:
                return a.name() == mu ? expr(1) : expr();
            case atom_kind::jet:
                if (sig.is_parameter(a.name())) {
                    return {};
                }
                return expr(atom::jet(a.name(), a.indices().plus(mu)));
            case atom_kind::function: {
                expr inner = total_derivative(sig, a.argument(), mu);
                if (inner.is_zero()) {
                    return {};
                }
                return expr(atom::function(a.name(), a.derivative_order() + 1, a.argument())) * inner;
            }
        }
        return {};
    });
}

expr total_derivative(const signature &sig, const expr &e, const multi_index &J)
{
    expr out = e;
    for (const auto &d : J.directions()) {
        out = total_derivative(sig, out, d);
    }
    return out;
}

namespace
{

// Caches D_J of one expression for increasing J.
class derivative_table
{
public:
    derivative_table(const signature &sig, expr base) : m_sig(sig)
    {
        m_cache.emplace(multi_index{}, std::move(base));
    }

    const expr &at(const multi_index &J)
    {
        auto it = m_cache.find(J);
        if (it != m_cache.end()) {
            return it->second;
        }
        // Peel the last direction and build on the shorter index.
        const auto dirs = J.directions();
        const multi_index shorter = J.plus(dirs.back(), -1);
        expr d = total_derivative(m_sig, at(shorter), dirs.back());
        return m_cache.emplace(J, std::move(d)).first->second;
    }

private:
    const signature &m_sig;
    std::map<multi_index, expr> m_cache;
};

} // namespace

expr variation(const signature &sig, const expr &e, const characteristic &delta)
{
    std::map<std::string, derivative_table> tables;
    for (const auto &[f, d] : delta) {
        if (!d.is_zero()) {
            tables.emplace(f, derivative_table(sig, d));
        }
    }
    if (tables.empty()) {
        return {};
    }
    std::function<expr(const atom &)> derive = [&](const atom &a) -> expr {
        switch (a.kind()) {
            case atom_kind::coordinate:
                return {};
            case atom_kind::jet: {
                auto it = tables.find(a.name());
                if (it == tables.end()) {
                    return {};
                }
                return it->second.at(a.indices());
            }
            case atom_kind::function: {
                expr inner = apply_derivation(a.argument(), derive);
                if (inner.is_zero()) {
                    return {};
                }
                return expr(atom::function(a.name(), a.derivative_order() + 1, a.argument())) * inner;
            }
        }
        return {};
    };
    return apply_derivation(e, derive);
}

std::vector<atom> jets_of(const expr &e, const std::string &field)
{
    std::vector<atom> out;
    for (const auto &a : e.all_atoms()) {
        if (a.kind() == atom_kind::jet && a.name() == field) {
            out.push_back(a);
        }
    }
    return out;
}

expr euler_lagrange(const signature &sig, const expr &e, const std::string &field)
{
    expr out;
    for (const auto &a : jets_of(e, field)) {
        expr p = total_derivative(sig, partial_atom(e, a), a.indices());
        if (a.indices().order() % 2 == 1) {
            out -= p;
        } else {
            out += p;
        }
    }
    return out;
}

std::optional<coefficient> scaling_weight(const signature &sig, const expr &e, const characteristic &delta)
{
    const expr v = variation(sig, e, delta);
    if (e.is_zero()) {
        return coefficient(0);
    }
    const auto &lead = e.terms().front();
    coefficient s;
    for (const auto &t : v.terms()) {
        if (compare(t.mono, lead.mono) == 0) {
            s = t.coeff / lead.coeff;
            break;
        }
    }
    if ((v - e.scaled(s)).is_zero()) {
        return s;
    }
    return std::nullopt;
}

bool is_total_divergence(const signature &sig, const expr &e)
{
    return std::all_of(sig.fields.begin(), sig.fields.end(),
                       [&](const std::string &f) { return euler_lagrange(sig, e, f).is_zero(); });
}

std::pair<signature, std::vector<expr>> linearize(const signature &sig, const std::vector<expr> &F,
                                                  const std::map<std::string, std::string> &fresh)
{
    std::vector<std::string> names;
    characteristic delta;
    for (const auto &[u, v] : fresh) {
        if (!sig.is_field(u)) {
            throw unknown_identifier_error("'" + u + "' is not a field");
        }
        names.push_back(v);
        delta[u] = expr(atom::jet(v));
    }
    signature out = sig.with_fields(names);
    std::vector<expr> G;
    for (const auto &f : F) {
        G.push_back(variation(out, f, delta));
    }
    return {out, G};
}

expr prolonged_substitute(const signature &sig, const expr &e, const std::map<std::string, expr> &values)
{
    std::map<std::string, derivative_table> tables;
    for (const auto &[f, v] : values) {
        tables.emplace(f, derivative_table(sig, v));
    }
    substitution rules;
    for (const auto &a : e.all_atoms()) {
        if (a.kind() != atom_kind::jet) {
            continue;
        }
        auto it = tables.find(a.name());
        if (it != tables.end()) {
            rules.emplace(a, it->second.at(a.indices()));
        }
    }
    return substitute(e, rules);
}

expr divergence(const signature &sig, const current &J)
{
    expr out;
    for (std::size_t mu = 0; mu < J.size() && mu < sig.independents.size(); ++mu) {
        out += total_derivative(sig, J[mu], sig.independents[mu]);
    }
    return out;
}

current add(const current &a, const current &b)
{
    current out(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (i < a.size()) {
            out[i] += a[i];
        }
        if (i < b.size()) {
            out[i] += b[i];
        }
    }
    return out;
}

current subtract(const current &a, const current &b)
{
    return add(a, scale(b, coefficient(-1)));
}

current scale(const current &a, const coefficient &c)
{
    current out;
    for (const auto &e : a) {
        out.push_back(e.scaled(c));
    }
    return out;
}

current multiply(const expr &f, const current &a)
{
    current out;
    for (const auto &e : a) {
        out.push_back(f * e);
    }
    return out;
}

bool is_zero(const current &J)
{
    return std::all_of(J.begin(), J.end(), [](const expr &e) { return e.is_zero(); });
}

} // namespace conslaw
