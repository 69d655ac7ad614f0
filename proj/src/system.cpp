#include <conslaw/system.hpp>

#include <algorithm>
#include <set>

#include <conslaw/errors.hpp>

namespace conslaw
{

const expr &de_system::equation(const std::string &label) const
{
    for (const auto &[l, F] : equations) {
        if (l == label) {
            return F;
        }
    }
    throw unknown_identifier_error("unknown equation label '" + label + "'");
}

bool de_system::has_label(const std::string &label) const
{
    return std::any_of(equations.begin(), equations.end(), [&](const auto &p) { return p.first == label; });
}

std::vector<std::string> de_system::labels() const
{
    std::vector<std::string> out;
    for (const auto &[l, F] : equations) {
        out.push_back(l);
    }
    return out;
}

namespace
{

// Direction with the highest count; ties go to the earlier declared independent.
std::string leading_direction(const signature &sig, const multi_index &J)
{
    std::string best;
    int count = 0;
    for (const auto &d : sig.independents) {
        if (J.count(d) > count) {
            best = d;
            count = J.count(d);
        }
    }
    return best;
}

// (count in lead, total order, counts) of b is strictly below that of a.
bool dominates(const multi_index &a, const multi_index &b, const std::string &lead)
{
    if (a.count(lead) != b.count(lead)) {
        return a.count(lead) > b.count(lead);
    }
    if (a.order() != b.order()) {
        return a.order() > b.order();
    }
    return b.counts() < a.counts();
}

} // namespace

void de_system::validate() const
{
    sig.validate();
    std::set<std::string> seen;
    for (const auto &[l, F] : equations) {
        if (!seen.insert(l).second) {
            throw name_collision_error("equation label '" + l + "' is used twice");
        }
    }
    if (!solved) {
        return;
    }
    std::optional<std::string> common_lead;
    for (std::size_t i = 0; i < solved->size(); ++i) {
        const auto &r = (*solved)[i];
        if (r.lhs.kind() != atom_kind::jet || !sig.is_field(r.lhs.name())) {
            throw non_terminating_rule_error("rule lhs " + r.lhs.to_string() + " is not a field jet");
        }
        for (std::size_t j = 0; j < solved->size(); ++j) {
            const auto &o = (*solved)[j];
            if (i != j && o.lhs.name() == r.lhs.name() && r.lhs.indices().contains(o.lhs.indices())) {
                throw non_terminating_rule_error("rule lhs " + r.lhs.to_string() + " is a derivative of "
                                                 + o.lhs.to_string());
            }
        }
        const std::string lead = leading_direction(sig, r.lhs.indices());
        bool has_jets = false;
        for (const auto &a : r.rhs.all_atoms()) {
            if (a.kind() != atom_kind::jet || sig.is_parameter(a.name())) {
                continue;
            }
            has_jets = true;
            if (!dominates(r.lhs.indices(), a.indices(), lead)) {
                throw non_terminating_rule_error("rule " + r.lhs.to_string() + " -> " + r.rhs.to_string()
                                                 + " does not rank " + a.to_string() + " below its lhs");
            }
            for (const auto &o : *solved) {
                if (o.lhs.name() == a.name() && a.indices().contains(o.lhs.indices())) {
                    throw non_terminating_rule_error("rhs atom " + a.to_string() + " of " + r.lhs.to_string()
                                                     + " is reducible by " + o.lhs.to_string());
                }
            }
        }
        if (has_jets) {
            if (common_lead && *common_lead != lead) {
                throw non_terminating_rule_error("rules with jets on the right must share one leading direction");
            }
            common_lead = lead;
        }
    }
}

expr contract(const de_system &sys, const multiplier &q)
{
    expr out;
    for (const auto &[label, value] : q) {
        out += sys.equation(label) * value;
    }
    return out;
}

on_shell_reducer::on_shell_reducer(const de_system &sys) : m_sys(sys)
{
    if (!sys.solved) {
        throw no_solved_form_error("the system has no solved form");
    }
}

const solved_rule *on_shell_reducer::rule_for(const atom &a) const
{
    if (a.kind() != atom_kind::jet) {
        return nullptr;
    }
    for (const auto &r : *m_sys.solved) {
        if (r.lhs.name() == a.name() && a.indices().contains(r.lhs.indices())) {
            return &r;
        }
    }
    return nullptr;
}

std::optional<expr> on_shell_reducer::reduce_atom(const atom &a)
{
    if (auto it = m_memo.find(a); it != m_memo.end()) {
        return it->second;
    }
    std::optional<expr> value;
    if (const solved_rule *r = rule_for(a)) {
        if (a.indices() == r->lhs.indices()) {
            value = reduce(r->rhs);
        } else {
            const multi_index extra = a.indices().minus(r->lhs.indices());
            const std::string nu = extra.counts().front().first;
            const atom lower = atom::jet(a.name(), a.indices().plus(nu, -1));
            const expr base = reduce_atom(lower).value_or(expr(lower));
            value = reduce(total_derivative(m_sys.sig, base, nu));
        }
    }
    m_memo.emplace(a, value);
    return value;
}

expr on_shell_reducer::reduce(const expr &e)
{
    substitution rules;
    for (const auto &a : e.all_atoms()) {
        if (a.kind() != atom_kind::jet) {
            continue;
        }
        if (auto v = reduce_atom(a)) {
            rules.emplace(a, std::move(*v));
        }
    }
    return substitute(e, rules);
}

expr on_shell_reduce(const de_system &sys, const expr &e)
{
    on_shell_reducer r(sys);
    return r.reduce(e);
}

std::optional<expr> solve_for(const expr &F, const atom &lhs)
{
    const expr c = partial_atom(F, lhs);
    if (c.is_zero() || !c.is_coefficient()) {
        return std::nullopt;
    }
    const expr rest = F - c * expr(lhs);
    if (depends_on(rest, lhs)) {
        return std::nullopt;
    }
    return (-rest).scaled(c.as_coefficient().inverse());
}

expr specialize(const de_system &sys, const expr &e, const std::map<std::string, rational> &values)
{
    return specialize_constants(e, values, [&](const atom &a) { return sys.sig.allows_negative_power(a); });
}

current specialize(const de_system &sys, const current &J, const std::map<std::string, rational> &values)
{
    current out;
    for (const auto &c : J) {
        out.push_back(specialize(sys, c, values));
    }
    return out;
}

multiplier specialize(const de_system &sys, const multiplier &q, const std::map<std::string, rational> &values)
{
    multiplier out;
    for (const auto &[l, c] : q) {
        out[l] = specialize(sys, c, values);
    }
    return out;
}

characteristic specialize_characteristic(const de_system &sys, const characteristic &d,
                                         const std::map<std::string, rational> &values)
{
    characteristic out;
    for (const auto &[f, c] : d) {
        out[f] = specialize(sys, c, values);
    }
    return out;
}

de_system specialize(const de_system &sys, const std::map<std::string, rational> &values)
{
    de_system out = sys;
    for (auto &[l, F] : out.equations) {
        F = specialize(sys, F, values);
    }
    if (out.solved) {
        for (auto &r : *out.solved) {
            r.rhs = specialize(sys, r.rhs, values);
        }
    }
    return out;
}

} // namespace conslaw
