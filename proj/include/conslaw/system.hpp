#ifndef CONSLAW_SYSTEM_HPP
#define CONSLAW_SYSTEM_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <conslaw/expr.hpp>
#include <conslaw/jet.hpp>
#include <conslaw/signature.hpp>

namespace conslaw
{

// lhs -> rhs, with lhs a jet atom of a field.
struct solved_rule {
    atom lhs;
    expr rhs;
};

// Multiplier components by equation label.
using multiplier = std::map<std::string, expr>;

struct de_system {
    signature sig;
    std::vector<std::pair<std::string, expr>> equations;
    std::optional<std::vector<solved_rule>> solved;

    [[nodiscard]] const expr &equation(const std::string &label) const;
    [[nodiscard]] bool has_label(const std::string &label) const;
    [[nodiscard]] std::vector<std::string> labels() const;

    // Signature checks plus the ranking condition on the solved form.
    // Throws non_terminating_rule_error for rules that could loop.
    void validate() const;
};

// sum_a F^a q_a. Throws unknown_identifier_error for labels not in the system.
[[nodiscard]] expr contract(const de_system &sys, const multiplier &q);

// Rewrites modulo the solved form and its prolongations. Keeps a private memo,
// so one instance should not be shared between threads.
class on_shell_reducer
{
public:
    explicit on_shell_reducer(const de_system &sys);

    [[nodiscard]] expr reduce(const expr &e);
    // Reduced value of a jet atom, or nullopt if it is irreducible.
    [[nodiscard]] std::optional<expr> reduce_atom(const atom &a);

private:
    const solved_rule *rule_for(const atom &a) const;

    const de_system &m_sys;
    std::map<atom, std::optional<expr>> m_memo;
};

[[nodiscard]] expr on_shell_reduce(const de_system &sys, const expr &e);

// Solves an equation that is linear in lhs with a coefficient-valued factor.
[[nodiscard]] std::optional<expr> solve_for(const expr &F, const atom &lhs);

// Specializes constants throughout the system (equations and solved form).
[[nodiscard]] de_system specialize(const de_system &sys, const std::map<std::string, rational> &values);
[[nodiscard]] expr specialize(const de_system &sys, const expr &e, const std::map<std::string, rational> &values);
[[nodiscard]] current specialize(const de_system &sys, const current &J,
                                 const std::map<std::string, rational> &values);
[[nodiscard]] multiplier specialize(const de_system &sys, const multiplier &q,
                                    const std::map<std::string, rational> &values);
[[nodiscard]] characteristic specialize_characteristic(const de_system &sys, const characteristic &d,
                                                       const std::map<std::string, rational> &values);

} // namespace conslaw

#endif
