#ifndef CONSLAW_JET_HPP
#define CONSLAW_JET_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <conslaw/expr.hpp>
#include <conslaw/signature.hpp>

namespace conslaw
{

// Evolutionary characteristic: field (or parameter) name -> delta u. Missing entries are 0.
using characteristic = std::map<std::string, expr>;

// Current components indexed like sig.independents.
using current = std::vector<expr>;

[[nodiscard]] expr total_derivative(const signature &sig, const expr &e, const std::string &mu);
[[nodiscard]] expr total_derivative(const signature &sig, const expr &e, const multi_index &J);

// delta e = sum over jets u_J of d e / d u_J * D_J delta u.
[[nodiscard]] expr variation(const signature &sig, const expr &e, const characteristic &delta);

// Euler operator sum_J (-D)_J d e / d u_J over the distinct multi-indices present.
[[nodiscard]] expr euler_lagrange(const signature &sig, const expr &e, const std::string &field);

// s with variation(e, delta) = s e, if such a coefficient exists. The zero
// expression has weight 0.
[[nodiscard]] std::optional<coefficient> scaling_weight(const signature &sig, const expr &e,
                                                        const characteristic &delta);

[[nodiscard]] bool is_total_divergence(const signature &sig, const expr &e);

// Extends sig by the fresh fields and returns G^a = variation(F^a, u_i -> v_i).
[[nodiscard]] std::pair<signature, std::vector<expr>> linearize(const signature &sig, const std::vector<expr> &F,
                                                                const std::map<std::string, std::string> &fresh);

// Replaces every jet of the listed fields by the matching total derivative
// of its value (u_J -> D_J value).
[[nodiscard]] expr prolonged_substitute(const signature &sig, const expr &e,
                                        const std::map<std::string, expr> &values);

[[nodiscard]] expr divergence(const signature &sig, const current &J);

// Jet atoms of the field that occur anywhere in e (function arguments included).
[[nodiscard]] std::vector<atom> jets_of(const expr &e, const std::string &field);

[[nodiscard]] current add(const current &a, const current &b);
[[nodiscard]] current subtract(const current &a, const current &b);
[[nodiscard]] current scale(const current &a, const coefficient &c);
[[nodiscard]] current multiply(const expr &f, const current &a);
[[nodiscard]] bool is_zero(const current &J);

} // namespace conslaw

#endif
