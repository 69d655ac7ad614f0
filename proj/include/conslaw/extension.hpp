#ifndef CONSLAW_EXTENSION_HPP
#define CONSLAW_EXTENSION_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <conslaw/embedding.hpp>
#include <conslaw/jet.hpp>
#include <conslaw/report.hpp>
#include <conslaw/system.hpp>

namespace conslaw
{

// F^a = 0 together with D_mu g_l = 0 for the promoted parameters g_l.
struct extended_system {
    de_system base;
    de_system system;
    std::vector<std::string> promoted;
    // (g_l, mu) -> label of the equation g_l[mu] = 0
    std::map<std::pair<std::string, std::string>, std::string> g_labels;
    // Scaling attached by trivial_extend (delta u = 0, delta g = g).
    std::optional<characteristic> scaling;
};

[[nodiscard]] extended_system extend_system(const de_system &sys, const std::vector<std::string> &params);

// Replaces positive-order jets of the promoted parameters by 0 (g constant).
[[nodiscard]] expr with_constant_parameters(const extended_system &ext, const expr &e);
[[nodiscard]] current with_constant_parameters(const extended_system &ext, const current &J);

struct parameterized_pair {
    multiplier q;
    current J;
    std::map<std::string, current> theta; // g_l -> dJ/dg_l
};

// theta computed from J, never supplied.
[[nodiscard]] parameterized_pair make_parameterized_pair(const extended_system &ext, const multiplier &q,
                                                         const current &J);

struct lift_result {
    multiplier lifted;
    parameterized_pair pair;
    report certificate;
};

// Throws precondition_error when (q, J) is not a pair of the base system.
[[nodiscard]] lift_result lift_parameterized_multiplier(const extended_system &ext, const multiplier &q,
                                                        const current &J);

struct theorem2_result {
    current j;
    parameterized_pair pair;
    current delta_J;
    current frozen_F; // j_(F~q)| of the base system (g constant)
    std::optional<coefficient> omega;
    // omega J - j reduced on shell; zero for gKdV, an identically conserved
    // current in general. Empty without omega or a solved form.
    std::optional<current> on_shell_excess;
    report certificate;
};

[[nodiscard]] theorem2_result theorem2_current(const extended_system &ext, const multiplier &q, const current &J,
                                               const characteristic &delta);

struct restricted_pair {
    multiplier q;
    current J;
    std::map<std::string, current> theta;
    report certificate;
};

// q~ is indexed by the labels of the extended system.
[[nodiscard]] restricted_pair restrict_multiplier(const extended_system &ext, const multiplier &q_ext,
                                                  const current &J_ext);

[[nodiscard]] report scc_check(const extended_system &ext, const multiplier &q, const characteristic &delta,
                               const coefficient &omega, const std::optional<current> &J = std::nullopt);

struct adjoint_current_result {
    multiplier adjoint;
    current j;
    report certificate;
};

[[nodiscard]] adjoint_current_result adjoint_from_current(const extended_system &ext, const current &theta,
                                                          const std::string &g, const characteristic &delta);

[[nodiscard]] extended_system trivial_extend(const de_system &sys, const std::string &g_stem = "g");

struct trivial_lift {
    multiplier lifted; // {g q, J}
    current current_gJ;
    report certificate;
};

[[nodiscard]] trivial_lift lift_trivial_multiplier(const extended_system &triv, const multiplier &q, const current &J);

struct trivial_projection {
    multiplier q;
    current theta;
    report certificate;
};

// From a multiplier {g q, theta} of the trivial extension back to (q, theta).
// If J is given, also certifies that g theta and J differ by an identically conserved current.
[[nodiscard]] trivial_projection project_trivial_multiplier(const extended_system &triv, const multiplier &lifted,
                                                            const std::optional<current> &J = std::nullopt);

// Monomials grouped by their weight under a diagonal characteristic.
using homogeneous_decomposition = std::map<coefficient, expr>;

[[nodiscard]] homogeneous_decomposition homogeneous_decompose(const signature &sig, const expr &e,
                                                              const characteristic &delta);
[[nodiscard]] std::map<coefficient, current> homogeneous_decompose(const signature &sig, const current &J,
                                                                   const characteristic &delta);

struct extension_plan {
    coefficient eta;
    coefficient rho;
    std::string g = "g";
};

struct inserted_parameter {
    de_system system;
    multiplier q;
    current J;
    characteristic scaling; // base scaling plus delta g = g
    report certificate;
};

// base_scaling defaults to delta u_i = u_i for every field.
[[nodiscard]] inserted_parameter insert_parameter(const de_system &sys, const multiplier &q, const current &J,
                                                  const extension_plan &plan,
                                                  const std::optional<characteristic> &base_scaling = std::nullopt);

// Rewrites g^(k*unit) as g^k (g^(-p) -> g) in an inserted system; the scaling
// of g becomes unit*g.
[[nodiscard]] inserted_parameter rescale_parameter_power(const inserted_parameter &in, const std::string &g,
                                                         const exponent &unit);
[[nodiscard]] expr rescale_parameter_power(const expr &e, const std::string &g, const exponent &unit);

// J(g) = J0 + integral from g0 to g of theta. theta must be polynomial in g.
[[nodiscard]] current current_from_theta(const current &theta, const current &J0, const std::string &g,
                                         const rational &g0 = 0);

} // namespace conslaw

#endif
