#ifndef CONSLAW_NOETHER_HPP
#define CONSLAW_NOETHER_HPP

#include <map>
#include <optional>
#include <string>

#include <conslaw/jet.hpp>
#include <conslaw/report.hpp>
#include <conslaw/system.hpp>

namespace conslaw
{

// Coefficients G_alpha^J of D_J eps^alpha, keyed by eps name and symmetric multi-index.
using ibp_slots = std::map<std::string, std::map<multi_index, expr>>;

struct ibp_result {
    std::map<std::string, expr> hat; // sum_J (-D)_J G^J
    current flux;                    // the boundary current
};

// Flux of the integration by parts for given eps values:
// G^mu = sum_J sum_{A <= J - mu} (-1)^|A| m(A) m(J-mu-A) / m(J) D_A(G^J) D_{J-mu-A}(eps),
// with m the multinomial multiplicity of a multi-index.
[[nodiscard]] current ibp_flux(const signature &sig, const ibp_slots &slots,
                               const std::map<std::string, expr> &eps);

// Symbolic eps: the keys of slots must be fields of sig.
[[nodiscard]] ibp_result ibp_split(const signature &sig, const ibp_slots &slots);

// Slots d e / d u_J for every jet of the listed fields.
[[nodiscard]] ibp_slots jet_slots(const expr &e, const std::vector<std::string> &fields);

struct variation_parts {
    expr euler_part; // sum_i E^i(L) delta u_i
    current flux;    // j
};

[[nodiscard]] variation_parts variation_split(const signature &sig, const expr &L, const characteristic &delta);

struct symmetry_witness {
    characteristic delta;
    current K;
};

// Off-shell when on_shell is empty; otherwise the residual is reduced modulo
// the solved form of the supplied Euler-Lagrange system.
[[nodiscard]] report check_lagrangian_symmetry(const signature &sig, const expr &L, const symmetry_witness &w,
                                               const de_system *on_shell = nullptr);

// J = j - K. Throws precondition_error when the symmetry check fails; the
// report certifies D_mu J^mu + E^i(L) delta u_i = 0 in off-shell mode.
struct noether_result {
    current J;
    report certificate;
};
[[nodiscard]] noether_result noether_current(const signature &sig, const expr &L, const symmetry_witness &w,
                                             const de_system *on_shell = nullptr);

} // namespace conslaw

#endif
