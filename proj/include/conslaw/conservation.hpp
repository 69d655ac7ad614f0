#ifndef CONSLAW_CONSERVATION_HPP
#define CONSLAW_CONSERVATION_HPP

#include <map>
#include <optional>
#include <string>

#include <conslaw/jet.hpp>
#include <conslaw/report.hpp>
#include <conslaw/system.hpp>

namespace conslaw
{

// E^i(sum_a F^a q_a) for every field of the system.
[[nodiscard]] std::map<std::string, expr> multiplier_determining(const de_system &sys, const multiplier &q);

[[nodiscard]] report determining_report(const de_system &sys, const multiplier &q);

// Off-shell check of F^a q_a = D_mu J^mu.
[[nodiscard]] report verify_multiplier_current_pair(const de_system &sys, const multiplier &q, const current &J);

// Identically conserved currents pass without a solved form.
[[nodiscard]] report is_conserved_on_shell(const de_system &sys, const current &J);

struct equivalence_witness {
    current bar; // identically conserved part
    current hat; // part vanishing on shell
};

[[nodiscard]] report currents_equivalent(const de_system &sys, const current &J1, const current &J2,
                                         const std::optional<equivalence_witness> &witness);

// (1/omega) j_(Fq), after checking delta(F q) = omega F q off-shell.
[[nodiscard]] current current_from_homogeneity(const de_system &sys, const multiplier &q,
                                               const characteristic &delta, const coefficient &omega);

} // namespace conslaw

#endif
