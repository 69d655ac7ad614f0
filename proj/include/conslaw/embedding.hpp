#ifndef CONSLAW_EMBEDDING_HPP
#define CONSLAW_EMBEDDING_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>

#include <conslaw/jet.hpp>
#include <conslaw/report.hpp>
#include <conslaw/system.hpp>

namespace conslaw
{

// Formal Lagrangian sum_a F^a rho_a with rho_a new fields (label -> field name).
struct auxiliary {
    signature sig;
    std::map<std::string, std::string> rho; // label -> field
    expr lagrangian;
};

// rho_names may be partial; missing labels get fresh names.
[[nodiscard]] auxiliary auxiliary_lagrangian(const de_system &sys,
                                             const std::map<std::string, std::string> &rho_names = {});

// E^i(F^a rho_a) for every field u_i of the system, in terms of the rho fields of aux.
[[nodiscard]] std::map<std::string, expr> adjoint_determining(const de_system &sys, const auxiliary &aux);

[[nodiscard]] report check_adjoint_symmetry(const de_system &sys, const multiplier &rho);

[[nodiscard]] report check_system_symmetry(const de_system &sys, const characteristic &delta);

// Current of the embedding method: rho treated as independent fields while
// integrating by parts, then replaced by the prolonged values.
[[nodiscard]] current embedding_current(const de_system &sys, const multiplier &rho, const characteristic &delta);

// Same with symbolic rho fields left in place.
[[nodiscard]] std::pair<auxiliary, current> symbolic_embedding_current(const de_system &sys,
                                                                       const characteristic &delta);

struct split_currents {
    current frozen_F; // j_(F~q)|, built from d q / d u_J
    current frozen_q; // j_(Fq~)|, the embedding current with rho = q
    current full;     // j_(Fq)
};

[[nodiscard]] split_currents split_embedding_current(const de_system &sys, const multiplier &q,
                                                     const characteristic &delta);

// j_(Fq) alone.
[[nodiscard]] current multiplier_current(const de_system &sys, const multiplier &q, const characteristic &delta);

struct theorem1_result {
    report certificate;
    split_currents currents;
    current delta_J;
};

// weak: accept delta when only delta(F^a q_a) vanishes on shell.
[[nodiscard]] theorem1_result theorem1_certificate(const de_system &sys, const multiplier &q, const current &J,
                                                   const characteristic &delta, bool weak = false);

// Current with delta u_i replaced by fresh fields v_i; rho symbolic when rho is empty.
struct linearization_result {
    signature sig;
    std::map<std::string, std::string> v; // u -> v
    auxiliary aux;                        // rho fields (used only when symbolic)
    current j;
};
[[nodiscard]] linearization_result linearization_current(const de_system &sys,
                                                         const std::map<std::string, std::string> &v_names,
                                                         const std::optional<multiplier> &rho);

struct multiplier_symmetry_result {
    report certificate;
    current noether; // -J
};
[[nodiscard]] multiplier_symmetry_result multiplier_symmetry_check(const de_system &sys, const multiplier &q,
                                                                   const current &J);

} // namespace conslaw

#endif
