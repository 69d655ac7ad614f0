#include <conslaw/conservation.hpp>

#include <conslaw/embedding.hpp>
#include <conslaw/errors.hpp>

namespace conslaw
{

std::map<std::string, expr> multiplier_determining(const de_system &sys, const multiplier &q)
{
    const expr Fq = contract(sys, q);
    std::map<std::string, expr> out;
    for (const auto &u : sys.sig.fields) {
        out[u] = euler_lagrange(sys.sig, Fq, u);
    }
    return out;
}

report determining_report(const de_system &sys, const multiplier &q)
{
    report r;
    r.command = "determining";
    for (const auto &[u, e] : multiplier_determining(sys, q)) {
        r.add(zero_check("E_" + u + "(F q)", e));
    }
    return r;
}

report verify_multiplier_current_pair(const de_system &sys, const multiplier &q, const current &J)
{
    report r;
    r.command = "verify-pair";
    r.add(zero_check("F q - D J", contract(sys, q) - divergence(sys.sig, J)));
    return r;
}

report is_conserved_on_shell(const de_system &sys, const current &J)
{
    report r;
    r.command = "conserved";
    const expr div = divergence(sys.sig, J);
    if (div.is_zero()) {
        r.add(zero_check("identically conserved", div));
        return r;
    }
    r.add(zero_check("on-shell divergence", on_shell_reduce(sys, div)));
    return r;
}

report currents_equivalent(const de_system &sys, const current &J1, const current &J2,
                           const std::optional<equivalence_witness> &witness)
{
    report r;
    r.command = "equiv";
    const current diff = subtract(J1, J2);
    if (!witness) {
        check c = zero_check("on-shell divergence of J1 - J2", on_shell_reduce(sys, divergence(sys.sig, diff)));
        if (c.result == verdict::pass) {
            c.result = verdict::necessary_only;
        }
        r.add(std::move(c));
        return r;
    }
    r.add(zero_check("J1 - J2 - bar - hat", subtract(subtract(diff, witness->bar), witness->hat)));
    r.add(zero_check("bar identically conserved", divergence(sys.sig, witness->bar)));
    if (is_zero(witness->hat)) {
        r.add(zero_check("hat vanishes on shell", witness->hat));
    } else {
        on_shell_reducer red(sys);
        std::vector<expr> reduced;
        for (const auto &c : witness->hat) {
            reduced.push_back(red.reduce(c));
        }
        r.add(zero_check("hat vanishes on shell", reduced));
    }
    return r;
}

current current_from_homogeneity(const de_system &sys, const multiplier &q, const characteristic &delta,
                                 const coefficient &omega)
{
    if (omega.is_zero()) {
        throw zero_weight_error("the weight omega must be nonzero");
    }
    const expr Fq = contract(sys, q);
    if (!(variation(sys.sig, Fq, delta) - Fq.scaled(omega)).is_zero()) {
        throw not_homogeneous_error("F q is not homogeneous of weight " + omega.to_string());
    }
    return scale(multiplier_current(sys, q, delta), omega.inverse());
}

} // namespace conslaw
