#include <conslaw/noether.hpp>

#include <conslaw/errors.hpp>

namespace conslaw
{

namespace
{

// D_J of a fixed expression, built incrementally.
class derivatives
{
public:
    derivatives(const signature &sig, expr base) : m_sig(sig)
    {
        m_cache.emplace(multi_index{}, std::move(base));
    }

    const expr &at(const multi_index &J)
    {
        if (auto it = m_cache.find(J); it != m_cache.end()) {
            return it->second;
        }
        const auto dirs = J.directions();
        expr d = total_derivative(m_sig, at(J.plus(dirs.back(), -1)), dirs.back());
        return m_cache.emplace(J, std::move(d)).first->second;
    }

private:
    const signature &m_sig;
    std::map<multi_index, expr> m_cache;
};

} // namespace

current ibp_flux(const signature &sig, const ibp_slots &slots, const std::map<std::string, expr> &eps)
{
    current out(sig.independents.size());
    for (const auto &[alpha, by_index] : slots) {
        auto e = eps.find(alpha);
        if (e == eps.end() || e->second.is_zero()) {
            continue;
        }
        derivatives deps(sig, e->second);
        for (const auto &[J, G] : by_index) {
            if (J.empty() || G.is_zero()) {
                continue;
            }
            derivatives dG(sig, G);
            const rational mJ = J.multiplicity();
            for (std::size_t mu = 0; mu < sig.independents.size(); ++mu) {
                const std::string &d = sig.independents[mu];
                if (J.count(d) == 0) {
                    continue;
                }
                const multi_index rest = J.plus(d, -1);
                for (const auto &A : rest.sub_indices()) {
                    const multi_index B = rest.minus(A);
                    rational w = A.multiplicity() * B.multiplicity() / mJ;
                    if (A.order() % 2 == 1) {
                        w = -w;
                    }
                    out[mu] += (dG.at(A) * deps.at(B)).scaled(coefficient(w));
                }
            }
        }
    }
    return out;
}

ibp_result ibp_split(const signature &sig, const ibp_slots &slots)
{
    ibp_result r;
    std::map<std::string, expr> eps;
    for (const auto &[alpha, by_index] : slots) {
        eps[alpha] = expr(sig.field_atom(alpha));
        expr h;
        for (const auto &[J, G] : by_index) {
            expr d = total_derivative(sig, G, J);
            if (J.order() % 2 == 1) {
                h -= d;
            } else {
                h += d;
            }
        }
        r.hat[alpha] = h;
    }
    r.flux = ibp_flux(sig, slots, eps);
    return r;
}

ibp_slots jet_slots(const expr &e, const std::vector<std::string> &fields)
{
    ibp_slots out;
    for (const auto &f : fields) {
        auto &slot = out[f];
        for (const auto &a : jets_of(e, f)) {
            expr p = partial_atom(e, a);
            if (!p.is_zero()) {
                slot[a.indices()] = std::move(p);
            }
        }
    }
    return out;
}

variation_parts variation_split(const signature &sig, const expr &L, const characteristic &delta)
{
    variation_parts out;
    std::vector<std::string> fields;
    std::map<std::string, expr> eps;
    for (const auto &[f, d] : delta) {
        if (d.is_zero()) {
            continue;
        }
        fields.push_back(f);
        eps[f] = d;
        out.euler_part += euler_lagrange(sig, L, f) * d;
    }
    out.flux = ibp_flux(sig, jet_slots(L, fields), eps);
    return out;
}

report check_lagrangian_symmetry(const signature &sig, const expr &L, const symmetry_witness &w,
                                 const de_system *on_shell)
{
    report r;
    r.command = "symmetry-of-lagrangian";
    expr residual = variation(sig, L, w.delta) - divergence(sig, w.K);
    if (on_shell) {
        r.add(zero_check("on-shell dL - D K", on_shell_reduce(*on_shell, residual)));
    } else {
        r.add(zero_check("dL - D K", residual));
    }
    return r;
}

noether_result noether_current(const signature &sig, const expr &L, const symmetry_witness &w,
                               const de_system *on_shell)
{
    noether_result out;
    out.certificate = check_lagrangian_symmetry(sig, L, w, on_shell);
    if (!out.certificate.passed()) {
        throw precondition_error("the characteristic is not a symmetry of the Lagrangian with the given K");
    }
    const variation_parts parts = variation_split(sig, L, w.delta);
    out.J = subtract(parts.flux, w.K);
    if (!on_shell) {
        out.certificate.add(zero_check("D J + E(L) delta u", divergence(sig, out.J) + parts.euler_part));
    }
    return out;
}

} // namespace conslaw
