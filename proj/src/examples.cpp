#include <conslaw/examples.hpp>

#include <chrono>
#include <functional>
#include <future>

#include <conslaw/conservation.hpp>
#include <conslaw/embedding.hpp>
#include <conslaw/errors.hpp>
#include <conslaw/extension.hpp>
#include <conslaw/noether.hpp>

namespace conslaw
{

namespace
{

// Runs body, turning a failed precondition into a failing check.
void guarded(report &r, const std::string &prefix, const std::function<void()> &body)
{
    try {
        body();
    } catch (const precondition_error &e) {
        r.add(check{prefix + "precondition", verdict::fail, {e.what()}, {}});
    }
}

bool touches_parameters(const signature &sig, const characteristic &d)
{
    for (const auto &[f, v] : d) {
        if (sig.is_parameter(f) && !v.is_zero()) {
            return true;
        }
    }
    return false;
}

void run_pair(report &r, const system_document &doc, const pair_entry &p)
{
    const std::string pre = p.name + ": ";
    const system_document d = specialize(doc, doc.assignment_for({p.q, p.current}));
    const de_system &sys = d.system;
    const multiplier &q = d.get_multiplier(p.q);
    const current &J = d.get_current(p.current);

    r.append(determining_report(sys, q), pre + "determining: ");
    r.append(verify_multiplier_current_pair(sys, q, J), pre + "pair: ");
    r.append(is_conserved_on_shell(sys, J), pre + "conserved: ");
    r.append(multiplier_symmetry_check(sys, q, J).certificate, pre + "multiplier symmetry: ");
    r.append(check_adjoint_symmetry(sys, q), pre + "multiplier is adjoint symmetry: ");

    std::optional<extended_system> ext;
    if (!d.extension_parameters.empty()) {
        ext = extend_system(sys, d.extension_parameters);
    }

    auto theorem1 = [&](const std::string &name, bool weak) {
        const characteristic &delta = d.get_characteristic(name);
        const std::string tag = pre + "theorem1 " + name + ": ";
        guarded(r, tag, [&] {
            if (touches_parameters(sys.sig, delta)) {
                if (!ext) {
                    throw precondition_error("characteristic acts on parameters but the document has no extension");
                }
                const lift_result lift = lift_parameterized_multiplier(*ext, q, J);
                r.append(theorem1_certificate(ext->system, lift.lifted, J, delta, weak).certificate, tag);
            } else {
                r.append(theorem1_certificate(sys, q, J, delta, weak).certificate, tag);
            }
        });
    };
    for (const auto &s : p.symmetries) {
        theorem1(s, false);
    }
    for (const auto &s : p.weak) {
        theorem1(s, true);
    }

    guarded(r, pre + "trivial extension: ", [&] {
        const extended_system triv = trivial_extend(sys);
        const trivial_lift lift = lift_trivial_multiplier(triv, q, J);
        r.append(lift.certificate, pre + "trivial lift: ");
        const trivial_projection proj = project_trivial_multiplier(triv, lift.lifted, J);
        r.append(proj.certificate, pre + "trivial projection: ");
        std::vector<expr> round;
        for (const auto &[label, v] : q) {
            round.push_back(proj.q.at(label) - v);
        }
        for (const auto &c : subtract(proj.theta, J)) {
            round.push_back(c);
        }
        r.add(zero_check(pre + "trivial round trip", round));
        const adjoint_current_result adj = adjoint_from_current(triv, J, triv.promoted.front(), *triv.scaling);
        r.append(adj.certificate, pre + "trivial embedding: ");
        r.add(zero_check(pre + "trivial embedding current is g J",
                         subtract(adj.j, multiply(expr(atom::jet(triv.promoted.front())), J))));
        multiplier both = q;
        const auto &ind = triv.system.sig.independents;
        for (std::size_t m = 0; m < ind.size(); ++m) {
            both[triv.g_labels.at({triv.promoted.front(), ind[m]})] = J[m];
        }
        r.append(check_adjoint_symmetry(triv.system, both), pre + "trivial adjoint {q, J}: ");
    });

    if (!p.theorem2 || !ext) {
        return;
    }
    const std::string tag = pre + "theorem2: ";
    guarded(r, tag, [&] {
        const characteristic &delta = d.get_characteristic(*p.theorem2);
        const theorem2_result t2 = theorem2_current(*ext, q, J, delta);
        r.append(t2.certificate, tag);
        const current j = with_constant_parameters(*ext, t2.j);
        if (t2.omega) {
            current bar(J.size());
            if (p.bar) {
                bar = d.get_current(*p.bar);
                r.add(zero_check(tag + "bar identically conserved", divergence(sys.sig, bar)));
                std::vector<expr> dg;
                for (const auto &g : ext->promoted) {
                    for (const auto &c : bar) {
                        dg.push_back(partial_atom(c, atom::jet(g)));
                    }
                }
                r.add(zero_check(tag + "bar is free of the parameters", dg));
            }
            r.add(zero_check(tag + "omega J - j - j_(F~q) - bar for constant g",
                             subtract(subtract(subtract(scale(J, *t2.omega), j), t2.frozen_F), bar)));
            if (t2.on_shell_excess) {
                r.add(zero_check(tag + "on-shell omega J - j - bar", subtract(*t2.on_shell_excess, bar)));
            }
            r.append(scc_check(*ext, q, delta, *t2.omega, J), tag + "scc: ");
        } else {
            r.add(check{tag + "J has a scaling weight", verdict::fail, {"no common weight"}, {}});
        }
        if (p.j_expected) {
            r.add(zero_check(tag + "j matches the expected current for constant g",
                             subtract(j, d.get_current(*p.j_expected))));
        }
        const lift_result lift = lift_parameterized_multiplier(*ext, q, J);
        const restricted_pair back = restrict_multiplier(*ext, lift.lifted, J);
        r.append(back.certificate, tag + "restrict: ");
        std::vector<expr> same;
        for (const auto &[label, v] : q) {
            same.push_back(back.q.at(label) - v);
        }
        for (const auto &c : subtract(back.J, J)) {
            same.push_back(c);
        }
        for (const auto &g : ext->promoted) {
            for (const auto &c : subtract(back.theta.at(g), lift.pair.theta.at(g))) {
                same.push_back(c);
            }
        }
        r.add(zero_check(tag + "restriction recovers the pair", same));
        for (const auto &g : ext->promoted) {
            const adjoint_current_result adj = adjoint_from_current(*ext, J, g, delta);
            r.append(adj.certificate, tag + "adjoint from J via " + g + ": ");
        }
    });
}

void run_noether(report &r, const system_document &doc, const noether_entry &n)
{
    const std::string tag = n.name + ": ";
    guarded(r, tag, [&] {
        const expr &L = doc.get_lagrangian(n.lagrangian);
        const symmetry_witness w{doc.get_characteristic(n.characteristic), doc.get_current(n.K)};
        const de_system *on_shell = n.on_shell ? &doc.system : nullptr;
        r.append(check_lagrangian_symmetry(doc.system.sig, L, w, on_shell), tag + "symmetry of L: ");
        const noether_result res = noether_current(doc.system.sig, L, w, on_shell);
        r.append(res.certificate, tag + "noether: ");
        r.append(is_conserved_on_shell(doc.system, res.J), tag + "conserved: ");
        if (n.expected) {
            r.add(zero_check(tag + "matches the expected current", subtract(res.J, doc.get_current(*n.expected))));
        }
    });
}

} // namespace

report run_example(const system_document &doc)
{
    const auto start = std::chrono::steady_clock::now();
    report r;
    r.command = "examples run " + doc.name;
    const de_system &sys = doc.system;

    for (const auto &s : doc.symmetries) {
        const characteristic &delta = doc.get_characteristic(s);
        if (touches_parameters(sys.sig, delta) && !doc.extension_parameters.empty()) {
            r.append(check_system_symmetry(extend_system(sys, doc.extension_parameters).system, delta),
                     "symmetry " + s + " (extended): ");
        } else {
            r.append(check_system_symmetry(sys, delta), "symmetry " + s + ": ");
        }
    }
    if (doc.euler_lagrange) {
        const auto &[name, labels] = *doc.euler_lagrange;
        const expr &L = doc.get_lagrangian(name);
        for (std::size_t i = 0; i < labels.size() && i < sys.sig.fields.size(); ++i) {
            r.add(zero_check("E_" + sys.sig.fields[i] + "(" + name + ") - " + labels[i],
                             euler_lagrange(sys.sig, L, sys.sig.fields[i]) - sys.equation(labels[i])));
        }
    }
    for (const auto &p : doc.pairs) {
        run_pair(r, doc, p);
    }
    for (const auto &n : doc.noether) {
        run_noether(r, doc, n);
    }
    r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

report run_examples(const std::vector<std::string> &names)
{
    const auto start = std::chrono::steady_clock::now();
    std::vector<std::future<report>> jobs;
    for (const auto &n : names) {
        jobs.push_back(std::async(std::launch::async, [n] { return run_example(resolve_document(n)); }));
    }
    report r;
    r.command = "examples run";
    for (std::size_t i = 0; i < names.size(); ++i) {
        r.append(jobs[i].get(), names[i] + ": ");
    }
    r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

} // namespace conslaw
