#include <conslaw/cli.hpp>

#include <chrono>
#include <functional>
#include <ostream>

#include <CLI11.hpp>

#include <conslaw/conservation.hpp>
#include <conslaw/document.hpp>
#include <conslaw/embedding.hpp>
#include <conslaw/errors.hpp>
#include <conslaw/examples.hpp>
#include <conslaw/extension.hpp>
#include <conslaw/noether.hpp>
#include <conslaw/render.hpp>
#include <conslaw/syntax.hpp>

namespace conslaw
{

namespace
{

struct options {
    std::string system;
    std::string q;
    std::string current;
    std::string current2;
    std::string chr;
    std::string omega;
    std::string lagrangian;
    std::string K;
    std::string bar;
    std::string hat;
    std::string expression;
    std::string g = "g";
    std::string eta = "1";
    std::string rho = "0";
    std::string unit;
    std::string example;
    std::vector<std::string> set;
    std::vector<std::string> params;
    std::vector<std::string> fields;
    bool json = false;
    bool weak = false;
    bool on_shell = false;
};

coefficient parse_coefficient(const signature &sig, const std::string &text, const std::string &what)
{
    const expr e = parse(sig, text);
    if (!e.is_coefficient()) {
        throw schema_error(what + " must be a constant: " + text);
    }
    return e.as_coefficient();
}

assignment parse_set(const std::vector<std::string> &items, const signature &sig)
{
    assignment out;
    for (const auto &s : items) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) {
            throw schema_error("--set expects name=value, got '" + s + "'");
        }
        const std::string name = s.substr(0, eq);
        const auto kind = sig.kind_of(name);
        if (kind != symbol_kind::constant && kind != symbol_kind::exponent_constant) {
            throw unknown_identifier_error("'" + name + "' is not a declared constant");
        }
        rational v;
        try {
            v = rational(s.substr(eq + 1));
        } catch (const std::invalid_argument &) {
            throw schema_error("--set value for " + name + " is not a rational");
        }
        if (v.get_den() == 0) {
            throw schema_error("--set value for " + name + " has a zero denominator");
        }
        v.canonicalize();
        out[name] = v;
    }
    return out;
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

class session
{
public:
    explicit session(const options &o) : m_opt(o) {}

    const system_document &doc()
    {
        if (!m_doc) {
            if (m_opt.system.empty()) {
                throw schema_error("--system is required");
            }
            system_document d = resolve_document(m_opt.system);
            m_doc = specialize(d, parse_set(m_opt.set, d.system.sig));
        }
        return *m_doc;
    }
    const de_system &sys()
    {
        return doc().system;
    }
    const signature &sig()
    {
        return sys().sig;
    }

    static const std::string &need(const std::string &v, const char *flag)
    {
        if (v.empty()) {
            throw schema_error(std::string(flag) + " is required");
        }
        return v;
    }
    const multiplier &q()
    {
        return doc().get_multiplier(need(m_opt.q, "--q"));
    }
    const current &J()
    {
        return doc().get_current(need(m_opt.current, "--current"));
    }
    const characteristic &delta()
    {
        return doc().get_characteristic(need(m_opt.chr, "--char"));
    }
    std::vector<std::string> params()
    {
        return m_opt.params.empty() ? doc().extension_parameters : m_opt.params;
    }
    extended_system ext()
    {
        const auto p = params();
        if (p.empty()) {
            throw schema_error("no parameters to promote (use --params or an [extension] table)");
        }
        return extend_system(sys(), p);
    }
    // The system on which a characteristic acts: extended when it moves parameters.
    bool needs_extension(const characteristic &d)
    {
        return touches_parameters(sig(), d);
    }

private:
    const options &m_opt;
    std::optional<system_document> m_doc;
};

using handler = std::function<report(session &, const options &)>;

std::vector<std::pair<std::string, handler>> handlers()
{
    std::vector<std::pair<std::string, handler>> h;
    h.emplace_back("determining", [](session &s, const options &) { return determining_report(s.sys(), s.q()); });
    h.emplace_back("verify-pair",
                   [](session &s, const options &) { return verify_multiplier_current_pair(s.sys(), s.q(), s.J()); });
    h.emplace_back("adjoint", [](session &s, const options &) { return check_adjoint_symmetry(s.sys(), s.q()); });
    h.emplace_back("symmetry", [](session &s, const options &) {
        const characteristic &d = s.delta();
        if (s.needs_extension(d)) {
            report r = check_system_symmetry(s.ext().system, d);
            r.command = "symmetry (extended system)";
            return r;
        }
        return check_system_symmetry(s.sys(), d);
    });
    h.emplace_back("embed-current", [](session &s, const options &) {
        const characteristic &d = s.delta();
        report r;
        r.command = "embed-current";
        if (s.needs_extension(d)) {
            const extended_system e = s.ext();
            r.outputs.emplace_back("j", render_current(e.system.sig, embedding_current(e.system, s.q(), d)));
        } else {
            r.outputs.emplace_back("j", render_current(s.sig(), embedding_current(s.sys(), s.q(), d)));
        }
        return r;
    });
    h.emplace_back("split", [](session &s, const options &) {
        const characteristic &d = s.delta();
        const split_currents c = split_embedding_current(s.sys(), s.q(), d);
        report r;
        r.command = "split";
        r.add(zero_check("j_(Fq) - j_(F~q) - j_(Fq~)", subtract(c.full, add(c.frozen_F, c.frozen_q))));
        r.outputs.emplace_back("j_(Fq)", render_current(s.sig(), c.full));
        r.outputs.emplace_back("j_(F~q)", render_current(s.sig(), c.frozen_F));
        r.outputs.emplace_back("j_(Fq~)", render_current(s.sig(), c.frozen_q));
        return r;
    });
    h.emplace_back("theorem1", [](session &s, const options &o) {
        const characteristic &d = s.delta();
        theorem1_result t;
        const signature *sig = &s.sig();
        extended_system e;
        if (s.needs_extension(d)) {
            e = s.ext();
            const lift_result lift = lift_parameterized_multiplier(e, s.q(), s.J());
            t = theorem1_certificate(e.system, lift.lifted, s.J(), d, o.weak);
            sig = &e.system.sig;
        } else {
            t = theorem1_certificate(s.sys(), s.q(), s.J(), d, o.weak);
        }
        t.certificate.outputs.emplace_back("delta J", render_current(*sig, t.delta_J));
        t.certificate.outputs.emplace_back("j_(F~q)", render_current(*sig, t.currents.frozen_F));
        t.certificate.outputs.emplace_back("j_(Fq~)", render_current(*sig, t.currents.frozen_q));
        return t.certificate;
    });
    h.emplace_back("extend", [](session &s, const options &) {
        const extended_system e = s.ext();
        report r;
        r.command = "extend";
        r.outputs.emplace_back("extended system", render_system(e.system));
        return r;
    });
    h.emplace_back("lift", [](session &s, const options &) {
        const extended_system e = s.ext();
        lift_result l = lift_parameterized_multiplier(e, s.q(), s.J());
        l.certificate.outputs.emplace_back("lifted multiplier", render_multiplier(l.lifted));
        for (const auto &[g, th] : l.pair.theta) {
            l.certificate.outputs.emplace_back("theta " + g, render_current(e.system.sig, th));
        }
        return l.certificate;
    });
    h.emplace_back("theorem2", [](session &s, const options &) {
        const extended_system e = s.ext();
        theorem2_result t = theorem2_current(e, s.q(), s.J(), s.delta());
        t.certificate.outputs.emplace_back("j", render_current(e.system.sig, t.j));
        t.certificate.outputs.emplace_back("j_(F~q) for constant g", render_current(e.base.sig, t.frozen_F));
        if (t.omega) {
            t.certificate.outputs.emplace_back("omega", std::vector<std::string>{t.omega->to_string()});
        }
        if (t.on_shell_excess) {
            t.certificate.outputs.emplace_back("on-shell omega J - j", render_current(e.system.sig, *t.on_shell_excess));
        }
        return t.certificate;
    });
    h.emplace_back("scc", [](session &s, const options &o) {
        const extended_system e = s.ext();
        std::optional<current> J;
        if (!o.current.empty()) {
            J = s.J();
        }
        return scc_check(e, s.q(), s.delta(), parse_coefficient(s.sig(), session::need(o.omega, "--omega"), "--omega"),
                         J);
    });
    h.emplace_back("trivial-extend", [](session &s, const options &o) {
        const extended_system t = trivial_extend(s.sys(), o.g);
        report r;
        r.command = "trivial-extend";
        if (!o.q.empty() && !o.current.empty()) {
            const trivial_lift l = lift_trivial_multiplier(t, s.q(), s.J());
            r.append(l.certificate, "lift: ");
            r.append(project_trivial_multiplier(t, l.lifted, s.J()).certificate, "project: ");
            const adjoint_current_result a = adjoint_from_current(t, s.J(), t.promoted.front(), *t.scaling);
            r.append(a.certificate, "embedding: ");
            r.outputs.emplace_back("lifted multiplier", render_multiplier(l.lifted));
            r.outputs.emplace_back("g J", render_current(t.system.sig, l.current_gJ));
        }
        r.outputs.emplace_back("extended system", render_system(t.system));
        return r;
    });
    h.emplace_back("insert-parameter", [](session &s, const options &o) {
        const signature &sig = s.sig();
        extension_plan plan{parse_coefficient(sig, o.eta, "--eta"), parse_coefficient(sig, o.rho, "--rho"), o.g};
        std::optional<characteristic> base;
        if (!o.chr.empty()) {
            base = s.delta();
        }
        inserted_parameter in = insert_parameter(s.sys(), s.q(), s.J(), plan, base);
        if (!o.unit.empty()) {
            signature with_g = sig;
            with_g.parameters.push_back(o.g);
            const exponent unit = exponent::from_coefficient(parse_coefficient(with_g, o.unit, "--unit"));
            report cert = in.certificate;
            in = rescale_parameter_power(in, o.g, unit);
            cert.append(in.certificate, "rescaled: ");
            in.certificate = cert;
        }
        report &r = in.certificate;
        r.outputs.emplace_back("system", render_system(in.system));
        r.outputs.emplace_back("q", render_multiplier(in.q));
        r.outputs.emplace_back("J", render_current(in.system.sig, in.J));
        std::vector<std::string> sc;
        for (const auto &[f, d] : in.scaling) {
            sc.push_back(f + ": " + d.to_string());
        }
        r.outputs.emplace_back("scaling", sc);
        return r;
    });
    h.emplace_back("weight", [](session &s, const options &o) {
        const characteristic &d = s.delta();
        std::vector<expr> items;
        if (!o.current.empty()) {
            items = s.J();
        } else if (!o.q.empty()) {
            for (const auto &[l, v] : s.q()) {
                items.push_back(v);
            }
        } else {
            items.push_back(parse(s.sig(), session::need(o.expression, "--current, --q or --expr")));
        }
        report r;
        r.command = "weight";
        std::optional<coefficient> w;
        bool ok = true;
        for (const auto &e : items) {
            if (e.is_zero()) {
                continue;
            }
            auto sw = scaling_weight(s.sig(), e, d);
            if (!sw || (w && *w != *sw)) {
                ok = false;
                break;
            }
            w = sw;
        }
        if (ok && !w) {
            w = coefficient(0);
        }
        r.add(check{"homogeneous", ok ? verdict::pass : verdict::fail, {}, {}});
        if (ok) {
            r.outputs.emplace_back("weight", std::vector<std::string>{w->to_string()});
        }
        return r;
    });
    h.emplace_back("equiv", [](session &s, const options &o) {
        const current &J2 = s.doc().get_current(session::need(o.current2, "--current2"));
        std::optional<equivalence_witness> w;
        if (!o.bar.empty() || !o.hat.empty()) {
            const std::size_t n = s.sig().independents.size();
            w = equivalence_witness{o.bar.empty() ? current(n) : s.doc().get_current(o.bar),
                                    o.hat.empty() ? current(n) : s.doc().get_current(o.hat)};
        }
        return currents_equivalent(s.sys(), s.J(), J2, w);
    });
    h.emplace_back("noether", [](session &s, const options &o) {
        const expr &L = s.doc().get_lagrangian(session::need(o.lagrangian, "--lagrangian"));
        const current K = o.K.empty() ? current(s.sig().independents.size()) : s.doc().get_current(o.K);
        const symmetry_witness w{s.delta(), K};
        noether_result n = noether_current(s.sig(), L, w, o.on_shell ? &s.sys() : nullptr);
        n.certificate.command = "noether";
        n.certificate.outputs.emplace_back("J", render_current(s.sig(), n.J));
        return n.certificate;
    });
    h.emplace_back("ibp", [](session &s, const options &o) {
        signature sig = s.sig();
        const expr L = o.lagrangian.empty() ? parse(sig, session::need(o.expression, "--expr or --lagrangian"))
                                            : s.doc().get_lagrangian(o.lagrangian);
        characteristic d;
        if (!o.chr.empty()) {
            d = s.delta();
        } else {
            const std::vector<std::string> fields = o.fields.empty() ? sig.fields : o.fields;
            for (const auto &u : fields) {
                if (!sig.is_field(u)) {
                    throw unknown_identifier_error("'" + u + "' is not a field");
                }
                const std::string eps = sig.fresh_name("eps_" + u);
                sig = sig.with_fields({eps});
                d[u] = expr(atom::jet(eps));
            }
        }
        const variation_parts parts = variation_split(sig, L, d);
        report r;
        r.command = "ibp";
        r.add(zero_check("delta L - E(L) delta u - D j",
                         variation(sig, L, d) - parts.euler_part - divergence(sig, parts.flux)));
        r.outputs.emplace_back("E(L) delta u", std::vector<std::string>{parts.euler_part.to_string()});
        r.outputs.emplace_back("j", render_current(sig, parts.flux));
        return r;
    });
    return h;
}

void emit(const report &r, const options &o, std::ostream &out)
{
    if (o.json) {
        out << render_json(r) << "\n";
    } else if (r.command == "weight" && r.passed()) {
        out << r.outputs.front().second.front() << "\n";
    } else {
        out << render_text(r);
    }
}

int exit_code(const report &r)
{
    return r.passed() ? 0 : 1;
}

} // namespace

int run_command(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Conservation-law multipliers and the embedding method", "conslaw"};
    app.require_subcommand(1);
    options o;
    auto common = [&](CLI::App *sub) {
        sub->add_option("--system", o.system, "system document: path or registry name");
        sub->add_option("--q", o.q, "multiplier name");
        sub->add_option("--current", o.current, "current name");
        sub->add_option("--char", o.chr, "characteristic name");
        sub->add_option("--omega", o.omega, "weight");
        sub->add_option("--set", o.set, "constant=value")->take_all();
        sub->add_flag("--json", o.json, "machine-readable report");
    };

    const auto table = handlers();
    std::string chosen;
    for (const auto &[name, fn] : table) {
        CLI::App *sub = app.add_subcommand(name);
        common(sub);
        if (name == "theorem1") {
            sub->add_flag("--weak", o.weak, "accept characteristics with delta(F q) = 0 on shell");
        }
        if (name == "extend" || name == "lift" || name == "theorem2" || name == "scc" || name == "symmetry"
            || name == "embed-current" || name == "theorem1") {
            sub->add_option("--params", o.params, "parameters to promote");
        }
        if (name == "trivial-extend" || name == "insert-parameter") {
            sub->add_option("--g", o.g, "name of the new parameter");
        }
        if (name == "insert-parameter") {
            sub->add_option("--eta", o.eta, "weight of F");
            sub->add_option("--rho", o.rho, "weight of q");
            sub->add_option("--unit", o.unit, "rewrite g^(k*unit) as g^k");
        }
        if (name == "weight" || name == "ibp") {
            sub->add_option("--expr", o.expression, "expression");
        }
        if (name == "equiv") {
            sub->add_option("--current2", o.current2, "second current");
            sub->add_option("--bar", o.bar, "identically conserved part");
            sub->add_option("--hat", o.hat, "part vanishing on shell");
        }
        if (name == "noether" || name == "ibp") {
            sub->add_option("--lagrangian", o.lagrangian, "Lagrangian name");
        }
        if (name == "noether") {
            sub->add_option("--K", o.K, "current K with delta L = D K");
            sub->add_flag("--on-shell", o.on_shell, "check the symmetry modulo the solved form");
        }
        if (name == "ibp") {
            sub->add_option("--fields", o.fields, "fields varied with symbolic eps");
        }
        sub->callback([&chosen, name = name] { chosen = name; });
    }
    CLI::App *examples = app.add_subcommand("examples", "shipped example systems");
    examples->require_subcommand(1);
    CLI::App *run = examples->add_subcommand("run", "run every check of an example, or all");
    run->add_option("name", o.example, "registry name or all")->required();
    run->add_flag("--json", o.json, "machine-readable report");
    run->callback([&chosen] { chosen = "examples run"; });
    CLI::App *list = examples->add_subcommand("list", "list the registry");
    list->callback([&chosen] { chosen = "examples list"; });

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError &e) {
        err << e.what() << "\n";
        return 2;
    }
    for (const auto *sub : app.get_subcommands()) {
        if (sub->get_name() != "examples" && sub->count("--help")) {
            return 0;
        }
    }

    const auto start = std::chrono::steady_clock::now();
    try {
        if (chosen == "examples list") {
            for (const auto &n : registry_names()) {
                out << n << "\n";
            }
            return 0;
        }
        report r;
        if (chosen == "examples run") {
            if (o.example == "all") {
                r = run_examples(registry_names());
                r.command = "examples run all";
            } else {
                r = run_example(resolve_document(o.example));
            }
        } else {
            session s(o);
            for (const auto &[name, fn] : table) {
                if (name == chosen) {
                    try {
                        r = fn(s, o);
                    } catch (const precondition_error &e) {
                        r = report{};
                        r.add(check{"precondition", verdict::fail, {e.what()}, {}});
                    }
                    r.command = name;
                }
            }
            r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        }
        emit(r, o, out);
        return exit_code(r);
    } catch (const error &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace conslaw
