#include <conslaw/document.hpp>

#include <fstream>
#include <sstream>

#include <toml.hpp>

#include <conslaw/errors.hpp>
#include <conslaw/syntax.hpp>

namespace conslaw
{

namespace
{

struct reader {
    std::string origin;
    signature sig;

    [[noreturn]] void fail(const std::string &path, const std::string &msg) const
    {
        throw schema_error(origin + ": " + path + ": " + msg);
    }

    const toml::table *table_at(const toml::table &root, const std::string &key, bool required) const
    {
        const toml::node *n = root.get(key);
        if (!n) {
            if (required) {
                fail(key, "missing table");
            }
            return nullptr;
        }
        const toml::table *t = n->as_table();
        if (!t) {
            fail(key, "expected a table");
        }
        return t;
    }

    std::string string_of(const toml::node &n, const std::string &path) const
    {
        if (auto s = n.value<std::string>(); s && n.is_string()) {
            return *s;
        }
        fail(path, "expected a string");
    }

    std::vector<std::string> strings_of(const toml::node &n, const std::string &path) const
    {
        const toml::array *a = n.as_array();
        if (!a) {
            fail(path, "expected an array of strings");
        }
        std::vector<std::string> out;
        for (std::size_t i = 0; i < a->size(); ++i) {
            out.push_back(string_of(*a->get(i), path + "[" + std::to_string(i) + "]"));
        }
        return out;
    }

    std::vector<std::string> optional_strings(const toml::table &t, const std::string &key,
                                              const std::string &path) const
    {
        const toml::node *n = t.get(key);
        return n ? strings_of(*n, path + "." + key) : std::vector<std::string>{};
    }

    std::optional<std::string> optional_string(const toml::table &t, const std::string &key,
                                               const std::string &path) const
    {
        const toml::node *n = t.get(key);
        if (!n) {
            return std::nullopt;
        }
        return string_of(*n, path + "." + key);
    }

    rational rational_of(const toml::node &n, const std::string &path) const
    {
        if (auto i = n.value<int64_t>(); i && n.is_integer()) {
            return rational(static_cast<long>(*i));
        }
        if (n.is_string()) {
            try {
                rational r(*n.value<std::string>());
                if (r.get_den() != 0) {
                    r.canonicalize();
                    return r;
                }
            } catch (const std::invalid_argument &) {
            }
        }
        fail(path, "expected an integer or a rational string");
    }

    expr expr_of(const toml::node &n, const std::string &path) const
    {
        const std::string text = string_of(n, path);
        try {
            return parse(sig, text);
        } catch (const syntax_error &e) {
            throw syntax_error(origin + ": " + path + ": " + e.what(), e.position());
        } catch (const schema_error &) {
            throw;
        } catch (const error &e) {
            rethrow_with_path(e, path);
        }
    }

    // Keeps the error type while prefixing the key path.
    [[noreturn]] void rethrow_with_path(const error &e, const std::string &path) const
    {
        const std::string msg = origin + ": " + path + ": " + e.what();
        if (dynamic_cast<const unknown_identifier_error *>(&e)) {
            throw unknown_identifier_error(msg);
        }
        if (dynamic_cast<const division_by_expr_error *>(&e)) {
            throw division_by_expr_error(msg);
        }
        if (dynamic_cast<const exponent_error *>(&e)) {
            throw exponent_error(msg);
        }
        if (dynamic_cast<const derivative_of_parameter_error *>(&e)) {
            throw derivative_of_parameter_error(msg);
        }
        if (dynamic_cast<const pole_error *>(&e)) {
            throw pole_error(msg);
        }
        throw schema_error(msg);
    }

    current current_of(const toml::node &n, const std::string &path) const
    {
        const toml::array *a = n.as_array();
        if (!a) {
            fail(path, "expected an array of component expressions");
        }
        if (a->size() != sig.independents.size()) {
            fail(path, "expected " + std::to_string(sig.independents.size()) + " components");
        }
        current J;
        for (std::size_t i = 0; i < a->size(); ++i) {
            J.push_back(expr_of(*a->get(i), path + "[" + std::to_string(i) + "]"));
        }
        return J;
    }
};

template <class F> void for_each_entry(const toml::table *t, F &&f)
{
    if (!t) {
        return;
    }
    for (const auto &[k, v] : *t) {
        f(std::string(k.str()), v);
    }
}

} // namespace

const multiplier &system_document::get_multiplier(const std::string &n) const
{
    auto it = multipliers.find(n);
    if (it == multipliers.end()) {
        throw unknown_identifier_error("no multiplier named '" + n + "'");
    }
    return it->second;
}

const current &system_document::get_current(const std::string &n) const
{
    auto it = currents.find(n);
    if (it == currents.end()) {
        throw unknown_identifier_error("no current named '" + n + "'");
    }
    return it->second;
}

const characteristic &system_document::get_characteristic(const std::string &n) const
{
    auto it = characteristics.find(n);
    if (it == characteristics.end()) {
        throw unknown_identifier_error("no characteristic named '" + n + "'");
    }
    return it->second;
}

const expr &system_document::get_lagrangian(const std::string &n) const
{
    auto it = lagrangians.find(n);
    if (it == lagrangians.end()) {
        throw unknown_identifier_error("no Lagrangian named '" + n + "'");
    }
    return it->second;
}

assignment system_document::assignment_for(const std::vector<std::string> &names) const
{
    assignment out;
    for (const auto &n : names) {
        auto it = valid_at.find(n);
        if (it == valid_at.end()) {
            continue;
        }
        for (const auto &[c, v] : it->second) {
            auto [pos, inserted] = out.emplace(c, v);
            if (!inserted && pos->second != v) {
                throw schema_error("conflicting values for " + c + " in valid_at");
            }
        }
    }
    return out;
}

system_document parse_system_document(std::string_view text, const std::string &origin)
{
    toml::table root;
    try {
        root = toml::parse(text, origin);
    } catch (const toml::parse_error &e) {
        std::ostringstream os;
        os << origin << ":" << e.source().begin.line << ":" << e.source().begin.column << ": " << e.description();
        throw schema_error(os.str());
    }
    reader rd{origin, {}};
    system_document doc;

    if (const auto *meta = rd.table_at(root, "meta", false)) {
        doc.name = rd.optional_string(*meta, "name", "meta").value_or("");
        doc.notes = rd.optional_string(*meta, "notes", "meta").value_or("");
        doc.symmetries = rd.optional_strings(*meta, "symmetries", "meta");
    }

    const toml::table &sys = *rd.table_at(root, "system", true);
    signature &sig = rd.sig;
    for (const auto &[k, v] : sys) {
        const std::string key(k.str());
        const std::string path = "system." + key;
        if (key == "independents") {
            sig.independents = rd.strings_of(v, path);
        } else if (key == "fields") {
            sig.fields = rd.strings_of(v, path);
        } else if (key == "parameters") {
            sig.parameters = rd.strings_of(v, path);
        } else if (key == "constants") {
            sig.constants = rd.strings_of(v, path);
        } else if (key == "exponent_constants") {
            sig.exponent_constants = rd.strings_of(v, path);
        } else if (key == "functions") {
            sig.functions = rd.strings_of(v, path);
        } else {
            rd.fail(path, "unknown key");
        }
    }
    sig.validate();
    doc.system.sig = sig;

    for_each_entry(rd.table_at(root, "equations", true), [&](const std::string &label, const toml::node &v) {
        doc.system.equations.emplace_back(label, rd.expr_of(v, "equations." + label));
    });
    if (doc.system.equations.empty()) {
        rd.fail("equations", "a system needs at least one equation");
    }

    if (const auto *solved = rd.table_at(root, "solved", false)) {
        std::vector<solved_rule> rules;
        for (const auto &[k, v] : *solved) {
            const std::string key(k.str());
            const std::string path = "solved." + key;
            const expr lhs = [&] {
                try {
                    return parse(sig, key);
                } catch (const error &e) {
                    rd.rethrow_with_path(e, path);
                }
            }();
            if (lhs.terms().size() != 1 || lhs.terms()[0].mono.size() != 1 || !lhs.terms()[0].coeff.is_one()
                || lhs.terms()[0].mono[0].power != exponent(1)
                || lhs.terms()[0].mono[0].base.kind() != atom_kind::jet) {
                rd.fail(path, "the left-hand side must be a single jet");
            }
            rules.push_back({lhs.terms()[0].mono[0].base, rd.expr_of(v, path)});
        }
        doc.system.solved = std::move(rules);
    }
    doc.system.validate();

    for_each_entry(rd.table_at(root, "multipliers", false), [&](const std::string &name, const toml::node &v) {
        const std::string path = "multipliers." + name;
        const toml::table *t = v.as_table();
        if (!t) {
            rd.fail(path, "expected a table label -> expression");
        }
        multiplier q;
        for (const auto &[k, c] : *t) {
            const std::string label(k.str());
            if (!doc.system.has_label(label)) {
                rd.fail(path + "." + label, "unknown equation label");
            }
            q[label] = rd.expr_of(c, path + "." + label);
        }
        doc.multipliers[name] = std::move(q);
    });

    for_each_entry(rd.table_at(root, "currents", false), [&](const std::string &name, const toml::node &v) {
        doc.currents[name] = rd.current_of(v, "currents." + name);
    });

    for_each_entry(rd.table_at(root, "characteristics", false), [&](const std::string &name, const toml::node &v) {
        const std::string path = "characteristics." + name;
        const toml::table *t = v.as_table();
        if (!t) {
            rd.fail(path, "expected a table field -> expression");
        }
        characteristic d;
        for (const auto &[k, c] : *t) {
            const std::string f(k.str());
            if (!sig.is_field(f) && !sig.is_parameter(f)) {
                throw unknown_identifier_error(origin + ": " + path + "." + f + ": not a field or parameter");
            }
            d[f] = rd.expr_of(c, path + "." + f);
        }
        doc.characteristics[name] = std::move(d);
    });

    for_each_entry(rd.table_at(root, "lagrangians", false), [&](const std::string &name, const toml::node &v) {
        doc.lagrangians[name] = rd.expr_of(v, "lagrangians." + name);
    });

    for_each_entry(rd.table_at(root, "valid_at", false), [&](const std::string &name, const toml::node &v) {
        const std::string path = "valid_at." + name;
        const toml::table *t = v.as_table();
        if (!t) {
            rd.fail(path, "expected a table constant -> value");
        }
        assignment a;
        for (const auto &[k, c] : *t) {
            const std::string cname(k.str());
            const auto kind = sig.kind_of(cname);
            if (kind != symbol_kind::constant && kind != symbol_kind::exponent_constant) {
                rd.fail(path + "." + cname, "not a declared constant");
            }
            a[cname] = rd.rational_of(c, path + "." + cname);
        }
        doc.valid_at[name] = std::move(a);
    });

    if (const auto *ext = rd.table_at(root, "extension", false)) {
        doc.extension_parameters = rd.optional_strings(*ext, "parameters", "extension");
        for (const auto &g : doc.extension_parameters) {
            if (!sig.is_parameter(g)) {
                rd.fail("extension.parameters", "'" + g + "' is not a parameter");
            }
        }
    }

    if (const auto *el = rd.table_at(root, "euler_lagrange", false)) {
        auto L = rd.optional_string(*el, "lagrangian", "euler_lagrange");
        if (!L) {
            rd.fail("euler_lagrange.lagrangian", "missing");
        }
        doc.euler_lagrange = {{*L, rd.optional_strings(*el, "equations", "euler_lagrange")}};
    }

    auto known = [&](const std::string &path, const auto &map, const std::optional<std::string> &n) {
        if (n && !map.count(*n)) {
            rd.fail(path, "unknown object '" + *n + "'");
        }
    };

    for_each_entry(rd.table_at(root, "pairs", false), [&](const std::string &name, const toml::node &v) {
        const std::string path = "pairs." + name;
        const toml::table *t = v.as_table();
        if (!t) {
            rd.fail(path, "expected a table");
        }
        pair_entry p;
        p.name = name;
        p.q = rd.optional_string(*t, "q", path).value_or("");
        p.current = rd.optional_string(*t, "current", path).value_or("");
        known(path + ".q", doc.multipliers, p.q);
        known(path + ".current", doc.currents, p.current);
        p.symmetries = rd.optional_strings(*t, "symmetries", path);
        p.weak = rd.optional_strings(*t, "weak", path);
        for (const auto &s : p.symmetries) {
            known(path + ".symmetries", doc.characteristics, s);
        }
        for (const auto &s : p.weak) {
            known(path + ".weak", doc.characteristics, s);
        }
        p.theorem2 = rd.optional_string(*t, "theorem2", path);
        known(path + ".theorem2", doc.characteristics, p.theorem2);
        p.j_expected = rd.optional_string(*t, "j_expected", path);
        known(path + ".j_expected", doc.currents, p.j_expected);
        p.bar = rd.optional_string(*t, "bar", path);
        known(path + ".bar", doc.currents, p.bar);
        doc.pairs.push_back(std::move(p));
    });

    for_each_entry(rd.table_at(root, "noether", false), [&](const std::string &name, const toml::node &v) {
        const std::string path = "noether." + name;
        const toml::table *t = v.as_table();
        if (!t) {
            rd.fail(path, "expected a table");
        }
        noether_entry n;
        n.name = name;
        n.lagrangian = rd.optional_string(*t, "lagrangian", path).value_or("");
        n.characteristic = rd.optional_string(*t, "characteristic", path).value_or("");
        n.K = rd.optional_string(*t, "K", path).value_or("");
        n.expected = rd.optional_string(*t, "expected", path);
        known(path + ".lagrangian", doc.lagrangians, n.lagrangian);
        known(path + ".characteristic", doc.characteristics, n.characteristic);
        known(path + ".K", doc.currents, n.K);
        known(path + ".expected", doc.currents, n.expected);
        if (const toml::node *os = t->get("on_shell")) {
            if (!os->is_boolean()) {
                rd.fail(path + ".on_shell", "expected a boolean");
            }
            n.on_shell = *os->value<bool>();
        }
        doc.noether.push_back(std::move(n));
    });

    for (const auto &s : doc.symmetries) {
        known("meta.symmetries", doc.characteristics, s);
    }
    return doc;
}

system_document load_system_document(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw schema_error("cannot open " + path);
    }
    std::ostringstream os;
    os << in.rdbuf();
    return parse_system_document(os.str(), path);
}

system_document specialize(const system_document &doc, const assignment &values)
{
    if (values.empty()) {
        return doc;
    }
    system_document out = doc;
    const de_system &sys = doc.system;
    out.system = specialize(sys, values);
    for (auto &[n, q] : out.multipliers) {
        q = specialize(sys, q, values);
    }
    for (auto &[n, J] : out.currents) {
        J = specialize(sys, J, values);
    }
    for (auto &[n, d] : out.characteristics) {
        d = specialize_characteristic(sys, d, values);
    }
    for (auto &[n, L] : out.lagrangians) {
        L = specialize(sys, L, values);
    }
    return out;
}

system_document resolve_document(const std::string &name_or_path)
{
    if (auto text = registry_text(name_or_path)) {
        return parse_system_document(*text, name_or_path);
    }
    return load_system_document(name_or_path);
}

} // namespace conslaw
