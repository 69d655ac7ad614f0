#include <conslaw/signature.hpp>

#include <algorithm>
#include <set>

#include <conslaw/errors.hpp>

namespace conslaw
{

namespace
{

bool listed(const std::vector<std::string> &v, const std::string &name)
{
    return std::find(v.begin(), v.end(), name) != v.end();
}

} // namespace

std::optional<symbol_kind> signature::kind_of(const std::string &name) const
{
    if (listed(independents, name)) {
        return symbol_kind::independent;
    }
    if (listed(fields, name)) {
        return symbol_kind::field;
    }
    if (listed(parameters, name)) {
        return symbol_kind::parameter;
    }
    if (listed(constants, name)) {
        return symbol_kind::constant;
    }
    if (listed(exponent_constants, name)) {
        return symbol_kind::exponent_constant;
    }
    if (listed(functions, name)) {
        return symbol_kind::function;
    }
    return std::nullopt;
}

bool signature::is_field(const std::string &name) const
{
    return listed(fields, name);
}

bool signature::is_parameter(const std::string &name) const
{
    return listed(parameters, name);
}

bool signature::is_independent(const std::string &name) const
{
    return listed(independents, name);
}

void signature::validate() const
{
    if (independents.empty()) {
        throw schema_error("a system needs at least one independent variable");
    }
    std::set<std::string> seen;
    for (const auto *list : {&independents, &fields, &parameters, &constants, &exponent_constants, &functions}) {
        for (const auto &n : *list) {
            if (!seen.insert(n).second) {
                throw name_collision_error("name '" + n + "' is declared twice");
            }
        }
    }
}

signature signature::with_fields(const std::vector<std::string> &names) const
{
    signature out = *this;
    for (const auto &n : names) {
        if (out.kind_of(n)) {
            throw name_collision_error("name '" + n + "' is already declared");
        }
        out.fields.push_back(n);
    }
    return out;
}

signature signature::promote(const std::vector<std::string> &params) const
{
    signature out = *this;
    for (const auto &p : params) {
        auto it = std::find(out.parameters.begin(), out.parameters.end(), p);
        if (it == out.parameters.end()) {
            throw unknown_identifier_error("'" + p + "' is not a parameter");
        }
        out.parameters.erase(it);
        out.fields.push_back(p);
        out.promoted.push_back(p);
    }
    return out;
}

std::string signature::fresh_name(const std::string &stem) const
{
    if (!kind_of(stem)) {
        return stem;
    }
    for (int k = 1;; ++k) {
        std::string n = stem + std::to_string(k);
        if (!kind_of(n)) {
            return n;
        }
    }
}

bool signature::allows_negative_power(const atom &a) const
{
    if (a.kind() == atom_kind::coordinate) {
        return true;
    }
    return a.kind() == atom_kind::jet && a.indices().empty()
           && (is_parameter(a.name()) || std::find(promoted.begin(), promoted.end(), a.name()) != promoted.end());
}

atom signature::coordinate(const std::string &name) const
{
    if (!is_independent(name)) {
        throw unknown_identifier_error("'" + name + "' is not an independent variable");
    }
    return atom::coordinate(name);
}

atom signature::field_atom(const std::string &name, const multi_index &J) const
{
    if (is_parameter(name)) {
        if (!J.empty()) {
            throw derivative_of_parameter_error("parameter '" + name + "' cannot carry derivatives");
        }
        return atom::jet(name);
    }
    if (!is_field(name)) {
        throw unknown_identifier_error("'" + name + "' is not a field");
    }
    return atom::jet(name, J);
}

} // namespace conslaw
