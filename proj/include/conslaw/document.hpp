#ifndef CONSLAW_DOCUMENT_HPP
#define CONSLAW_DOCUMENT_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <conslaw/jet.hpp>
#include <conslaw/system.hpp>

namespace conslaw
{

using assignment = std::map<std::string, rational>;

// A (q, J) pair and the checks the example runner applies to it.
struct pair_entry {
    std::string name;
    std::string q;
    std::string current;
    std::vector<std::string> symmetries; // theorem1 with a full symmetry
    std::vector<std::string> weak;       // theorem1 where only delta(F q) vanishes on shell
    std::optional<std::string> theorem2; // characteristic for the extended system
    std::optional<std::string> j_expected;
    std::optional<std::string> bar;      // omega J - j - j_(F~q) = bar
};

struct noether_entry {
    std::string name;
    std::string lagrangian;
    std::string characteristic;
    std::string K;
    std::optional<std::string> expected;
    bool on_shell = false;
};

struct system_document {
    std::string name;
    std::string notes;
    de_system system;
    std::map<std::string, multiplier> multipliers;
    std::map<std::string, current> currents;
    std::map<std::string, characteristic> characteristics;
    std::map<std::string, expr> lagrangians;
    // Objects valid only at special constant values (q4 at p = 1).
    std::map<std::string, assignment> valid_at;
    std::vector<std::string> symmetries;
    std::vector<std::string> extension_parameters;
    // E_(fields[i])(lagrangian) equals equation euler_lagrange[i].
    std::optional<std::pair<std::string, std::vector<std::string>>> euler_lagrange;
    std::vector<pair_entry> pairs;
    std::vector<noether_entry> noether;

    [[nodiscard]] const multiplier &get_multiplier(const std::string &name) const;
    [[nodiscard]] const current &get_current(const std::string &name) const;
    [[nodiscard]] const characteristic &get_characteristic(const std::string &name) const;
    [[nodiscard]] const expr &get_lagrangian(const std::string &name) const;
    // Union of the valid_at assignments of the named objects (schema_error on conflicts).
    [[nodiscard]] assignment assignment_for(const std::vector<std::string> &names) const;
};

// Throws schema_error with the offending key path, or the expression errors.
[[nodiscard]] system_document parse_system_document(std::string_view text, const std::string &origin = "<input>");
[[nodiscard]] system_document load_system_document(const std::string &path);

// Every constant of the document replaced by the given values.
[[nodiscard]] system_document specialize(const system_document &doc, const assignment &values);

// Shipped example documents.
[[nodiscard]] std::vector<std::string> registry_names();
[[nodiscard]] std::optional<std::string_view> registry_text(const std::string &name);
// A registry name or a path.
[[nodiscard]] system_document resolve_document(const std::string &name_or_path);

} // namespace conslaw

#endif
