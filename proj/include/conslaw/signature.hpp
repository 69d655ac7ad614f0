#ifndef CONSLAW_SIGNATURE_HPP
#define CONSLAW_SIGNATURE_HPP

#include <optional>
#include <string>
#include <vector>

#include <conslaw/expr.hpp>

namespace conslaw
{

enum class symbol_kind { independent, field, parameter, constant, exponent_constant, function };

// Declared names of a problem. Parameters are constant fields: they are
// order-0 jet atoms with vanishing total derivatives until promoted.
struct signature {
    std::vector<std::string> independents;
    std::vector<std::string> fields;
    std::vector<std::string> parameters;
    std::vector<std::string> constants;
    std::vector<std::string> exponent_constants;
    std::vector<std::string> functions;
    // Fields that started out as parameters (they may carry negative powers).
    std::vector<std::string> promoted;

    [[nodiscard]] std::optional<symbol_kind> kind_of(const std::string &name) const;
    [[nodiscard]] bool is_field(const std::string &name) const;
    [[nodiscard]] bool is_parameter(const std::string &name) const;
    [[nodiscard]] bool is_independent(const std::string &name) const;

    // Throws name_collision_error on duplicates, schema_error without independents.
    void validate() const;

    [[nodiscard]] signature with_fields(const std::vector<std::string> &names) const;
    // Re-types the listed parameters as fields.
    [[nodiscard]] signature promote(const std::vector<std::string> &params) const;
    // A name not yet used, built from stem.
    [[nodiscard]] std::string fresh_name(const std::string &stem) const;

    // Coordinates and parameter-like fields may carry negative exponents.
    [[nodiscard]] bool allows_negative_power(const atom &a) const;

    [[nodiscard]] atom coordinate(const std::string &name) const;
    [[nodiscard]] atom field_atom(const std::string &name, const multi_index &J = {}) const;
};

} // namespace conslaw

#endif
