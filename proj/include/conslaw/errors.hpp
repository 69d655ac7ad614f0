#ifndef CONSLAW_ERRORS_HPP
#define CONSLAW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace conslaw
{

// Base of every error raised by the library. Input errors (bad documents,
// unknown names, syntax) and mathematical errors (poles, bad exponents)
// share it so that the CLI can map them to exit code 2.
class error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

#define CONSLAW_DECLARE_ERROR(name)                                                                                    \
    class name : public error                                                                                          \
    {                                                                                                                  \
    public:                                                                                                            \
        using error::error;                                                                                            \
    }

CONSLAW_DECLARE_ERROR(division_by_expr_error);
CONSLAW_DECLARE_ERROR(exponent_error);
CONSLAW_DECLARE_ERROR(pole_error);
CONSLAW_DECLARE_ERROR(missing_assignment_error);
CONSLAW_DECLARE_ERROR(name_collision_error);
CONSLAW_DECLARE_ERROR(unknown_identifier_error);
CONSLAW_DECLARE_ERROR(no_solved_form_error);
CONSLAW_DECLARE_ERROR(non_terminating_rule_error);
CONSLAW_DECLARE_ERROR(not_homogeneous_error);
CONSLAW_DECLARE_ERROR(zero_weight_error);
CONSLAW_DECLARE_ERROR(derivative_of_parameter_error);
CONSLAW_DECLARE_ERROR(precondition_error);
CONSLAW_DECLARE_ERROR(schema_error);

#undef CONSLAW_DECLARE_ERROR

class syntax_error : public error
{
public:
    syntax_error(const std::string &msg, std::size_t pos)
        : error(msg + " at position " + std::to_string(pos)), m_pos(pos)
    {
    }
    [[nodiscard]] std::size_t position() const noexcept
    {
        return m_pos;
    }

private:
    std::size_t m_pos;
};

} // namespace conslaw

#endif
