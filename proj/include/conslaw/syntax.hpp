#ifndef CONSLAW_SYNTAX_HPP
#define CONSLAW_SYNTAX_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <conslaw/expr.hpp>
#include <conslaw/signature.hpp>

namespace conslaw
{

// Unbound parse tree. Names are resolved only by normalize.
struct raw_node {
    enum class kind { number, identifier, jet, call, add, sub, mul, div, neg, power };

    kind type = kind::number;
    rational value;
    std::string name;
    std::vector<std::string> directions; // jet brackets, sorted
    int primes = 0;                      // derivative order of a call
    std::vector<raw_node> children;
    std::size_t position = 0;
};

// Recursive descent over
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' exponent)?
//   base   := integer | ident | ident '[' ident (',' ident)* ']'
//           | ident '\''* '(' expr ')' | '(' expr ')' | '-' factor
// Throws syntax_error.
[[nodiscard]] raw_node parse_expression(std::string_view text);

// Binds names against sig and builds the canonical form.
[[nodiscard]] expr normalize(const raw_node &tree, const signature &sig);

[[nodiscard]] inline expr parse(const signature &sig, std::string_view text)
{
    return normalize(parse_expression(text), sig);
}

} // namespace conslaw

#endif
