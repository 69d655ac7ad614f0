#include <conslaw/syntax.hpp>

#include <algorithm>
#include <cctype>

#include <conslaw/errors.hpp>

namespace conslaw
{

namespace
{

class parser
{
public:
    explicit parser(std::string_view text) : m_text(text) {}

    raw_node run()
    {
        raw_node n = expression();
        skip();
        if (m_pos != m_text.size()) {
            throw syntax_error(std::string("unexpected '") + m_text[m_pos] + "'", m_pos);
        }
        return n;
    }

private:
    void skip()
    {
        while (m_pos < m_text.size() && std::isspace(static_cast<unsigned char>(m_text[m_pos]))) {
            ++m_pos;
        }
    }

    bool accept(char c)
    {
        skip();
        if (m_pos < m_text.size() && m_text[m_pos] == c) {
            ++m_pos;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c)) {
            throw syntax_error(std::string("expected '") + c + "'", m_pos);
        }
    }

    static raw_node binary(raw_node::kind k, raw_node a, raw_node b, std::size_t pos)
    {
        raw_node n;
        n.type = k;
        n.position = pos;
        n.children.push_back(std::move(a));
        n.children.push_back(std::move(b));
        return n;
    }

    raw_node expression()
    {
        raw_node lhs = term();
        for (;;) {
            const std::size_t pos = m_pos;
            if (accept('+')) {
                lhs = binary(raw_node::kind::add, std::move(lhs), term(), pos);
            } else if (accept('-')) {
                lhs = binary(raw_node::kind::sub, std::move(lhs), term(), pos);
            } else {
                return lhs;
            }
        }
    }

    raw_node term()
    {
        raw_node lhs = factor();
        for (;;) {
            const std::size_t pos = m_pos;
            if (accept('*')) {
                lhs = binary(raw_node::kind::mul, std::move(lhs), factor(), pos);
            } else if (accept('/')) {
                lhs = binary(raw_node::kind::div, std::move(lhs), factor(), pos);
            } else {
                return lhs;
            }
        }
    }

    raw_node factor()
    {
        skip();
        if (m_pos < m_text.size() && m_text[m_pos] == '-') {
            const std::size_t pos = m_pos++;
            raw_node n;
            n.type = raw_node::kind::neg;
            n.position = pos;
            n.children.push_back(factor());
            return n;
        }
        raw_node b = base();
        const std::size_t pos = m_pos;
        if (accept('^')) {
            return binary(raw_node::kind::power, std::move(b), exponent_part(), pos);
        }
        return b;
    }

    // integer | ident | '(' expr ')' | '-' exponent, right-associative '^'.
    raw_node exponent_part()
    {
        skip();
        raw_node e;
        if (m_pos < m_text.size() && m_text[m_pos] == '-') {
            e.type = raw_node::kind::neg;
            e.position = m_pos++;
            e.children.push_back(exponent_part());
            return e;
        }
        if (accept('(')) {
            e = expression();
            expect(')');
        } else if (m_pos < m_text.size() && std::isdigit(static_cast<unsigned char>(m_text[m_pos]))) {
            e = number();
        } else if (m_pos < m_text.size() && is_ident_start(m_text[m_pos])) {
            e.type = raw_node::kind::identifier;
            e.position = m_pos;
            e.name = identifier();
        } else {
            throw syntax_error("expected an exponent", m_pos);
        }
        const std::size_t pos = m_pos;
        if (accept('^')) {
            return binary(raw_node::kind::power, std::move(e), exponent_part(), pos);
        }
        return e;
    }

    static bool is_ident_start(char c)
    {
        return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    }

    std::string identifier()
    {
        skip();
        const std::size_t start = m_pos;
        if (m_pos >= m_text.size() || !is_ident_start(m_text[m_pos])) {
            throw syntax_error("expected an identifier", m_pos);
        }
        while (m_pos < m_text.size()
               && (std::isalnum(static_cast<unsigned char>(m_text[m_pos])) || m_text[m_pos] == '_')) {
            ++m_pos;
        }
        return std::string(m_text.substr(start, m_pos - start));
    }

    raw_node number()
    {
        const std::size_t start = m_pos;
        while (m_pos < m_text.size() && std::isdigit(static_cast<unsigned char>(m_text[m_pos]))) {
            ++m_pos;
        }
        raw_node n;
        n.type = raw_node::kind::number;
        n.position = start;
        n.value = rational(mpz_class(std::string(m_text.substr(start, m_pos - start))));
        return n;
    }

    raw_node base()
    {
        skip();
        if (m_pos >= m_text.size()) {
            throw syntax_error("unexpected end of input", m_pos);
        }
        const char c = m_text[m_pos];
        if (c == '(') {
            ++m_pos;
            raw_node n = expression();
            expect(')');
            return n;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            return number();
        }
        if (!is_ident_start(c)) {
            throw syntax_error(std::string("unexpected '") + c + "'", m_pos);
        }
        raw_node n;
        n.position = m_pos;
        n.name = identifier();
        skip();
        if (m_pos < m_text.size() && m_text[m_pos] == '[') {
            ++m_pos;
            n.type = raw_node::kind::jet;
            do {
                n.directions.push_back(identifier());
            } while (accept(','));
            expect(']');
            std::sort(n.directions.begin(), n.directions.end());
            return n;
        }
        std::size_t look = m_pos;
        int primes = 0;
        while (look < m_text.size() && m_text[look] == '\'') {
            ++primes;
            ++look;
        }
        while (look < m_text.size() && std::isspace(static_cast<unsigned char>(m_text[look]))) {
            ++look;
        }
        if (look < m_text.size() && m_text[look] == '(') {
            m_pos = look + 1;
            n.type = raw_node::kind::call;
            n.primes = primes;
            n.children.push_back(expression());
            expect(')');
            return n;
        }
        if (primes != 0) {
            throw syntax_error("primes must be followed by an argument list", look);
        }
        n.type = raw_node::kind::identifier;
        return n;
    }

    std::string_view m_text;
    std::size_t m_pos = 0;
};

coefficient exponent_coefficient(const raw_node &tree, const signature &sig)
{
    expr e = normalize(tree, sig);
    if (!e.is_coefficient()) {
        throw exponent_error("exponent " + e.to_string() + " contains atoms");
    }
    coefficient c = e.as_coefficient();
    for (const auto &name : c.constants()) {
        if (sig.kind_of(name) != symbol_kind::exponent_constant) {
            throw exponent_error("constant '" + name + "' is not an exponent constant");
        }
    }
    return c;
}

} // namespace

raw_node parse_expression(std::string_view text)
{
    return parser(text).run();
}

expr normalize(const raw_node &tree, const signature &sig)
{
    using k = raw_node::kind;
    switch (tree.type) {
        case k::number:
            return expr(tree.value);
        case k::identifier: {
            const auto kind = sig.kind_of(tree.name);
            if (!kind) {
                throw unknown_identifier_error("unknown identifier '" + tree.name + "'");
            }
            switch (*kind) {
                case symbol_kind::independent:
                    return expr(atom::coordinate(tree.name));
                case symbol_kind::field:
                case symbol_kind::parameter:
                    return expr(atom::jet(tree.name));
                case symbol_kind::constant:
                case symbol_kind::exponent_constant:
                    return expr(coefficient::constant(tree.name));
                case symbol_kind::function:
                    throw unknown_identifier_error("function '" + tree.name + "' used without an argument");
            }
            break;
        }
        case k::jet: {
            for (const auto &d : tree.directions) {
                if (!sig.is_independent(d)) {
                    throw unknown_identifier_error("unknown direction '" + d + "' in " + tree.name);
                }
            }
            return expr(sig.field_atom(tree.name, multi_index(tree.directions)));
        }
        case k::call: {
            if (sig.kind_of(tree.name) != symbol_kind::function) {
                throw unknown_identifier_error("'" + tree.name + "' is not a declared function");
            }
            return expr(atom::function(tree.name, tree.primes, normalize(tree.children.front(), sig)));
        }
        case k::add:
            return normalize(tree.children[0], sig) + normalize(tree.children[1], sig);
        case k::sub:
            return normalize(tree.children[0], sig) - normalize(tree.children[1], sig);
        case k::mul:
            return normalize(tree.children[0], sig) * normalize(tree.children[1], sig);
        case k::div: {
            expr den = normalize(tree.children[1], sig);
            if (!den.is_coefficient()) {
                throw division_by_expr_error("division by the expression " + den.to_string());
            }
            const coefficient c = den.as_coefficient();
            if (c.is_zero()) {
                throw pole_error("division by zero");
            }
            return normalize(tree.children[0], sig).scaled(c.inverse());
        }
        case k::neg:
            return -normalize(tree.children[0], sig);
        case k::power:
            return pow(normalize(tree.children[0], sig),
                       exponent::from_coefficient(exponent_coefficient(tree.children[1], sig)));
    }
    return {};
}

} // namespace conslaw
