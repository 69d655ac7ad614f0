#ifndef CONSLAW_EXPR_HPP
#define CONSLAW_EXPR_HPP

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <conslaw/rational_function.hpp>

namespace conslaw
{

// Symmetric derivative multi-index: independent name -> positive count,
// sorted by name. u[x,t] and u[t,x] share one representation.
class multi_index
{
public:
    multi_index() = default;
    explicit multi_index(const std::vector<std::string> &directions);

    [[nodiscard]] const std::vector<std::pair<std::string, int>> &counts() const noexcept
    {
        return m_counts;
    }
    [[nodiscard]] bool empty() const noexcept
    {
        return m_counts.empty();
    }
    [[nodiscard]] int order() const noexcept;
    [[nodiscard]] int count(const std::string &direction) const noexcept;

    [[nodiscard]] multi_index plus(const std::string &direction, int n = 1) const;
    [[nodiscard]] multi_index plus(const multi_index &other) const;
    // Componentwise other <= *this.
    [[nodiscard]] bool contains(const multi_index &other) const noexcept;
    // *this - other; requires contains(other).
    [[nodiscard]] multi_index minus(const multi_index &other) const;
    // Directions listed with repetition, in name order.
    [[nodiscard]] std::vector<std::string> directions() const;
    // Every multi-index B with B <= *this componentwise (including empty and *this).
    [[nodiscard]] std::vector<multi_index> sub_indices() const;
    // Number of distinct orderings of the directions: |J|! / prod J_i!.
    [[nodiscard]] rational multiplicity() const;

    friend bool operator==(const multi_index &, const multi_index &) = default;
    // Total order first, then counts lexicographically.
    friend std::strong_ordering operator<=>(const multi_index &, const multi_index &);

private:
    std::vector<std::pair<std::string, int>> m_counts;
};

// Integer-linear form in exponent constants: base + sum c_i * kappa_i.
class exponent
{
public:
    exponent() = default;
    exponent(long base) : m_base(base) {}
    [[nodiscard]] static exponent symbol(const std::string &name, long multiple = 1);
    // Throws exponent_error unless c is an integer-linear polynomial.
    [[nodiscard]] static exponent from_coefficient(const coefficient &c);

    [[nodiscard]] long base() const noexcept
    {
        return m_base;
    }
    [[nodiscard]] const std::vector<std::pair<std::string, long>> &symbolic() const noexcept
    {
        return m_symbolic;
    }
    [[nodiscard]] bool is_integer() const noexcept
    {
        return m_symbolic.empty();
    }
    [[nodiscard]] bool is_zero() const noexcept
    {
        return m_base == 0 && m_symbolic.empty();
    }
    [[nodiscard]] coefficient to_coefficient() const;
    // Exponent constants must receive integer values (exponent_error otherwise).
    [[nodiscard]] exponent substitute(const std::map<std::string, rational> &values) const;

    exponent &operator+=(const exponent &other);
    friend exponent operator+(exponent a, const exponent &b)
    {
        return a += b;
    }
    friend exponent operator-(exponent a);
    friend exponent operator-(exponent a, const exponent &b)
    {
        return a += -b;
    }
    friend exponent operator*(exponent a, long k);

    // "2", "(p + 1)", "(-p)": parseable after '^'.
    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const exponent &, const exponent &) = default;
    friend std::strong_ordering operator<=>(const exponent &, const exponent &) = default;

private:
    long m_base = 0;
    std::vector<std::pair<std::string, long>> m_symbolic;
};

class expr;

enum class atom_kind { coordinate = 0, jet = 1, function = 2 };

// Immutable algebraic variable: a coordinate x^mu, a jet d_J u, or an
// application f^(k)(A) of a declared unary function symbol to a canonical Expr.
class atom
{
public:
    [[nodiscard]] static atom coordinate(const std::string &name);
    [[nodiscard]] static atom jet(const std::string &field, multi_index indices = {});
    [[nodiscard]] static atom function(const std::string &name, int derivative_order, expr argument);

    [[nodiscard]] atom_kind kind() const noexcept;
    [[nodiscard]] const std::string &name() const noexcept;
    // Jet multi-index (empty for other kinds).
    [[nodiscard]] const multi_index &indices() const noexcept;
    // Derivative order of a function application (0 for other kinds).
    [[nodiscard]] int derivative_order() const noexcept;
    // Argument of a function application; throws for other kinds.
    [[nodiscard]] const expr &argument() const;

    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const atom &a, const atom &b)
    {
        return compare(a, b) == 0;
    }
    friend std::strong_ordering operator<=>(const atom &a, const atom &b)
    {
        return compare(a, b) <=> 0;
    }
    [[nodiscard]] friend int compare(const atom &a, const atom &b);

private:
    struct node;
    explicit atom(std::shared_ptr<const node> n) : m_node(std::move(n)) {}
    std::shared_ptr<const node> m_node;
};

struct factor {
    atom base;
    exponent power;
    friend bool operator==(const factor &, const factor &) = default;
};

// Sorted by atom, no repeated atoms, no zero exponents.
using monomial = std::vector<factor>;

[[nodiscard]] int compare(const monomial &a, const monomial &b);

// Canonical differential polynomial: a sum of distinct monomials with nonzero
// rational-function coefficients, sorted by canonical monomial order.
class expr
{
public:
    struct term {
        monomial mono;
        coefficient coeff;
        friend bool operator==(const term &, const term &) = default;
    };

    expr() = default;
    expr(const coefficient &c);
    expr(const rational &c) : expr(coefficient(c)) {}
    expr(long c) : expr(coefficient(c)) {}
    expr(int c) : expr(coefficient(static_cast<long>(c))) {}
    expr(const atom &a, const exponent &power = exponent(1));

    [[nodiscard]] static expr from_terms(std::vector<term> terms);

    [[nodiscard]] bool is_zero() const noexcept
    {
        return m_terms.empty();
    }
    [[nodiscard]] const std::vector<term> &terms() const noexcept
    {
        return m_terms;
    }
    // True if the expression contains no atoms.
    [[nodiscard]] bool is_coefficient() const noexcept;
    // Throws division_by_expr_error when the expression contains atoms.
    [[nodiscard]] coefficient as_coefficient() const;

    expr &operator+=(const expr &other);
    expr &operator-=(const expr &other);
    expr &operator*=(const expr &other);

    friend expr operator+(expr a, const expr &b)
    {
        return a += b;
    }
    friend expr operator-(expr a, const expr &b)
    {
        return a -= b;
    }
    friend expr operator*(const expr &a, const expr &b);
    friend expr operator-(expr a);

    [[nodiscard]] expr scaled(const coefficient &c) const;

    // Atoms in top-level monomials (arguments of functions are not entered).
    [[nodiscard]] std::set<atom> atoms() const;
    // Every atom, including those nested in function arguments.
    [[nodiscard]] std::set<atom> all_atoms() const;
    // Every constant name occurring in coefficients or exponents (recursively).
    [[nodiscard]] std::set<std::string> constants() const;

    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const expr &, const expr &) = default;
    [[nodiscard]] friend int compare(const expr &a, const expr &b);

private:
    std::vector<term> m_terms;
};

// ---------------------------------------------------------------------------
// expr_core operations

[[nodiscard]] inline bool is_zero(const expr &e) noexcept
{
    return e.is_zero();
}

// Raises e to an integer or integer-linear exponent. Negative exponents need a
// single-monomial base (division_by_expr_error otherwise); symbolic exponents
// need a single monomial with unit coefficient and integer factor exponents.
[[nodiscard]] expr pow(const expr &base, const exponent &power);

// Applies a derivation: d(prod a_i^k_i) = sum k_i a_i^(k_i-1) d(a_i) prod_{j!=i}.
// atom_derivative supplies d on atoms (including any chain rule for functions).
[[nodiscard]] expr apply_derivation(const expr &e, const std::function<expr(const atom &)> &atom_derivative);

// Partial derivative with respect to a coordinate or jet atom, treating all
// other atoms as independent; function atoms are differentiated through their
// arguments by the chain rule.
[[nodiscard]] expr partial_atom(const expr &e, const atom &a);

// True if a occurs in e, including inside function arguments.
[[nodiscard]] bool depends_on(const expr &e, const atom &a);

using substitution = std::map<atom, expr>;

// Simultaneous replacement of whole atoms (also inside function arguments).
[[nodiscard]] expr substitute(const expr &e, const substitution &rules);

// Replaces every application f^(k)(A) by the k-th derivative of the template
// (an expression in the dummy atom) evaluated at A.
[[nodiscard]] expr substitute_function(const expr &e, const std::string &function_name, const expr &body,
                                       const atom &dummy);

// Replaces constants by rational values and evaluates exponents. Exponent
// constants must receive integers. Atoms for which allow_negative returns true
// may end up with negative exponents; any other atom with a negative concrete
// exponent raises exponent_error. A vanishing denominator raises pole_error.
[[nodiscard]] expr specialize_constants(const expr &e, const std::map<std::string, rational> &values,
                                        const std::function<bool(const atom &)> &allow_negative);

struct evaluation_point {
    std::map<atom, rational> atoms;
    std::map<std::string, rational> constants;
    // Value of f^(k) at a rational argument.
    std::function<rational(const std::string &, int, const rational &)> functions;
};

// Exact evaluation; throws missing_assignment_error or pole_error.
[[nodiscard]] rational eval_rational(const expr &e, const evaluation_point &point);

// Applies f to each coefficient, dropping terms that become zero.
[[nodiscard]] expr map_coefficients(const expr &e, const std::function<coefficient(const coefficient &)> &f);

// Keeps only the terms for which pred holds.
[[nodiscard]] expr filter_terms(const expr &e, const std::function<bool(const expr::term &)> &pred);

} // namespace conslaw

#endif
