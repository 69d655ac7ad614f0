#ifndef CONSLAW_RATIONAL_FUNCTION_HPP
#define CONSLAW_RATIONAL_FUNCTION_HPP

#include <compare>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace conslaw
{

using rational = mpq_class;

// Product of named constants raised to positive powers, sorted by name.
using power_product = std::vector<std::pair<std::string, int>>;

// Sparse multivariate polynomial with rational coefficients in named constants.
// Terms are kept sorted in decreasing graded-lexicographic order, so the first
// term is the leading one.
class polynomial
{
public:
    using term = std::pair<power_product, rational>;

    polynomial() = default;
    polynomial(const rational &c);
    polynomial(long c) : polynomial(rational(c)) {}

    [[nodiscard]] static polynomial variable(const std::string &name, int power = 1);

    [[nodiscard]] bool is_zero() const noexcept
    {
        return m_terms.empty();
    }
    [[nodiscard]] bool is_constant() const noexcept;
    // Value of a constant polynomial (0 for the zero polynomial).
    [[nodiscard]] rational constant_value() const;
    [[nodiscard]] const std::vector<term> &terms() const noexcept
    {
        return m_terms;
    }

    [[nodiscard]] int degree_in(const std::string &var) const;
    [[nodiscard]] int total_degree() const;
    [[nodiscard]] std::set<std::string> variables() const;
    [[nodiscard]] rational leading_coefficient() const;

    polynomial &operator+=(const polynomial &other);
    polynomial &operator-=(const polynomial &other);
    polynomial &operator*=(const polynomial &other);

    friend polynomial operator+(polynomial a, const polynomial &b)
    {
        return a += b;
    }
    friend polynomial operator-(polynomial a, const polynomial &b)
    {
        return a -= b;
    }
    friend polynomial operator*(const polynomial &a, const polynomial &b);
    friend polynomial operator-(polynomial a);

    [[nodiscard]] polynomial pow(unsigned n) const;

    // Replace the listed constants by rational values; others are kept.
    [[nodiscard]] polynomial substitute(const std::map<std::string, rational> &values) const;

    // View as a univariate polynomial in var: degree -> coefficient (free of var).
    [[nodiscard]] std::map<int, polynomial> coefficients_in(const std::string &var) const;

    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const polynomial &, const polynomial &);
    friend std::strong_ordering operator<=>(const polynomial &, const polynomial &);

private:
    void combine_sorted();

    std::vector<term> m_terms;
};

// Graded-lexicographic comparison of power products (higher is "larger").
[[nodiscard]] std::strong_ordering grlex_compare(const power_product &a, const power_product &b);

// Quotient of a by b. The division must be exact; throws std::logic_error otherwise.
[[nodiscard]] polynomial exact_divide(const polynomial &a, const polynomial &b);

// Greatest common divisor, normalized to leading coefficient 1 (gcd(0,0) = 0).
[[nodiscard]] polynomial gcd(const polynomial &a, const polynomial &b);

// Reduced quotient of two polynomials over the declared constants. The
// denominator is nonzero and monic under graded-lex order; zero is 0/1.
class coefficient
{
public:
    coefficient() : m_den(1) {}
    coefficient(const rational &c) : m_num(c), m_den(1) {}
    coefficient(long c) : coefficient(rational(c)) {}
    coefficient(polynomial p) : m_num(std::move(p)), m_den(1) {}
    coefficient(polynomial num, polynomial den);

    [[nodiscard]] static coefficient constant(const std::string &name)
    {
        return coefficient(polynomial::variable(name));
    }

    [[nodiscard]] const polynomial &numerator() const noexcept
    {
        return m_num;
    }
    [[nodiscard]] const polynomial &denominator() const noexcept
    {
        return m_den;
    }

    [[nodiscard]] bool is_zero() const noexcept
    {
        return m_num.is_zero();
    }
    [[nodiscard]] bool is_rational() const noexcept
    {
        return m_num.is_constant() && m_den.is_constant();
    }
    [[nodiscard]] bool is_one() const;
    [[nodiscard]] rational value() const;
    [[nodiscard]] std::set<std::string> constants() const;

    coefficient &operator+=(const coefficient &other);
    coefficient &operator-=(const coefficient &other);
    coefficient &operator*=(const coefficient &other);
    coefficient &operator/=(const coefficient &other);

    friend coefficient operator+(coefficient a, const coefficient &b)
    {
        return a += b;
    }
    friend coefficient operator-(coefficient a, const coefficient &b)
    {
        return a -= b;
    }
    friend coefficient operator*(coefficient a, const coefficient &b)
    {
        return a *= b;
    }
    friend coefficient operator/(coefficient a, const coefficient &b)
    {
        return a /= b;
    }
    friend coefficient operator-(coefficient a);

    [[nodiscard]] coefficient inverse() const;
    [[nodiscard]] coefficient pow(long n) const;

    // Throws pole_error if the denominator vanishes after substitution.
    [[nodiscard]] coefficient substitute(const std::map<std::string, rational> &values) const;

    // Renders as a parseable factor: "3/2", "(p + 1)", "1/(p + 1)", "(n - 2)/(p + 1)".
    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const coefficient &, const coefficient &) = default;
    friend std::strong_ordering operator<=>(const coefficient &, const coefficient &);

private:
    void normalize();

    polynomial m_num;
    polynomial m_den;
};

[[nodiscard]] std::string rational_to_string(const rational &q);

} // namespace conslaw

#endif
