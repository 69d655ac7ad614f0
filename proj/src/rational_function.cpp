#include <conslaw/rational_function.hpp>

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

#include <conslaw/errors.hpp>

namespace conslaw
{

namespace
{

int pp_degree(const power_product &m)
{
    int d = 0;
    for (const auto &[name, e] : m) {
        d += e;
    }
    return d;
}

power_product pp_multiply(const power_product &a, const power_product &b)
{
    power_product out;
    out.reserve(a.size() + b.size());
    auto i = a.begin(), j = b.begin();
    while (i != a.end() || j != b.end()) {
        if (j == b.end() || (i != a.end() && i->first < j->first)) {
            out.push_back(*i++);
        } else if (i == a.end() || j->first < i->first) {
            out.push_back(*j++);
        } else {
            out.emplace_back(i->first, i->second + j->second);
            ++i;
            ++j;
        }
    }
    return out;
}

// a / b if b divides a, nothing otherwise.
bool pp_divide(const power_product &a, const power_product &b, power_product &out)
{
    out.clear();
    auto i = a.begin();
    for (const auto &[name, e] : b) {
        while (i != a.end() && i->first < name) {
            out.push_back(*i++);
        }
        if (i == a.end() || i->first != name || i->second < e) {
            return false;
        }
        if (i->second > e) {
            out.emplace_back(name, i->second - e);
        }
        ++i;
    }
    out.insert(out.end(), i, a.end());
    return true;
}

std::strong_ordering cmp_rational(const rational &a, const rational &b)
{
    const int c = cmp(a, b);
    return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

} // namespace

std::strong_ordering grlex_compare(const power_product &a, const power_product &b)
{
    if (auto c = pp_degree(a) <=> pp_degree(b); c != 0) {
        return c;
    }
    auto i = a.begin(), j = b.begin();
    for (; i != a.end() && j != b.end(); ++i, ++j) {
        if (i->first != j->first) {
            // The product containing the alphabetically earlier variable is larger.
            return i->first < j->first ? std::strong_ordering::greater : std::strong_ordering::less;
        }
        if (i->second != j->second) {
            return i->second <=> j->second;
        }
    }
    if (i != a.end()) {
        return std::strong_ordering::greater;
    }
    if (j != b.end()) {
        return std::strong_ordering::less;
    }
    return std::strong_ordering::equal;
}

std::string rational_to_string(const rational &q)
{
    return q.get_str();
}

// ---------------------------------------------------------------------------
// polynomial

polynomial::polynomial(const rational &c)
{
    if (sgn(c) != 0) {
        m_terms.emplace_back(power_product{}, c);
    }
}

polynomial polynomial::variable(const std::string &name, int power)
{
    polynomial p;
    if (power == 0) {
        return polynomial(1);
    }
    p.m_terms.emplace_back(power_product{{name, power}}, rational(1));
    return p;
}

bool polynomial::is_constant() const noexcept
{
    return m_terms.empty() || (m_terms.size() == 1u && m_terms.front().first.empty());
}

rational polynomial::constant_value() const
{
    if (m_terms.empty()) {
        return 0;
    }
    if (!is_constant()) {
        throw std::logic_error("polynomial::constant_value on a non-constant polynomial");
    }
    return m_terms.front().second;
}

int polynomial::degree_in(const std::string &var) const
{
    int d = 0;
    for (const auto &[m, c] : m_terms) {
        for (const auto &[name, e] : m) {
            if (name == var) {
                d = std::max(d, e);
            }
        }
    }
    return d;
}

int polynomial::total_degree() const
{
    int d = 0;
    for (const auto &[m, c] : m_terms) {
        d = std::max(d, pp_degree(m));
    }
    return d;
}

std::set<std::string> polynomial::variables() const
{
    std::set<std::string> out;
    for (const auto &[m, c] : m_terms) {
        for (const auto &[name, e] : m) {
            out.insert(name);
        }
    }
    return out;
}

rational polynomial::leading_coefficient() const
{
    return m_terms.empty() ? rational(0) : m_terms.front().second;
}

void polynomial::combine_sorted()
{
    std::sort(m_terms.begin(), m_terms.end(),
              [](const term &a, const term &b) { return grlex_compare(a.first, b.first) > 0; });
    std::vector<term> out;
    out.reserve(m_terms.size());
    for (auto &t : m_terms) {
        if (!out.empty() && out.back().first == t.first) {
            out.back().second += t.second;
        } else {
            out.push_back(std::move(t));
        }
    }
    std::erase_if(out, [](const term &t) { return sgn(t.second) == 0; });
    m_terms = std::move(out);
}

polynomial &polynomial::operator+=(const polynomial &other)
{
    std::vector<term> out;
    out.reserve(m_terms.size() + other.m_terms.size());
    auto i = m_terms.begin();
    auto j = other.m_terms.begin();
    while (i != m_terms.end() || j != other.m_terms.end()) {
        if (j == other.m_terms.end()) {
            out.push_back(std::move(*i++));
            continue;
        }
        if (i == m_terms.end()) {
            out.push_back(*j++);
            continue;
        }
        const auto c = grlex_compare(i->first, j->first);
        if (c > 0) {
            out.push_back(std::move(*i++));
        } else if (c < 0) {
            out.push_back(*j++);
        } else {
            rational s = i->second + j->second;
            if (sgn(s) != 0) {
                out.emplace_back(std::move(i->first), std::move(s));
            }
            ++i;
            ++j;
        }
    }
    m_terms = std::move(out);
    return *this;
}

polynomial operator-(polynomial a)
{
    for (auto &t : a.m_terms) {
        t.second = -t.second;
    }
    return a;
}

polynomial &polynomial::operator-=(const polynomial &other)
{
    return *this += -other;
}

polynomial operator*(const polynomial &a, const polynomial &b)
{
    polynomial out;
    if (a.is_zero() || b.is_zero()) {
        return out;
    }
    out.m_terms.reserve(a.m_terms.size() * b.m_terms.size());
    for (const auto &[ma, ca] : a.m_terms) {
        for (const auto &[mb, cb] : b.m_terms) {
            out.m_terms.emplace_back(pp_multiply(ma, mb), ca * cb);
        }
    }
    out.combine_sorted();
    return out;
}

polynomial &polynomial::operator*=(const polynomial &other)
{
    *this = *this * other;
    return *this;
}

polynomial polynomial::pow(unsigned n) const
{
    polynomial result(1);
    polynomial base = *this;
    while (n != 0u) {
        if ((n & 1u) != 0u) {
            result *= base;
        }
        n >>= 1u;
        if (n != 0u) {
            base *= base;
        }
    }
    return result;
}

polynomial polynomial::substitute(const std::map<std::string, rational> &values) const
{
    polynomial out;
    for (const auto &[m, c] : m_terms) {
        rational coeff = c;
        power_product rest;
        for (const auto &[name, e] : m) {
            if (auto it = values.find(name); it != values.end()) {
                rational pw = 1;
                for (int k = 0; k < e; ++k) {
                    pw *= it->second;
                }
                coeff *= pw;
            } else {
                rest.emplace_back(name, e);
            }
        }
        out.m_terms.emplace_back(std::move(rest), std::move(coeff));
    }
    out.combine_sorted();
    return out;
}

std::map<int, polynomial> polynomial::coefficients_in(const std::string &var) const
{
    std::map<int, polynomial> out;
    for (const auto &[m, c] : m_terms) {
        int deg = 0;
        power_product rest;
        for (const auto &[name, e] : m) {
            if (name == var) {
                deg = e;
            } else {
                rest.emplace_back(name, e);
            }
        }
        out[deg].m_terms.emplace_back(std::move(rest), c);
    }
    for (auto &[d, p] : out) {
        p.combine_sorted();
    }
    return out;
}

std::string polynomial::to_string() const
{
    if (m_terms.empty()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (const auto &[m, c] : m_terms) {
        rational mag = abs(c);
        if (first) {
            if (sgn(c) < 0) {
                os << '-';
            }
        } else {
            os << (sgn(c) < 0 ? " - " : " + ");
        }
        first = false;
        const bool unit = mag == 1;
        if (!unit || m.empty()) {
            os << rational_to_string(mag);
        }
        bool need_star = !unit || m.empty();
        for (const auto &[name, e] : m) {
            if (need_star) {
                os << '*';
            }
            os << name;
            if (e != 1) {
                os << '^' << e;
            }
            need_star = true;
        }
    }
    return os.str();
}

bool operator==(const polynomial &a, const polynomial &b)
{
    return a.m_terms == b.m_terms;
}

std::strong_ordering operator<=>(const polynomial &a, const polynomial &b)
{
    const auto n = std::min(a.m_terms.size(), b.m_terms.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (auto c = grlex_compare(a.m_terms[i].first, b.m_terms[i].first); c != 0) {
            return c;
        }
        if (auto c = cmp_rational(a.m_terms[i].second, b.m_terms[i].second); c != 0) {
            return c;
        }
    }
    return a.m_terms.size() <=> b.m_terms.size();
}

// ---------------------------------------------------------------------------
// division and gcd

polynomial exact_divide(const polynomial &a, const polynomial &b)
{
    if (b.is_zero()) {
        throw std::logic_error("exact_divide by zero polynomial");
    }
    if (b.is_constant()) {
        polynomial out = a;
        return out * polynomial(1 / b.constant_value());
    }
    polynomial q;
    polynomial r = a;
    const auto &[lm_b, lc_b] = b.terms().front();
    power_product quot;
    while (!r.is_zero()) {
        const auto &[lm_r, lc_r] = r.terms().front();
        if (!pp_divide(lm_r, lm_b, quot)) {
            throw std::logic_error("exact_divide: division is not exact");
        }
        polynomial t;
        t += polynomial(rational(lc_r / lc_b)) * [&] {
            polynomial m(1);
            for (const auto &[name, e] : quot) {
                m *= polynomial::variable(name, e);
            }
            return m;
        }();
        q += t;
        r -= t * b;
    }
    return q;
}

namespace
{

polynomial monic(const polynomial &p)
{
    if (p.is_zero()) {
        return p;
    }
    return p * polynomial(1 / p.leading_coefficient());
}

polynomial content_in(const polynomial &p, const std::string &var);

polynomial primitive_part_in(const polynomial &p, const std::string &var)
{
    if (p.is_zero()) {
        return p;
    }
    return exact_divide(p, content_in(p, var));
}

// Pseudo-remainder of a by b, both viewed as univariate polynomials in var.
polynomial pseudo_remainder(const polynomial &a, const polynomial &b, const std::string &var)
{
    auto bc = b.coefficients_in(var);
    const int db = bc.rbegin()->first;
    const polynomial lb = bc.rbegin()->second;
    polynomial r = a;
    int steps = r.degree_in(var) - db + 1;
    while (!r.is_zero() && r.degree_in(var) >= db) {
        auto rc = r.coefficients_in(var);
        const int dr = rc.rbegin()->first;
        const polynomial lr = rc.rbegin()->second;
        r = lb * r - lr * polynomial::variable(var, dr - db) * b;
        --steps;
    }
    if (steps > 0) {
        r *= lb.pow(static_cast<unsigned>(steps));
    }
    return r;
}

polynomial gcd_impl(const polynomial &a, const polynomial &b)
{
    if (a.is_zero()) {
        return monic(b);
    }
    if (b.is_zero()) {
        return monic(a);
    }
    if (a.is_constant() || b.is_constant()) {
        return polynomial(1);
    }
    auto va = a.variables();
    auto vb = b.variables();
    std::set<std::string> all = va;
    all.insert(vb.begin(), vb.end());
    const std::string var = *all.begin();
    if (!va.contains(var)) {
        return gcd_impl(a, content_in(b, var));
    }
    if (!vb.contains(var)) {
        return gcd_impl(content_in(a, var), b);
    }
    const polynomial ca = content_in(a, var);
    const polynomial cb = content_in(b, var);
    polynomial pa = exact_divide(a, ca);
    polynomial pb = exact_divide(b, cb);
    const polynomial c = gcd_impl(ca, cb);
    if (pa.degree_in(var) < pb.degree_in(var)) {
        std::swap(pa, pb);
    }
    while (true) {
        polynomial r = pseudo_remainder(pa, pb, var);
        if (r.is_zero()) {
            break;
        }
        if (r.degree_in(var) == 0) {
            pb = polynomial(1);
            break;
        }
        pa = std::move(pb);
        pb = primitive_part_in(r, var);
    }
    return monic(c * primitive_part_in(pb, var));
}

polynomial content_in(const polynomial &p, const std::string &var)
{
    polynomial g;
    for (const auto &[d, c] : p.coefficients_in(var)) {
        g = gcd_impl(g, c);
        if (g.is_constant() && !g.is_zero()) {
            return polynomial(1);
        }
    }
    return g;
}

} // namespace

polynomial gcd(const polynomial &a, const polynomial &b)
{
    return gcd_impl(a, b);
}

// ---------------------------------------------------------------------------
// coefficient

coefficient::coefficient(polynomial num, polynomial den) : m_num(std::move(num)), m_den(std::move(den))
{
    if (m_den.is_zero()) {
        throw pole_error("coefficient with zero denominator");
    }
    normalize();
}

void coefficient::normalize()
{
    if (m_num.is_zero()) {
        m_den = polynomial(1);
        return;
    }
    if (m_den.is_constant()) {
        const rational d = m_den.constant_value();
        if (d != 1) {
            m_num = m_num * polynomial(1 / d);
            m_den = polynomial(1);
        }
        return;
    }
    const polynomial g = gcd(m_num, m_den);
    if (!g.is_constant()) {
        m_num = exact_divide(m_num, g);
        m_den = exact_divide(m_den, g);
    }
    const rational lc = m_den.leading_coefficient();
    if (lc != 1) {
        m_num = m_num * polynomial(1 / lc);
        m_den = m_den * polynomial(1 / lc);
    }
}

bool coefficient::is_one() const
{
    return m_den.is_constant() && m_num.is_constant() && m_num.constant_value() == 1;
}

rational coefficient::value() const
{
    if (!is_rational()) {
        throw std::logic_error("coefficient::value on a symbolic coefficient");
    }
    return m_num.constant_value();
}

std::set<std::string> coefficient::constants() const
{
    auto out = m_num.variables();
    auto d = m_den.variables();
    out.insert(d.begin(), d.end());
    return out;
}

coefficient &coefficient::operator+=(const coefficient &other)
{
    if (m_den == other.m_den) {
        m_num += other.m_num;
        if (!m_den.is_constant()) {
            normalize();
        } else if (m_num.is_zero()) {
            m_den = polynomial(1);
        }
        return *this;
    }
    m_num = m_num * other.m_den + other.m_num * m_den;
    m_den = m_den * other.m_den;
    normalize();
    return *this;
}

coefficient operator-(coefficient a)
{
    a.m_num = -a.m_num;
    return a;
}

coefficient &coefficient::operator-=(const coefficient &other)
{
    return *this += -other;
}

coefficient &coefficient::operator*=(const coefficient &other)
{
    if (m_den.is_constant() && other.m_den.is_constant()) {
        m_num *= other.m_num;
        if (m_num.is_zero()) {
            m_den = polynomial(1);
        }
        return *this;
    }
    m_num *= other.m_num;
    m_den *= other.m_den;
    normalize();
    return *this;
}

coefficient coefficient::inverse() const
{
    if (m_num.is_zero()) {
        throw pole_error("inverse of zero coefficient");
    }
    return coefficient(m_den, m_num);
}

coefficient &coefficient::operator/=(const coefficient &other)
{
    return *this *= other.inverse();
}

coefficient coefficient::pow(long n) const
{
    if (n < 0) {
        return inverse().pow(-n);
    }
    coefficient out(1);
    for (long k = 0; k < n; ++k) {
        out *= *this;
    }
    return out;
}

coefficient coefficient::substitute(const std::map<std::string, rational> &values) const
{
    polynomial den = m_den.substitute(values);
    if (den.is_zero()) {
        throw pole_error("denominator " + m_den.to_string() + " vanishes at the specialization point");
    }
    return coefficient(m_num.substitute(values), std::move(den));
}

std::string coefficient::to_string() const
{
    auto wrap = [](const polynomial &p) {
        if (p.terms().size() == 1u) {
            const auto &[m, c] = p.terms().front();
            if (m.empty() || (c == 1 && m.size() == 1u && m.front().second == 1)) {
                return p.to_string();
            }
        }
        return "(" + p.to_string() + ")";
    };
    if (m_den.is_constant()) {
        if (m_num.is_constant()) {
            return rational_to_string(m_num.constant_value());
        }
        return wrap(m_num);
    }
    if (m_num.is_constant()) {
        const rational n = m_num.constant_value();
        return rational_to_string(n) + "/" + wrap(m_den);
    }
    return wrap(m_num) + "/" + wrap(m_den);
}

std::strong_ordering operator<=>(const coefficient &a, const coefficient &b)
{
    if (auto c = a.m_num <=> b.m_num; c != 0) {
        return c;
    }
    return a.m_den <=> b.m_den;
}

} // namespace conslaw
