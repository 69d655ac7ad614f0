#include <conslaw/expr.hpp>

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <conslaw/errors.hpp>

namespace conslaw
{

// ---------------------------------------------------------------------------
// multi_index

multi_index::multi_index(const std::vector<std::string> &directions)
{
    std::map<std::string, int> c;
    for (const auto &d : directions) {
        ++c[d];
    }
    m_counts.assign(c.begin(), c.end());
}

int multi_index::order() const noexcept
{
    int n = 0;
    for (const auto &[d, c] : m_counts) {
        n += c;
    }
    return n;
}

int multi_index::count(const std::string &direction) const noexcept
{
    for (const auto &[d, c] : m_counts) {
        if (d == direction) {
            return c;
        }
    }
    return 0;
}

multi_index multi_index::plus(const std::string &direction, int n) const
{
    multi_index out = *this;
    auto it = std::lower_bound(out.m_counts.begin(), out.m_counts.end(), direction,
                               [](const auto &p, const std::string &d) { return p.first < d; });
    if (it != out.m_counts.end() && it->first == direction) {
        it->second += n;
    } else {
        out.m_counts.insert(it, {direction, n});
    }
    std::erase_if(out.m_counts, [](const auto &p) { return p.second == 0; });
    return out;
}

multi_index multi_index::plus(const multi_index &other) const
{
    multi_index out = *this;
    for (const auto &[d, c] : other.m_counts) {
        out = out.plus(d, c);
    }
    return out;
}

bool multi_index::contains(const multi_index &other) const noexcept
{
    return std::all_of(other.m_counts.begin(), other.m_counts.end(),
                       [this](const auto &p) { return count(p.first) >= p.second; });
}

multi_index multi_index::minus(const multi_index &other) const
{
    if (!contains(other)) {
        throw std::logic_error("multi_index::minus: not a sub-index");
    }
    multi_index out = *this;
    for (const auto &[d, c] : other.m_counts) {
        out = out.plus(d, -c);
    }
    return out;
}

std::vector<std::string> multi_index::directions() const
{
    std::vector<std::string> out;
    for (const auto &[d, c] : m_counts) {
        out.insert(out.end(), static_cast<std::size_t>(c), d);
    }
    return out;
}

std::vector<multi_index> multi_index::sub_indices() const
{
    std::vector<multi_index> out{multi_index{}};
    for (const auto &[d, c] : m_counts) {
        std::vector<multi_index> next;
        for (const auto &b : out) {
            for (int k = 0; k <= c; ++k) {
                next.push_back(k == 0 ? b : b.plus(d, k));
            }
        }
        out = std::move(next);
    }
    return out;
}

rational multi_index::multiplicity() const
{
    mpz_class num, den = 1, f;
    mpz_fac_ui(num.get_mpz_t(), static_cast<unsigned long>(order()));
    for (const auto &[d, c] : m_counts) {
        mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(c));
        den *= f;
    }
    rational m(num, den);
    m.canonicalize();
    return m;
}

std::strong_ordering operator<=>(const multi_index &a, const multi_index &b)
{
    if (auto c = a.order() <=> b.order(); c != 0) {
        return c;
    }
    return a.m_counts <=> b.m_counts;
}

// ---------------------------------------------------------------------------
// exponent

exponent exponent::symbol(const std::string &name, long multiple)
{
    exponent e;
    if (multiple != 0) {
        e.m_symbolic.emplace_back(name, multiple);
    }
    return e;
}

exponent exponent::from_coefficient(const coefficient &c)
{
    if (!c.denominator().is_constant() || c.denominator().constant_value() != 1) {
        throw exponent_error("exponent " + c.to_string() + " is not an integer-linear form");
    }
    exponent e;
    for (const auto &[m, q] : c.numerator().terms()) {
        if (q.get_den() != 1 || !q.get_num().fits_slong_p()) {
            throw exponent_error("exponent " + c.to_string() + " has a non-integer coefficient");
        }
        const long k = q.get_num().get_si();
        if (m.empty()) {
            e.m_base = k;
        } else if (m.size() == 1u && m.front().second == 1) {
            e += symbol(m.front().first, k);
        } else {
            throw exponent_error("exponent " + c.to_string() + " is not linear");
        }
    }
    return e;
}

coefficient exponent::to_coefficient() const
{
    polynomial p(m_base);
    for (const auto &[name, k] : m_symbolic) {
        p += polynomial(k) * polynomial::variable(name);
    }
    return coefficient(p);
}

exponent exponent::substitute(const std::map<std::string, rational> &values) const
{
    exponent out(m_base);
    for (const auto &[name, k] : m_symbolic) {
        auto it = values.find(name);
        if (it == values.end()) {
            out += symbol(name, k);
            continue;
        }
        if (it->second.get_den() != 1 || !it->second.get_num().fits_slong_p()) {
            throw exponent_error("exponent constant " + name + " must be specialized to an integer");
        }
        out.m_base += k * it->second.get_num().get_si();
    }
    return out;
}

exponent &exponent::operator+=(const exponent &other)
{
    m_base += other.m_base;
    for (const auto &[name, k] : other.m_symbolic) {
        auto it = std::lower_bound(m_symbolic.begin(), m_symbolic.end(), name,
                                   [](const auto &p, const std::string &n) { return p.first < n; });
        if (it != m_symbolic.end() && it->first == name) {
            it->second += k;
        } else {
            m_symbolic.insert(it, {name, k});
        }
    }
    std::erase_if(m_symbolic, [](const auto &p) { return p.second == 0; });
    return *this;
}

exponent operator-(exponent a)
{
    a.m_base = -a.m_base;
    for (auto &[name, k] : a.m_symbolic) {
        k = -k;
    }
    return a;
}

exponent operator*(exponent a, long k)
{
    if (k == 0) {
        return exponent(0);
    }
    a.m_base *= k;
    for (auto &[name, c] : a.m_symbolic) {
        c *= k;
    }
    return a;
}

std::string exponent::to_string() const
{
    if (is_integer()) {
        return m_base >= 0 ? std::to_string(m_base) : "(" + std::to_string(m_base) + ")";
    }
    std::ostringstream os;
    os << '(';
    bool first = true;
    for (const auto &[name, k] : m_symbolic) {
        if (first) {
            if (k < 0) {
                os << '-';
            }
        } else {
            os << (k < 0 ? " - " : " + ");
        }
        first = false;
        if (std::abs(k) != 1) {
            os << std::abs(k) << '*';
        }
        os << name;
    }
    if (m_base != 0) {
        os << (m_base < 0 ? " - " : " + ") << std::abs(m_base);
    }
    os << ')';
    return os.str();
}

// ---------------------------------------------------------------------------
// atom

struct atom::node {
    atom_kind kind;
    std::string name;
    multi_index indices;
    int order = 0;
    expr argument;
};

atom atom::coordinate(const std::string &name)
{
    return atom(std::make_shared<const node>(node{atom_kind::coordinate, name, {}, 0, {}}));
}

atom atom::jet(const std::string &field, multi_index indices)
{
    return atom(std::make_shared<const node>(node{atom_kind::jet, field, std::move(indices), 0, {}}));
}

atom atom::function(const std::string &name, int derivative_order, expr argument)
{
    return atom(
        std::make_shared<const node>(node{atom_kind::function, name, {}, derivative_order, std::move(argument)}));
}

atom_kind atom::kind() const noexcept
{
    return m_node->kind;
}

const std::string &atom::name() const noexcept
{
    return m_node->name;
}

const multi_index &atom::indices() const noexcept
{
    return m_node->indices;
}

int atom::derivative_order() const noexcept
{
    return m_node->order;
}

const expr &atom::argument() const
{
    if (m_node->kind != atom_kind::function) {
        throw std::logic_error("atom::argument on a non-function atom");
    }
    return m_node->argument;
}

std::string atom::to_string() const
{
    switch (kind()) {
        case atom_kind::coordinate:
            return name();
        case atom_kind::jet: {
            if (indices().empty()) {
                return name();
            }
            std::string s = name() + "[";
            bool first = true;
            for (const auto &d : indices().directions()) {
                if (!first) {
                    s += ',';
                }
                first = false;
                s += d;
            }
            return s + "]";
        }
        case atom_kind::function:
            return name() + std::string(static_cast<std::size_t>(derivative_order()), '\'') + "("
                   + argument().to_string() + ")";
    }
    return {};
}

int compare(const atom &a, const atom &b)
{
    if (a.m_node == b.m_node) {
        return 0;
    }
    if (a.kind() != b.kind()) {
        return static_cast<int>(a.kind()) < static_cast<int>(b.kind()) ? -1 : 1;
    }
    if (auto c = a.name().compare(b.name()); c != 0) {
        return c < 0 ? -1 : 1;
    }
    if (a.kind() == atom_kind::jet) {
        const auto c = a.indices() <=> b.indices();
        return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    if (a.kind() == atom_kind::function) {
        if (a.derivative_order() != b.derivative_order()) {
            return a.derivative_order() < b.derivative_order() ? -1 : 1;
        }
        return compare(a.argument(), b.argument());
    }
    return 0;
}

// ---------------------------------------------------------------------------
// monomials

int compare(const monomial &a, const monomial &b)
{
    const auto n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (int c = compare(a[i].base, b[i].base); c != 0) {
            return c;
        }
        if (auto c = a[i].power <=> b[i].power; c != 0) {
            return c < 0 ? -1 : 1;
        }
    }
    if (a.size() != b.size()) {
        return a.size() < b.size() ? -1 : 1;
    }
    return 0;
}

namespace
{

monomial multiply(const monomial &a, const monomial &b)
{
    monomial out;
    out.reserve(a.size() + b.size());
    auto i = a.begin(), j = b.begin();
    while (i != a.end() || j != b.end()) {
        if (j == b.end()) {
            out.push_back(*i++);
            continue;
        }
        if (i == a.end()) {
            out.push_back(*j++);
            continue;
        }
        const int c = compare(i->base, j->base);
        if (c < 0) {
            out.push_back(*i++);
        } else if (c > 0) {
            out.push_back(*j++);
        } else {
            exponent e = i->power + j->power;
            if (!e.is_zero()) {
                out.push_back(factor{i->base, std::move(e)});
            }
            ++i;
            ++j;
        }
    }
    return out;
}

bool term_less(const expr::term &a, const expr::term &b)
{
    return compare(a.mono, b.mono) < 0;
}

// Sorts and merges equal monomials; drops zero coefficients.
std::vector<expr::term> canonicalize(std::vector<expr::term> terms)
{
    std::sort(terms.begin(), terms.end(), term_less);
    std::vector<expr::term> out;
    out.reserve(terms.size());
    for (auto &t : terms) {
        if (!out.empty() && compare(out.back().mono, t.mono) == 0) {
            out.back().coeff += t.coeff;
        } else {
            out.push_back(std::move(t));
        }
    }
    std::erase_if(out, [](const expr::term &t) { return t.coeff.is_zero(); });
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// expr

expr::expr(const coefficient &c)
{
    if (!c.is_zero()) {
        m_terms.push_back(term{{}, c});
    }
}

expr::expr(const atom &a, const exponent &power)
{
    if (power.is_zero()) {
        m_terms.push_back(term{{}, coefficient(1)});
    } else {
        m_terms.push_back(term{{factor{a, power}}, coefficient(1)});
    }
}

expr expr::from_terms(std::vector<term> terms)
{
    for (auto &t : terms) {
        std::sort(t.mono.begin(), t.mono.end(),
                  [](const factor &x, const factor &y) { return compare(x.base, y.base) < 0; });
        monomial merged;
        for (auto &f : t.mono) {
            if (!merged.empty() && merged.back().base == f.base) {
                merged.back().power += f.power;
            } else {
                merged.push_back(std::move(f));
            }
        }
        std::erase_if(merged, [](const factor &f) { return f.power.is_zero(); });
        t.mono = std::move(merged);
    }
    expr e;
    e.m_terms = canonicalize(std::move(terms));
    return e;
}

bool expr::is_coefficient() const noexcept
{
    return m_terms.empty() || (m_terms.size() == 1u && m_terms.front().mono.empty());
}

coefficient expr::as_coefficient() const
{
    if (!is_coefficient()) {
        throw division_by_expr_error("expression " + to_string() + " is not a coefficient");
    }
    return m_terms.empty() ? coefficient() : m_terms.front().coeff;
}

expr &expr::operator+=(const expr &other)
{
    if (other.m_terms.empty()) {
        return *this;
    }
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
        const int c = compare(i->mono, j->mono);
        if (c < 0) {
            out.push_back(std::move(*i++));
        } else if (c > 0) {
            out.push_back(*j++);
        } else {
            coefficient s = i->coeff + j->coeff;
            if (!s.is_zero()) {
                out.push_back(term{std::move(i->mono), std::move(s)});
            }
            ++i;
            ++j;
        }
    }
    m_terms = std::move(out);
    return *this;
}

expr operator-(expr a)
{
    for (auto &t : a.m_terms) {
        t.coeff = -t.coeff;
    }
    return a;
}

expr &expr::operator-=(const expr &other)
{
    return *this += -other;
}

expr operator*(const expr &a, const expr &b)
{
    expr out;
    if (a.is_zero() || b.is_zero()) {
        return out;
    }
    std::vector<expr::term> terms;
    terms.reserve(a.m_terms.size() * b.m_terms.size());
    for (const auto &ta : a.m_terms) {
        for (const auto &tb : b.m_terms) {
            terms.push_back(expr::term{multiply(ta.mono, tb.mono), ta.coeff * tb.coeff});
        }
    }
    out.m_terms = canonicalize(std::move(terms));
    return out;
}

expr &expr::operator*=(const expr &other)
{
    *this = *this * other;
    return *this;
}

expr expr::scaled(const coefficient &c) const
{
    if (c.is_zero()) {
        return {};
    }
    expr out = *this;
    for (auto &t : out.m_terms) {
        t.coeff *= c;
    }
    std::erase_if(out.m_terms, [](const term &t) { return t.coeff.is_zero(); });
    return out;
}

std::set<atom> expr::atoms() const
{
    std::set<atom> out;
    for (const auto &t : m_terms) {
        for (const auto &f : t.mono) {
            out.insert(f.base);
        }
    }
    return out;
}

std::set<atom> expr::all_atoms() const
{
    std::set<atom> out;
    for (const auto &t : m_terms) {
        for (const auto &f : t.mono) {
            if (out.insert(f.base).second && f.base.kind() == atom_kind::function) {
                auto inner = f.base.argument().all_atoms();
                out.insert(inner.begin(), inner.end());
            }
        }
    }
    return out;
}

std::set<std::string> expr::constants() const
{
    std::set<std::string> out;
    for (const auto &t : m_terms) {
        auto c = t.coeff.constants();
        out.insert(c.begin(), c.end());
        for (const auto &f : t.mono) {
            for (const auto &[name, k] : f.power.symbolic()) {
                out.insert(name);
            }
            if (f.base.kind() == atom_kind::function) {
                auto inner = f.base.argument().constants();
                out.insert(inner.begin(), inner.end());
            }
        }
    }
    return out;
}

std::string expr::to_string() const
{
    if (m_terms.empty()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (const auto &t : m_terms) {
        coefficient c = t.coeff;
        const bool negative = sgn(c.numerator().leading_coefficient()) < 0;
        if (negative) {
            c = -c;
        }
        if (first) {
            if (negative) {
                os << "-";
            }
        } else {
            os << (negative ? " - " : " + ");
        }
        first = false;
        std::string body;
        for (const auto &f : t.mono) {
            if (!body.empty()) {
                body += '*';
            }
            body += f.base.to_string();
            if (f.power != exponent(1)) {
                body += '^' + f.power.to_string();
            }
        }
        if (body.empty()) {
            os << c.to_string();
        } else if (c.is_one()) {
            os << body;
        } else {
            os << c.to_string() << '*' << body;
        }
    }
    return os.str();
}

int compare(const expr &a, const expr &b)
{
    const auto n = std::min(a.m_terms.size(), b.m_terms.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (int c = compare(a.m_terms[i].mono, b.m_terms[i].mono); c != 0) {
            return c;
        }
        if (auto c = a.m_terms[i].coeff <=> b.m_terms[i].coeff; c != 0) {
            return c < 0 ? -1 : 1;
        }
    }
    if (a.m_terms.size() != b.m_terms.size()) {
        return a.m_terms.size() < b.m_terms.size() ? -1 : 1;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// operations

expr pow(const expr &base, const exponent &power)
{
    if (power.is_zero()) {
        return expr(1);
    }
    if (power.is_integer() && power.base() > 0) {
        expr result(1);
        expr b = base;
        auto n = static_cast<unsigned long>(power.base());
        while (n != 0u) {
            if ((n & 1u) != 0u) {
                result *= b;
            }
            n >>= 1u;
            if (n != 0u) {
                b *= b;
            }
        }
        return result;
    }
    if (base.is_zero()) {
        if (power.is_integer()) {
            throw pole_error("zero raised to a negative power");
        }
        throw exponent_error("zero raised to a symbolic power");
    }
    if (base.terms().size() != 1u) {
        if (power.is_integer()) {
            throw division_by_expr_error("negative power of the sum " + base.to_string());
        }
        throw exponent_error("symbolic power of the sum " + base.to_string());
    }
    const auto &t = base.terms().front();
    coefficient c;
    if (power.is_integer()) {
        c = t.coeff.pow(power.base());
    } else if (t.coeff.is_one()) {
        c = coefficient(1);
    } else {
        throw exponent_error("symbolic power of the coefficient " + t.coeff.to_string());
    }
    monomial m;
    for (const auto &f : t.mono) {
        exponent e;
        if (power.is_integer()) {
            e = f.power * power.base();
        } else if (f.power.is_integer()) {
            e = power * f.power.base();
        } else {
            throw exponent_error("product of symbolic exponents " + f.power.to_string() + " and " + power.to_string());
        }
        m.push_back(factor{f.base, std::move(e)});
    }
    return expr::from_terms({expr::term{std::move(m), std::move(c)}});
}

expr apply_derivation(const expr &e, const std::function<expr(const atom &)> &atom_derivative)
{
    std::map<atom, expr> cache;
    auto derivative_of = [&](const atom &a) -> const expr & {
        auto it = cache.find(a);
        if (it == cache.end()) {
            it = cache.emplace(a, atom_derivative(a)).first;
        }
        return it->second;
    };
    std::vector<expr::term> pieces;
    expr out;
    for (const auto &t : e.terms()) {
        for (std::size_t i = 0; i < t.mono.size(); ++i) {
            const expr &d = derivative_of(t.mono[i].base);
            if (d.is_zero()) {
                continue;
            }
            monomial rest = t.mono;
            const coefficient k = t.mono[i].power.to_coefficient();
            rest[i].power += exponent(-1);
            if (rest[i].power.is_zero()) {
                rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
            }
            expr piece = expr::from_terms({expr::term{std::move(rest), t.coeff * k}});
            out += piece * d;
        }
    }
    return out;
}

bool depends_on(const expr &e, const atom &a)
{
    for (const auto &t : e.terms()) {
        for (const auto &f : t.mono) {
            if (f.base == a) {
                return true;
            }
            if (f.base.kind() == atom_kind::function && depends_on(f.base.argument(), a)) {
                return true;
            }
        }
    }
    return false;
}

expr partial_atom(const expr &e, const atom &a)
{
    return apply_derivation(e, [&](const atom &b) -> expr {
        if (b == a) {
            return expr(1);
        }
        if (b.kind() == atom_kind::function) {
            expr inner = partial_atom(b.argument(), a);
            if (inner.is_zero()) {
                return {};
            }
            return expr(atom::function(b.name(), b.derivative_order() + 1, b.argument())) * inner;
        }
        return {};
    });
}

namespace
{

// Rebuilds e replacing atoms by values; value_of returns nullopt to keep an atom.
expr rebuild(const expr &e, const std::function<std::optional<expr>(const atom &)> &value_of)
{
    std::map<atom, std::optional<expr>> cache;
    std::vector<expr::term> kept;
    expr out;
    for (const auto &t : e.terms()) {
        monomial unchanged;
        expr product(t.coeff);
        bool touched = false;
        for (const auto &f : t.mono) {
            auto it = cache.find(f.base);
            if (it == cache.end()) {
                it = cache.emplace(f.base, value_of(f.base)).first;
            }
            if (it->second) {
                product *= pow(*it->second, f.power);
                touched = true;
            } else {
                unchanged.push_back(f);
            }
        }
        if (!touched) {
            kept.push_back(t);
            continue;
        }
        out += product * expr::from_terms({expr::term{std::move(unchanged), coefficient(1)}});
    }
    return out + expr::from_terms(std::move(kept));
}

} // namespace

expr substitute(const expr &e, const substitution &rules)
{
    if (rules.empty()) {
        return e;
    }
    return rebuild(e, [&](const atom &a) -> std::optional<expr> {
        if (auto it = rules.find(a); it != rules.end()) {
            return it->second;
        }
        if (a.kind() == atom_kind::function) {
            expr arg = substitute(a.argument(), rules);
            if (arg != a.argument()) {
                return expr(atom::function(a.name(), a.derivative_order(), std::move(arg)));
            }
        }
        return std::nullopt;
    });
}

expr substitute_function(const expr &e, const std::string &function_name, const expr &body, const atom &dummy)
{
    return rebuild(e, [&](const atom &a) -> std::optional<expr> {
        if (a.kind() != atom_kind::function) {
            return std::nullopt;
        }
        expr arg = substitute_function(a.argument(), function_name, body, dummy);
        if (a.name() == function_name) {
            expr d = body;
            for (int k = 0; k < a.derivative_order(); ++k) {
                d = partial_atom(d, dummy);
            }
            return substitute(d, {{dummy, arg}});
        }
        if (arg != a.argument()) {
            return expr(atom::function(a.name(), a.derivative_order(), std::move(arg)));
        }
        return std::nullopt;
    });
}

expr specialize_constants(const expr &e, const std::map<std::string, rational> &values,
                          const std::function<bool(const atom &)> &allow_negative)
{
    expr out;
    for (const auto &t : e.terms()) {
        expr product(t.coeff.substitute(values));
        if (product.is_zero()) {
            continue;
        }
        for (const auto &f : t.mono) {
            atom a = f.base;
            if (a.kind() == atom_kind::function) {
                a = atom::function(a.name(), a.derivative_order(),
                                   specialize_constants(a.argument(), values, allow_negative));
            }
            const exponent pw = f.power.substitute(values);
            if (pw.is_integer() && pw.base() < 0 && !(allow_negative && allow_negative(a))) {
                throw exponent_error("atom " + a.to_string() + " would receive the negative exponent "
                                     + std::to_string(pw.base()));
            }
            product *= expr(a, pw);
        }
        out += product;
    }
    return out;
}

rational eval_rational(const expr &e, const evaluation_point &point)
{
    rational total = 0;
    for (const auto &t : e.terms()) {
        const coefficient c = t.coeff.substitute(point.constants);
        if (!c.is_rational()) {
            throw missing_assignment_error("no value for constants of " + t.coeff.to_string());
        }
        rational value = c.value();
        for (const auto &f : t.mono) {
            rational base;
            if (f.base.kind() == atom_kind::function) {
                if (!point.functions) {
                    throw missing_assignment_error("no function table for " + f.base.to_string());
                }
                base = point.functions(f.base.name(), f.base.derivative_order(),
                                       eval_rational(f.base.argument(), point));
            } else {
                auto it = point.atoms.find(f.base);
                if (it == point.atoms.end()) {
                    throw missing_assignment_error("no value for atom " + f.base.to_string());
                }
                base = it->second;
            }
            const exponent pw = f.power.substitute(point.constants);
            if (!pw.is_integer()) {
                throw missing_assignment_error("no value for exponent " + f.power.to_string());
            }
            long n = pw.base();
            if (n < 0) {
                if (sgn(base) == 0) {
                    throw pole_error("zero atom " + f.base.to_string() + " raised to a negative power");
                }
                base = 1 / base;
                n = -n;
            }
            rational r = 1;
            for (long k = 0; k < n; ++k) {
                r *= base;
            }
            value *= r;
        }
        total += value;
    }
    return total;
}

expr map_coefficients(const expr &e, const std::function<coefficient(const coefficient &)> &f)
{
    std::vector<expr::term> terms;
    for (const auto &t : e.terms()) {
        terms.push_back(expr::term{t.mono, f(t.coeff)});
    }
    return expr::from_terms(std::move(terms));
}

expr filter_terms(const expr &e, const std::function<bool(const expr::term &)> &pred)
{
    std::vector<expr::term> terms;
    for (const auto &t : e.terms()) {
        if (pred(t)) {
            terms.push_back(t);
        }
    }
    return expr::from_terms(std::move(terms));
}

} // namespace conslaw
