#include <conslaw/report.hpp>

#include <algorithm>

#include <conslaw/errors.hpp>

namespace conslaw
{

std::string to_string(verdict v)
{
    switch (v) {
        case verdict::pass:
            return "pass";
        case verdict::fail:
            return "fail";
        case verdict::necessary_only:
            return "necessary-only";
    }
    return {};
}

verdict verdict_from_string(const std::string &s)
{
    if (s == "pass") {
        return verdict::pass;
    }
    if (s == "fail") {
        return verdict::fail;
    }
    if (s == "necessary-only") {
        return verdict::necessary_only;
    }
    throw schema_error("unknown verdict '" + s + "'");
}

check zero_check(std::string name, const std::vector<expr> &residuals)
{
    check c;
    c.name = std::move(name);
    c.residual_exprs = residuals;
    for (const auto &r : residuals) {
        c.residuals.push_back(r.to_string());
        if (!r.is_zero()) {
            c.result = verdict::fail;
        }
    }
    return c;
}

check zero_check(std::string name, const expr &residual)
{
    return zero_check(std::move(name), std::vector<expr>{residual});
}

verdict report::overall() const
{
    if (std::any_of(checks.begin(), checks.end(), [](const check &c) { return c.result == verdict::fail; })) {
        return verdict::fail;
    }
    if (std::any_of(checks.begin(), checks.end(),
                    [](const check &c) { return c.result == verdict::necessary_only; })) {
        return verdict::necessary_only;
    }
    return verdict::pass;
}

void report::append(const report &other, const std::string &prefix)
{
    for (auto c : other.checks) {
        if (!prefix.empty()) {
            c.name = prefix + c.name;
        }
        checks.push_back(std::move(c));
    }
    for (const auto &[name, lines] : other.outputs) {
        outputs.emplace_back(prefix + name, lines);
    }
}

} // namespace conslaw
