#ifndef CONSLAW_REPORT_HPP
#define CONSLAW_REPORT_HPP

#include <string>
#include <utility>
#include <vector>

#include <conslaw/expr.hpp>

namespace conslaw
{

enum class verdict { pass, fail, necessary_only };

[[nodiscard]] std::string to_string(verdict v);
[[nodiscard]] verdict verdict_from_string(const std::string &s);

struct check {
    std::string name;
    verdict result = verdict::pass;
    std::vector<std::string> residuals; // rendered canonically
    std::vector<expr> residual_exprs;   // same residuals, in memory only
};

// A check that passes exactly when every residual is zero.
[[nodiscard]] check zero_check(std::string name, const std::vector<expr> &residuals);
[[nodiscard]] check zero_check(std::string name, const expr &residual);

struct report {
    std::string command;
    std::vector<check> checks;
    double millis = 0;
    // Named results of the command (currents, weights), rendered.
    std::vector<std::pair<std::string, std::vector<std::string>>> outputs;

    // fail if any check fails, else necessary-only if any check is, else pass.
    [[nodiscard]] verdict overall() const;
    [[nodiscard]] bool passed() const
    {
        return overall() == verdict::pass;
    }
    void add(check c)
    {
        checks.push_back(std::move(c));
    }
    void append(const report &other, const std::string &prefix = {});
};

} // namespace conslaw

#endif
