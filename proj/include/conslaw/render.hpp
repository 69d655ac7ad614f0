#ifndef CONSLAW_RENDER_HPP
#define CONSLAW_RENDER_HPP

#include <string>
#include <vector>

#include <conslaw/jet.hpp>
#include <conslaw/report.hpp>
#include <conslaw/system.hpp>

namespace conslaw
{

// Human-readable report: verdict, one line per check, residuals of failures, outputs.
[[nodiscard]] std::string render_text(const report &r);

// {command, verdict, checks: [{name, verdict, residuals}], millis, outputs}
[[nodiscard]] std::string render_json(const report &r);
// Inverse of render_json; residual_exprs stay empty. Throws schema_error.
[[nodiscard]] report parse_report_json(const std::string &text);

// "t: ..." lines, one per independent.
[[nodiscard]] std::vector<std::string> render_current(const signature &sig, const current &J);
[[nodiscard]] std::vector<std::string> render_multiplier(const multiplier &q);
[[nodiscard]] std::vector<std::string> render_system(const de_system &sys);

} // namespace conslaw

#endif
