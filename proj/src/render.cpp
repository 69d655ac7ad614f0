#include <conslaw/render.hpp>

#include <iomanip>
#include <sstream>

#include <json.hpp>

#include <conslaw/errors.hpp>

namespace conslaw
{

std::string render_text(const report &r)
{
    std::ostringstream os;
    os << "command: " << r.command << "\n";
    os << "verdict: " << to_string(r.overall()) << "\n";
    for (const auto &c : r.checks) {
        os << "  [" << to_string(c.result) << "] " << c.name << "\n";
        if (c.result != verdict::pass) {
            for (const auto &s : c.residuals) {
                if (s != "0") {
                    os << "      " << s << "\n";
                }
            }
        }
    }
    for (const auto &[name, lines] : r.outputs) {
        os << name << ":\n";
        for (const auto &l : lines) {
            os << "  " << l << "\n";
        }
    }
    os << "millis: " << std::fixed << std::setprecision(1) << r.millis << "\n";
    return os.str();
}

std::string render_json(const report &r)
{
    nlohmann::ordered_json j;
    j["command"] = r.command;
    j["verdict"] = to_string(r.overall());
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto &c : r.checks) {
        j["checks"].push_back({{"name", c.name}, {"verdict", to_string(c.result)}, {"residuals", c.residuals}});
    }
    j["millis"] = r.millis;
    nlohmann::ordered_json outs = nlohmann::ordered_json::array();
    for (const auto &[name, lines] : r.outputs) {
        outs.push_back({{"name", name}, {"lines", lines}});
    }
    j["outputs"] = outs;
    return j.dump(2);
}

report parse_report_json(const std::string &text)
{
    try {
        const auto j = nlohmann::json::parse(text);
        report r;
        r.command = j.at("command").get<std::string>();
        for (const auto &c : j.at("checks")) {
            r.checks.push_back(check{c.at("name").get<std::string>(),
                                     verdict_from_string(c.at("verdict").get<std::string>()),
                                     c.at("residuals").get<std::vector<std::string>>(),
                                     {}});
        }
        r.millis = j.at("millis").get<double>();
        if (j.contains("outputs")) {
            for (const auto &o : j.at("outputs")) {
                r.outputs.emplace_back(o.at("name").get<std::string>(),
                                       o.at("lines").get<std::vector<std::string>>());
            }
        }
        if (to_string(r.overall()) != j.at("verdict").get<std::string>()) {
            throw schema_error("verdict does not match the checks");
        }
        return r;
    } catch (const nlohmann::json::exception &e) {
        throw schema_error(std::string("malformed report: ") + e.what());
    }
}

std::vector<std::string> render_current(const signature &sig, const current &J)
{
    std::vector<std::string> out;
    for (std::size_t m = 0; m < J.size(); ++m) {
        const std::string name = m < sig.independents.size() ? sig.independents[m] : std::to_string(m);
        out.push_back(name + ": " + J[m].to_string());
    }
    return out;
}

std::vector<std::string> render_multiplier(const multiplier &q)
{
    std::vector<std::string> out;
    for (const auto &[label, v] : q) {
        out.push_back(label + ": " + v.to_string());
    }
    return out;
}

std::vector<std::string> render_system(const de_system &sys)
{
    std::vector<std::string> out;
    for (const auto &[label, F] : sys.equations) {
        out.push_back(label + " = " + F.to_string());
    }
    if (sys.solved) {
        for (const auto &rule : *sys.solved) {
            out.push_back(rule.lhs.to_string() + " -> " + rule.rhs.to_string());
        }
    }
    return out;
}

} // namespace conslaw
