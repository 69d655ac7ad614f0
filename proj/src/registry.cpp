#include <conslaw/document.hpp>

#include <registry_data.hpp>

namespace conslaw
{

std::vector<std::string> registry_names()
{
    std::vector<std::string> out;
    for (const auto &[name, text] : detail::registry_documents) {
        out.emplace_back(name);
    }
    return out;
}

std::optional<std::string_view> registry_text(const std::string &name)
{
    for (const auto &[n, text] : detail::registry_documents) {
        if (n == name) {
            return text;
        }
    }
    return std::nullopt;
}

} // namespace conslaw
