#ifndef CONSLAW_EXAMPLES_HPP
#define CONSLAW_EXAMPLES_HPP

#include <string>
#include <vector>

#include <conslaw/document.hpp>
#include <conslaw/report.hpp>

namespace conslaw
{

// Every applicable check for the pairs, symmetries and Noether entries of a document.
[[nodiscard]] report run_example(const system_document &doc);

// Runs the named registry documents concurrently; the merged report keeps the given order.
[[nodiscard]] report run_examples(const std::vector<std::string> &names);

} // namespace conslaw

#endif
