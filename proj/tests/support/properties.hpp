#ifndef CONSLAW_TESTS_PROPERTIES_HPP
#define CONSLAW_TESTS_PROPERTIES_HPP

#include <string>
#include <vector>

namespace properties
{

struct outcome {
    std::string name;
    int cases = 0;
    std::vector<std::string> failures; // rendered counterexamples, capped

    [[nodiscard]] bool passed() const
    {
        return cases > 0 && failures.empty();
    }
};

// Each suite is deterministic for a given seed.
outcome euler_annihilates_divergences(unsigned seed, int cases = 1000);
outcome total_derivatives_commute(unsigned seed, int cases = 1000);
outcome total_derivative_matches_configurations(unsigned seed, int cases = 100);
outcome ibp_reassembly(unsigned seed, int cases = 300);
outcome variation_split_identity(unsigned seed, int cases = 300);
outcome normalization_matches_evaluation(unsigned seed, int cases = 300);

std::vector<outcome> all(unsigned seed);

} // namespace properties

#endif
