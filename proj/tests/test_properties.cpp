#include <doctest.h>

#include "support/oracle.hpp"
#include "support/properties.hpp"

TEST_CASE("randomized properties")
{
    for (const auto &o : properties::all(oracle::seed)) {
        INFO(o.name);
        for (const auto &f : o.failures) {
            INFO(f);
        }
        CHECK(o.cases > 0);
        CHECK(o.failures.empty());
    }
}
