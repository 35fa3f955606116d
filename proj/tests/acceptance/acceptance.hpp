#pragma once

#include <cstddef>
#include <string>

namespace acceptance {

// Counts expectations and keeps the first failure for the report line.
struct Check {
    std::size_t checks = 0;
    std::size_t failures = 0;
    std::string first_failure;

    bool expect(bool ok, const std::string& what) {
        ++checks;
        if (!ok && failures++ == 0) first_failure = what;
        return ok;
    }
};

void fatgraph_numbers(Check&);
void euler_consistency(Check&);
void dw_agreement(Check&);
void tqft_coherence(Check&);
void operad_suite(Check&);
void hochschild_suite(Check&);
void gbv_suite(Check&);
void cacti_suite(Check&);
void cli_determinism(Check&);

}  // namespace acceptance
