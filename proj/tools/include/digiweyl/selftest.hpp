#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace digiweyl {

struct SelftestCheck {
    std::string name;
    bool ok = true;
    std::string detail;
    double seconds = 0.0;
};

// Fast versions of the library invariants: brute-force equivalences,
// partition identities, exact exponent relations, certified convergents,
// discrepancy and Vinogradov oracles.
std::vector<SelftestCheck> run_selftest(std::uint64_t seed, unsigned threads);

} // namespace digiweyl
