#pragma once

#include <string>
#include <vector>

namespace negm {

struct VerifyCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct VerifyOptions {
    unsigned max_mu = 16;
    unsigned threads = 1;
};

/// Identity suite over the exact engine. Index ranges scale with max_mu,
/// capped at 32 for the 3F2 path, 20 for quadrature and 8 for the naive sums.
std::vector<VerifyCheck> run_verify(const VerifyOptions& options);

} // namespace negm
