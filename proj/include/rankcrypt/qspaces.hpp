#pragma once

#include <string>
#include <vector>

#include "rankcrypt/linalg.hpp"

namespace rankcrypt {

Subspace code_frobenius(const Subspace& c, long long i);

/// S_j^i = C^[j] + C^[j+1] + ... + C^[j+i-1]; requires i >= 1.
Subspace sumspace(const Subspace& c, long long j, std::size_t i);

struct DistinguishReport {
    std::size_t n = 0, dual_dim = 0, lambda = 0;
    std::size_t observed_dim = 0;
    /// lambda * (n-k) + lambda
    std::size_t bound = 0;
    /// min(n, (lambda+1)(n-k))
    std::size_t random_expected = 0;
    bool is_distinguishable = false;
    std::string reason;
};

/// Works on the dual of the public code: observed_dim = dim S_0^{lambda+1}.
DistinguishReport distinguish(const Matrix& g_pub, std::size_t lambda);

/// dim(S_0^3 cap S_s^3) for s = 1..r.
std::vector<std::size_t> intersection_dim_profile(const Subspace& c, std::size_t r);

/// dim(S_0^3 cap S_1^3 cap ... cap S_s^3) for s = 1..r.
std::vector<std::size_t> iterated_intersection_profile(const Subspace& c, std::size_t r);

/// S_0^w cap S_1^w cap ... cap S_s^w.
Subspace iterated_intersection(const Subspace& c, std::size_t width, std::size_t s);

}  // namespace rankcrypt
