#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rankcrypt {

struct IdentityCheck {
    std::string name;
    bool ok = false;
    std::string detail;
};

/// Term-exact identities and divisibility facts behind the bivariate
/// reduction, over F_q (q = 2 or 3 in practice).
std::vector<IdentityCheck> polynomial_identities(unsigned q);

/// Evaluation law f(A.(x,y)) * den^{sum q^i} = det(A) f(x,y) for random
/// A in GL_3(F_q) over F_{q^7}; one check per triple.
std::vector<IdentityCheck> transformation_law(unsigned q, std::size_t instances, std::uint64_t seed);

/// Evidence for the common-factor conjecture: at each sampled x0 in
/// F_{q^m} minus F_q, compares gcd_Y(f1 f2, f3 f4)(x0, Y) with f0^{q^2+1}(x0, Y).
struct GcdEvidence {
    unsigned q = 0, m = 0;
    std::size_t samples = 0, equal = 0;
};
GcdEvidence gcd_conjecture_evidence(unsigned q, unsigned m, std::size_t samples, std::uint64_t seed);

}  // namespace rankcrypt
