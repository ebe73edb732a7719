#include "rankcrypt/qspaces.hpp"

#include <algorithm>
#include <stdexcept>

namespace rankcrypt {

Subspace code_frobenius(const Subspace& c, long long i) { return c.frobenius(i); }

Subspace sumspace(const Subspace& c, long long j, std::size_t i) {
    if (i < 1) throw std::invalid_argument("sumspace width must be positive");
    Subspace s = c.frobenius(j);
    for (std::size_t l = 1; l < i; ++l) s = subspace_sum(s, c.frobenius(j + static_cast<long long>(l)));
    return s;
}

DistinguishReport distinguish(const Matrix& g_pub, std::size_t lambda) {
    if (lambda < 2) throw std::invalid_argument("lambda must be at least 2");
    DistinguishReport r;
    Subspace c = right_kernel(g_pub);
    r.n = g_pub.cols;
    r.dual_dim = c.dim();
    r.lambda = lambda;
    r.bound = lambda * r.dual_dim + lambda;
    r.random_expected = std::min(r.n, (lambda + 1) * r.dual_dim);
    r.observed_dim = sumspace(c, 0, lambda + 1).dim();
    if (r.bound >= r.n) {
        r.reason = "bound lambda(n-k)+lambda is not below n";
    } else if (r.observed_dim <= r.bound) {
        r.is_distinguishable = true;
        r.reason = "sumspace dimension within the structured bound";
    } else {
        r.reason = "sumspace dimension exceeds the structured bound";
    }
    return r;
}

std::vector<std::size_t> intersection_dim_profile(const Subspace& c, std::size_t r) {
    const Subspace s0 = sumspace(c, 0, 3);
    std::vector<std::size_t> out;
    for (std::size_t s = 1; s <= r; ++s)
        out.push_back(subspace_intersect(s0, s0.frobenius(static_cast<long long>(s))).dim());
    return out;
}

Subspace iterated_intersection(const Subspace& c, std::size_t width, std::size_t s) {
    const Subspace s0 = sumspace(c, 0, width);
    Subspace acc = s0;
    for (std::size_t j = 1; j <= s; ++j) acc = subspace_intersect(acc, s0.frobenius(static_cast<long long>(j)));
    return acc;
}

std::vector<std::size_t> iterated_intersection_profile(const Subspace& c, std::size_t r) {
    const Subspace s0 = sumspace(c, 0, 3);
    Subspace acc = s0;
    std::vector<std::size_t> out;
    for (std::size_t j = 1; j <= r; ++j) {
        acc = subspace_intersect(acc, s0.frobenius(static_cast<long long>(j)));
        out.push_back(acc.dim());
    }
    return out;
}

}  // namespace rankcrypt
