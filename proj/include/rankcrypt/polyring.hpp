#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "rankcrypt/field.hpp"
#include "rankcrypt/upoly.hpp"

namespace rankcrypt {

/// Exponent pair (X-degree, Y-degree). Arithmetic on exponents is checked and
/// throws std::overflow_error rather than wrapping.
struct Mono {
    std::uint64_t x = 0, y = 0;
    std::uint64_t total() const;
    bool operator==(const Mono& o) const { return x == o.x && y == o.y; }
};

/// Graded lexicographic order: total degree, then X-degree.
struct GrlexLess {
    bool operator()(const Mono& a, const Mono& b) const;
};

/// Sparse bivariate polynomial with coefficients in one field. Zero
/// coefficients are never stored, so equality is term-exact.
struct SparseBiPoly {
    FieldPtr field;
    std::map<Mono, Elem, GrlexLess> terms;

    SparseBiPoly() = default;
    explicit SparseBiPoly(FieldPtr f) : field(std::move(f)) {}

    static SparseBiPoly constant(FieldPtr f, Elem c);
    static SparseBiPoly monomial(FieldPtr f, std::uint64_t ex, std::uint64_t ey, Elem c = 1);

    bool is_zero() const { return terms.empty(); }
    /// -1 for the zero polynomial.
    long long total_degree() const;
    std::uint64_t degree_x() const;
    std::uint64_t degree_y() const;
    /// Adds c to the coefficient of X^ex Y^ey.
    void add_term(Mono e, Elem c);

    bool operator==(const SparseBiPoly& o) const { return terms == o.terms; }
};

SparseBiPoly operator+(const SparseBiPoly& a, const SparseBiPoly& b);
SparseBiPoly operator-(const SparseBiPoly& a, const SparseBiPoly& b);
SparseBiPoly operator-(const SparseBiPoly& a);
SparseBiPoly operator*(const SparseBiPoly& a, const SparseBiPoly& b);
SparseBiPoly scale(const SparseBiPoly& a, Elem c);
SparseBiPoly pow(const SparseBiPoly& a, std::uint64_t e);

/// p^{q^i} by multiplying exponents by q^i; all coefficients must lie in F_q.
SparseBiPoly q_scale(const SparseBiPoly& p, unsigned i);

/// Quotient when g divides f exactly, by leading-term elimination.
std::optional<SparseBiPoly> exact_div(const SparseBiPoly& f, const SparseBiPoly& g);

/// Evaluates at (x, y) in `ext`; coefficients must belong to `ext` or to its
/// base field F_q.
Elem evaluate(const SparseBiPoly& p, const Field& ext, Elem x, Elem y);

using Triple = std::array<unsigned, 3>;

/// X^[i]Y^[j] - X^[j]Y^[i] + X^[k]Y^[i] - X^[i]Y^[k] + X^[j]Y^[k] - X^[k]Y^[j],
/// where Z^[a] = Z^{q^a}. Requires i > j > k >= 0.
SparseBiPoly f_ijk(unsigned i, unsigned j, unsigned k, const FieldPtr& f);
/// (Y^{q^2} - Y^q)(X^q - X) - (X^{q^2} - X^q)(Y^q - Y).
SparseBiPoly f0(const FieldPtr& f);

/// f^{idx1} f^{idx2} - coef * f^{(i1,j2,k2)} f^{(i2,j1,k1)}. Requires i1 >= i2,
/// distinct triples, coef != 0. `f` must contain coef.
SparseBiPoly build_F(const Triple& idx1, const Triple& idx2, Elem coef, const FieldPtr& f);

/// Exponent e such that f0^e divides both products of build_F: q^{k1} + q^{k2}.
std::uint64_t reduction_exponent(const Triple& idx1, const Triple& idx2, unsigned q);

/// F / f0^exponent (default q^2 + 1). Throws std::domain_error when the
/// division is not exact.
SparseBiPoly reduced_polynomial(const SparseBiPoly& F, std::optional<std::uint64_t> exponent = std::nullopt);

/// Q(X) / (X^q - X)^{q+1} with Q = (X^{q^3} - X^q)(X^{q^2} - X) - alpha^{q^3}
/// (X^{q^3} - X)(X^{q^2} - X^q). Y-free. Throws std::domain_error if the
/// division is not exact.
SparseBiPoly p_gamma_univariate(Elem alpha, const FieldPtr& f);

/// Dense univariate form of a Y-free polynomial.
UniPoly to_univariate(const SparseBiPoly& p);
Vec roots_univariate(const SparseBiPoly& p);

/// Visits pairs (x, y) with p(x, y) = 0 and fq_rank(1, x, y) = 3, x ranging
/// over F_{q^m} minus F_q in ascending packed order and y ascending for each x.
/// Returning false from the visitor stops the search. Workers split x into
/// batches but results are delivered in the same order for any thread count.
/// Returns the number of x values examined.
std::uint64_t roots_bivariate_independent(const SparseBiPoly& p, const FieldPtr& ext,
                                          const std::function<bool(Elem, Elem)>& visit, unsigned threads = 0);

/// (e_X, e_Y, coefficient hex) triples in ascending term order.
std::vector<std::tuple<std::uint64_t, std::uint64_t, std::string>> dump_terms(const SparseBiPoly& p);

}  // namespace rankcrypt
