#pragma once

#include <cstdint>
#include <utility>

#include "rankcrypt/field.hpp"

namespace rankcrypt {

/// Dense univariate polynomial over a Field, coefficients low degree first.
/// The zero polynomial has an empty coefficient vector.
struct UniPoly {
    FieldPtr field;
    Vec c;

    UniPoly() = default;
    UniPoly(FieldPtr f, Vec coeffs) : field(std::move(f)), c(std::move(coeffs)) { trim(); }

    static UniPoly monomial(FieldPtr f, std::size_t degree, Elem coef = 1);

    bool is_zero() const { return c.empty(); }
    long degree() const { return static_cast<long>(c.size()) - 1; }
    Elem lead() const { return c.empty() ? 0 : c.back(); }
    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool operator==(const UniPoly& o) const { return c == o.c; }
};

UniPoly operator+(const UniPoly& a, const UniPoly& b);
UniPoly operator-(const UniPoly& a, const UniPoly& b);
UniPoly operator*(const UniPoly& a, const UniPoly& b);
UniPoly scale(const UniPoly& a, Elem s);

/// Quotient and remainder; throws on division by zero.
std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);
UniPoly mod(const UniPoly& a, const UniPoly& b);
UniPoly monic(const UniPoly& a);
/// Monic gcd (zero if both are zero).
UniPoly gcd(UniPoly a, UniPoly b);
UniPoly powmod(const UniPoly& base, std::uint64_t e, const UniPoly& modulus);
/// base^(q^times) mod modulus by repeated q-th powering.
UniPoly frobenius_powmod(const UniPoly& base, unsigned times, const UniPoly& modulus);
Elem eval(const UniPoly& a, Elem x);

/// All roots in the coefficient field, sorted ascending by packed value, each
/// listed once. Exhaustive evaluation for fields of at most 2^16 elements,
/// gcd with X^{q^m} - X followed by equal-degree splitting above that.
Vec roots(const UniPoly& a);
/// Same result as `roots`, always through the gcd and splitting path.
Vec roots_by_splitting(const UniPoly& a);

}  // namespace rankcrypt
