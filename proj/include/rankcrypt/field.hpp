#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rankcrypt {

/// Packed element of F_{q^m}: the coordinate vector (c_0, ..., c_{m-1}) over F_q
/// in the basis 1, z, ..., z^{m-1}, stored as sum c_i * q^i. Each c_i is itself a
/// packed element of F_q (base-p digits when q = p^s).
using Elem = std::uint32_t;
using Vec = std::vector<Elem>;

class FieldError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// Finite field F_{q^m} = F_q[z]/(modulus). Immutable once built and shared
/// between threads; construct through Field::make, which caches instances.
///
/// Multiplication uses log/antilog tables when q^m <= 2^24 and falls back to
/// schoolbook polynomial multiplication otherwise.
class Field {
  public:
    static constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 24;

    /// Builds (or fetches from cache) F_{q^m}. When `modulus` is omitted the
    /// lowest-weight monic irreducible is chosen, ties broken by packed value.
    /// The modulus is given as base-q digits, constant term first, including the
    /// leading 1.
    static FieldPtr make(unsigned q, unsigned m, std::optional<std::vector<unsigned>> modulus = std::nullopt);

    unsigned p() const { return p_; }
    unsigned q() const { return q_; }
    unsigned m() const { return m_; }
    std::uint64_t order() const { return order_; }
    const std::vector<unsigned>& modulus() const { return modulus_; }

    /// F_q viewed as a Field (m = 1). For m == 1 this is the field itself.
    FieldPtr base() const;

    bool same_as(const Field& other) const {
        return this == &other || (q_ == other.q_ && m_ == other.m_ && modulus_ == other.modulus_);
    }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }

    Elem add(Elem a, Elem b) const;
    Elem sub(Elem a, Elem b) const;
    Elem neg(Elem a) const;
    Elem mul(Elem a, Elem b) const;
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    /// a^e with 0^0 = 1.
    Elem pow(Elem a, std::uint64_t e) const;
    /// a^{q^i}; i is reduced modulo m, so negative powers are inverse Frobenius.
    Elem frobenius(Elem a, long long i) const;

    /// True when a lies in the prime-power subfield F_q.
    bool in_base(Elem a) const { return a < q_; }

    /// Coordinates over F_q (length m).
    Vec coords(Elem a) const;
    Elem from_coords(std::span<const Elem> c) const;

    /// Uniform element from a 64-bit draw source.
    template <class Rng>
    Elem random(Rng& rng) const {
        return static_cast<Elem>(rng.below(order_));
    }

    std::string to_hex(Elem a) const;
    Elem from_hex(const std::string& s) const;

    /// Primitive element used by the log tables (0 when tables are absent).
    Elem generator() const { return gen_; }
    bool has_tables() const { return !log_.empty(); }

    Field(unsigned q, unsigned m, std::vector<unsigned> modulus);

  private:
    Elem coef_add(Elem a, Elem b) const;
    Elem coef_sub(Elem a, Elem b) const;
    Elem coef_mul(Elem a, Elem b) const;
    Elem coef_inv(Elem a) const;
    Elem slow_mul(Elem a, Elem b) const;
    Elem slow_pow(Elem a, std::uint64_t e) const;
    void build_tables();

    unsigned p_ = 0, s_ = 0, q_ = 0, m_ = 0;
    std::uint64_t order_ = 0;
    std::vector<unsigned> modulus_;
    Elem binary_mod_ = 0;      // q == 2: low bits of modulus
    FieldPtr coef_;            // arithmetic of F_q when q is not prime
    mutable FieldPtr base_;    // lazily cached F_q
    Elem gen_ = 0;
    std::vector<Elem> exp_;    // length 2(order-1)
    std::vector<std::uint32_t> log_;
    std::vector<std::uint64_t> frob_exp_;  // q^i mod (order - 1)
};

/// Checked element of a specific field. Mixing fields throws FieldError.
class FieldElement {
  public:
    FieldElement() = default;
    FieldElement(FieldPtr f, Elem v) : field_(std::move(f)), value_(v) {
        if (field_ && value_ >= field_->order()) throw FieldError("element out of range");
    }

    const FieldPtr& field() const { return field_; }
    Elem value() const { return value_; }

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement operator-() const { return {field_, field_->neg(value_)}; }
    FieldElement inv() const;
    FieldElement pow(std::uint64_t e) const { return {field_, field_->pow(value_, e)}; }
    FieldElement frobenius(long long i) const { return {field_, field_->frobenius(value_, i)}; }

    bool operator==(const FieldElement& o) const {
        return value_ == o.value_ && field_->same_as(*o.field_);
    }

  private:
    void check(const FieldElement& o) const;

    FieldPtr field_;
    Elem value_ = 0;
};

enum class FieldOp { add, sub, mul, div, inv, neg, pow };

/// Dispatching form of the element operations. `y` is the second operand for
/// binary ops; `exponent` is used by pow.
FieldElement field_arith(FieldOp op, const FieldElement& x, const std::optional<FieldElement>& y = std::nullopt,
                         std::uint64_t exponent = 0);

/// Smallest prime factor based test; returns {p, s} with q = p^s or nullopt.
std::optional<std::pair<unsigned, unsigned>> prime_power(unsigned q);

/// Irreducibility of a monic polynomial over F_q (coefficients packed in F_q).
bool is_irreducible(const FieldPtr& fq, const std::vector<unsigned>& poly);

}  // namespace rankcrypt
