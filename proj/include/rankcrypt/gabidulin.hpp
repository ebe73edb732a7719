#pragma once

#include <optional>

#include "rankcrypt/linalg.hpp"

namespace rankcrypt {

/// k x n matrix whose row i is a^{[i]}.
Matrix moore_matrix(const FieldPtr& f, const Vec& a, std::size_t k);

class GabidulinCode {
  public:
    /// Throws FieldError unless fq_rank(a) = n and 1 <= k <= n <= m.
    GabidulinCode(FieldPtr f, Vec a, std::size_t k);

    const FieldPtr& field() const { return field_; }
    const Vec& support() const { return a_; }
    std::size_t n() const { return a_.size(); }
    std::size_t k() const { return k_; }

    Matrix generator() const;
    Vec encode(const Vec& msg) const;
    Subspace dual() const;

    struct Decoded {
        Vec msg;
        Vec error;
    };
    /// Unique decoding up to t_max rank errors (t_max <= (n-k)/2); nullopt on
    /// failure.
    std::optional<Decoded> decode(const Vec& y, std::size_t t_max) const;

  private:
    FieldPtr field_;
    Vec a_;
    std::size_t k_;
};

}  // namespace rankcrypt
