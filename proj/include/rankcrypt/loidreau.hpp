#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rankcrypt/gabidulin.hpp"
#include "rankcrypt/rng.hpp"

namespace rankcrypt {

class DecodingError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct Params {
    unsigned q = 2, m = 0, n = 0, k = 0, lambda = 2;

    /// Error budget floor((n-k) / (2 lambda)).
    std::size_t t() const { return (n - k) / (2 * lambda); }
    /// Throws std::invalid_argument on out-of-range values.
    void validate() const;
};

struct PublicKey {
    FieldPtr field;
    Params params;
    std::size_t t = 0;
    Matrix g_pub;
};

struct SecretKey {
    PublicKey pub;
    Vec a;
    /// (1, gamma_1, ..., gamma_{lambda-1}).
    Vec gammas;
    Matrix P;
    /// Matrices over F_q with P^T = sum gammas[i] * p_parts[i].
    std::vector<Matrix> p_parts;
};

struct KeyPair {
    PublicKey pub;
    SecretKey sec;
    /// Set when t = 0, so ciphertexts carry no error.
    bool zero_error_budget = false;
};

KeyPair keygen(const Params& params, std::uint64_t seed);

/// Vector of rank exactly t, built as t independent field elements times a
/// full-rank t x n matrix over F_q.
Vec sample_rank_error(const FieldPtr& f, std::size_t n, std::size_t t, Rng& rng);
Vec sample_rank_error(const FieldPtr& f, std::size_t n, std::size_t t, std::uint64_t seed);

Vec random_message(const PublicKey& pk, std::uint64_t seed);
Vec encrypt(const PublicKey& pk, const Vec& msg, std::uint64_t seed);
/// Throws DecodingError when the ciphertext does not decode.
Vec decrypt(const SecretKey& sk, const Vec& c);

/// sum gammas[i] * parts[i] as a matrix over F_{q^m}.
Matrix combine_parts(const FieldPtr& f, const Vec& gammas, const std::vector<Matrix>& parts);

}  // namespace rankcrypt
