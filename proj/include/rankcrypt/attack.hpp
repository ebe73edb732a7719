#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rankcrypt/loidreau.hpp"
#include "rankcrypt/polyring.hpp"

namespace rankcrypt {

/// Raised when an intermediate space of the extraction has an unexpected
/// dimension. The message names the step.
class ExtractionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Subspaces derived from the dual of a public code. For lambda = 3, ext[i] is
/// spanned by g0 + gamma1^{[-i]} g1 + gamma2^{[-i]} g2, i = 0..r, and
/// b_basis = <g0, g1, g2>; lambda = 2 drops g2.
struct ExtractionState {
    unsigned lambda = 0;
    Subspace c_dual;
    std::size_t r = 0;
    /// Generator of ext[0]; every decomposition is taken relative to it.
    Vec x1, x2, x3;
    Subspace b_basis;
    std::vector<Subspace> ext;

    const Vec& anchor() const { return x1; }
};

/// The alternative tuple: the dual code is spanned by
/// sum_i omega_i g_vecs[i]^{[j]}, j = 0..n-k-1, omega = (1, gammas...).
struct RecoveredKey {
    FieldPtr field;
    unsigned lambda = 0;
    Vec gammas;
    std::vector<Vec> g_vecs;
    bool verified = false;

    Vec omega() const;
};

struct AttackReport {
    unsigned q = 0, m = 0, n = 0, k = 0, lambda = 0;
    std::uint64_t roots_tried = 0;
    std::uint64_t x_examined = 0;
    std::vector<std::pair<std::string, double>> phase_millis;
    Triple idx1{}, idx2{};
    bool success = false;
    std::string reason;
};

struct AttackResult {
    std::optional<RecoveredKey> key;
    AttackReport report;
};

struct AttackConfig {
    unsigned threads = 0;
    /// Index triples for the lambda = 3 relation; picked from r when unset.
    std::optional<std::pair<Triple, Triple>> indices;
    /// Give up after this many candidate roots (0 = unlimited).
    std::uint64_t max_roots = 0;
};

/// (k1, k2, k3) with g0 + gamma1 g1 + gamma2 g2 = k1 e_i + k2 e_j + k3 e_k,
/// e_a = g0 + gamma1^{[-a]} g1 + gamma2^{[-a]} g2. Throws std::domain_error when
/// the determinant vanishes.
std::array<Elem, 3> uvw_decompose(const Field& f, unsigned i, unsigned j, unsigned k, Elem gamma1, Elem gamma2);

/// Writes v = sum c_t w_t over the generators w_t of `parts` and returns the
/// components c_t w_t. Throws ExtractionError unless the sum is direct and
/// contains v.
std::vector<Vec> decompose(const Vec& v, const std::vector<Subspace>& parts);

ExtractionState extraction_chain_2(const Subspace& c_dual);
ExtractionState extraction_chain_3(const Subspace& c_dual);

/// Ratio of the components on ext[i] of the anchor decomposed over idx1 and
/// idx2, which must share their first index.
Elem compute_alpha(const ExtractionState& st, const Triple& idx1, const Triple& idx2);
/// lambda = 2 analogue: components on ext[1] over ext[1]+ext[2] and ext[1]+ext[3].
Elem compute_alpha_2(const ExtractionState& st);

/// Index triples for a given r: (1,2,3)/(1,4,5) when r >= 5, otherwise
/// (1,2,3)/(1,r-1,r). Throws std::invalid_argument when r < 4.
std::pair<Triple, Triple> default_indices(std::size_t r);

/// Triples of the bivariate relation after raising to q^s, s = max index.
std::pair<Triple, Triple> relation_triples(const Triple& idx1, const Triple& idx2);

/// nullopt for a degenerate root.
std::optional<RecoveredKey> recover_tuple_2(const ExtractionState& st, Elem gamma);
std::optional<RecoveredKey> recover_tuple_3(const ExtractionState& st, const Triple& idx, Elem gamma1, Elem gamma2);

/// Span equality between the n-k tuple vectors and c_dual.
bool verify_alternate(const RecoveredKey& key, const Subspace& c_dual);

/// G' = T^{-1} G, omega' = omega T / (omega T)_0 for T in GL_lambda(F_q).
RecoveredKey transform_tuple(const RecoveredKey& key, const Matrix& t);

/// Decrypts with an alternative tuple. Throws DecodingError on failure.
Vec decrypt_with_recovered(const RecoveredKey& key, const PublicKey& pk, const Vec& c);

AttackResult attack2(const Matrix& g_pub, const AttackConfig& cfg = {});
AttackResult attack3(const Matrix& g_pub, const AttackConfig& cfg = {});

/// The secret tuple (h P_i) behind a key pair, for white-box checks.
RecoveredKey true_tuple(const SecretKey& sk);

}  // namespace rankcrypt
