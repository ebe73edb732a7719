#include "rankcrypt/loidreau.hpp"

#include <string>

namespace rankcrypt {

namespace {

Matrix random_base_matrix(const FieldPtr& fq, std::size_t r, std::size_t c, Rng& rng) {
    Matrix m(fq, r, c);
    for (auto& x : m.data) x = static_cast<Elem>(rng.below(fq->q()));
    return m;
}

Matrix random_invertible(const FieldPtr& fq, std::size_t n, Rng& rng) {
    for (;;) {
        Matrix m = random_base_matrix(fq, n, n, rng);
        if (rank(m) == n) return m;
    }
}

}  // namespace

void Params::validate() const {
    auto fail = [](const std::string& msg) { throw std::invalid_argument(msg); };
    if (!prime_power(q)) fail("q must be a prime power");
    if (!(1 <= k && k < n)) fail("need 1 <= k < n");
    if (n > m) fail("need n <= m");
    if (lambda < 2 || lambda >= m) fail("need 2 <= lambda < m");
}

Matrix combine_parts(const FieldPtr& f, const Vec& gammas, const std::vector<Matrix>& parts) {
    if (parts.size() != gammas.size() || parts.empty()) throw std::invalid_argument("gamma/part count mismatch");
    Matrix out(f, parts[0].rows, parts[0].cols);
    for (std::size_t i = 0; i < parts.size(); ++i) out = add(out, scale(parts[i].with_field(f), gammas[i]));
    return out;
}

KeyPair keygen(const Params& params, std::uint64_t seed) {
    params.validate();
    auto f = Field::make(params.q, params.m);
    auto fq = f->base();
    Rng rng(seed);
    const std::size_t n = params.n, k = params.k, lam = params.lambda;

    Vec a(n);
    do {
        for (auto& x : a) x = f->random(rng);
    } while (fq_rank(*f, a) != n);

    Vec gammas(lam, 1);
    do {
        for (std::size_t i = 1; i < lam; ++i) gammas[i] = f->random(rng);
    } while (fq_rank(*f, gammas) != lam);

    std::vector<Matrix> parts;
    Matrix P, P_inv;
    for (;;) {
        parts.clear();
        for (std::size_t i = 0; i < lam; ++i) parts.push_back(random_invertible(fq, n, rng));
        P = transpose(combine_parts(f, gammas, parts));
        auto inv = inverse(P);
        if (inv) {
            P_inv = *inv;
            break;
        }
    }

    KeyPair kp;
    kp.pub.field = f;
    kp.pub.params = params;
    kp.pub.t = params.t();
    kp.pub.g_pub = mul(moore_matrix(f, a, k), P_inv);
    kp.sec = SecretKey{kp.pub, a, gammas, P, parts};
    kp.zero_error_budget = kp.pub.t == 0;
    return kp;
}

Vec sample_rank_error(const FieldPtr& f, std::size_t n, std::size_t t, Rng& rng) {
    if (t > n || t > f->m()) throw std::invalid_argument("error rank out of range");
    if (t == 0) return Vec(n, 0);
    Vec x(t);
    do {
        for (auto& v : x) v = f->random(rng);
    } while (fq_rank(*f, x) != t);
    Matrix s;
    do {
        s = random_base_matrix(f->base(), t, n, rng);
    } while (rank(s) != t);
    return vec_mul(x, s.with_field(f));
}

Vec sample_rank_error(const FieldPtr& f, std::size_t n, std::size_t t, std::uint64_t seed) {
    Rng rng(seed);
    return sample_rank_error(f, n, t, rng);
}

Vec random_message(const PublicKey& pk, std::uint64_t seed) {
    Rng rng(seed);
    Vec msg(pk.params.k);
    for (auto& x : msg) x = pk.field->random(rng);
    return msg;
}

Vec encrypt(const PublicKey& pk, const Vec& msg, std::uint64_t seed) {
    if (msg.size() != pk.params.k) throw std::invalid_argument("message length must equal k");
    Vec c = vec_mul(msg, pk.g_pub);
    Vec e = sample_rank_error(pk.field, pk.params.n, pk.t, seed);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = pk.field->add(c[i], e[i]);
    return c;
}

Vec decrypt(const SecretKey& sk, const Vec& c) {
    const auto& pk = sk.pub;
    if (c.size() != pk.params.n) throw std::invalid_argument("ciphertext length must equal n");
    GabidulinCode code(pk.field, sk.a, pk.params.k);
    Vec y = vec_mul(c, sk.P);
    auto d = code.decode(y, pk.t * pk.params.lambda);
    if (!d) throw DecodingError("ciphertext does not decode");
    return d->msg;
}

}  // namespace rankcrypt
