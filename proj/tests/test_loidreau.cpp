#include <doctest.h>

#include "rankcrypt/loidreau.hpp"

using namespace rankcrypt;

TEST_CASE("error budget") {
    CHECK(Params{2, 12, 12, 8, 2}.t() == 1);
    CHECK(Params{2, 13, 13, 10, 3}.t() == 0);
    CHECK(Params{2, 22, 22, 16, 3}.t() == 1);
    CHECK_THROWS(Params{2, 10, 12, 8, 2}.validate());
    CHECK_THROWS(Params{2, 12, 12, 12, 2}.validate());
    CHECK_THROWS(Params{2, 12, 12, 8, 1}.validate());
    CHECK_THROWS(Params{6, 12, 12, 8, 2}.validate());
}

TEST_CASE("keygen structure") {
    for (auto p : {Params{2, 12, 12, 8, 2}, Params{2, 13, 13, 10, 3}, Params{3, 8, 8, 4, 2}}) {
        auto kp = keygen(p, 42);
        const auto& sk = kp.sec;
        auto f = kp.pub.field;
        CHECK(kp.zero_error_budget == (p.t() == 0));
        CHECK(fq_rank(*f, sk.gammas) == p.lambda);
        CHECK(sk.gammas[0] == 1);
        CHECK(fq_rank(*f, sk.a) == p.n);
        CHECK(transpose(sk.P) == combine_parts(f, sk.gammas, sk.p_parts));
        for (const auto& part : sk.p_parts)
            for (Elem x : part.data) CHECK(x < p.q);
        // Entries of P lie in the span of the gammas.
        for (Elem x : sk.P.data) {
            Vec v = sk.gammas;
            v.push_back(x);
            CHECK(fq_rank(*f, v) == p.lambda);
        }
        CHECK(rank(kp.pub.g_pub) == p.k);
        CHECK(right_kernel(kp.pub.g_pub).dim() == p.n - p.k);
        CHECK(mul(kp.pub.g_pub, sk.P) == moore_matrix(f, sk.a, p.k));
    }
    auto a = keygen(Params{2, 12, 12, 8, 2}, 7);
    auto b = keygen(Params{2, 12, 12, 8, 2}, 7);
    CHECK(a.pub.g_pub == b.pub.g_pub);
}

TEST_CASE("rank errors") {
    auto f = Field::make(2, 13);
    CHECK(sample_rank_error(f, 13, 0, std::uint64_t{1}) == Vec(13, 0));
    for (std::uint64_t s = 0; s < 20; ++s) {
        CHECK(fq_rank(*f, sample_rank_error(f, 13, 1, s)) == 1);
        CHECK(fq_rank(*f, sample_rank_error(f, 13, 3, s)) == 3);
    }
    CHECK_THROWS(sample_rank_error(f, 5, 6, std::uint64_t{0}));
}

TEST_CASE("encrypt and decrypt round trip") {
    auto kp = keygen(Params{2, 12, 12, 8, 2}, 1);
    auto f = kp.pub.field;
    for (std::uint64_t s = 0; s < 100; ++s) {
        Vec msg = random_message(kp.pub, 1000 + s);
        Vec c = encrypt(kp.pub, msg, s);
        CHECK(decrypt(kp.sec, c) == msg);
        Vec e = c;
        Vec mg = vec_mul(msg, kp.pub.g_pub);
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = f->sub(c[i], mg[i]);
        CHECK(fq_rank(*f, e) == 1);
        CHECK(fq_rank(*f, vec_mul(e, kp.sec.P)) <= kp.pub.t * 2);
    }

    auto kz = keygen(Params{2, 13, 13, 10, 3}, 2);
    Vec zero(10, 0);
    CHECK(encrypt(kz.pub, zero, 3) == Vec(13, 0));
    Vec msg = random_message(kz.pub, 4);
    CHECK(encrypt(kz.pub, msg, 9) == vec_mul(msg, kz.pub.g_pub));
    CHECK(decrypt(kz.sec, encrypt(kz.pub, msg, 9)) == msg);

    auto k3 = keygen(Params{3, 9, 9, 5, 2}, 5);
    Vec m3 = random_message(k3.pub, 6);
    CHECK(decrypt(k3.sec, encrypt(k3.pub, m3, 8)) == m3);
}
