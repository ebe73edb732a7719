#include <doctest.h>

#include "rankcrypt/linalg.hpp"
#include "rankcrypt/polyring.hpp"
#include "rankcrypt/rng.hpp"

using namespace rankcrypt;

namespace {

// f0 as the plain product of its linear factors over F_q.
SparseBiPoly f0_by_factors(const FieldPtr& f) {
    const unsigned q = f->q();
    SparseBiPoly prod = SparseBiPoly::constant(f, 1);
    for (Elem a = 0; a < q; ++a) prod = prod * (SparseBiPoly::monomial(f, 1, 0) + SparseBiPoly::constant(f, a));
    for (Elem b = 0; b < q; ++b)
        for (Elem c = 0; c < q; ++c)
            prod = prod * (SparseBiPoly::monomial(f, 1, 0, b) + SparseBiPoly::monomial(f, 0, 1) + SparseBiPoly::constant(f, c));
    return prod;
}

Matrix random_gl3(const FieldPtr& fq, Rng& rng) {
    for (;;) {
        Matrix a(fq, 3, 3);
        for (auto& x : a.data) x = Elem(rng.below(fq->q()));
        if (rank(a) == 3) return a;
    }
}

}  // namespace

TEST_CASE("f_ijk and f0 shapes") {
    auto fq = Field::make(2, 1);
    auto f532 = f_ijk(5, 3, 2, fq);
    CHECK(f532.terms.size() == 6);
    CHECK(f532.total_degree() == 32 + 8);
    CHECK_THROWS(f_ijk(2, 3, 1, fq));

    for (unsigned q : {2u, 3u}) {
        auto b = Field::make(q, 1);
        CHECK(f0(b) == f0_by_factors(b));
        CHECK(f0(b) == -f_ijk(2, 1, 0, b));
        CHECK(f0(b).degree_x() == q * q);
        CHECK(f0(b).degree_y() == q * q);
    }
}

TEST_CASE("ring arithmetic") {
    auto b = Field::make(3, 1);
    auto p = f_ijk(3, 1, 0, b);
    CHECK((p * SparseBiPoly(b)).is_zero());
    CHECK(p * SparseBiPoly::constant(b, 1) == p);
    CHECK(q_scale(p, 0) == p);
    auto two = Field::make(2, 1);
    auto xy = SparseBiPoly::monomial(two, 1, 0) + SparseBiPoly::monomial(two, 0, 1);
    CHECK(q_scale(xy, 1) == SparseBiPoly::monomial(two, 2, 0) + SparseBiPoly::monomial(two, 0, 2));
    for (unsigned q : {2u, 3u}) {
        auto fq = Field::make(q, 1);
        CHECK(pow(f0(fq), q * q + 1) == q_scale(f0(fq), 2) * f0(fq));
    }
    auto big = Field::make(2, 7);
    CHECK_THROWS_AS(q_scale(SparseBiPoly::constant(big, 5), 1), FieldError);
}

TEST_CASE("exact division") {
    auto f = Field::make(3, 4);
    Rng rng(2);
    for (int t = 0; t < 20; ++t) {
        SparseBiPoly a(f), b(f);
        for (int i = 0; i < 5; ++i) a.add_term({rng.below(9), rng.below(9)}, f->random(rng));
        for (int i = 0; i < 4; ++i) b.add_term({rng.below(6), rng.below(6)}, f->random(rng));
        if (a.is_zero() || b.is_zero()) continue;
        auto q = exact_div(a * b, b);
        REQUIRE(q);
        CHECK(*q == a);
    }
    auto two = Field::make(2, 1);
    auto xy1 = SparseBiPoly::monomial(two, 1, 1) + SparseBiPoly::constant(two, 1);
    CHECK_FALSE(exact_div(xy1, SparseBiPoly::monomial(two, 1, 0)).has_value());
}

TEST_CASE("identity suite for q = 2, 3") {
    for (unsigned q : {2u, 3u}) {
        CAPTURE(q);
        auto fq = Field::make(q, 1);
        const auto base = f0(fq);
        CHECK(f_ijk(4, 3, 2, fq) == -q_scale(base, 2));
        CHECK(exact_div(f_ijk(4, 1, 0, fq), base).has_value());
        CHECK(exact_div(f_ijk(5, 1, 0, fq), base).has_value());
        CHECK(exact_div(f_ijk(5, 3, 2, fq), q_scale(base, 2)).has_value());
        const auto g = pow(base, q * q + 1);
        CHECK(exact_div(f_ijk(5, 3, 2, fq) * f_ijk(4, 1, 0, fq), g).has_value());
        CHECK(exact_div(f_ijk(5, 1, 0, fq) * f_ijk(4, 3, 2, fq), g).has_value());

        auto F = build_F({5, 3, 2}, {4, 1, 0}, 1, fq);
        const long long q5 = q * q * q * q * q, q4 = q * q * q * q, q3 = q * q * q;
        // A generic coefficient keeps the top terms from cancelling.
        auto ext = Field::make(q, 7);
        auto Fg = build_F({5, 3, 2}, {4, 1, 0}, ext->generator(), ext);
        CHECK(Fg.total_degree() == q5 + q4 + q3 + q);
        CHECK(reduced_polynomial(Fg).total_degree() == q5 - q * q);
        CHECK(reduction_exponent({5, 3, 2}, {4, 1, 0}, q) == q * q + 1);
        CHECK_FALSE(F.is_zero());
    }
}

TEST_CASE("evaluation") {
    auto ext = Field::make(2, 8);
    auto fq = ext->base();
    auto p = f0(fq);
    // f0(x, y) = 0 exactly when 1, x, y are F_q-dependent.
    for (Elem x = 0; x < 256; ++x)
        for (Elem y = 0; y < 256; ++y) {
            const bool zero = evaluate(p, *ext, x, y) == 0;
            const bool dep = fq_rank(*ext, Vec{1, x, y}) < 3;
            if (zero != dep) FAIL("f0 zero set mismatch at " << x << "," << y);
        }
    CHECK(evaluate(SparseBiPoly::constant(fq, 1), *ext, 7, 9) == 1);

    auto ext3 = Field::make(3, 5);
    Rng rng(4);
    auto a = f_ijk(3, 1, 0, ext3->base()), b = f0(ext3->base());
    for (int t = 0; t < 50; ++t) {
        Elem x = ext3->random(rng), y = ext3->random(rng);
        CHECK(evaluate(a * b, *ext3, x, y) == ext3->mul(evaluate(a, *ext3, x, y), evaluate(b, *ext3, x, y)));
        CHECK(evaluate(a + b, *ext3, x, y) == ext3->add(evaluate(a, *ext3, x, y), evaluate(b, *ext3, x, y)));
        CHECK(evaluate(q_scale(a, 2), *ext3, x, y) == ext3->frobenius(evaluate(a, *ext3, x, y), 2));
    }
}

TEST_CASE("fractional-linear transformation law") {
    for (unsigned q : {2u, 3u}) {
        auto ext = Field::make(q, 7);
        auto fq = ext->base();
        Rng rng(q);
        int checked = 0;
        while (checked < 100) {
            Matrix A = random_gl3(fq, rng);
            Elem x = ext->random(rng), y = ext->random(rng);
            Elem den = ext->add(ext->add(ext->mul(A.at(2, 0), x), ext->mul(A.at(2, 1), y)), A.at(2, 2));
            if (!den) continue;
            Elem nx = ext->add(ext->add(ext->mul(A.at(0, 0), x), ext->mul(A.at(0, 1), y)), A.at(0, 2));
            Elem ny = ext->add(ext->add(ext->mul(A.at(1, 0), x), ext->mul(A.at(1, 1), y)), A.at(1, 2));
            Elem x2 = ext->div(nx, den), y2 = ext->div(ny, den);
            // Determinant of A over F_q.
            auto det = [&](const Matrix& m) {
                const Field& F = *fq;
                auto t = [&](int a, int b, int c) {
                    return F.mul(m.at(0, a), F.mul(m.at(1, b), m.at(2, c)));
                };
                Elem pos = F.add(F.add(t(0, 1, 2), t(1, 2, 0)), t(2, 0, 1));
                Elem neg = F.add(F.add(t(2, 1, 0), t(0, 2, 1)), t(1, 0, 2));
                return F.sub(pos, neg);
            };
            const Elem dA = det(A);
            for (Triple idx : {Triple{2, 1, 0}, Triple{4, 1, 0}, Triple{5, 3, 2}}) {
                auto p = f_ijk(idx[0], idx[1], idx[2], fq);
                std::uint64_t s = 0;
                for (unsigned i : idx) {
                    std::uint64_t r = 1;
                    for (unsigned j = 0; j < i; ++j) r *= q;
                    s += r;
                }
                Elem lhs = ext->mul(evaluate(p, *ext, x2, y2), ext->pow(den, s));
                Elem rhs = ext->mul(dA, evaluate(p, *ext, x, y));
                CHECK(lhs == rhs);
            }
            ++checked;
        }
    }
}

TEST_CASE("lambda=2 reduced polynomial") {
    for (unsigned q : {2u, 3u}) {
        CAPTURE(q);
        auto ext = Field::make(q, 7);
        Rng rng(10 + q);
        Elem gamma;
        do {
            gamma = ext->random(rng);
        } while (gamma < q);
        auto F = [&](long long i) { return ext->frobenius(gamma, i); };
        // alpha^{q^3} makes gamma a root of Q.
        Elem num = ext->mul(ext->sub(F(3), F(1)), ext->sub(F(2), F(0)));
        Elem den = ext->mul(ext->sub(F(3), F(0)), ext->sub(F(2), F(1)));
        Elem alpha = ext->frobenius(ext->div(num, den), -3);
        auto pg = p_gamma_univariate(alpha, ext);
        CHECK(pg.total_degree() == (long long)(q * q * q - q));
        Vec rts = roots_univariate(pg);
        int hits = 0;
        for (int t = 0; t < 50; ++t) {
            Elem a, b, c, d;
            do {
                a = Elem(rng.below(q)), b = Elem(rng.below(q)), c = Elem(rng.below(q)), d = Elem(rng.below(q));
            } while (ext->sub(ext->mul(a, d), ext->mul(b, c)) == 0);
            Elem img = ext->div(ext->add(ext->mul(a, gamma), b), ext->add(ext->mul(c, gamma), d));
            if (std::find(rts.begin(), rts.end(), img) != rts.end()) ++hits;
        }
        CHECK(hits == 50);

        // Independent gcd of the two components equals (X^q - X)^{q+1}.
        auto fq = ext->base();
        auto xp = [&](std::uint64_t e, Elem c) { return UniPoly::monomial(fq, e, c); };
        const Elem m1 = fq->neg(1);
        UniPoly f1 = (xp(q * q * q, 1) + xp(q, m1)) * (xp(q * q, 1) + xp(1, m1));
        UniPoly f2 = (xp(q * q * q, 1) + xp(1, m1)) * (xp(q * q, 1) + xp(q, m1));
        UniPoly lin = xp(q, 1) + xp(1, m1);
        UniPoly want(fq, {1});
        for (unsigned i = 0; i <= q; ++i) want = want * lin;
        CHECK(gcd(f1, f2) == monic(want));
    }
}

TEST_CASE("univariate and bivariate roots") {
    auto ext = Field::make(2, 9);
    auto xq = SparseBiPoly::monomial(ext, 2, 0) - SparseBiPoly::monomial(ext, 1, 0);
    CHECK(roots_univariate(xq) == Vec{0, 1});
    auto lin = SparseBiPoly::monomial(ext, 1, 0) - SparseBiPoly::constant(ext, 77);
    CHECK(roots_univariate(lin) == Vec{77});

    // p = Y - x^2 - x: every x outside F_2 gives y = x^2 + x, kept when independent.
    auto p = SparseBiPoly::monomial(ext, 0, 1) - SparseBiPoly::monomial(ext, 2, 0) - SparseBiPoly::monomial(ext, 1, 0);
    std::vector<std::pair<Elem, Elem>> one, many;
    roots_bivariate_independent(p, ext, [&](Elem x, Elem y) { one.push_back({x, y}); return true; }, 1);
    roots_bivariate_independent(p, ext, [&](Elem x, Elem y) { many.push_back({x, y}); return true; }, 4);
    CHECK(one == many);
    CHECK(!one.empty());
    for (auto [x, y] : one) {
        CHECK(evaluate(p, *ext, x, y) == 0);
        CHECK(fq_rank(*ext, Vec{1, x, y}) == 3);
    }
    int seen = 0;
    auto examined = roots_bivariate_independent(p, ext, [&](Elem, Elem) { return ++seen < 3; }, 3);
    CHECK(seen == 3);
    CHECK(examined < ext->order());
}
