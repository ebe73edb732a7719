#include "rankcrypt/identities.hpp"

#include "rankcrypt/linalg.hpp"
#include "rankcrypt/polyring.hpp"
#include "rankcrypt/rng.hpp"

namespace rankcrypt {

namespace {

std::uint64_t ipow(std::uint64_t b, unsigned e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

IdentityCheck check(std::string name, bool ok, std::string detail = {}) {
    return {std::move(name), ok, std::move(detail)};
}

UniPoly specialize_x(const SparseBiPoly& p, const FieldPtr& ext, Elem x0) {
    Vec c(p.degree_y() + 1, 0);
    for (const auto& [e, v] : p.terms) c[e.y] = ext->add(c[e.y], ext->mul(v, ext->pow(x0, e.x)));
    return UniPoly(ext, std::move(c));
}

Elem det3(const Field& f, const Matrix& m) {
    auto t = [&](int a, int b, int c) { return f.mul(m.at(0, a), f.mul(m.at(1, b), m.at(2, c))); };
    const Elem pos = f.add(f.add(t(0, 1, 2), t(1, 2, 0)), t(2, 0, 1));
    const Elem neg = f.add(f.add(t(2, 1, 0), t(0, 2, 1)), t(1, 0, 2));
    return f.sub(pos, neg);
}

}  // namespace

std::vector<IdentityCheck> polynomial_identities(unsigned q) {
    std::vector<IdentityCheck> out;
    const auto fq = Field::make(q, 1);
    const auto base = f0(fq);
    const auto f432 = f_ijk(4, 3, 2, fq), f410 = f_ijk(4, 1, 0, fq);
    const auto f510 = f_ijk(5, 1, 0, fq), f532 = f_ijk(5, 3, 2, fq);
    out.push_back(check("f432 = -q_scale(f0, 2)", f432 == -q_scale(base, 2)));
    out.push_back(check("f0 | f410", exact_div(f410, base).has_value()));
    out.push_back(check("f0 | f510", exact_div(f510, base).has_value()));
    out.push_back(check("q_scale(f0, 2) | f532", exact_div(f532, q_scale(base, 2)).has_value()));
    const auto g = pow(base, q * q + 1);
    out.push_back(check("f0^(q^2+1) | f532 f410", exact_div(f532 * f410, g).has_value()));
    out.push_back(check("f0^(q^2+1) | f510 f432", exact_div(f510 * f432, g).has_value()));

    // A generic coefficient keeps the top-degree terms from cancelling.
    const auto ext = Field::make(q, 7);
    const auto F = build_F({5, 3, 2}, {4, 1, 0}, ext->generator(), ext);
    const long long dF = F.total_degree();
    const long long wantF = static_cast<long long>(ipow(q, 5) + ipow(q, 4) + ipow(q, 3) + q);
    out.push_back(check("deg F = q^5+q^4+q^3+q", dF == wantF,
                        "deg " + std::to_string(dF) + ", expected " + std::to_string(wantF)));
    const long long dP = reduced_polynomial(F).total_degree();
    const long long wantP = static_cast<long long>(ipow(q, 5) - ipow(q, 2));
    out.push_back(check("deg P_r = q^5-q^2", dP == wantP,
                        "deg " + std::to_string(dP) + ", expected " + std::to_string(wantP)));

    // Univariate analogue: gcd of the two additive components.
    auto xp = [&](std::uint64_t e, Elem c) { return UniPoly::monomial(fq, e, c); };
    const Elem m1 = fq->neg(1);
    const std::uint64_t q2 = ipow(q, 2), q3 = ipow(q, 3);
    const UniPoly c1 = (xp(q3, 1) + xp(q, m1)) * (xp(q2, 1) + xp(1, m1));
    const UniPoly c2 = (xp(q3, 1) + xp(1, m1)) * (xp(q2, 1) + xp(q, m1));
    UniPoly want(fq, {1});
    for (unsigned i = 0; i <= q; ++i) want = want * (xp(q, 1) + xp(1, m1));
    out.push_back(check("gcd of the lambda=2 components = (X^q-X)^(q+1)", gcd(c1, c2) == monic(want)));
    return out;
}

std::vector<IdentityCheck> transformation_law(unsigned q, std::size_t instances, std::uint64_t seed) {
    const auto ext = Field::make(q, 7);
    const auto fq = ext->base();
    const Field& f = *ext;
    Rng rng(seed);
    std::vector<IdentityCheck> out;
    const std::vector<Triple> triples{{2, 1, 0}, {4, 1, 0}, {5, 1, 0}, {4, 3, 2}, {5, 3, 2}};
    std::vector<std::size_t> good(triples.size(), 0);
    std::size_t done = 0;
    while (done < instances) {
        Matrix a(fq, 3, 3);
        for (auto& v : a.data) v = static_cast<Elem>(rng.below(q));
        if (rank(a) != 3) continue;
        const Elem x = ext->random(rng), y = ext->random(rng);
        auto row = [&](std::size_t i) { return f.add(f.add(f.mul(a.at(i, 0), x), f.mul(a.at(i, 1), y)), a.at(i, 2)); };
        const Elem den = row(2);
        if (!den) continue;
        const Elem x2 = f.div(row(0), den), y2 = f.div(row(1), den);
        const Elem da = det3(*fq, a);
        for (std::size_t t = 0; t < triples.size(); ++t) {
            const Triple& idx = triples[t];
            const auto p = f_ijk(idx[0], idx[1], idx[2], fq);
            const std::uint64_t s = ipow(q, idx[0]) + ipow(q, idx[1]) + ipow(q, idx[2]);
            if (f.mul(evaluate(p, f, x2, y2), f.pow(den, s)) == f.mul(da, evaluate(p, f, x, y))) ++good[t];
        }
        ++done;
    }
    for (std::size_t t = 0; t < triples.size(); ++t) {
        const Triple& idx = triples[t];
        std::string name = "transformation law f" + std::to_string(idx[0]) + std::to_string(idx[1]) +
                           std::to_string(idx[2]);
        out.push_back(check(name, good[t] == instances,
                            std::to_string(good[t]) + "/" + std::to_string(instances)));
    }
    return out;
}

GcdEvidence gcd_conjecture_evidence(unsigned q, unsigned m, std::size_t samples, std::uint64_t seed) {
    const auto ext = Field::make(q, m);
    const auto fq = ext->base();
    const auto lhs = f_ijk(5, 3, 2, fq) * f_ijk(4, 1, 0, fq);
    const auto rhs = f_ijk(5, 1, 0, fq) * f_ijk(4, 3, 2, fq);
    const auto g = pow(f0(fq), q * q + 1);
    GcdEvidence ev;
    ev.q = q;
    ev.m = m;
    Rng rng(seed);
    while (ev.samples < samples) {
        const Elem x0 = ext->random(rng);
        if (ext->in_base(x0)) continue;
        ++ev.samples;
        const UniPoly d = gcd(specialize_x(lhs, ext, x0), specialize_x(rhs, ext, x0));
        if (d == monic(specialize_x(g, ext, x0))) ++ev.equal;
    }
    return ev;
}

}  // namespace rankcrypt
