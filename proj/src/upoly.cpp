#include "rankcrypt/upoly.hpp"

#include <algorithm>

#include "rankcrypt/rng.hpp"

namespace rankcrypt {

namespace {

const FieldPtr& pick(const UniPoly& a, const UniPoly& b) {
    if (a.field && b.field && !a.field->same_as(*b.field)) throw FieldError("polynomial field mismatch");
    return a.field ? a.field : b.field;
}

// Splits a monic squarefree product of distinct linear factors.
void split_linear(const UniPoly& g, Vec& out) {
    const Field& f = *g.field;
    if (g.degree() <= 0) return;
    if (g.degree() == 1) {
        out.push_back(f.neg(g.c[0]));
        return;
    }
    const std::uint64_t Q = f.order();
    unsigned bits = 0;
    while ((std::uint64_t{1} << bits) < Q) ++bits;
    // Low packed values of beta span a small subspace on which the trace is
    // often constant over the roots, so draw them pseudo-randomly instead.
    Rng rng(0x51ee7 + static_cast<std::uint64_t>(g.degree()));
    for (int attempt = 0; attempt < 4096; ++attempt) {
        const Elem beta = static_cast<Elem>(1 + rng.below(Q - 1));
        UniPoly h;
        if (f.p() == 2) {
            // Absolute trace of beta * Y modulo g.
            UniPoly t = mod(UniPoly(g.field, {0, beta}), g);
            UniPoly acc = t;
            for (unsigned i = 1; i < bits; ++i) {
                t = mod(t * t, g);
                acc = acc + t;
            }
            h = acc;
        } else {
            UniPoly base(g.field, {beta, 1});
            h = powmod(base, (Q - 1) / 2, g) - UniPoly(g.field, {1});
        }
        UniPoly d = gcd(g, h);
        if (d.degree() > 0 && d.degree() < g.degree()) {
            split_linear(d, out);
            split_linear(divmod(g, d).first, out);
            return;
        }
    }
    throw FieldError("root splitting did not converge");
}

}  // namespace

UniPoly UniPoly::monomial(FieldPtr f, std::size_t degree, Elem coef) {
    Vec c(degree + 1, 0);
    c[degree] = coef;
    return UniPoly(std::move(f), std::move(c));
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    const FieldPtr& f = pick(a, b);
    Vec c(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        Elem x = i < a.c.size() ? a.c[i] : 0;
        Elem y = i < b.c.size() ? b.c[i] : 0;
        c[i] = f->add(x, y);
    }
    return UniPoly(f, std::move(c));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) {
    const FieldPtr& f = pick(a, b);
    Vec c(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        Elem x = i < a.c.size() ? a.c[i] : 0;
        Elem y = i < b.c.size() ? b.c[i] : 0;
        c[i] = f->sub(x, y);
    }
    return UniPoly(f, std::move(c));
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    const FieldPtr& f = pick(a, b);
    if (a.is_zero() || b.is_zero()) return UniPoly(f, {});
    Vec c(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (!a.c[i]) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j)
            if (b.c[j]) c[i + j] = f->add(c[i + j], f->mul(a.c[i], b.c[j]));
    }
    return UniPoly(f, std::move(c));
}

UniPoly scale(const UniPoly& a, Elem s) {
    Vec c(a.c.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.field->mul(a.c[i], s);
    return UniPoly(a.field, std::move(c));
}

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
    const FieldPtr& f = pick(a, b);
    if (b.is_zero()) throw FieldError("polynomial division by zero");
    if (a.degree() < b.degree()) return {UniPoly(f, {}), a};
    Vec r = a.c;
    const std::size_t db = b.c.size() - 1;
    Vec q(r.size() - db, 0);
    const Elem lead_inv = f->inv(b.lead());
    for (std::size_t i = r.size(); i-- > db;) {
        if (!r[i]) continue;
        const Elem coef = f->mul(r[i], lead_inv);
        q[i - db] = coef;
        for (std::size_t j = 0; j <= db; ++j)
            if (b.c[j]) r[i - db + j] = f->sub(r[i - db + j], f->mul(coef, b.c[j]));
    }
    r.resize(db);
    return {UniPoly(f, std::move(q)), UniPoly(f, std::move(r))};
}

UniPoly mod(const UniPoly& a, const UniPoly& b) { return divmod(a, b).second; }

UniPoly monic(const UniPoly& a) {
    if (a.is_zero()) return a;
    return scale(a, a.field->inv(a.lead()));
}

UniPoly gcd(UniPoly a, UniPoly b) {
    while (!b.is_zero()) {
        UniPoly r = mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

UniPoly powmod(const UniPoly& base, std::uint64_t e, const UniPoly& modulus) {
    UniPoly result = mod(UniPoly(modulus.field, {1}), modulus);
    UniPoly b = mod(base, modulus);
    while (e) {
        if (e & 1) result = mod(result * b, modulus);
        e >>= 1;
        if (e) b = mod(b * b, modulus);
    }
    return result;
}

UniPoly frobenius_powmod(const UniPoly& base, unsigned times, const UniPoly& modulus) {
    UniPoly r = mod(base, modulus);
    const unsigned q = modulus.field->q();
    for (unsigned i = 0; i < times; ++i) r = powmod(r, q, modulus);
    return r;
}

Elem eval(const UniPoly& a, Elem x) {
    Elem acc = 0;
    for (std::size_t i = a.c.size(); i-- > 0;) acc = a.field->add(a.field->mul(acc, x), a.c[i]);
    return acc;
}

Vec roots(const UniPoly& a) {
    if (a.is_zero()) throw FieldError("roots of the zero polynomial");
    const Field& f = *a.field;
    Vec out;
    if (a.degree() == 0) return out;
    if (f.order() <= (std::uint64_t{1} << 16)) {
        for (std::uint64_t x = 0; x < f.order(); ++x)
            if (eval(a, static_cast<Elem>(x)) == 0) out.push_back(static_cast<Elem>(x));
        return out;
    }
    return roots_by_splitting(a);
}

Vec roots_by_splitting(const UniPoly& a) {
    if (a.is_zero()) throw FieldError("roots of the zero polynomial");
    const Field& f = *a.field;
    Vec out;
    if (a.degree() == 0) return out;
    UniPoly u = monic(a);
    const UniPoly y = UniPoly::monomial(a.field, 1);
    UniPoly g = gcd(u, frobenius_powmod(y, f.m(), u) - y);
    split_linear(g, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace rankcrypt
