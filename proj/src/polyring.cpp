#include "rankcrypt/polyring.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "rankcrypt/linalg.hpp"

namespace rankcrypt {

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("exponent overflow");
    return r;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("exponent overflow");
    return r;
}

std::uint64_t qpow(unsigned q, unsigned i) {
    std::uint64_t r = 1;
    for (unsigned j = 0; j < i; ++j) r = checked_mul(r, q);
    return r;
}

const FieldPtr& pick(const SparseBiPoly& a, const SparseBiPoly& b) {
    if (a.field && b.field && !a.field->same_as(*b.field)) throw FieldError("polynomial field mismatch");
    if (!a.field && !b.field) throw FieldError("polynomial without field");
    return a.field ? a.field : b.field;
}

void check_triple(const Triple& t) {
    if (!(t[0] > t[1] && t[1] > t[2])) throw std::invalid_argument("index triple must be strictly decreasing");
}

}  // namespace

std::uint64_t Mono::total() const { return checked_add(x, y); }

bool GrlexLess::operator()(const Mono& a, const Mono& b) const {
    const auto ta = a.total(), tb = b.total();
    if (ta != tb) return ta < tb;
    return a.x < b.x;
}

SparseBiPoly SparseBiPoly::constant(FieldPtr f, Elem c) { return monomial(std::move(f), 0, 0, c); }

SparseBiPoly SparseBiPoly::monomial(FieldPtr f, std::uint64_t ex, std::uint64_t ey, Elem c) {
    SparseBiPoly p(std::move(f));
    p.add_term({ex, ey}, c);
    return p;
}

void SparseBiPoly::add_term(Mono e, Elem c) {
    if (!c) return;
    auto it = terms.find(e);
    if (it == terms.end()) {
        terms.emplace(e, c);
        return;
    }
    it->second = field->add(it->second, c);
    if (!it->second) terms.erase(it);
}

long long SparseBiPoly::total_degree() const {
    if (terms.empty()) return -1;
    return static_cast<long long>(terms.rbegin()->first.total());
}

std::uint64_t SparseBiPoly::degree_x() const {
    std::uint64_t d = 0;
    for (const auto& [e, c] : terms) d = std::max(d, e.x);
    return d;
}

std::uint64_t SparseBiPoly::degree_y() const {
    std::uint64_t d = 0;
    for (const auto& [e, c] : terms) d = std::max(d, e.y);
    return d;
}

SparseBiPoly operator+(const SparseBiPoly& a, const SparseBiPoly& b) {
    SparseBiPoly out = a;
    out.field = pick(a, b);
    for (const auto& [e, c] : b.terms) out.add_term(e, c);
    return out;
}

SparseBiPoly operator-(const SparseBiPoly& a) {
    SparseBiPoly out = a;
    for (auto& [e, c] : out.terms) c = a.field->neg(c);
    return out;
}

SparseBiPoly operator-(const SparseBiPoly& a, const SparseBiPoly& b) { return a + (-b); }

SparseBiPoly operator*(const SparseBiPoly& a, const SparseBiPoly& b) {
    SparseBiPoly out(pick(a, b));
    const Field& f = *out.field;
    for (const auto& [ea, ca] : a.terms)
        for (const auto& [eb, cb] : b.terms) out.add_term({checked_add(ea.x, eb.x), checked_add(ea.y, eb.y)}, f.mul(ca, cb));
    return out;
}

SparseBiPoly scale(const SparseBiPoly& a, Elem s) {
    SparseBiPoly out(a.field);
    for (const auto& [e, c] : a.terms) out.add_term(e, a.field->mul(c, s));
    return out;
}

SparseBiPoly pow(const SparseBiPoly& a, std::uint64_t e) {
    SparseBiPoly result = SparseBiPoly::constant(a.field, 1);
    SparseBiPoly base = a;
    while (e) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

SparseBiPoly q_scale(const SparseBiPoly& p, unsigned i) {
    const Field& f = *p.field;
    const std::uint64_t s = qpow(f.q(), i);
    SparseBiPoly out(p.field);
    for (const auto& [e, c] : p.terms) {
        if (!f.in_base(c)) throw FieldError("q_scale needs coefficients in F_q");
        out.terms.emplace(Mono{checked_mul(e.x, s), checked_mul(e.y, s)}, c);
    }
    return out;
}

std::optional<SparseBiPoly> exact_div(const SparseBiPoly& f, const SparseBiPoly& g) {
    if (g.is_zero()) throw std::invalid_argument("division by the zero polynomial");
    const FieldPtr& fp = pick(f, g);
    const Field& fld = *fp;
    const auto [glt, gc] = *g.terms.rbegin();
    const Elem gc_inv = fld.inv(gc);
    SparseBiPoly r = f;
    r.field = fp;
    SparseBiPoly q(fp);
    while (!r.is_zero()) {
        const auto [lt, lc] = *r.terms.rbegin();
        if (lt.x < glt.x || lt.y < glt.y) return std::nullopt;
        const Mono t{lt.x - glt.x, lt.y - glt.y};
        const Elem c = fld.mul(lc, gc_inv);
        q.add_term(t, c);
        for (const auto& [e, ce] : g.terms)
            r.add_term({checked_add(e.x, t.x), checked_add(e.y, t.y)}, fld.neg(fld.mul(c, ce)));
    }
    return q;
}

Elem evaluate(const SparseBiPoly& p, const Field& ext, Elem x, Elem y) {
    if (!p.field->same_as(ext) && !(p.field->m() == 1 && p.field->q() == ext.q()))
        throw FieldError("evaluation field does not contain the coefficients");
    Elem acc = 0;
    for (const auto& [e, c] : p.terms) acc = ext.add(acc, ext.mul(c, ext.mul(ext.pow(x, e.x), ext.pow(y, e.y))));
    return acc;
}

SparseBiPoly f_ijk(unsigned i, unsigned j, unsigned k, const FieldPtr& f) {
    check_triple({i, j, k});
    const unsigned q = f->q();
    const auto qi = qpow(q, i), qj = qpow(q, j), qk = qpow(q, k);
    const Elem one = 1, minus = f->neg(1);
    SparseBiPoly p(f);
    p.add_term({qi, qj}, one);
    p.add_term({qj, qi}, minus);
    p.add_term({qk, qi}, one);
    p.add_term({qi, qk}, minus);
    p.add_term({qj, qk}, one);
    p.add_term({qk, qj}, minus);
    return p;
}

SparseBiPoly f0(const FieldPtr& f) {
    const unsigned q = f->q();
    const Elem minus = f->neg(1);
    auto mono = [&](std::uint64_t ex, std::uint64_t ey, Elem c) { return SparseBiPoly::monomial(f, ex, ey, c); };
    const std::uint64_t q2 = qpow(q, 2);
    SparseBiPoly y_part = mono(0, q2, 1) + mono(0, q, minus);
    SparseBiPoly x_part = mono(q, 0, 1) + mono(1, 0, minus);
    SparseBiPoly x2_part = mono(q2, 0, 1) + mono(q, 0, minus);
    SparseBiPoly y1_part = mono(0, q, 1) + mono(0, 1, minus);
    return y_part * x_part - x2_part * y1_part;
}

SparseBiPoly build_F(const Triple& idx1, const Triple& idx2, Elem coef, const FieldPtr& f) {
    check_triple(idx1);
    check_triple(idx2);
    if (idx1 == idx2) throw std::invalid_argument("index triples must differ");
    if (idx1[0] < idx2[0]) throw std::invalid_argument("need i1 >= i2");
    if (!coef) throw std::invalid_argument("coefficient must be nonzero");
    auto cross1 = f_ijk(idx1[0], idx2[1], idx2[2], f);
    auto cross2 = f_ijk(idx2[0], idx1[1], idx1[2], f);
    return f_ijk(idx1[0], idx1[1], idx1[2], f) * f_ijk(idx2[0], idx2[1], idx2[2], f) - scale(cross1 * cross2, coef);
}

std::uint64_t reduction_exponent(const Triple& idx1, const Triple& idx2, unsigned q) {
    return checked_add(qpow(q, idx1[2]), qpow(q, idx2[2]));
}

SparseBiPoly reduced_polynomial(const SparseBiPoly& F, std::optional<std::uint64_t> exponent) {
    const unsigned q = F.field->q();
    const std::uint64_t e = exponent.value_or(qpow(q, 2) + 1);
    // f0 has coefficients in F_q, so f0^e is a product of q-scaled copies
    // following the base-q digits of e.
    const SparseBiPoly base = f0(F.field);
    SparseBiPoly divisor = SparseBiPoly::constant(F.field, 1);
    std::uint64_t rest = e;
    for (unsigned i = 0; rest; ++i, rest /= q) {
        const auto digit = rest % q;
        if (digit) divisor = divisor * pow(q_scale(base, i), digit);
    }
    auto out = exact_div(F, divisor);
    if (!out) throw std::domain_error("initial polynomial is not divisible by the linear-factor block");
    return *out;
}

SparseBiPoly p_gamma_univariate(Elem alpha, const FieldPtr& f) {
    if (!alpha) throw std::invalid_argument("alpha must be nonzero");
    const unsigned q = f->q();
    const Elem minus = f->neg(1);
    auto xp = [&](std::uint64_t e, Elem c) { return SparseBiPoly::monomial(f, e, 0, c); };
    const auto q2 = qpow(q, 2), q3 = qpow(q, 3);
    SparseBiPoly f1 = (xp(q3, 1) + xp(q, minus)) * (xp(q2, 1) + xp(1, minus));
    SparseBiPoly f2 = (xp(q3, 1) + xp(1, minus)) * (xp(q2, 1) + xp(q, minus));
    SparseBiPoly Q = f1 - scale(f2, f->frobenius(alpha, 3));
    SparseBiPoly lin = xp(q, 1) + xp(1, minus);
    auto out = exact_div(Q, pow(lin, q + 1));
    if (!out) throw std::domain_error("Q is not divisible by (X^q - X)^(q+1)");
    return *out;
}

UniPoly to_univariate(const SparseBiPoly& p) {
    if (p.degree_y() != 0) throw std::invalid_argument("polynomial depends on Y");
    Vec c(p.is_zero() ? 0 : p.degree_x() + 1, 0);
    for (const auto& [e, v] : p.terms) c[e.x] = v;
    return UniPoly(p.field, std::move(c));
}

Vec roots_univariate(const SparseBiPoly& p) { return roots(to_univariate(p)); }

std::uint64_t roots_bivariate_independent(const SparseBiPoly& p, const FieldPtr& ext,
                                          const std::function<bool(Elem, Elem)>& visit, unsigned threads) {
    const Field& f = *ext;
    if (!p.field->same_as(f) && !(p.field->m() == 1 && p.field->q() == f.q()))
        throw FieldError("search field does not contain the coefficients");
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());

    // Group terms by Y-degree once.
    std::map<std::uint64_t, std::vector<std::pair<std::uint64_t, Elem>>> by_y;
    for (const auto& [e, c] : p.terms) by_y[e.y].push_back({e.x, c});
    const std::uint64_t dy = p.degree_y();

    auto search_x = [&](Elem x) {
        std::vector<Elem> found;
        Vec coeffs(dy + 1, 0);
        for (const auto& [ey, list] : by_y) {
            Elem acc = 0;
            for (const auto& [ex, c] : list) acc = f.add(acc, f.mul(c, f.pow(x, ex)));
            coeffs[ey] = acc;
        }
        UniPoly u(ext, std::move(coeffs));
        Vec ys;
        if (u.is_zero()) {
            ys.reserve(f.order());
            for (std::uint64_t y = 0; y < f.order(); ++y) ys.push_back(static_cast<Elem>(y));
        } else {
            ys = roots_by_splitting(u);
        }
        for (Elem y : ys)
            if (fq_rank(f, Vec{1, x, y}) == 3) found.push_back(y);
        return found;
    };

    const std::uint64_t batch = 64;
    std::uint64_t next = f.q();
    std::uint64_t examined = 0;
    while (next < f.order()) {
        const std::uint64_t round_end = std::min<std::uint64_t>(f.order(), next + batch * threads);
        const std::uint64_t count = round_end - next;
        std::vector<std::vector<Elem>> results(count);
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; ++w) {
            pool.emplace_back([&, w] {
                for (std::uint64_t i = w; i < count; i += threads) results[i] = search_x(static_cast<Elem>(next + i));
            });
        }
        for (auto& t : pool) t.join();
        for (std::uint64_t i = 0; i < count; ++i) {
            ++examined;
            for (Elem y : results[i])
                if (!visit(static_cast<Elem>(next + i), y)) return examined;
        }
        next = round_end;
    }
    return examined;
}

std::vector<std::tuple<std::uint64_t, std::uint64_t, std::string>> dump_terms(const SparseBiPoly& p) {
    std::vector<std::tuple<std::uint64_t, std::uint64_t, std::string>> out;
    for (const auto& [e, c] : p.terms) out.emplace_back(e.x, e.y, p.field->to_hex(c));
    return out;
}

}  // namespace rankcrypt
