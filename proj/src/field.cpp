#include "rankcrypt/field.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <mutex>
#include <tuple>

#include "rankcrypt/upoly.hpp"

namespace rankcrypt {

namespace {

std::uint64_t ipow(std::uint64_t b, unsigned e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % n);
}

// Monic degree-m candidates with `weight` nonzero lower coefficients and a
// nonzero constant term, in ascending packed order.
std::vector<std::vector<unsigned>> candidates(unsigned q, unsigned m, unsigned weight) {
    std::vector<std::pair<std::uint64_t, std::vector<unsigned>>> out;
    std::vector<unsigned> poly(m + 1, 0);
    poly[m] = 1;
    auto rec = [&](auto&& self, unsigned pos, unsigned left) -> void {
        if (left == 0) {
            std::uint64_t packed = 0;
            for (unsigned i = m; i-- > 0;) packed = packed * q + poly[i];
            out.emplace_back(packed, poly);
            return;
        }
        for (unsigned i = pos; i + left <= m; ++i) {
            for (unsigned c = 1; c < q; ++c) {
                poly[i] = c;
                self(self, i + 1, left - 1);
            }
            poly[i] = 0;
        }
    };
    for (unsigned c0 = 1; c0 < q; ++c0) {
        poly[0] = c0;
        rec(rec, 1, weight - 1);
    }
    std::sort(out.begin(), out.end());
    std::vector<std::vector<unsigned>> polys;
    for (auto& [packed, poly_] : out) polys.push_back(std::move(poly_));
    return polys;
}

std::vector<unsigned> default_modulus(const FieldPtr& fq, unsigned m) {
    if (m == 1) return {0, 1};
    for (unsigned weight = 1; weight <= m; ++weight)
        for (const auto& poly : candidates(fq->q(), m, weight))
            if (is_irreducible(fq, poly)) return poly;
    throw FieldError("no irreducible polynomial found");
}

}  // namespace

std::optional<std::pair<unsigned, unsigned>> prime_power(unsigned q) {
    if (q < 2) return std::nullopt;
    unsigned p = 2;
    while (q % p != 0) ++p;
    unsigned s = 0;
    unsigned r = q;
    while (r % p == 0) {
        r /= p;
        ++s;
    }
    if (r != 1) return std::nullopt;
    return std::make_pair(p, s);
}

bool is_irreducible(const FieldPtr& fq, const std::vector<unsigned>& poly) {
    Vec coeffs(poly.begin(), poly.end());
    UniPoly f(fq, coeffs);
    const long deg = f.degree();
    if (deg < 1) return false;
    if (deg == 1) return true;
    f = monic(f);
    // Ben-Or: f is irreducible iff gcd(f, X^{q^i} - X) = 1 for 1 <= i <= deg/2.
    const UniPoly x = UniPoly::monomial(fq, 1);
    UniPoly h = x;
    for (long i = 1; i <= deg / 2; ++i) {
        h = frobenius_powmod(h, 1, f);
        if (gcd(f, h - x).degree() != 0) return false;
    }
    return true;
}

FieldPtr Field::make(unsigned q, unsigned m, std::optional<std::vector<unsigned>> modulus) {
    auto pp = prime_power(q);
    if (!pp) throw FieldError("q must be a prime power, got " + std::to_string(q));
    if (m < 1) throw FieldError("extension degree must be positive");
    if (q > 256) throw FieldError("unsupported q > 256");
    long double size = 1;
    for (unsigned i = 0; i < m; ++i) size *= q;
    if (size > 4294967295.0L) throw FieldError("field too large for 32-bit packing");

    FieldPtr fq = (m == 1) ? nullptr : Field::make(q, 1);
    std::vector<unsigned> mod;
    if (modulus) {
        mod = *modulus;
        while (!mod.empty() && mod.back() == 0) mod.pop_back();
        if (mod.size() != m + 1) throw FieldError("modulus degree does not match m");
        for (unsigned c : mod)
            if (c >= q) throw FieldError("modulus coefficient out of range");
        if (mod.back() != 1) throw FieldError("modulus must be monic");
    }

    static std::mutex mu;
    static std::map<std::tuple<unsigned, unsigned, std::vector<unsigned>>, FieldPtr> cache;
    static std::map<std::pair<unsigned, unsigned>, std::vector<unsigned>> default_cache;

    std::unique_lock lock(mu);
    if (!modulus) {
        auto it = default_cache.find({q, m});
        if (it != default_cache.end()) {
            mod = it->second;
        } else {
            lock.unlock();
            mod = (m == 1) ? std::vector<unsigned>{0, 1} : default_modulus(fq, m);
            lock.lock();
            default_cache[{q, m}] = mod;
        }
    }
    auto key = std::make_tuple(q, m, mod);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    lock.unlock();

    if (modulus && m > 1 && !is_irreducible(fq, mod)) throw FieldError("modulus is reducible over F_q");
    auto field = std::make_shared<const Field>(q, m, mod);

    lock.lock();
    auto [it, inserted] = cache.emplace(key, field);
    return it->second;
}

Field::Field(unsigned q, unsigned m, std::vector<unsigned> modulus) : q_(q), m_(m), modulus_(std::move(modulus)) {
    auto pp = prime_power(q);
    p_ = pp->first;
    s_ = pp->second;
    order_ = ipow(q, m);
    if (s_ > 1) coef_ = Field::make(p_, s_);
    if (q_ == 2) {
        for (unsigned i = 0; i < m_; ++i)
            if (modulus_[i]) binary_mod_ |= Elem{1} << i;
    }
    if (order_ <= kTableLimit && order_ > 1) build_tables();
}

FieldPtr Field::base() const {
    if (!base_) base_ = Field::make(q_, 1);
    return base_;
}

Elem Field::coef_add(Elem a, Elem b) const {
    if (p_ == 2) return a ^ b;
    if (coef_) return coef_->add(a, b);
    return (a + b) % p_;
}

Elem Field::coef_sub(Elem a, Elem b) const {
    if (p_ == 2) return a ^ b;
    if (coef_) return coef_->sub(a, b);
    return (a + p_ - b) % p_;
}

Elem Field::coef_mul(Elem a, Elem b) const {
    if (coef_) return coef_->mul(a, b);
    return static_cast<Elem>((static_cast<std::uint64_t>(a) * b) % p_);
}

Elem Field::coef_inv(Elem a) const {
    if (coef_) return coef_->inv(a);
    // Fermat in the prime field.
    std::uint64_t r = 1, b = a, e = p_ - 2;
    while (e) {
        if (e & 1) r = r * b % p_;
        b = b * b % p_;
        e >>= 1;
    }
    return static_cast<Elem>(r);
}

Elem Field::add(Elem a, Elem b) const {
    if (p_ == 2) return a ^ b;
    Elem out = 0, scale = 1;
    while (a || b) {
        out += scale * ((a % p_ + b % p_) % p_);
        a /= p_;
        b /= p_;
        scale *= p_;
    }
    return out;
}

Elem Field::neg(Elem a) const {
    if (p_ == 2) return a;
    Elem out = 0, scale = 1;
    while (a) {
        out += scale * ((p_ - a % p_) % p_);
        a /= p_;
        scale *= p_;
    }
    return out;
}

Elem Field::sub(Elem a, Elem b) const { return p_ == 2 ? (a ^ b) : add(a, neg(b)); }

Elem Field::slow_mul(Elem a, Elem b) const {
    if (q_ == 2) {
        std::uint64_t prod = 0;
        for (unsigned i = 0; i < m_; ++i)
            if ((b >> i) & 1u) prod ^= static_cast<std::uint64_t>(a) << i;
        for (int d = 2 * static_cast<int>(m_) - 2; d >= static_cast<int>(m_); --d) {
            if ((prod >> d) & 1u) {
                prod ^= std::uint64_t{1} << d;
                prod ^= static_cast<std::uint64_t>(binary_mod_) << (d - m_);
            }
        }
        return static_cast<Elem>(prod);
    }
    Vec x = coords(a), y = coords(b);
    Vec prod(2 * m_ - 1, 0);
    for (unsigned i = 0; i < m_; ++i) {
        if (!x[i]) continue;
        for (unsigned j = 0; j < m_; ++j)
            if (y[j]) prod[i + j] = coef_add(prod[i + j], coef_mul(x[i], y[j]));
    }
    for (int d = 2 * static_cast<int>(m_) - 2; d >= static_cast<int>(m_); --d) {
        Elem c = prod[d];
        if (!c) continue;
        for (unsigned i = 0; i <= m_; ++i)
            prod[d - m_ + i] = coef_sub(prod[d - m_ + i], coef_mul(c, modulus_[i]));
    }
    prod.resize(m_);
    return from_coords(prod);
}

Elem Field::slow_pow(Elem a, std::uint64_t e) const {
    Elem r = 1;
    while (e) {
        if (e & 1) r = slow_mul(r, a);
        a = slow_mul(a, a);
        e >>= 1;
    }
    return r;
}

void Field::build_tables() {
    const std::uint64_t n = order_ - 1;
    const auto factors = prime_factors(n);
    Elem g = 0;
    for (Elem cand = 1; cand < order_; ++cand) {
        bool primitive = true;
        for (auto f : factors) {
            if (slow_pow(cand, n / f) == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            g = cand;
            break;
        }
    }
    gen_ = g;
    exp_.assign(2 * n, 0);
    log_.assign(order_, 0);
    Elem x = 1;
    for (std::uint64_t i = 0; i < n; ++i) {
        exp_[i] = x;
        exp_[i + n] = x;
        log_[x] = static_cast<std::uint32_t>(i);
        x = slow_mul(x, g);
    }
    frob_exp_.resize(m_);
    std::uint64_t e = 1 % n;
    for (unsigned i = 0; i < m_; ++i) {
        frob_exp_[i] = e;
        e = mulmod(e, q_, n);
    }
}

Elem Field::mul(Elem a, Elem b) const {
    if (!a || !b) return 0;
    if (!log_.empty()) return exp_[log_[a] + log_[b]];
    return slow_mul(a, b);
}

Elem Field::inv(Elem a) const {
    if (!a) throw FieldError("inverse of zero");
    if (!log_.empty()) {
        const std::uint64_t n = order_ - 1;
        return exp_[(n - log_[a]) % n];
    }
    if (m_ == 1 && !coef_) return coef_inv(a);
    return slow_pow(a, order_ - 2);
}

Elem Field::pow(Elem a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (!a) return 0;
    if (!log_.empty()) {
        const std::uint64_t n = order_ - 1;
        return exp_[mulmod(log_[a], e % n, n)];
    }
    return slow_pow(a, e);
}

Elem Field::frobenius(Elem a, long long i) const {
    long long k = i % static_cast<long long>(m_);
    if (k < 0) k += m_;
    if (k == 0 || a <= 1) return a;
    if (!log_.empty()) {
        const std::uint64_t n = order_ - 1;
        return exp_[mulmod(log_[a], frob_exp_[k], n)];
    }
    for (long long j = 0; j < k; ++j) a = slow_pow(a, q_);
    return a;
}

Vec Field::coords(Elem a) const {
    Vec out(m_);
    for (unsigned i = 0; i < m_; ++i) {
        out[i] = a % q_;
        a /= q_;
    }
    return out;
}

Elem Field::from_coords(std::span<const Elem> c) const {
    if (c.size() != m_) throw FieldError("coordinate vector has wrong length");
    Elem out = 0;
    for (unsigned i = m_; i-- > 0;) {
        if (c[i] >= q_) throw FieldError("coordinate out of range");
        out = out * q_ + c[i];
    }
    return out;
}

std::string Field::to_hex(Elem a) const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "0x%x", a);
    return buf;
}

Elem Field::from_hex(const std::string& s) const {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
        v = std::stoul(s, &pos, 16);
    } catch (const std::exception&) {
        throw FieldError("bad field element encoding: " + s);
    }
    if (pos != s.size() || v >= order_) throw FieldError("bad field element encoding: " + s);
    return static_cast<Elem>(v);
}

void FieldElement::check(const FieldElement& o) const {
    if (!field_ || !o.field_ || !field_->same_as(*o.field_)) throw FieldError("field mismatch");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    check(o);
    return {field_, field_->add(value_, o.value_)};
}
FieldElement FieldElement::operator-(const FieldElement& o) const {
    check(o);
    return {field_, field_->sub(value_, o.value_)};
}
FieldElement FieldElement::operator*(const FieldElement& o) const {
    check(o);
    return {field_, field_->mul(value_, o.value_)};
}
FieldElement FieldElement::operator/(const FieldElement& o) const {
    check(o);
    return {field_, field_->div(value_, o.value_)};
}
FieldElement FieldElement::inv() const { return {field_, field_->inv(value_)}; }

FieldElement field_arith(FieldOp op, const FieldElement& x, const std::optional<FieldElement>& y,
                         std::uint64_t exponent) {
    auto need = [&]() -> const FieldElement& {
        if (!y) throw FieldError("binary field operation needs a second operand");
        return *y;
    };
    switch (op) {
        case FieldOp::add: return x + need();
        case FieldOp::sub: return x - need();
        case FieldOp::mul: return x * need();
        case FieldOp::div: return x / need();
        case FieldOp::inv: return x.inv();
        case FieldOp::neg: return -x;
        case FieldOp::pow: return x.pow(exponent);
    }
    throw FieldError("unknown field operation");
}

}  // namespace rankcrypt
