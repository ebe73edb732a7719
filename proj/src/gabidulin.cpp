#include "rankcrypt/gabidulin.hpp"

#include <stdexcept>

namespace rankcrypt {

Matrix moore_matrix(const FieldPtr& f, const Vec& a, std::size_t k) {
    Matrix g(f, k, a.size());
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < a.size(); ++j) g.at(i, j) = f->frobenius(a[j], static_cast<long long>(i));
    return g;
}

GabidulinCode::GabidulinCode(FieldPtr f, Vec a, std::size_t k) : field_(std::move(f)), a_(std::move(a)), k_(k) {
    if (k_ < 1 || k_ > a_.size()) throw FieldError("code dimension out of range");
    if (a_.size() > field_->m()) throw FieldError("code length exceeds extension degree");
    if (fq_rank(*field_, a_) != a_.size()) throw FieldError("support vector is not F_q-independent");
}

Matrix GabidulinCode::generator() const { return moore_matrix(field_, a_, k_); }

Vec GabidulinCode::encode(const Vec& msg) const {
    if (msg.size() != k_) throw std::invalid_argument("message length must equal k");
    return vec_mul(msg, generator());
}

Subspace GabidulinCode::dual() const { return right_kernel(generator()); }

std::optional<GabidulinCode::Decoded> GabidulinCode::decode(const Vec& y, std::size_t t_max) const {
    const Field& f = *field_;
    const std::size_t n = a_.size(), k = k_;
    if (y.size() != n) throw std::invalid_argument("received word has wrong length");
    if (2 * t_max > n - k) throw std::invalid_argument("t_max exceeds unique decoding radius");
    const std::size_t t = t_max;

    // Unknowns (v_0..v_t, n_0..n_{k-1+t}) with sum v_j y_i^[j] = sum n_l a_i^[l].
    const std::size_t nv = t + 1, nn = k + t;
    Matrix sys(field_, n, nv + nn);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < nv; ++j) sys.at(i, j) = f.frobenius(y[i], static_cast<long long>(j));
        for (std::size_t l = 0; l < nn; ++l) sys.at(i, nv + l) = f.neg(f.frobenius(a_[i], static_cast<long long>(l)));
    }
    Subspace ker = right_kernel(sys);
    if (ker.dim() == 0) return std::nullopt;
    const Vec sol = ker.vector(0);
    Vec v(sol.begin(), sol.begin() + static_cast<long>(nv));
    Vec nc(sol.begin() + static_cast<long>(nv), sol.end());

    std::size_t tv = nv;
    while (tv > 0 && v[tv - 1] == 0) --tv;
    if (tv == 0) return std::nullopt;
    --tv;

    // Left division N = V o f, highest coefficient first.
    Vec fc(k, 0);
    const Elem lead_inv = f.inv(v[tv]);
    for (std::size_t jj = k; jj-- > 0;) {
        Elem acc = nc[tv + jj];
        for (std::size_t i = 0; i < tv; ++i) {
            const std::size_t idx = tv + jj - i;
            if (idx < k) acc = f.sub(acc, f.mul(v[i], f.frobenius(fc[idx], static_cast<long long>(i))));
        }
        fc[jj] = f.frobenius(f.mul(acc, lead_inv), -static_cast<long long>(tv));
    }
    for (std::size_t s = 0; s < nn; ++s) {
        Elem acc = 0;
        for (std::size_t i = 0; i <= tv && i <= s; ++i)
            if (s - i < k) acc = f.add(acc, f.mul(v[i], f.frobenius(fc[s - i], static_cast<long long>(i))));
        if (acc != nc[s]) return std::nullopt;
    }

    Vec c = encode(fc);
    Vec e(n);
    for (std::size_t i = 0; i < n; ++i) e[i] = f.sub(y[i], c[i]);
    if (fq_rank(f, e) > t) return std::nullopt;
    return Decoded{fc, e};
}

}  // namespace rankcrypt
