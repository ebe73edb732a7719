#include "rankcrypt/linalg.hpp"

#include <stdexcept>

namespace rankcrypt {

namespace {

void require_same(const FieldPtr& a, const FieldPtr& b) {
    if (!a || !b || !a->same_as(*b)) throw FieldError("matrix field mismatch");
}

}  // namespace

Matrix Matrix::identity(FieldPtr f, std::size_t n) {
    Matrix m(std::move(f), n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Matrix Matrix::from_rows(FieldPtr f, const std::vector<Vec>& rows, std::size_t cols) {
    Matrix m(std::move(f), rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
    return m;
}

Vec Matrix::row(std::size_t i) const {
    return Vec(data.begin() + static_cast<long>(i * cols), data.begin() + static_cast<long>((i + 1) * cols));
}

void Matrix::set_row(std::size_t i, const Vec& v) {
    if (v.size() != cols) throw std::invalid_argument("row length mismatch");
    std::copy(v.begin(), v.end(), data.begin() + static_cast<long>(i * cols));
}

std::vector<Vec> Matrix::row_list() const {
    std::vector<Vec> out;
    out.reserve(rows);
    for (std::size_t i = 0; i < rows; ++i) out.push_back(row(i));
    return out;
}

Matrix Matrix::with_field(FieldPtr f) const {
    Matrix m = *this;
    for (Elem x : data)
        if (x >= f->order()) throw FieldError("entry does not fit target field");
    m.field = std::move(f);
    return m;
}

bool Matrix::is_zero() const {
    for (Elem x : data)
        if (x) return false;
    return true;
}

RrefResult rref(const Matrix& in) {
    RrefResult res{in, 0, {}};
    Matrix& m = res.m;
    const Field& f = *m.field;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
        std::size_t piv = r;
        while (piv < m.rows && m.at(piv, c) == 0) ++piv;
        if (piv == m.rows) continue;
        if (piv != r)
            for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
        const Elem inv = f.inv(m.at(r, c));
        for (std::size_t j = c; j < m.cols; ++j) m.at(r, j) = f.mul(m.at(r, j), inv);
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == r) continue;
            const Elem factor = m.at(i, c);
            if (!factor) continue;
            for (std::size_t j = c; j < m.cols; ++j)
                if (m.at(r, j)) m.at(i, j) = f.sub(m.at(i, j), f.mul(factor, m.at(r, j)));
        }
        res.pivots.push_back(c);
        ++r;
    }
    res.rank = r;
    return res;
}

std::size_t rank(const Matrix& m) { return rref(m).rank; }

Matrix mul(const Matrix& a, const Matrix& b) {
    require_same(a.field, b.field);
    if (a.cols != b.rows) throw std::invalid_argument("matrix dimension mismatch");
    const Field& f = *a.field;
    Matrix out(a.field, a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t l = 0; l < a.cols; ++l) {
            const Elem x = a.at(i, l);
            if (!x) continue;
            for (std::size_t j = 0; j < b.cols; ++j)
                if (b.at(l, j)) out.at(i, j) = f.add(out.at(i, j), f.mul(x, b.at(l, j)));
        }
    return out;
}

Matrix add(const Matrix& a, const Matrix& b) {
    require_same(a.field, b.field);
    if (a.rows != b.rows || a.cols != b.cols) throw std::invalid_argument("matrix dimension mismatch");
    Matrix out = a;
    for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] = a.field->add(a.data[i], b.data[i]);
    return out;
}

Matrix scale(const Matrix& a, Elem s) {
    Matrix out = a;
    for (Elem& x : out.data) x = a.field->mul(x, s);
    return out;
}

Matrix transpose(const Matrix& a) {
    Matrix out(a.field, a.cols, a.rows);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) out.at(j, i) = a.at(i, j);
    return out;
}

std::optional<Matrix> inverse(const Matrix& a) {
    if (a.rows != a.cols) throw std::invalid_argument("inverse of non-square matrix");
    const std::size_t n = a.rows;
    Matrix aug(a.field, n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, n + i) = 1;
    }
    RrefResult r = rref(aug);
    if (r.rank < n || r.pivots[n - 1] != n - 1) return std::nullopt;
    Matrix out(a.field, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.at(i, j) = r.m.at(i, n + j);
    return out;
}

Vec vec_mul(const Vec& v, const Matrix& a) {
    if (v.size() != a.rows) throw std::invalid_argument("vector length mismatch");
    const Field& f = *a.field;
    Vec out(a.cols, 0);
    for (std::size_t i = 0; i < a.rows; ++i) {
        if (!v[i]) continue;
        for (std::size_t j = 0; j < a.cols; ++j)
            if (a.at(i, j)) out[j] = f.add(out[j], f.mul(v[i], a.at(i, j)));
    }
    return out;
}

Vec frobenius(const Field& f, const Vec& v, long long i) {
    Vec out(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) out[j] = f.frobenius(v[j], i);
    return out;
}

Matrix frobenius(const Matrix& a, long long i) {
    Matrix out = a;
    for (Elem& x : out.data) x = a.field->frobenius(x, i);
    return out;
}

std::optional<Vec> solve(const Matrix& a, const Vec& b) {
    if (b.size() != a.rows) throw std::invalid_argument("right-hand side length mismatch");
    Matrix aug(a.field, a.rows, a.cols + 1);
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t j = 0; j < a.cols; ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, a.cols) = b[i];
    }
    RrefResult r = rref(aug);
    if (!r.pivots.empty() && r.pivots.back() == a.cols) return std::nullopt;
    Vec x(a.cols, 0);
    for (std::size_t i = 0; i < r.rank; ++i) x[r.pivots[i]] = r.m.at(i, a.cols);
    return x;
}

Subspace Subspace::of_rows(const Matrix& m) {
    RrefResult r = rref(m);
    Subspace s;
    s.basis_ = Matrix(m.field, r.rank, m.cols);
    std::copy(r.m.data.begin(), r.m.data.begin() + static_cast<long>(r.rank * m.cols), s.basis_.data.begin());
    return s;
}

Subspace Subspace::span(FieldPtr f, std::size_t ambient, const std::vector<Vec>& vectors) {
    return of_rows(Matrix::from_rows(std::move(f), vectors, ambient));
}

Subspace Subspace::zero(FieldPtr f, std::size_t ambient) {
    Subspace s;
    s.basis_ = Matrix(std::move(f), 0, ambient);
    return s;
}

Subspace Subspace::full(FieldPtr f, std::size_t ambient) {
    Subspace s;
    s.basis_ = Matrix::identity(std::move(f), ambient);
    return s;
}

bool Subspace::contains(const Vec& v) const {
    Matrix m(field(), dim() + 1, ambient());
    std::copy(basis_.data.begin(), basis_.data.end(), m.data.begin());
    m.set_row(dim(), v);
    return rank(m) == dim();
}

bool Subspace::contains(const Subspace& other) const { return subspace_sum(*this, other).dim() == dim(); }

Subspace Subspace::frobenius(long long i) const {
    Subspace s;
    s.basis_ = rankcrypt::frobenius(basis_, i);
    return s;
}

Subspace right_kernel(const Matrix& m) {
    RrefResult r = rref(m);
    const Field& f = *m.field;
    std::vector<bool> is_pivot(m.cols, false);
    for (auto p : r.pivots) is_pivot[p] = true;
    Matrix k(m.field, m.cols - r.rank, m.cols);
    std::size_t row = 0;
    for (std::size_t free = 0; free < m.cols; ++free) {
        if (is_pivot[free]) continue;
        k.at(row, free) = 1;
        for (std::size_t i = 0; i < r.rank; ++i) k.at(row, r.pivots[i]) = f.neg(r.m.at(i, free));
        ++row;
    }
    return Subspace::of_rows(k);
}

Subspace subspace_sum(const Subspace& u, const Subspace& v) {
    require_same(u.field(), v.field());
    if (u.ambient() != v.ambient()) throw std::invalid_argument("ambient dimension mismatch");
    Matrix m(u.field(), u.dim() + v.dim(), u.ambient());
    std::copy(u.basis().data.begin(), u.basis().data.end(), m.data.begin());
    std::copy(v.basis().data.begin(), v.basis().data.end(), m.data.begin() + static_cast<long>(u.basis().data.size()));
    return Subspace::of_rows(m);
}

Subspace subspace_intersect(const Subspace& u, const Subspace& v) {
    require_same(u.field(), v.field());
    if (u.ambient() != v.ambient()) throw std::invalid_argument("ambient dimension mismatch");
    const std::size_t a = u.dim(), b = v.dim(), n = u.ambient();
    if (a == 0 || b == 0) return Subspace::zero(u.field(), n);
    // Coefficient pairs (x, y) with x U = y V span the kernel of [U; -V]^T.
    Matrix st(u.field(), n, a + b);
    const Field& f = *u.field();
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < a; ++i) st.at(j, i) = u.basis().at(i, j);
        for (std::size_t i = 0; i < b; ++i) st.at(j, a + i) = f.neg(v.basis().at(i, j));
    }
    Subspace ker = right_kernel(st);
    std::vector<Vec> vecs;
    for (std::size_t r = 0; r < ker.dim(); ++r) {
        Vec x(ker.basis().data.begin() + static_cast<long>(r * (a + b)),
              ker.basis().data.begin() + static_cast<long>(r * (a + b) + a));
        vecs.push_back(vec_mul(x, u.basis()));
    }
    return Subspace::span(u.field(), n, vecs);
}

Matrix expand(const Field& f, const Vec& v) {
    Matrix m(f.base(), v.size(), f.m());
    for (std::size_t i = 0; i < v.size(); ++i) m.set_row(i, f.coords(v[i]));
    return m;
}

std::size_t fq_rank(const Field& f, const Vec& v) { return rank(expand(f, v)); }

}  // namespace rankcrypt
