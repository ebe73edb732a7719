#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "rankcrypt/field.hpp"

namespace rankcrypt {

/// Dense row-major matrix over a single field. Matrices over F_q use the
/// degenerate field with m = 1; since F_q elements pack to values below q in
/// every extension, `with_field` reinterprets them without conversion.
struct Matrix {
    FieldPtr field;
    std::size_t rows = 0, cols = 0;
    Vec data;

    Matrix() = default;
    Matrix(FieldPtr f, std::size_t r, std::size_t c) : field(std::move(f)), rows(r), cols(c), data(r * c, 0) {}

    static Matrix identity(FieldPtr f, std::size_t n);
    static Matrix from_rows(FieldPtr f, const std::vector<Vec>& rows, std::size_t cols);

    Elem& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    Elem at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
    Vec row(std::size_t i) const;
    void set_row(std::size_t i, const Vec& v);
    std::vector<Vec> row_list() const;
    Matrix with_field(FieldPtr f) const;
    bool is_zero() const;

    bool operator==(const Matrix& o) const { return rows == o.rows && cols == o.cols && data == o.data; }
};

struct RrefResult {
    Matrix m;
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
};

RrefResult rref(const Matrix& m);
std::size_t rank(const Matrix& m);
Matrix mul(const Matrix& a, const Matrix& b);
Matrix add(const Matrix& a, const Matrix& b);
/// Entry-wise scalar multiple.
Matrix scale(const Matrix& a, Elem s);
Matrix transpose(const Matrix& a);
std::optional<Matrix> inverse(const Matrix& a);
/// Row vector times matrix.
Vec vec_mul(const Vec& v, const Matrix& a);
/// Componentwise q^i-th power.
Vec frobenius(const Field& f, const Vec& v, long long i);
Matrix frobenius(const Matrix& a, long long i);

/// One x with A x = b (free variables zero), or nullopt if inconsistent.
std::optional<Vec> solve(const Matrix& a, const Vec& b);

/// Row space in reduced echelon form. Two subspaces are equal iff their
/// echelon bases are identical.
class Subspace {
  public:
    Subspace() = default;
    static Subspace span(FieldPtr f, std::size_t ambient, const std::vector<Vec>& vectors);
    static Subspace of_rows(const Matrix& m);
    static Subspace zero(FieldPtr f, std::size_t ambient);
    static Subspace full(FieldPtr f, std::size_t ambient);

    const FieldPtr& field() const { return basis_.field; }
    std::size_t ambient() const { return basis_.cols; }
    std::size_t dim() const { return basis_.rows; }
    const Matrix& basis() const { return basis_; }
    Vec vector(std::size_t i) const { return basis_.row(i); }

    bool contains(const Vec& v) const;
    bool contains(const Subspace& other) const;
    /// Image under componentwise q^i-th power (stays in echelon form).
    Subspace frobenius(long long i) const;

    bool operator==(const Subspace& o) const { return basis_ == o.basis_; }

  private:
    Matrix basis_;
};

/// {x : M x^T = 0}.
Subspace right_kernel(const Matrix& m);
Subspace subspace_sum(const Subspace& u, const Subspace& v);
Subspace subspace_intersect(const Subspace& u, const Subspace& v);

/// Dimension of the F_q-span of the coordinates of v.
std::size_t fq_rank(const Field& f, const Vec& v);
/// The n x m matrix over F_q whose row i holds the coordinates of v_i.
Matrix expand(const Field& f, const Vec& v);

}  // namespace rankcrypt
