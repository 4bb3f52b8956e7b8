#pragma once

#include "silting/field.hpp"

#include <algorithm>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace silting {

/// Dense row-major matrix over an exact field.
template <Field F>
class Matrix {
 public:
  using value_type = typename F::value_type;

  Matrix() = default;
  Matrix(F field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), data_(rows * cols, field.zero()) {}

  static Matrix identity(F field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }
  static Matrix from_rows(F field, const std::vector<std::vector<long long>>& rows) {
    const std::size_t c = rows.empty() ? 0 : rows.front().size();
    Matrix m(field, rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw Error("ragged matrix literal");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = field.from_int(rows[i][j]);
    }
    return m;
  }
  /// Column vector from a span of scalars.
  static Matrix column(F field, std::span<const value_type> v) {
    Matrix m(field, v.size(), 1);
    std::copy(v.begin(), v.end(), m.data_.begin());
    return m;
  }
  static Matrix unit_vector(F field, std::size_t n, std::size_t i) {
    Matrix m(field, n, 1);
    m(i, 0) = field.one();
    return m;
  }

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  value_type& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const value_type& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::span<const value_type> data() const { return data_; }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [&](const value_type& a) { return field_.is_zero(a); });
  }
  bool is_square() const { return rows_ == cols_; }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw Error("matrix product dimension mismatch");
    Matrix r(field_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const value_type& a = (*this)(i, k);
        if (field_.is_zero(a)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) = field_.add(r(i, j), field_.mul(a, o(k, j)));
      }
    return r;
  }
  Matrix operator+(const Matrix& o) const {
    check_same_shape(o);
    Matrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = field_.add(data_[i], o.data_[i]);
    return r;
  }
  Matrix operator-(const Matrix& o) const {
    check_same_shape(o);
    Matrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = field_.sub(data_[i], o.data_[i]);
    return r;
  }
  Matrix scaled(const value_type& c) const {
    Matrix r = *this;
    for (auto& a : r.data_) a = field_.mul(c, a);
    return r;
  }
  /// this += c * o
  void add_scaled(const value_type& c, const Matrix& o) {
    check_same_shape(o);
    if (field_.is_zero(c)) return;
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] = field_.add(data_[i], field_.mul(c, o.data_[i]));
  }

  Matrix transpose() const {
    Matrix r(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }
  Matrix col(std::size_t j) const {
    Matrix r(field_, rows_, 1);
    for (std::size_t i = 0; i < rows_; ++i) r(i, 0) = (*this)(i, j);
    return r;
  }
  Matrix select_cols(std::span<const std::size_t> js) const {
    Matrix r(field_, rows_, js.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < js.size(); ++k) r(i, k) = (*this)(i, js[k]);
    return r;
  }
  Matrix select_rows(std::span<const std::size_t> is) const {
    Matrix r(field_, is.size(), cols_);
    for (std::size_t k = 0; k < is.size(); ++k)
      for (std::size_t j = 0; j < cols_; ++j) r(k, j) = (*this)(is[k], j);
    return r;
  }
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix r(field_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) r(i, j) = (*this)(r0 + i, c0 + j);
    return r;
  }
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }
  /// Row-major flattening as a column vector.
  Matrix vectorized() const {
    Matrix r(field_, data_.size(), 1);
    r.data_ = data_;
    return r;
  }
  Matrix reshaped(std::size_t nr, std::size_t nc) const {
    if (nr * nc != data_.size()) throw Error("reshape size mismatch");
    Matrix r(field_, nr, nc);
    r.data_ = data_;
    return r;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows_; ++i) {
      os << (i ? ",[" : "[");
      for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? "," : "") << m.field_.to_string(m(i, j));
      os << ']';
    }
    return os << ']';
  }

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix shape mismatch");
  }

  F field_{};
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<value_type> data_;
};

template <Field F>
Matrix<F> hstack(const F& field, std::size_t rows, std::span<const Matrix<F>> parts) {
  std::size_t c = 0;
  for (const auto& p : parts) {
    if (p.rows() != rows) throw Error("hstack row mismatch");
    c += p.cols();
  }
  Matrix<F> r(field, rows, c);
  std::size_t off = 0;
  for (const auto& p : parts) {
    r.set_block(0, off, p);
    off += p.cols();
  }
  return r;
}

template <Field F>
Matrix<F> vstack(const F& field, std::size_t cols, std::span<const Matrix<F>> parts) {
  std::size_t n = 0;
  for (const auto& p : parts) {
    if (p.cols() != cols) throw Error("vstack column mismatch");
    n += p.rows();
  }
  Matrix<F> r(field, n, cols);
  std::size_t off = 0;
  for (const auto& p : parts) {
    r.set_block(off, 0, p);
    off += p.rows();
  }
  return r;
}

template <Field F>
Matrix<F> block_diagonal(const F& field, std::span<const Matrix<F>> parts) {
  std::size_t nr = 0, nc = 0;
  for (const auto& p : parts) {
    nr += p.rows();
    nc += p.cols();
  }
  Matrix<F> r(field, nr, nc);
  std::size_t ro = 0, co = 0;
  for (const auto& p : parts) {
    r.set_block(ro, co, p);
    ro += p.rows();
    co += p.cols();
  }
  return r;
}

/// Kronecker product; basis order (i, j) -> i * b.rows() + j.
template <Field F>
Matrix<F> kronecker(const Matrix<F>& a, const Matrix<F>& b) {
  const F& f = a.field();
  Matrix<F> r(f, a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const auto& x = a(i, j);
      if (f.is_zero(x)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) r(i * b.rows() + k, j * b.cols() + l) = f.mul(x, b(k, l));
    }
  return r;
}

template <Field F>
struct RrefResult {
  Matrix<F> reduced;
  std::size_t rank = 0;
  Matrix<F> rowops;  // rowops * input == reduced
  std::vector<std::size_t> pivots;
};

/// Reduced row-echelon form with leftmost pivots, taking the first nonzero row as pivot row.
template <Field F>
RrefResult<F> rref(const Matrix<F>& m, bool track_rowops = true) {
  const F& f = m.field();
  RrefResult<F> res{m, 0, track_rowops ? Matrix<F>::identity(f, m.rows()) : Matrix<F>(), {}};
  Matrix<F>& a = res.reduced;
  Matrix<F>& ops = res.rowops;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t piv = r;
    while (piv < a.rows() && f.is_zero(a(piv, c))) ++piv;
    if (piv == a.rows()) continue;
    auto swap_rows = [&](Matrix<F>& x) {
      for (std::size_t j = 0; j < x.cols(); ++j) std::swap(x(piv, j), x(r, j));
    };
    if (piv != r) {
      swap_rows(a);
      if (track_rowops) swap_rows(ops);
    }
    const auto inv = f.inv(a(r, c));
    for (std::size_t j = 0; j < a.cols(); ++j) a(r, j) = f.mul(inv, a(r, j));
    if (track_rowops)
      for (std::size_t j = 0; j < ops.cols(); ++j) ops(r, j) = f.mul(inv, ops(r, j));
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || f.is_zero(a(i, c))) continue;
      const auto factor = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) = f.sub(a(i, j), f.mul(factor, a(r, j)));
      if (track_rowops)
        for (std::size_t j = 0; j < ops.cols(); ++j) ops(i, j) = f.sub(ops(i, j), f.mul(factor, ops(r, j)));
    }
    res.pivots.push_back(c);
    ++r;
  }
  res.rank = r;
  return res;
}

template <Field F>
std::size_t rank(const Matrix<F>& m) {
  return rref(m, false).rank;
}

/// Kernel basis as matrix columns. Column k has a 1 at the k-th free variable and 0 at the others,
/// so coordinates of a kernel vector are its entries at free_variables().
template <Field F>
struct Kernel {
  Matrix<F> basis;
  std::vector<std::size_t> free;

  std::size_t dim() const { return free.size(); }
  Matrix<F> coordinates(const Matrix<F>& v) const {
    Matrix<F> c(basis.field(), free.size(), 1);
    for (std::size_t k = 0; k < free.size(); ++k) c(k, 0) = v(free[k], 0);
    return c;
  }
};

template <Field F>
Kernel<F> kernel(const Matrix<F>& m) {
  const F& f = m.field();
  const auto r = rref(m, false);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : r.pivots) is_pivot[p] = true;
  Kernel<F> k;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) k.free.push_back(c);
  k.basis = Matrix<F>(f, m.cols(), k.free.size());
  for (std::size_t t = 0; t < k.free.size(); ++t) {
    const std::size_t fc = k.free[t];
    k.basis(fc, t) = f.one();
    for (std::size_t i = 0; i < r.pivots.size(); ++i) k.basis(r.pivots[i], t) = f.neg(r.reduced(i, fc));
  }
  return k;
}

template <Field F>
struct SolveResult {
  std::optional<Matrix<F>> particular;
  std::vector<Matrix<F>> nullbasis;
};

/// Solves a * x = b for all columns of b at once.
template <Field F>
SolveResult<F> solve(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.rows() != b.rows()) throw Error("solve: row count mismatch");
  const F& f = a.field();
  SolveResult<F> out;
  const auto k = kernel(a);
  for (std::size_t t = 0; t < k.dim(); ++t) out.nullbasis.push_back(k.basis.col(t));

  Matrix<F> aug(f, a.rows(), a.cols() + b.cols());
  aug.set_block(0, 0, a);
  aug.set_block(0, a.cols(), b);
  const auto r = rref(aug, false);
  Matrix<F> x(f, a.cols(), b.cols());
  for (std::size_t i = 0; i < r.pivots.size(); ++i) {
    if (r.pivots[i] >= a.cols()) return out;  // inconsistent
    for (std::size_t j = 0; j < b.cols(); ++j) x(r.pivots[i], j) = r.reduced(i, a.cols() + j);
  }
  out.particular = std::move(x);
  return out;
}

/// Inverse of a square matrix, or nullopt if singular.
template <Field F>
std::optional<Matrix<F>> inverse(const Matrix<F>& m) {
  if (!m.is_square()) throw Error("inverse of non-square matrix");
  auto r = rref(m, true);
  if (r.rank != m.rows()) return std::nullopt;
  return std::move(r.rowops);
}

/// Basis of the column space, chosen as the pivot columns of m itself.
template <Field F>
Matrix<F> column_space(const Matrix<F>& m) {
  const auto r = rref(m, false);
  return m.select_cols(r.pivots);
}

/// Left inverse of a matrix with independent columns: L * m == I.
template <Field F>
Matrix<F> left_inverse(const Matrix<F>& m) {
  const auto r = rref(m, true);
  if (r.rank != m.cols()) throw Error("left_inverse: columns are dependent");
  return r.rowops.block(0, 0, m.cols(), m.rows());
}

/// Right inverse of a matrix with independent rows: m * R == I.
template <Field F>
Matrix<F> right_inverse(const Matrix<F>& m) {
  return left_inverse(m.transpose()).transpose();
}

/// Standard basis vectors completing the columns of `sub` (independent) to a basis.
template <Field F>
std::vector<std::size_t> complement_indices(const Matrix<F>& sub) {
  const F& f = sub.field();
  const std::size_t n = sub.rows();
  Matrix<F> aug(f, n, sub.cols() + n);
  aug.set_block(0, 0, sub);
  aug.set_block(0, sub.cols(), Matrix<F>::identity(f, n));
  const auto r = rref(aug, false);
  std::vector<std::size_t> out;
  for (auto p : r.pivots)
    if (p >= sub.cols()) out.push_back(p - sub.cols());
  return out;
}

template <Field F>
bool in_column_space(const Matrix<F>& space, const Matrix<F>& v) {
  if (space.cols() == 0) return v.is_zero();
  return solve(space, v).particular.has_value();
}

/// Power of a square matrix by repeated squaring.
template <Field F>
Matrix<F> power(Matrix<F> m, std::size_t e) {
  Matrix<F> r = Matrix<F>::identity(m.field(), m.rows());
  while (e) {
    if (e & 1) r = r * m;
    e >>= 1;
    if (e) m = m * m;
  }
  return r;
}

}  // namespace silting

namespace silting {

/// Minimal polynomial of a square matrix, monic, coefficients low to high (last entry is 1).
template <Field F>
std::vector<typename F::value_type> minimal_polynomial(const Matrix<F>& m) {
  const F& f = m.field();
  const std::size_t n = m.rows();
  std::vector<Matrix<F>> powers{Matrix<F>::identity(f, n).vectorized()};
  Matrix<F> cur = Matrix<F>::identity(f, n);
  for (std::size_t k = 1; k <= n + 1; ++k) {
    cur = cur * m;
    const Matrix<F> prev = hstack<F>(f, n * n, powers);
    const auto s = solve(prev, cur.vectorized());
    if (s.particular) {
      std::vector<typename F::value_type> coeffs(k + 1, f.zero());
      for (std::size_t i = 0; i < k; ++i) coeffs[i] = f.neg((*s.particular)(i, 0));
      coeffs[k] = f.one();
      return coeffs;
    }
    powers.push_back(cur.vectorized());
  }
  throw Error("minimal polynomial search exceeded matrix size");
}

/// If m - lambda*I is nilpotent for some scalar lambda, returns lambda.
template <Field F>
std::optional<typename F::value_type> single_eigenvalue(const Matrix<F>& m) {
  const F& f = m.field();
  const std::size_t n = m.rows();
  if (n == 0) return std::nullopt;
  const auto poly = minimal_polynomial(m);
  const std::size_t deg = poly.size() - 1;
  std::size_t j = deg;
  for (std::size_t i = deg; i-- > 0;)
    if (!f.is_zero(poly[i])) {
      j = i;
      break;
    }
  typename F::value_type lambda = f.zero();
  if (j != deg) {
    const std::size_t q = deg - j;
    if (deg % q != 0) return std::nullopt;
    const auto r = f.from_int(static_cast<long long>(deg / q));
    if (f.is_zero(r)) return std::nullopt;
    lambda = f.neg(f.mul(poly[j], f.inv(r)));
  }
  const Matrix<F> shifted = m - Matrix<F>::identity(f, n).scaled(lambda);
  if (!power(shifted, n).is_zero()) return std::nullopt;
  return lambda;
}

}  // namespace silting
