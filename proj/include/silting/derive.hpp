#pragma once

#include "silting/algebra.hpp"

#include <algorithm>
#include <set>

namespace silting {

template <Field F>
AlgebraPtr<F> opposite(const Algebra<F>& a) {
  const F& f = a.field();
  const std::size_t n = a.dim();
  std::vector<Matrix<F>> left(n, Matrix<F>(f, n, n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) left[i].set_block(0, j, a.left_mult(j).col(i));
  return std::make_shared<const Algebra<F>>(f, a.labels(), std::move(left), a.idempotents(), a.vertex_names(),
                                            "derived:opposite");
}

namespace detail {

inline void check_subset(std::span<const std::size_t> subset, std::size_t nv) {
  std::set<std::size_t> seen;
  for (auto i : subset) {
    if (i >= nv) throw Error("idempotent index " + std::to_string(i) + " is not among the distinguished idempotents");
    if (!seen.insert(i).second) throw Error("idempotent subset has duplicates");
  }
}

template <Field F>
Matrix<F> sum_of_idempotents(const Algebra<F>& a, std::span<const std::size_t> subset) {
  Matrix<F> e(a.field(), a.dim(), 1);
  for (auto i : subset) e = e + a.idempotent(i);
  return e;
}

/// Greedy selection of independent vectors in the given order.
template <Field F>
std::vector<std::size_t> independent_prefix(const F& f, std::size_t rows, const std::vector<Matrix<F>>& vecs) {
  std::vector<std::size_t> chosen;
  if (vecs.empty()) return chosen;
  const auto r = rref(hstack<F>(f, rows, vecs), false);
  return r.pivots;
}

}  // namespace detail

/// Corner algebra eAe for e the sum of the given distinguished idempotents.
template <Field F>
struct CornerAlgebra {
  AlgebraPtr<F> algebra;
  Matrix<F> inclusion;  // dim A x dim eAe
  std::vector<std::size_t> vertices;
};

template <Field F>
CornerAlgebra<F> corner(const Algebra<F>& a, std::vector<std::size_t> subset) {
  detail::check_subset(subset, a.num_vertices());
  std::sort(subset.begin(), subset.end());
  const F& f = a.field();
  const Matrix<F> e = detail::sum_of_idempotents(a, subset);
  const Matrix<F> proj = a.left_mult_of(e) * a.right_mult_of(e);
  std::vector<Matrix<F>> vecs;
  for (std::size_t k = 0; k < a.dim(); ++k) vecs.push_back(proj.col(k));
  const auto chosen = detail::independent_prefix(f, a.dim(), vecs);
  Matrix<F> inc(f, a.dim(), chosen.size());
  std::vector<std::string> labels;
  for (std::size_t c = 0; c < chosen.size(); ++c) {
    inc.set_block(0, c, vecs[chosen[c]]);
    labels.push_back(a.label(chosen[c]));
  }
  const std::size_t m = chosen.size();
  const Matrix<F> linv = m ? left_inverse(inc) : Matrix<F>(f, 0, a.dim());
  std::vector<Matrix<F>> left(m, Matrix<F>(f, m, m));
  for (std::size_t i = 0; i < m; ++i) left[i] = linv * a.left_mult_of(inc.col(i)) * inc;
  std::vector<Matrix<F>> idems;
  std::vector<std::string> names;
  for (auto v : subset) {
    idems.push_back(linv * a.idempotent(v));
    names.push_back(a.vertex_name(v));
  }
  return {std::make_shared<const Algebra<F>>(f, std::move(labels), std::move(left), std::move(idems),
                                             std::move(names), "derived:corner"),
          inc, subset};
}

/// A / AeA together with the projection, a section on basis vectors, and the ideal.
template <Field F>
struct QuotientAlgebra {
  AlgebraPtr<F> algebra;
  Matrix<F> projection;  // dim A/J x dim A
  Matrix<F> section;     // dim A x dim A/J, picks standard basis vectors of A
  Matrix<F> ideal;       // basis columns of J = AeA
  std::vector<std::size_t> surviving_vertices;
};

template <Field F>
Matrix<F> two_sided_ideal(const Algebra<F>& a, const Matrix<F>& x) {
  const F& f = a.field();
  std::vector<Matrix<F>> vecs;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const Matrix<F> left = a.left_mult(i) * x;
    for (std::size_t j = 0; j < a.dim(); ++j) vecs.push_back(a.right_mult_of(a.basis_vector(j)) * left);
  }
  if (vecs.empty()) return Matrix<F>(f, a.dim(), 0);
  return column_space(hstack<F>(f, a.dim(), vecs));
}

template <Field F>
QuotientAlgebra<F> quotient_by_idempotents(const Algebra<F>& a, std::vector<std::size_t> subset) {
  detail::check_subset(subset, a.num_vertices());
  std::sort(subset.begin(), subset.end());
  const F& f = a.field();
  const std::size_t n = a.dim();
  Matrix<F> ideal(f, n, 0);
  if (!subset.empty()) ideal = two_sided_ideal(a, detail::sum_of_idempotents(a, subset));

  // J * J == J
  std::vector<Matrix<F>> prods;
  for (std::size_t i = 0; i < ideal.cols(); ++i)
    for (std::size_t j = 0; j < ideal.cols(); ++j) prods.push_back(a.product(ideal.col(i), ideal.col(j)));
  const std::size_t sq_rank = prods.empty() ? 0 : rank(hstack<F>(f, n, prods));
  if (sq_rank != ideal.cols()) throw Error("ideal AeA is not idempotent");

  const auto comp = complement_indices(ideal);
  const std::size_t m = comp.size();
  Matrix<F> section(f, n, m);
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < m; ++k) {
    section(comp[k], k) = f.one();
    labels.push_back(a.label(comp[k]));
  }
  // Coordinates with respect to [ideal | section]; the projection keeps the section part.
  Matrix<F> full(f, n, ideal.cols() + m);
  full.set_block(0, 0, ideal);
  full.set_block(0, ideal.cols(), section);
  const Matrix<F> coords = n ? *inverse(full) : Matrix<F>(f, 0, 0);
  const Matrix<F> projection = coords.block(ideal.cols(), 0, m, n);

  std::vector<Matrix<F>> left(m, Matrix<F>(f, m, m));
  for (std::size_t i = 0; i < m; ++i) left[i] = projection * a.left_mult(comp[i]) * section;
  std::vector<Matrix<F>> idems;
  std::vector<std::string> names;
  std::vector<std::size_t> surviving;
  for (std::size_t v = 0; v < a.num_vertices(); ++v) {
    if (std::find(subset.begin(), subset.end(), v) != subset.end()) continue;
    idems.push_back(projection * a.idempotent(v));
    names.push_back(a.vertex_name(v));
    surviving.push_back(v);
  }
  return {std::make_shared<const Algebra<F>>(f, std::move(labels), std::move(left), std::move(idems),
                                             std::move(names), "derived:quotient"),
          projection, section, ideal, surviving};
}

/// A tensor_k B; basis pair (i, j) has index i * dim B + j, idempotent pair (u, v) index u * nB + v.
template <Field F>
AlgebraPtr<F> tensor(const Algebra<F>& a, const Algebra<F>& b) {
  if (!(a.field() == b.field())) throw Error("tensor product of algebras over different fields");
  const F& f = a.field();
  std::vector<std::string> labels;
  std::vector<Matrix<F>> left;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) {
      labels.push_back(a.label(i) + "|" + b.label(j));
      left.push_back(kronecker(a.left_mult(i), b.left_mult(j)));
    }
  std::vector<Matrix<F>> idems;
  std::vector<std::string> names;
  for (std::size_t u = 0; u < a.num_vertices(); ++u)
    for (std::size_t v = 0; v < b.num_vertices(); ++v) {
      idems.push_back(kronecker(a.idempotent(u), b.idempotent(v)));
      names.push_back(a.vertex_name(u) + "|" + b.vertex_name(v));
    }
  return std::make_shared<const Algebra<F>>(f, std::move(labels), std::move(left), std::move(idems), std::move(names),
                                            "tensor");
}

}  // namespace silting
