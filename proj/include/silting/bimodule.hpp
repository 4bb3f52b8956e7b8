#pragma once

#include "silting/derive.hpp"
#include "silting/module.hpp"

namespace silting {

/// (A, B)-bimodule. left_action[i] is n -> a_i n, right_action[j] is n -> n b_j.
template <Field F>
struct Bimodule {
  AlgebraPtr<F> left;
  AlgebraPtr<F> right;
  std::size_t dim = 0;
  std::vector<Matrix<F>> left_action;
  std::vector<Matrix<F>> right_action;

  Matrix<F> right_action_of(const Matrix<F>& b) const {
    Matrix<F> r(left->field(), dim, dim);
    for (std::size_t j = 0; j < right_action.size(); ++j) r.add_scaled(b(j, 0), right_action[j]);
    return r;
  }

  std::vector<std::string> violations() const {
    std::vector<std::string> out;
    if (!(left->field() == right->field())) {
      out.push_back("left and right algebras have different fields");
      return out;
    }
    if (left_action.size() != left->dim() || right_action.size() != right->dim()) {
      out.push_back("wrong number of action matrices");
      return out;
    }
    for (const auto& m : left_action)
      if (m.rows() != dim || m.cols() != dim) out.push_back("left action matrix has wrong shape");
    for (const auto& m : right_action)
      if (m.rows() != dim || m.cols() != dim) out.push_back("right action matrix has wrong shape");
    if (!out.empty()) return out;
    const auto lv = as_left_module().violations();
    out.insert(out.end(), lv.begin(), lv.end());
    const auto& b = *right;
    for (std::size_t i = 0; i < b.dim(); ++i)
      for (std::size_t j = 0; j < b.dim(); ++j)
        if (!(right_action[j] * right_action[i] == right_action_of(b.structure_constant(i, j))))
          out.push_back("right action fails at (" + b.label(i) + ", " + b.label(j) + ")");
    if (!(right_action_of(b.unit()) == Matrix<F>::identity(b.field(), dim))) out.push_back("right unit not identity");
    for (std::size_t i = 0; i < left_action.size(); ++i)
      for (std::size_t j = 0; j < right_action.size(); ++j)
        if (!(left_action[i] * right_action[j] == right_action[j] * left_action[i]))
          out.push_back("actions of " + left->label(i) + " and " + b.label(j) + " do not commute");
    return out;
  }

  void validate() const {
    auto v = violations();
    if (!v.empty()) throw ModuleValidationError(std::move(v));
  }

  Module<F> as_left_module() const { return Module<F>::trusted(left, left_action); }
  /// N as a left module over the opposite of the right algebra (same basis labels).
  Module<F> as_right_module(const AlgebraPtr<F>& right_op) const {
    if (right_op->dim() != right->dim()) throw Error("opposite algebra does not match");
    return Module<F>::trusted(right_op, right_action);
  }
};

template <Field F>
Bimodule<F> regular_bimodule(const AlgebraPtr<F>& a) {
  Bimodule<F> n{a, a, a->dim(), {}, {}};
  for (std::size_t i = 0; i < a->dim(); ++i) {
    n.left_action.push_back(a->left_mult(i));
    n.right_action.push_back(a->right_mult_of(a->basis_vector(i)));
  }
  return n;
}

/// B as a (k, B)-bimodule, k a one-dimensional algebra acting by scalars.
template <Field F>
Bimodule<F> scalar_left_bimodule(const AlgebraPtr<F>& k, const AlgebraPtr<F>& b) {
  if (k->dim() != 1) throw Error("scalar bimodule needs a one-dimensional left algebra");
  const F& f = b->field();
  Bimodule<F> n{k, b, b->dim(), {Matrix<F>::identity(f, b->dim()).scaled(k->unit()(0, 0))}, {}};
  for (std::size_t i = 0; i < b->dim(); ++i) n.right_action.push_back(b->right_mult_of(b->basis_vector(i)));
  return n;
}

template <Field F>
Bimodule<F> zero_bimodule(const AlgebraPtr<F>& a, const AlgebraPtr<F>& b) {
  const F& f = a->field();
  return {a, b, 0, std::vector<Matrix<F>>(a->dim(), Matrix<F>(f, 0, 0)),
          std::vector<Matrix<F>>(b->dim(), Matrix<F>(f, 0, 0))};
}

/// Subspace `basis` (columns) of the regular bimodule, invariant under the given left and right
/// multiplications, as a bimodule over (left, right). The maps send algebra basis elements into A.
template <Field F>
Bimodule<F> sub_bimodule(const AlgebraPtr<F>& whole, const Matrix<F>& basis, const AlgebraPtr<F>& left,
                         const Matrix<F>& left_into_whole, const AlgebraPtr<F>& right,
                         const Matrix<F>& right_into_whole) {
  const F& f = whole->field();
  const std::size_t k = basis.cols();
  const Matrix<F> linv = k ? left_inverse(basis) : Matrix<F>(f, 0, whole->dim());
  Bimodule<F> n{left, right, k, {}, {}};
  for (std::size_t i = 0; i < left->dim(); ++i)
    n.left_action.push_back(linv * whole->left_mult_of(left_into_whole.col(i)) * basis);
  for (std::size_t j = 0; j < right->dim(); ++j)
    n.right_action.push_back(linv * whole->right_mult_of(right_into_whole.col(j)) * basis);
  return n;
}

/// N tensor_B Y as a left A-module with the projection from N tensor_k Y (basis index n * dim Y + y).
template <Field F>
struct TensorResult {
  Module<F> module;
  Matrix<F> projection;
  Matrix<F> section;
};

template <Field F>
TensorResult<F> tensor_over_algebra(const Bimodule<F>& n, const Module<F>& y) {
  if (!same_algebra(*n.right, y.algebra())) throw Error("tensor: module is not over the bimodule's right algebra");
  const F& f = y.field();
  const std::size_t dn = n.dim, dy = y.dim(), total = dn * dy;
  const Matrix<F> in = Matrix<F>::identity(f, dn), iy = Matrix<F>::identity(f, dy);
  std::vector<Matrix<F>> rel;
  for (std::size_t j = 0; j < n.right->dim(); ++j)
    rel.push_back(kronecker(n.right_action[j], iy) - kronecker(in, y.action(j)));
  std::vector<Matrix<F>> acts;
  for (std::size_t i = 0; i < n.left->dim(); ++i) acts.push_back(kronecker(n.left_action[i], iy));
  const Module<F> free = Module<F>::trusted(n.left, std::move(acts));
  const Matrix<F> span = rel.empty() ? Matrix<F>(f, total, 0) : hstack<F>(f, total, rel);
  auto q = quotient(free, span);
  const Matrix<F> sec = q.target.dim() ? right_inverse(q.matrix) : Matrix<F>(f, total, 0);
  return {q.target, q.matrix, sec};
}

/// N tensor_B g for g: Y -> Y'.
template <Field F>
ModuleMap<F> tensor_over_algebra(const Bimodule<F>& n, const ModuleMap<F>& g, const TensorResult<F>& src,
                                 const TensorResult<F>& tgt) {
  const Matrix<F> lifted = kronecker(Matrix<F>::identity(g.matrix.field(), n.dim), g.matrix);
  return {src.module, tgt.module, tgt.projection * lifted * src.section};
}

template <Field F>
ModuleMap<F> tensor_over_algebra(const Bimodule<F>& n, const ModuleMap<F>& g) {
  return tensor_over_algebra(n, g, tensor_over_algebra(n, g.source), tensor_over_algebra(n, g.target));
}

/// Hom_C(N, Y) for a (C, A)-bimodule N, as a left A-module via (a f)(n) = f(n a).
template <Field F>
struct HomResult {
  Module<F> module;
  HomSpace<F> space;
};

template <Field F>
HomResult<F> hom_over_algebra(const Bimodule<F>& n, const Module<F>& y) {
  if (!same_algebra(*n.left, y.algebra())) throw Error("hom: module is not over the bimodule's left algebra");
  const F& f = y.field();
  auto h = hom_space(n.as_left_module(), y);
  std::vector<Matrix<F>> acts;
  for (std::size_t j = 0; j < n.right->dim(); ++j) {
    Matrix<F> act(f, h.dim(), h.dim());
    for (std::size_t k = 0; k < h.dim(); ++k) act.set_block(0, k, h.coordinates(h.basis[k] * n.right_action[j]));
    acts.push_back(std::move(act));
  }
  return {Module<F>::trusted(n.right, std::move(acts)), std::move(h)};
}

template <Field F>
ModuleMap<F> hom_over_algebra(const Bimodule<F>&, const ModuleMap<F>& g, const HomResult<F>& src,
                              const HomResult<F>& tgt) {
  return {src.module, tgt.module, hom_post(g, src.space, tgt.space)};
}

template <Field F>
ModuleMap<F> hom_over_algebra(const Bimodule<F>& n, const ModuleMap<F>& g) {
  return hom_over_algebra(n, g, hom_over_algebra(n, g.source), hom_over_algebra(n, g.target));
}

/// [[A, N], [0, B]] with basis A, then N, then B; elements act on columns (x; y) of a triple.
template <Field F>
struct TriangularAlgebra {
  AlgebraPtr<F> algebra;
  Matrix<F> embed_a;  // dim Gamma x dim A
  Matrix<F> embed_n;
  Matrix<F> embed_b;
  std::vector<std::size_t> a_vertices;
  std::vector<std::size_t> b_vertices;
};

template <Field F>
TriangularAlgebra<F> triangular_algebra(const AlgebraPtr<F>& a, const AlgebraPtr<F>& b, const Bimodule<F>& n) {
  if (!(a->field() == b->field())) throw Error("triangular algebra over different fields");
  if (!same_algebra(*n.left, *a) || !same_algebra(*n.right, *b))
    throw Error("bimodule is not over the given algebras");
  n.validate();
  const F& f = a->field();
  const std::size_t da = a->dim(), dn = n.dim, db = b->dim(), total = da + dn + db;
  std::vector<std::string> labels;
  for (const auto& l : a->labels()) labels.push_back("A:" + l);
  for (std::size_t k = 0; k < dn; ++k) labels.push_back("N:" + std::to_string(k));
  for (const auto& l : b->labels()) labels.push_back("B:" + l);

  std::vector<Matrix<F>> left;
  for (std::size_t i = 0; i < da; ++i) {
    Matrix<F> l(f, total, total);
    l.set_block(0, 0, a->left_mult(i));
    l.set_block(da, da, n.left_action[i]);
    left.push_back(std::move(l));
  }
  for (std::size_t k = 0; k < dn; ++k) {
    Matrix<F> l(f, total, total);
    for (std::size_t j = 0; j < db; ++j) l.set_block(da, da + dn + j, n.right_action[j].col(k));
    left.push_back(std::move(l));
  }
  for (std::size_t i = 0; i < db; ++i) {
    Matrix<F> l(f, total, total);
    l.set_block(da + dn, da + dn, b->left_mult(i));
    left.push_back(std::move(l));
  }
  Matrix<F> ea(f, total, da), en(f, total, dn), eb(f, total, db);
  for (std::size_t i = 0; i < da; ++i) ea(i, i) = f.one();
  for (std::size_t k = 0; k < dn; ++k) en(da + k, k) = f.one();
  for (std::size_t i = 0; i < db; ++i) eb(da + dn + i, i) = f.one();
  std::vector<Matrix<F>> idems;
  std::vector<std::string> names;
  TriangularAlgebra<F> out;
  for (std::size_t v = 0; v < a->num_vertices(); ++v) {
    idems.push_back(ea * a->idempotent(v));
    names.push_back("A:" + a->vertex_name(v));
    out.a_vertices.push_back(v);
  }
  for (std::size_t v = 0; v < b->num_vertices(); ++v) {
    idems.push_back(eb * b->idempotent(v));
    names.push_back("B:" + b->vertex_name(v));
    out.b_vertices.push_back(a->num_vertices() + v);
  }
  out.algebra = std::make_shared<const Algebra<F>>(f, std::move(labels), std::move(left), std::move(idems),
                                                   std::move(names), "triangular");
  out.embed_a = std::move(ea);
  out.embed_n = std::move(en);
  out.embed_b = std::move(eb);
  return out;
}

}  // namespace silting
