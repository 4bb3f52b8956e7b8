#pragma once

#include "silting/bimodule.hpp"
#include "silting/decompose.hpp"

#include <map>
#include <mutex>

namespace silting {

/// Cached opposite algebra; opposite of the opposite compares equal to the original.
template <Field F>
AlgebraPtr<F> opposite_of(const AlgebraPtr<F>& a) {
  static std::mutex mu;
  static std::map<std::uint64_t, AlgebraPtr<F>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(a->hash());
  if (it != cache.end()) return it->second;
  auto op = opposite(*a);
  cache.emplace(a->hash(), op);
  cache.emplace(op->hash(), a);
  return op;
}

/// P(v) = A e_v as a submodule of the regular module; basis_in_algebra has the basis as columns of A.
template <Field F>
struct IndecomposableProjective {
  Module<F> module;
  std::size_t vertex = 0;
  Matrix<F> basis_in_algebra;
  Matrix<F> generator;  // coordinates of e_v
};

template <Field F>
std::vector<IndecomposableProjective<F>> indecomposable_projectives(const AlgebraPtr<F>& alg) {
  std::vector<IndecomposableProjective<F>> out;
  const auto reg = Module<F>::regular(alg);
  for (std::size_t v = 0; v < alg->num_vertices(); ++v) {
    auto sub = submodule(reg, alg->right_mult_of(alg->idempotent(v)));
    const Matrix<F> gen = left_inverse(sub.matrix) * alg->idempotent(v);
    out.push_back({sub.source, v, sub.matrix, gen});
  }
  return out;
}

/// Simple module at a vertex.
template <Field F>
Module<F> simple_module(const AlgebraPtr<F>& alg, std::size_t v) {
  std::vector<Matrix<F>> acts;
  for (std::size_t i = 0; i < alg->dim(); ++i) {
    Matrix<F> a(alg->field(), 1, 1);
    a(0, 0) = alg->idempotent(v)(i, 0);
    acts.push_back(a);
  }
  return Module<F>::trusted(alg, std::move(acts));
}

/// rad m = J m, spanned by arrow images.
template <Field F>
Matrix<F> radical_of(const Module<F>& m) {
  const auto& alg = m.algebra();
  std::vector<Matrix<F>> imgs;
  const auto& gens = m.generator_actions();
  for (std::size_t a = alg.num_vertices(); a < gens.size(); ++a) imgs.push_back(gens[a]);
  if (imgs.empty() || m.dim() == 0) return Matrix<F>(m.field(), m.dim(), 0);
  return column_space(hstack<F>(m.field(), m.dim(), imgs));
}

/// dim e_v (m / rad m) for each vertex.
template <Field F>
std::vector<std::size_t> top_dimension_vector(const Module<F>& m) {
  const Matrix<F> rad = radical_of(m);
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < m.algebra().num_vertices(); ++v) {
    const Matrix<F>& e = m.idempotent_action(v);
    const std::size_t ev = rank(e);
    const std::size_t erad = rad.cols() ? rank(e * rad) : 0;
    out.push_back(ev - erad);
  }
  return out;
}

/// Direct sum of indecomposable projectives in a fixed vertex order.
template <Field F>
struct ProjectiveModule {
  Module<F> module;
  std::vector<std::size_t> vertices;
  std::vector<std::size_t> offsets;
  std::vector<Matrix<F>> summand_bases;  // P(v) basis in A, per summand

  std::size_t count() const { return vertices.size(); }
};

template <Field F>
ProjectiveModule<F> projective_sum(const AlgebraPtr<F>& alg, const std::vector<std::size_t>& vertices) {
  static thread_local std::map<std::uint64_t, std::vector<IndecomposableProjective<F>>> cache;
  auto it = cache.find(alg->hash());
  if (it == cache.end()) it = cache.emplace(alg->hash(), indecomposable_projectives(alg)).first;
  const auto& ps = it->second;
  ProjectiveModule<F> out;
  std::vector<Module<F>> parts;
  std::size_t off = 0;
  for (auto v : vertices) {
    if (v >= ps.size()) throw Error("vertex index out of range");
    parts.push_back(ps[v].module);
    out.vertices.push_back(v);
    out.offsets.push_back(off);
    out.summand_bases.push_back(ps[v].basis_in_algebra);
    off += ps[v].module.dim();
  }
  out.module = sum_of(alg, parts);
  return out;
}

template <Field F>
bool is_projective(const Module<F>& m) {
  const auto top = top_dimension_vector(m);
  const auto ps = indecomposable_projectives(m.algebra_ptr());
  std::size_t total = 0;
  for (std::size_t v = 0; v < top.size(); ++v) total += top[v] * ps[v].module.dim();
  return total == m.dim();
}

/// Map from a projective sum determined by the images of its generators (columns of `images`).
template <Field F>
Matrix<F> map_from_generators(const ProjectiveModule<F>& p, const Module<F>& target, const Matrix<F>& images) {
  Matrix<F> out(target.field(), target.dim(), p.module.dim());
  for (std::size_t k = 0; k < p.count(); ++k) {
    const Matrix<F>& basis = p.summand_bases[k];
    const Matrix<F> x = images.col(k);
    for (std::size_t j = 0; j < basis.cols(); ++j) out.set_block(0, p.offsets[k] + j, target.action_of(basis.col(j)) * x);
  }
  return out;
}

/// Algebra element a_k with v = sum_k a_k g_k for a vector v of a projective sum.
template <Field F>
std::vector<Matrix<F>> generator_coefficients(const ProjectiveModule<F>& p, const Matrix<F>& v) {
  std::vector<Matrix<F>> out;
  for (std::size_t k = 0; k < p.count(); ++k) {
    const Matrix<F>& basis = p.summand_bases[k];
    out.push_back(basis * v.block(p.offsets[k], 0, basis.cols(), 1));
  }
  return out;
}

/// Hom(P, X) in coordinates: one block per summand, the block being a basis of e_v X.
template <Field F>
struct ProjectiveHom {
  std::vector<Matrix<F>> blocks;  // basis of e_{v_k} X
  std::vector<std::size_t> offsets;
  std::size_t dim = 0;
};

template <Field F>
ProjectiveHom<F> projective_hom(const ProjectiveModule<F>& p, const Module<F>& x) {
  ProjectiveHom<F> h;
  for (auto v : p.vertices) {
    const Matrix<F>& e = x.idempotent_action(v);
    h.blocks.push_back(x.dim() ? column_space(e) : Matrix<F>(x.field(), 0, 0));
    h.offsets.push_back(h.dim);
    h.dim += h.blocks.back().cols();
  }
  return h;
}

/// Coordinates of the generator of summand l in the projective sum.
template <Field F>
Matrix<F> generator_in_sum(const ProjectiveModule<F>& p, std::size_t l) {
  const auto& alg = p.module.algebra();
  const Matrix<F>& basis = p.summand_bases[l];
  const Matrix<F> local = left_inverse(basis) * alg.idempotent(p.vertices[l]);
  Matrix<F> out(alg.field(), p.module.dim(), 1);
  out.set_block(p.offsets[l], 0, local);
  return out;
}

/// Matrix of Hom(s, X): Hom(P0, X) -> Hom(P1, X) for s: P1 -> P0, in projective_hom coordinates.
template <Field F>
Matrix<F> induced_on_projective_hom(const ProjectiveModule<F>& p1, const ProjectiveModule<F>& p0, const Matrix<F>& s,
                                    const Module<F>& x, const ProjectiveHom<F>& h1, const ProjectiveHom<F>& h0) {
  const F& f = x.field();
  Matrix<F> out(f, h1.dim, h0.dim);
  for (std::size_t l = 0; l < p1.count(); ++l) {
    const auto coeffs = generator_coefficients(p0, s * generator_in_sum(p1, l));
    const Matrix<F>& b1 = h1.blocks[l];
    if (b1.cols() == 0) continue;
    const Matrix<F> linv = left_inverse(b1);
    for (std::size_t k = 0; k < p0.count(); ++k) {
      const Matrix<F>& b0 = h0.blocks[k];
      if (b0.cols() == 0) continue;
      out.set_block(h1.offsets[l], h0.offsets[k], linv * x.action_of(coeffs[k]) * b0);
    }
  }
  return out;
}

/// Projective cover P -> m, minimal: kernel inside rad P.
template <Field F>
struct ProjectiveCover {
  ProjectiveModule<F> projective;
  ModuleMap<F> map;
};

template <Field F>
ProjectiveCover<F> projective_cover(const Module<F>& m) {
  const F& f = m.field();
  const auto& alg = m.algebra_ptr();
  const Matrix<F> rad = radical_of(m);
  std::vector<std::size_t> verts;
  std::vector<Matrix<F>> tops;
  for (std::size_t v = 0; v < alg->num_vertices(); ++v) {
    const Matrix<F> ev = m.dim() ? column_space(m.idempotent_action(v)) : Matrix<F>(f, 0, 0);
    if (ev.cols() == 0) continue;
    const Matrix<F> erad = rad.cols() ? m.idempotent_action(v) * rad : Matrix<F>(f, m.dim(), 0);
    std::vector<Matrix<F>> cur;
    if (erad.cols()) cur.push_back(erad);
    std::size_t have = erad.cols() ? rank(erad) : 0;
    for (std::size_t c = 0; c < ev.cols(); ++c) {
      cur.push_back(ev.col(c));
      const std::size_t r = rank(hstack<F>(f, m.dim(), cur));
      if (r > have) {
        have = r;
        verts.push_back(v);
        tops.push_back(ev.col(c));
      } else {
        cur.pop_back();
      }
    }
  }
  auto p = projective_sum(alg, verts);
  const Matrix<F> images = tops.empty() ? Matrix<F>(f, m.dim(), 0) : hstack<F>(f, m.dim(), tops);
  return {p, {p.module, m, map_from_generators(p, m, images)}};
}

/// Two-term presentation P1 -> P0 -> cokernel -> 0 between projective sums.
template <Field F>
struct ProjectivePresentation {
  ProjectiveModule<F> p1;
  ProjectiveModule<F> p0;
  ModuleMap<F> map;       // P1 -> P0
  ModuleMap<F> cokernel;  // P0 -> coker
};

template <Field F>
ProjectivePresentation<F> make_presentation(const ProjectiveModule<F>& p1, const ProjectiveModule<F>& p0,
                                            const Matrix<F>& matrix) {
  ModuleMap<F> map{p1.module, p0.module, matrix};
  if (!map.is_homomorphism()) throw Error("presentation matrix is not a module homomorphism");
  auto sp = map_spaces(map);
  return {p1, p0, map, sp.cokernel};
}

/// Minimal projective presentation; the cokernel projection is the projective cover of m, composed with an
/// isomorphism so that the stored cokernel is m itself.
template <Field F>
ProjectivePresentation<F> minimal_projective_presentation(const Module<F>& m) {
  auto cover = projective_cover(m);
  auto sp = map_spaces(cover.map);
  auto kcover = projective_cover(sp.kernel.source);
  const Matrix<F> sigma = sp.kernel.matrix * kcover.map.matrix;
  return {kcover.projective, cover.projective, {kcover.projective.module, cover.projective.module, sigma}, cover.map};
}

/// 0 -> P0.
template <Field F>
ProjectivePresentation<F> presentation_from_zero(const ProjectiveModule<F>& p0) {
  auto p1 = projective_sum(p0.module.algebra_ptr(), {});
  return make_presentation(p1, p0, Matrix<F>(p0.module.field(), p0.module.dim(), 0));
}

/// Hom(sigma, X) is surjective.
template <Field F>
bool hom_presentation_surjective(const ProjectivePresentation<F>& s, const Module<F>& x) {
  const auto h1 = projective_hom(s.p1, x);
  if (h1.dim == 0) return true;
  const auto h0 = projective_hom(s.p0, x);
  return rank(induced_on_projective_hom(s.p1, s.p0, s.map.matrix, x, h1, h0)) == h1.dim;
}

/// Minimal projective resolution ... -> P2 -> P1 -> P0 -> m up to `length` maps (d_1 .. d_length).
template <Field F>
struct ProjectiveResolution {
  std::vector<ProjectiveModule<F>> terms;  // P0, P1, ...
  std::vector<Matrix<F>> differentials;    // d_i: P_i -> P_{i-1}, i >= 1 (index i - 1)
  ModuleMap<F> augmentation;
  bool complete = false;                   // terminated with a zero term
};

template <Field F>
ProjectiveResolution<F> projective_resolution(const Module<F>& m, std::size_t length) {
  ProjectiveResolution<F> res;
  auto cover = projective_cover(m);
  res.terms.push_back(cover.projective);
  res.augmentation = cover.map;
  ModuleMap<F> prev = cover.map;
  if (cover.projective.module.dim() == 0) res.complete = true;
  for (std::size_t i = 1; i <= length && !res.complete; ++i) {
    auto sp = map_spaces(prev);
    auto kc = projective_cover(sp.kernel.source);
    res.terms.push_back(kc.projective);
    res.differentials.push_back(sp.kernel.matrix * kc.map.matrix);
    prev = {kc.projective.module, prev.source, res.differentials.back()};
    if (kc.projective.module.dim() == 0) res.complete = true;
  }
  return res;
}

/// Projective dimension, or nullopt if it exceeds bound.
template <Field F>
std::optional<std::size_t> projective_dimension(const Module<F>& m, std::size_t bound) {
  if (m.dim() == 0) return 0;
  auto r = projective_resolution(m, bound + 1);
  if (!r.complete) return std::nullopt;
  // last term is zero
  std::size_t n = r.terms.size() - 1;
  return n == 0 ? 0 : n - 1;
}

/// dim Ext^i(m, n).
template <Field F>
std::size_t ext_dim(const Module<F>& m, const Module<F>& n, std::size_t i, std::size_t bound = 32) {
  require_same_algebra(m, n);
  if (i == 0) throw Error("ext_dim: degree must be positive");
  if (i > bound) throw Error("ext_dim: bound exceeded");
  auto r = projective_resolution(m, i + 1);
  if (r.terms.size() <= i) return 0;
  const auto hi = projective_hom(r.terms[i], n);
  if (hi.dim == 0) return 0;
  std::size_t ker_out = hi.dim;
  if (r.differentials.size() > i) {
    const auto hip = projective_hom(r.terms[i + 1], n);
    if (hip.dim) ker_out -= rank(induced_on_projective_hom(r.terms[i + 1], r.terms[i], r.differentials[i], n, hip, hi));
  }
  std::size_t im_in = 0;
  const auto him = projective_hom(r.terms[i - 1], n);
  if (him.dim) im_in = rank(induced_on_projective_hom(r.terms[i], r.terms[i - 1], r.differentials[i - 1], n, hi, him));
  return ker_out - im_in;
}

/// D m = Hom_k(m, k) as a module over the opposite algebra.
template <Field F>
Module<F> dual(const Module<F>& m) {
  auto op = opposite_of(m.algebra_ptr());
  std::vector<Matrix<F>> acts;
  for (const auto& a : m.actions()) acts.push_back(a.transpose());
  return Module<F>::trusted(op, std::move(acts));
}

template <Field F>
ModuleMap<F> dual(const ModuleMap<F>& g) {
  return {dual(g.target), dual(g.source), g.matrix.transpose()};
}

/// Hom_A(P, A) for a projective sum, as a module over the opposite algebra, in projective_hom coordinates.
template <Field F>
Module<F> projective_hom_to_regular(const ProjectiveModule<F>& p, const ProjectiveHom<F>& h) {
  const auto& alg = p.module.algebra_ptr();
  auto op = opposite_of(alg);
  std::vector<Matrix<F>> acts;
  for (std::size_t i = 0; i < alg->dim(); ++i) {
    const Matrix<F> r = alg->right_mult_of(alg->basis_vector(i));
    Matrix<F> act(alg->field(), h.dim, h.dim);
    for (std::size_t k = 0; k < h.blocks.size(); ++k) {
      const Matrix<F>& b = h.blocks[k];
      if (b.cols() == 0) continue;
      act.set_block(h.offsets[k], h.offsets[k], left_inverse(b) * r * b);
    }
    acts.push_back(std::move(act));
  }
  return Module<F>::trusted(op, std::move(acts));
}

/// Transpose: cokernel of Hom(sigma, A) for a minimal presentation, over the opposite algebra.
template <Field F>
Module<F> transpose(const ProjectivePresentation<F>& s) {
  const auto reg = Module<F>::regular(s.p0.module.algebra_ptr());
  const auto h1 = projective_hom(s.p1, reg);
  const auto h0 = projective_hom(s.p0, reg);
  const Module<F> hp1 = projective_hom_to_regular(s.p1, h1);
  const Module<F> hp0 = projective_hom_to_regular(s.p0, h0);
  const Matrix<F> d = induced_on_projective_hom(s.p1, s.p0, s.map.matrix, reg, h1, h0);
  ModuleMap<F> hm{hp0, hp1, d};
  return map_spaces(hm).cokernel.target;
}

/// Auslander-Reiten translate D Tr m.
template <Field F>
Module<F> ar_translate(const Module<F>& m) {
  if (m.dim() == 0) return m;
  const auto tr = transpose(minimal_projective_presentation(m));
  auto d = dual(tr);
  // the dual lives over the opposite of the opposite, which is the original algebra
  return Module<F>::trusted(m.algebra_ptr(), d.actions());
}

/// m (x)_k s over A (x) B with Kronecker actions; the algebra must be tensor(A, B) in the pair order.
template <Field F>
Module<F> tensor_over_field(const Module<F>& m, const Module<F>& s, const AlgebraPtr<F>& ab) {
  if (!(m.field() == s.field())) throw Error("tensor over field: field mismatch");
  if (ab->dim() != m.algebra().dim() * s.algebra().dim()) throw Error("tensor over field: algebra mismatch");
  std::vector<Matrix<F>> acts;
  for (std::size_t i = 0; i < m.algebra().dim(); ++i)
    for (std::size_t j = 0; j < s.algebra().dim(); ++j) acts.push_back(kronecker(m.action(i), s.action(j)));
  return Module<F>::trusted(ab, std::move(acts));
}

template <Field F>
ModuleMap<F> tensor_over_field(const ModuleMap<F>& f, const ModuleMap<F>& g, const AlgebraPtr<F>& ab) {
  return {tensor_over_field(f.source, g.source, ab), tensor_over_field(f.target, g.target, ab),
          kronecker(f.matrix, g.matrix)};
}

/// Evaluation map x^{dim Hom(x, m)} -> m.
template <Field F>
ModuleMap<F> right_add_approximation(const Module<F>& x, const Module<F>& m) {
  const auto h = hom_space(x, m);
  const Module<F> src = power(x, h.dim());
  Matrix<F> mat(m.field(), m.dim(), src.dim());
  for (std::size_t k = 0; k < h.dim(); ++k) mat.set_block(0, k * x.dim(), h.basis[k]);
  return {src, m, mat};
}

/// Evaluation map from the sum over a list of modules.
template <Field F>
ModuleMap<F> right_approximation_from(const AlgebraPtr<F>& alg, const std::vector<Module<F>>& xs, const Module<F>& m) {
  std::vector<Module<F>> parts;
  std::vector<Matrix<F>> blocks;
  for (const auto& x : xs) {
    const auto h = hom_space(x, m);
    for (const auto& b : h.basis) {
      parts.push_back(x);
      blocks.push_back(b);
    }
  }
  const Module<F> src = sum_of(alg, parts);
  const Matrix<F> mat = blocks.empty() ? Matrix<F>(m.field(), m.dim(), 0) : hstack<F>(m.field(), m.dim(), blocks);
  return {src, m, mat};
}

}  // namespace silting
