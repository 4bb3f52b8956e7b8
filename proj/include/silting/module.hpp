#pragma once

#include "silting/algebra.hpp"

#include <string>
#include <vector>

namespace silting {

/// Raised by validate_module; carries every violated identity.
class ModuleValidationError : public Error {
 public:
  explicit ModuleValidationError(std::vector<std::string> violations)
      : Error("module axioms violated: " + join(violations)), violations_(std::move(violations)) {}
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size() && i < 5; ++i) s += (i ? "; " : "") + v[i];
    if (v.size() > 5) s += "; ...";
    return s;
  }
  std::vector<std::string> violations_;
};

/// Finite-dimensional left module: one action matrix per algebra basis element.
template <Field F>
class Module {
 public:
  Module() = default;

  /// Checks structure constants and the unit; throws ModuleValidationError listing violations.
  static Module validated(AlgebraPtr<F> alg, std::vector<Matrix<F>> actions) {
    Module m(std::move(alg), std::move(actions));
    auto v = m.violations();
    if (!v.empty()) throw ModuleValidationError(std::move(v));
    return m;
  }
  /// For actions produced by constructions that are correct by design.
  static Module trusted(AlgebraPtr<F> alg, std::vector<Matrix<F>> actions) {
    return Module(std::move(alg), std::move(actions));
  }
  static Module zero(AlgebraPtr<F> alg) {
    std::vector<Matrix<F>> acts(alg->dim(), Matrix<F>(alg->field(), 0, 0));
    return Module(std::move(alg), std::move(acts));
  }
  /// A acting on itself by left multiplication.
  static Module regular(AlgebraPtr<F> alg) {
    std::vector<Matrix<F>> acts;
    for (std::size_t i = 0; i < alg->dim(); ++i) acts.push_back(alg->left_mult(i));
    return Module(std::move(alg), std::move(acts));
  }

  const AlgebraPtr<F>& algebra_ptr() const { return alg_; }
  const Algebra<F>& algebra() const { return *alg_; }
  const F& field() const { return alg_->field(); }
  std::size_t dim() const { return dim_; }
  const Matrix<F>& action(std::size_t i) const { return actions_[i]; }
  const std::vector<Matrix<F>>& actions() const { return actions_; }
  Matrix<F> action_of(const Matrix<F>& x) const {
    Matrix<F> r(field(), dim_, dim_);
    for (std::size_t i = 0; i < actions_.size(); ++i) r.add_scaled(x(i, 0), actions_[i]);
    return r;
  }
  /// Actions of algebra generators (idempotents, then arrows).
  const std::vector<Matrix<F>>& generator_actions() const { return gen_actions_; }
  /// Action of the idempotent at vertex v.
  const Matrix<F>& idempotent_action(std::size_t v) const { return gen_actions_[v]; }
  /// dim e_v M for each vertex.
  std::vector<std::size_t> dimension_vector() const {
    std::vector<std::size_t> d;
    for (std::size_t v = 0; v < alg_->num_vertices(); ++v) d.push_back(rank(gen_actions_[v]));
    return d;
  }

  std::vector<std::string> violations() const {
    std::vector<std::string> out;
    const auto& a = *alg_;
    if (actions_.size() != a.dim()) {
      out.push_back("expected " + std::to_string(a.dim()) + " action matrices, got " +
                    std::to_string(actions_.size()));
      return out;
    }
    for (std::size_t i = 0; i < actions_.size(); ++i)
      if (actions_[i].rows() != dim_ || actions_[i].cols() != dim_)
        out.push_back("action of " + a.label(i) + " is not " + std::to_string(dim_) + "x" + std::to_string(dim_));
    if (!out.empty()) return out;
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (std::size_t j = 0; j < a.dim(); ++j)
        if (!(actions_[i] * actions_[j] == action_of(a.structure_constant(i, j))))
          out.push_back("rho(" + a.label(i) + ")rho(" + a.label(j) + ") != rho(" + a.label(i) + "*" + a.label(j) +
                        ")");
    if (!(action_of(a.unit()) == Matrix<F>::identity(field(), dim_))) out.push_back("unit does not act as identity");
    return out;
  }

 private:
  Module(AlgebraPtr<F> alg, std::vector<Matrix<F>> actions) : alg_(std::move(alg)), actions_(std::move(actions)) {
    dim_ = actions_.empty() ? 0 : actions_.front().rows();
    if (actions_.size() == alg_->dim())
      for (const auto& g : alg_->generators()) gen_actions_.push_back(action_of(g));
  }

  AlgebraPtr<F> alg_;
  std::size_t dim_ = 0;
  std::vector<Matrix<F>> actions_;
  std::vector<Matrix<F>> gen_actions_;
};

template <Field F>
void require_same_algebra(const Module<F>& a, const Module<F>& b) {
  if (!same_algebra(a.algebra(), b.algebra())) throw Error("modules over different algebras");
}

/// Module homomorphism; matrix is target.dim() x source.dim().
template <Field F>
struct ModuleMap {
  Module<F> source;
  Module<F> target;
  Matrix<F> matrix;

  bool is_homomorphism() const {
    const auto& gs = source.generator_actions();
    const auto& gt = target.generator_actions();
    for (std::size_t g = 0; g < gs.size(); ++g)
      if (!(matrix * gs[g] == gt[g] * matrix)) return false;
    return true;
  }
  bool is_surjective() const { return rank(matrix) == target.dim(); }
  bool is_injective() const { return rank(matrix) == source.dim(); }
  bool is_zero() const { return matrix.is_zero(); }

  static ModuleMap identity(const Module<F>& m) { return {m, m, Matrix<F>::identity(m.field(), m.dim())}; }
  static ModuleMap zero(const Module<F>& s, const Module<F>& t) { return {s, t, Matrix<F>(s.field(), t.dim(), s.dim())}; }
};

/// g after f.
template <Field F>
ModuleMap<F> compose(const ModuleMap<F>& g, const ModuleMap<F>& f) {
  if (g.source.dim() != f.target.dim()) throw Error("compose: dimension mismatch");
  return {f.source, g.target, g.matrix * f.matrix};
}

/// Basis of Hom_A(source, target); coordinates of a homomorphism are read off at free positions.
template <Field F>
struct HomSpace {
  Module<F> source;
  Module<F> target;
  std::vector<Matrix<F>> basis;
  Kernel<F> solution;

  std::size_t dim() const { return basis.size(); }
  ModuleMap<F> map(std::size_t k) const { return {source, target, basis[k]}; }
  Matrix<F> coordinates(const Matrix<F>& hom) const { return solution.coordinates(hom.vectorized()); }
};

template <Field F>
HomSpace<F> hom_space(const Module<F>& m, const Module<F>& n) {
  require_same_algebra(m, n);
  const F& f = m.field();
  const std::size_t dm = m.dim(), dn = n.dim();
  const std::size_t unknowns = dm * dn;
  const auto& gm = m.generator_actions();
  const auto& gn = n.generator_actions();
  std::vector<Matrix<F>> blocks;
  const Matrix<F> im = Matrix<F>::identity(f, dm), in = Matrix<F>::identity(f, dn);
  for (std::size_t g = 0; g < gm.size(); ++g) blocks.push_back(kronecker(gn[g], im) - kronecker(in, gm[g].transpose()));
  Matrix<F> system = blocks.empty() ? Matrix<F>(f, 0, unknowns) : vstack<F>(f, unknowns, blocks);
  HomSpace<F> h{m, n, {}, kernel(system)};
  for (std::size_t k = 0; k < h.solution.dim(); ++k) h.basis.push_back(h.solution.basis.col(k).reshaped(dn, dm));
  return h;
}

/// Matrix of Hom(X, g): Hom(X, Y) -> Hom(X, Z), f -> g f.
template <Field F>
Matrix<F> hom_post(const ModuleMap<F>& g, const HomSpace<F>& from, const HomSpace<F>& to) {
  Matrix<F> r(g.matrix.field(), to.dim(), from.dim());
  for (std::size_t k = 0; k < from.dim(); ++k) r.set_block(0, k, to.coordinates(g.matrix * from.basis[k]));
  return r;
}

/// Matrix of Hom(g, Z): Hom(Y, Z) -> Hom(X, Z), f -> f g.
template <Field F>
Matrix<F> hom_pre(const ModuleMap<F>& g, const HomSpace<F>& from, const HomSpace<F>& to) {
  Matrix<F> r(g.matrix.field(), to.dim(), from.dim());
  for (std::size_t k = 0; k < from.dim(); ++k) r.set_block(0, k, to.coordinates(from.basis[k] * g.matrix));
  return r;
}

/// Hom(g, Z) is surjective.
template <Field F>
bool hom_pre_surjective(const ModuleMap<F>& g, const Module<F>& z) {
  const auto from = hom_space(g.target, z);
  const auto to = hom_space(g.source, z);
  if (to.dim() == 0) return true;
  return rank(hom_pre(g, from, to)) == to.dim();
}

/// Hom(X, g) is surjective.
template <Field F>
bool hom_post_surjective(const ModuleMap<F>& g, const Module<F>& x) {
  const auto from = hom_space(x, g.source);
  const auto to = hom_space(x, g.target);
  if (to.dim() == 0) return true;
  return rank(hom_post(g, from, to)) == to.dim();
}

/// Submodule spanned by the (invariant) columns of `basis`, with its inclusion.
template <Field F>
ModuleMap<F> submodule(const Module<F>& m, const Matrix<F>& span) {
  const F& f = m.field();
  const Matrix<F> basis = span.cols() ? column_space(span) : Matrix<F>(f, m.dim(), 0);
  const std::size_t k = basis.cols();
  std::vector<Matrix<F>> acts;
  if (k == 0) {
    acts.assign(m.algebra().dim(), Matrix<F>(f, 0, 0));
  } else {
    const Matrix<F> linv = left_inverse(basis);
    for (const auto& a : m.actions()) acts.push_back(linv * a * basis);
  }
  return {Module<F>::trusted(m.algebra_ptr(), std::move(acts)), m, basis};
}

/// Quotient by the (invariant) column span, with the projection.
template <Field F>
ModuleMap<F> quotient(const Module<F>& m, const Matrix<F>& span) {
  const F& f = m.field();
  const std::size_t n = m.dim();
  const Matrix<F> basis = span.cols() ? column_space(span) : Matrix<F>(f, n, 0);
  const auto comp = complement_indices(basis);
  Matrix<F> full(f, n, n);
  full.set_block(0, 0, basis);
  Matrix<F> section(f, n, comp.size());
  for (std::size_t k = 0; k < comp.size(); ++k) section(comp[k], k) = f.one();
  full.set_block(0, basis.cols(), section);
  const Matrix<F> coords = n ? *inverse(full) : Matrix<F>(f, 0, 0);
  const Matrix<F> proj = coords.block(basis.cols(), 0, comp.size(), n);
  std::vector<Matrix<F>> acts;
  for (const auto& a : m.actions()) acts.push_back(proj * a * section);
  return {m, Module<F>::trusted(m.algebra_ptr(), std::move(acts)), proj};
}

template <Field F>
struct MapSpaces {
  ModuleMap<F> kernel;     // inclusion ker f -> source
  ModuleMap<F> image;      // inclusion im f -> target
  ModuleMap<F> cokernel;   // projection target -> coker f
  ModuleMap<F> coimage;    // source -> im f
};

template <Field F>
MapSpaces<F> map_spaces(const ModuleMap<F>& f) {
  const auto ker = kernel(f.matrix);
  MapSpaces<F> out;
  out.kernel = submodule(f.source, ker.basis);
  out.image = submodule(f.target, f.matrix);
  out.cokernel = quotient(f.target, f.matrix);
  const Matrix<F> linv = out.image.matrix.cols() ? left_inverse(out.image.matrix)
                                                 : Matrix<F>(f.matrix.field(), 0, f.target.dim());
  out.coimage = {f.source, out.image.source, linv * f.matrix};
  return out;
}

template <Field F>
struct DirectSum {
  Module<F> sum;
  std::vector<ModuleMap<F>> injections;
  std::vector<ModuleMap<F>> projections;
};

template <Field F>
DirectSum<F> direct_sum(const AlgebraPtr<F>& alg, const std::vector<Module<F>>& parts) {
  const F& f = alg->field();
  for (const auto& p : parts)
    if (!same_algebra(p.algebra(), *alg)) throw Error("direct_sum: modules over different algebras");
  std::vector<Matrix<F>> acts;
  for (std::size_t i = 0; i < alg->dim(); ++i) {
    std::vector<Matrix<F>> blocks;
    for (const auto& p : parts) blocks.push_back(p.action(i));
    acts.push_back(block_diagonal<F>(f, blocks));
  }
  std::size_t total = 0;
  for (const auto& p : parts) total += p.dim();
  DirectSum<F> out{Module<F>::trusted(alg, std::move(acts)), {}, {}};
  std::size_t off = 0;
  for (const auto& p : parts) {
    Matrix<F> inj(f, total, p.dim()), proj(f, p.dim(), total);
    for (std::size_t k = 0; k < p.dim(); ++k) {
      inj(off + k, k) = f.one();
      proj(k, off + k) = f.one();
    }
    out.injections.push_back({p, out.sum, inj});
    out.projections.push_back({out.sum, p, proj});
    off += p.dim();
  }
  return out;
}

template <Field F>
Module<F> sum_of(const AlgebraPtr<F>& alg, const std::vector<Module<F>>& parts) {
  return direct_sum(alg, parts).sum;
}

template <Field F>
Module<F> power(const Module<F>& m, std::size_t k) {
  return sum_of(m.algebra_ptr(), std::vector<Module<F>>(k, m));
}

/// Block-diagonal map between direct sums.
template <Field F>
ModuleMap<F> direct_sum_map(const AlgebraPtr<F>& alg, const std::vector<ModuleMap<F>>& maps) {
  std::vector<Module<F>> src, tgt;
  std::vector<Matrix<F>> blocks;
  for (const auto& m : maps) {
    src.push_back(m.source);
    tgt.push_back(m.target);
    blocks.push_back(m.matrix);
  }
  return {sum_of(alg, src), sum_of(alg, tgt), block_diagonal<F>(alg->field(), blocks)};
}

/// Module transported along an invertible change of basis: new action = basis^-1 * action * basis.
template <Field F>
ModuleMap<F> change_basis(const Module<F>& m, const Matrix<F>& basis) {
  const auto inv = inverse(basis);
  if (!inv) throw Error("change_basis: matrix is singular");
  std::vector<Matrix<F>> acts;
  for (const auto& a : m.actions()) acts.push_back(*inv * a * basis);
  // map from the new module to m
  return {Module<F>::trusted(m.algebra_ptr(), std::move(acts)), m, basis};
}

/// Module over the same algebra with actions of an element expressed in another basis; restriction
/// of scalars along an algebra map given on basis elements as columns of `alg_map` (dim source alg x dim target).
template <Field F>
Module<F> restrict_scalars(const Module<F>& m, const AlgebraPtr<F>& new_alg, const Matrix<F>& alg_map) {
  std::vector<Matrix<F>> acts;
  for (std::size_t i = 0; i < new_alg->dim(); ++i) acts.push_back(m.action_of(alg_map.col(i)));
  return Module<F>::trusted(new_alg, std::move(acts));
}

}  // namespace silting
