#pragma once

#include "silting/module.hpp"

#include <random>

namespace silting {

/// Raised when a budgeted search ends without a certified answer.
class Undecided : public Error {
 public:
  using Error::Error;
};

struct SearchOptions {
  std::uint64_t seed = 1;
  std::size_t budget = 256;
};

namespace detail {

template <Field F>
typename F::value_type random_scalar(const F& f, std::mt19937_64& rng) {
  if (f.is_finite()) return f.element(rng() % f.size());
  return f.element(rng() % 9);
}

template <Field F>
typename F::value_type eval_poly(const F& f, const std::vector<typename F::value_type>& poly,
                                 const typename F::value_type& x) {
  typename F::value_type r = f.zero();
  for (std::size_t i = poly.size(); i-- > 0;) r = f.add(f.mul(r, x), poly[i]);
  return r;
}

inline std::vector<PrimeField::value_type> roots(const PrimeField& f, const std::vector<PrimeField::value_type>& poly) {
  std::vector<PrimeField::value_type> out;
  if (f.p > (1u << 16)) return out;
  for (std::uint32_t x = 0; x < f.p; ++x)
    if (eval_poly(f, poly, x) == 0) out.push_back(x);
  return out;
}

/// Rational roots by the rational root theorem; gives up on large coefficients.
inline std::vector<RationalField::value_type> roots(const RationalField& f,
                                                    const std::vector<RationalField::value_type>& poly) {
  using boost::multiprecision::cpp_int;
  std::vector<RationalField::value_type> out;
  cpp_int l = 1;
  for (const auto& c : poly) l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(c));
  std::vector<cpp_int> ints;
  for (const auto& c : poly) ints.push_back(boost::multiprecision::numerator(RationalField::value_type(c * l)));
  std::size_t shift = 0;
  while (shift < ints.size() && ints[shift] == 0) ++shift;
  if (shift > 0) out.push_back(0);
  if (shift + 1 >= ints.size()) return out;
  auto divisors = [](cpp_int n) {
    std::vector<cpp_int> d;
    if (n < 0) n = -n;
    if (n > cpp_int(1000000000000LL)) return d;
    for (cpp_int k = 1; k * k <= n; ++k)
      if (n % k == 0) {
        d.push_back(k);
        if (k * k != n) d.push_back(n / k);
      }
    return d;
  };
  const auto num = divisors(ints[shift]);
  const auto den = divisors(ints.back());
  for (const auto& a : num)
    for (const auto& b : den)
      for (int s : {1, -1}) {
        RationalField::value_type x(a * s, b);
        if (f.is_zero(eval_poly(f, poly, x)) && std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
      }
  return out;
}

/// Span of pairwise products of two subspaces of square matrices (given as lists).
template <Field F>
std::vector<Matrix<F>> product_span(const std::vector<Matrix<F>>& a, const std::vector<Matrix<F>>& b, std::size_t n) {
  std::vector<Matrix<F>> vecs;
  for (const auto& x : a)
    for (const auto& y : b) {
      Matrix<F> p = x * y;
      if (!p.is_zero()) vecs.push_back(p.vectorized());
    }
  std::vector<Matrix<F>> out;
  if (vecs.empty()) return out;
  const Matrix<F> basis = column_space(hstack<F>(a.front().field(), n * n, vecs));
  for (std::size_t c = 0; c < basis.cols(); ++c) out.push_back(basis.col(c).reshaped(n, n));
  return out;
}

}  // namespace detail

/// Certifies End(m) local with residue field k: every basis endomorphism has a single eigenvalue and
/// the kernel of the eigenvalue functional is a nilpotent subspace.
template <Field F>
bool certify_local(const Module<F>& m, const HomSpace<F>& end) {
  const F& f = m.field();
  const std::size_t n = m.dim();
  if (n == 0 || end.dim() == 0) return false;
  Matrix<F> lambda(f, 1, end.dim());
  for (std::size_t i = 0; i < end.dim(); ++i) {
    auto l = single_eigenvalue(end.basis[i]);
    if (!l) return false;
    lambda(0, i) = *l;
  }
  const auto idc = end.coordinates(Matrix<F>::identity(f, n));
  if (!((lambda * idc)(0, 0) == f.one())) return false;
  const auto ker = kernel(lambda);
  std::vector<Matrix<F>> rad;
  for (std::size_t k = 0; k < ker.dim(); ++k) {
    Matrix<F> x(f, n, n);
    for (std::size_t i = 0; i < end.dim(); ++i) x.add_scaled(ker.basis(i, k), end.basis[i]);
    rad.push_back(std::move(x));
  }
  std::vector<Matrix<F>> power = rad;
  for (std::size_t step = 0; step <= n && !power.empty(); ++step) power = detail::product_span(power, rad, n);
  return power.empty();
}

template <Field F>
bool is_indecomposable_certified(const Module<F>& m) {
  return certify_local(m, hom_space(m, m));
}

/// An indecomposable summand with its inclusion into and projection from the decomposed module.
template <Field F>
struct Summand {
  Module<F> module;
  Matrix<F> inclusion;
  Matrix<F> projection;
};

namespace detail {

template <Field F>
void split_recursive(const Module<F>& m, const Matrix<F>& inc, const Matrix<F>& proj, const SearchOptions& opt,
                     std::mt19937_64& rng, std::vector<Summand<F>>& out) {
  const F& f = m.field();
  const std::size_t n = m.dim();
  if (n == 0) return;
  const auto end = hom_space(m, m);
  if (certify_local(m, end)) {
    out.push_back({m, inc, proj});
    return;
  }
  const std::size_t attempts = end.dim() + opt.budget;
  for (std::size_t t = 0; t < attempts; ++t) {
    Matrix<F> psi(f, n, n);
    if (t < end.dim()) {
      psi = end.basis[t];
    } else {
      for (std::size_t i = 0; i < end.dim(); ++i) psi.add_scaled(random_scalar(f, rng), end.basis[i]);
    }
    const auto poly = minimal_polynomial(psi);
    for (const auto& lambda : roots(f, poly)) {
      const Matrix<F> shifted = psi - Matrix<F>::identity(f, n).scaled(lambda);
      const Matrix<F> fit = power(shifted, n);
      const std::size_t r = rank(fit);
      if (r == 0 || r == n) continue;
      // Fitting: m = ker fit (+) im fit
      const auto ker = kernel(fit);
      const Matrix<F> im = column_space(fit);
      Matrix<F> basis(f, n, n);
      basis.set_block(0, 0, ker.basis);
      basis.set_block(0, ker.dim(), im);
      const Matrix<F> coords = *inverse(basis);
      const Matrix<F> pk = coords.block(0, 0, ker.dim(), n), pi = coords.block(ker.dim(), 0, im.cols(), n);
      auto sub_k = submodule(m, ker.basis);
      auto sub_i = submodule(m, im);
      split_recursive(sub_k.source, inc * ker.basis, pk * proj, opt, rng, out);
      split_recursive(sub_i.source, inc * im, pi * proj, opt, rng, out);
      return;
    }
  }
  throw Undecided("decomposition undecided: no splitting endomorphism found within budget " +
                  std::to_string(opt.budget) + " for a module of dimension " + std::to_string(n));
}

}  // namespace detail

/// Indecomposable summands with splitting maps: sum_j inclusion_j * projection_j = id.
template <Field F>
std::vector<Summand<F>> split_summands(const Module<F>& m, const SearchOptions& opt = {}) {
  std::mt19937_64 rng(opt.seed);
  std::vector<Summand<F>> out;
  const auto id = Matrix<F>::identity(m.field(), m.dim());
  detail::split_recursive(m, id, id, opt, rng, out);
  return out;
}

/// Isomorphism between indecomposables: some Hom basis element is invertible iff they are isomorphic.
template <Field F>
std::optional<Matrix<F>> indecomposable_isomorphism(const Module<F>& a, const Module<F>& b) {
  if (a.dim() != b.dim() || a.dimension_vector() != b.dimension_vector()) return std::nullopt;
  if (a.dim() == 0) return Matrix<F>(a.field(), 0, 0);
  const auto h = hom_space(a, b);
  for (const auto& x : h.basis)
    if (rank(x) == a.dim()) return x;
  return std::nullopt;
}

template <Field F>
struct DecompositionPart {
  Module<F> module;
  std::size_t multiplicity = 0;
  std::vector<Matrix<F>> inclusions;   // module -> m, one per copy
  std::vector<Matrix<F>> projections;  // m -> module
};

/// Krull-Schmidt decomposition grouped into isomorphism classes in order of first appearance.
template <Field F>
std::vector<DecompositionPart<F>> decompose(const Module<F>& m, const SearchOptions& opt = {}) {
  std::vector<DecompositionPart<F>> parts;
  for (auto& s : split_summands(m, opt)) {
    bool placed = false;
    for (auto& p : parts) {
      auto iso = indecomposable_isomorphism(p.module, s.module);
      if (!iso) continue;
      // iso: rep -> s.module
      p.inclusions.push_back(s.inclusion * *iso);
      p.projections.push_back(*inverse(*iso) * s.projection);
      ++p.multiplicity;
      placed = true;
      break;
    }
    if (!placed) parts.push_back({s.module, 1, {s.inclusion}, {s.projection}});
  }
  return parts;
}

/// Isomorphism witness m -> n, or nullopt.
template <Field F>
std::optional<Matrix<F>> find_isomorphism(const Module<F>& m, const Module<F>& n, const SearchOptions& opt = {}) {
  require_same_algebra(m, n);
  if (m.dim() != n.dim() || m.dimension_vector() != n.dimension_vector()) return std::nullopt;
  if (m.dim() == 0) return Matrix<F>(m.field(), 0, 0);
  const auto h = hom_space(m, n);
  for (const auto& x : h.basis)
    if (rank(x) == m.dim()) return x;
  const auto pm = decompose(m, opt), pn = decompose(n, opt);
  if (pm.size() != pn.size()) return std::nullopt;
  Matrix<F> witness(m.field(), n.dim(), m.dim());
  std::vector<bool> used(pn.size(), false);
  for (const auto& a : pm) {
    bool matched = false;
    for (std::size_t j = 0; j < pn.size() && !matched; ++j) {
      if (used[j] || pn[j].multiplicity != a.multiplicity) continue;
      auto iso = indecomposable_isomorphism(a.module, pn[j].module);
      if (!iso) continue;
      used[j] = true;
      matched = true;
      for (std::size_t c = 0; c < a.multiplicity; ++c)
        witness = witness + pn[j].inclusions[c] * *iso * a.projections[c];
    }
    if (!matched) return std::nullopt;
  }
  return witness;
}

template <Field F>
bool is_isomorphic(const Module<F>& m, const Module<F>& n, const SearchOptions& opt = {}) {
  return find_isomorphism(m, n, opt).has_value();
}

/// Distinct indecomposable summands of m in decomposition order.
template <Field F>
std::vector<Module<F>> distinct_summands(const Module<F>& m, const SearchOptions& opt = {}) {
  std::vector<Module<F>> out;
  for (auto& p : decompose(m, opt)) out.push_back(p.module);
  return out;
}

}  // namespace silting
