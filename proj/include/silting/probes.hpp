#pragma once

#include "silting/enumerate.hpp"
#include "silting/projective.hpp"

#include <iomanip>
#include <random>
#include <sstream>

namespace silting {

/// Content hash of a module: algebra hash plus action matrices, as 16 hex digits.
template <Field F>
std::string fingerprint(const Module<F>& m) {
  std::ostringstream os;
  os << m.algebra().hash() << ':' << m.dim() << ':';
  for (const auto& a : m.actions()) os << a;
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : os.str()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

template <Field F>
std::string fingerprint(const ModuleMap<F>& g) {
  std::ostringstream os;
  os << fingerprint(g.source) << fingerprint(g.target) << g.matrix;
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : os.str()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

/// Seeded source for probe generation; reduction by modulo keeps sequences identical across standard libraries.
class ProbeRng {
 public:
  explicit ProbeRng(std::uint64_t seed) : gen_(seed) {}
  std::uint64_t below(std::uint64_t n) { return n ? gen_() % n : 0; }

 private:
  std::mt19937_64 gen_;
};

template <Field F>
Matrix<F> random_matrix(const F& f, std::size_t rows, std::size_t cols, ProbeRng& rng) {
  const std::uint64_t range = f.is_finite() ? f.size() : 5;
  Matrix<F> m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = f.element(rng.below(range));
  return m;
}

template <Field F>
Matrix<F> random_invertible(const F& f, std::size_t n, ProbeRng& rng) {
  for (;;) {
    auto m = random_matrix(f, n, n, rng);
    if (inverse(m)) return m;
  }
}

/// Sum of up to max_summands modules from the pool, in a random basis.
template <Field F>
Module<F> random_module(const AlgebraPtr<F>& alg, const std::vector<Module<F>>& pool, ProbeRng& rng,
                        std::size_t max_summands = 3) {
  std::vector<Module<F>> parts;
  const std::size_t k = pool.empty() ? 0 : rng.below(max_summands + 1);
  for (std::size_t i = 0; i < k; ++i) parts.push_back(pool[rng.below(pool.size())]);
  const Module<F> sum = sum_of(alg, parts);
  if (sum.dim() == 0) return sum;
  return change_basis(sum, random_invertible(alg->field(), sum.dim(), rng)).source;
}

template <Field F>
ModuleMap<F> random_map(const Module<F>& m, const Module<F>& n, ProbeRng& rng) {
  const auto h = hom_space(m, n);
  Matrix<F> out(m.field(), n.dim(), m.dim());
  const std::uint64_t range = m.field().is_finite() ? m.field().size() : 5;
  for (const auto& b : h.basis) out.add_scaled(m.field().element(rng.below(range)), b);
  return {m, n, out};
}

/// Indecomposables up to the bound over finite fields; indecomposable projectives and simples otherwise.
template <Field F>
std::vector<Module<F>> default_probe_pool(const AlgebraPtr<F>& alg, std::size_t bound = 3) {
  if (alg->field().is_finite()) {
    EnumerationOptions o;
    o.dim_bound = bound;
    return enumerate_indecomposables(alg, o);
  }
  std::vector<Module<F>> out;
  for (const auto& p : indecomposable_projectives(alg)) out.push_back(p.module);
  for (std::size_t v = 0; v < alg->num_vertices(); ++v) out.push_back(simple_module(alg, v));
  return out;
}

}  // namespace silting
