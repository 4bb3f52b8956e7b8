#pragma once

#include "silting/silting.hpp"

namespace silting {

struct GorensteinReport {
  std::size_t bound = 10;
  std::optional<std::size_t> left_injective_dimension;   // of the left regular module
  std::optional<std::size_t> right_injective_dimension;  // of the right regular module
  std::optional<std::size_t> global_dimension;
  bool gorenstein = false;

  std::string verdict() const { return gorenstein ? "gorenstein" : "not_within_bound"; }
  std::size_t ext_bound() const {
    return std::max(left_injective_dimension.value_or(0), right_injective_dimension.value_or(0));
  }
};

template <Field F>
GorensteinReport gorenstein_report(const AlgebraPtr<F>& alg, std::size_t bound = 10) {
  if (bound < 1) throw Error("gorenstein report: bound must be positive");
  GorensteinReport r;
  r.bound = bound;
  // inj.dim of a module = proj.dim of its dual over the opposite algebra
  r.left_injective_dimension = projective_dimension(dual(Module<F>::regular(alg)), bound);
  r.right_injective_dimension = projective_dimension(dual(Module<F>::regular(opposite_of(alg))), bound);
  std::size_t gl = 0;
  bool finite = true;
  for (std::size_t v = 0; v < alg->num_vertices() && finite; ++v) {
    auto pd = projective_dimension(simple_module(alg, v), bound);
    if (pd) gl = std::max(gl, *pd);
    else finite = false;
  }
  if (finite) r.global_dimension = gl;
  r.gorenstein = r.left_injective_dimension && r.right_injective_dimension;
  return r;
}

struct GpTest {
  bool gorenstein_projective = false;
  std::vector<std::size_t> ext_dims;  // dim Ext^i(M, A) for i = 1..degree_bound
  std::size_t degree_bound = 0;
};

/// Ext^i(M, A) = 0 for 1 <= i <= inj.dim A; valid over Gorenstein algebras only.
template <Field F>
GpTest is_gorenstein_projective(const Module<F>& m, const GorensteinReport& report) {
  if (!report.gorenstein) throw Error("GP test requires Gorenstein certificate");
  GpTest t;
  t.degree_bound = report.ext_bound();
  const auto reg = Module<F>::regular(m.algebra_ptr());
  t.gorenstein_projective = true;
  for (std::size_t i = 1; i <= t.degree_bound; ++i) {
    t.ext_dims.push_back(m.dim() ? ext_dim(m, reg, i) : 0);
    if (t.ext_dims.back() != 0) t.gorenstein_projective = false;
  }
  return t;
}

template <Field F>
struct GpClassification {
  AlgebraPtr<F> algebra;
  std::size_t bound = 0;
  std::vector<Module<F>> modules;
  bool complete = false;
  GorensteinReport report;
};

/// Indecomposable GP modules among the candidates, followed by the indecomposable projectives not yet listed.
template <Field F>
GpClassification<F> gp_classification_from(const AlgebraPtr<F>& alg, const std::vector<Module<F>>& candidates,
                                           const GorensteinReport& report, std::size_t bound, bool complete) {
  GpClassification<F> c{alg, bound, {}, complete, report};
  for (const auto& m : candidates)
    if (is_gorenstein_projective(m, report).gorenstein_projective) c.modules.push_back(m);
  for (const auto& p : indecomposable_projectives(alg)) {
    bool seen = false;
    for (const auto& m : c.modules) seen = seen || indecomposable_isomorphism(m, p.module).has_value();
    if (!seen) c.modules.push_back(p.module);
  }
  return c;
}

template <Field F>
GpClassification<F> gp_classification(const AlgebraPtr<F>& alg, const EnumerationOptions& opt = {},
                                      std::size_t report_bound = 10) {
  const auto report = gorenstein_report(alg, report_bound);
  return gp_classification_from(alg, enumerate_indecomposables(alg, opt), report, opt.dim_bound, true);
}

namespace detail {

template <Field F>
void require_complete(const GpClassification<F>& gp) {
  if (!gp.complete) throw Error("incomplete classification: GP-relative operations need a complete GP list");
}

}  // namespace detail

/// Hom(G, g) onto for every listed G.
template <Field F>
bool is_g_epic(const ModuleMap<F>& g, const GpClassification<F>& gp) {
  for (const auto& x : gp.modules)
    if (!hom_post_surjective(g, x)) return false;
  return true;
}

template <Field F>
struct GpApproximation {
  ModuleMap<F> map;
  std::vector<std::size_t> summands;  // index into the GP list, one entry per copy
};

/// Right GP-approximation: evaluation map from the GP list, pruned copy by copy from the end while it stays G-epic.
template <Field F>
GpApproximation<F> right_gp_approximation(const Module<F>& m, const GpClassification<F>& gp) {
  detail::require_complete(gp);
  const F& f = m.field();
  std::vector<std::size_t> idx;
  std::vector<Matrix<F>> blocks;
  for (std::size_t i = 0; i < gp.modules.size(); ++i)
    for (const auto& b : hom_space(gp.modules[i], m).basis) {
      idx.push_back(i);
      blocks.push_back(b);
    }
  auto assemble = [&](const std::vector<bool>& keep) {
    std::vector<Module<F>> parts;
    std::vector<Matrix<F>> bs;
    std::vector<std::size_t> used;
    for (std::size_t k = 0; k < idx.size(); ++k)
      if (keep[k]) {
        parts.push_back(gp.modules[idx[k]]);
        bs.push_back(blocks[k]);
        used.push_back(idx[k]);
      }
    const Matrix<F> mat = bs.empty() ? Matrix<F>(f, m.dim(), 0) : hstack<F>(f, m.dim(), bs);
    return GpApproximation<F>{{sum_of(gp.algebra, parts), m, mat}, used};
  };
  std::vector<bool> keep(idx.size(), true);
  for (std::size_t k = idx.size(); k-- > 0;) {
    keep[k] = false;
    if (!is_g_epic(assemble(keep).map, gp)) keep[k] = true;
  }
  auto out = assemble(keep);
  if (!is_g_epic(out.map, gp)) throw Error("right GP-approximation is not G-epic");
  return out;
}

/// G1 -> G0 -> M -> 0 with GP terms.
template <Field F>
struct GpPresentation {
  ModuleMap<F> map;        // G1 -> G0
  ModuleMap<F> cokernel;   // G0 -> M
  std::vector<std::size_t> g1_summands;
  std::vector<std::size_t> g0_summands;
};

template <Field F>
GpPresentation<F> proper_gp_presentation(const Module<F>& m, const GpClassification<F>& gp) {
  auto a0 = right_gp_approximation(m, gp);
  auto k = map_spaces(a0.map).kernel;
  auto a1 = right_gp_approximation(k.source, gp);
  return {{a1.map.source, a0.map.source, k.matrix * a1.map.matrix}, a0.map, a1.summands, a0.summands};
}

/// Presentation 0 -> G0 with G0 given; its cokernel is the identity.
template <Field F>
GpPresentation<F> gp_presentation_from_zero(const Module<F>& g0) {
  return {{Module<F>::zero(g0.algebra_ptr()), g0, Matrix<F>(g0.field(), g0.dim(), 0)},
          ModuleMap<F>::identity(g0),
          {},
          {}};
}

template <Field F>
struct GpResolution {
  std::vector<Module<F>> terms;
  std::vector<ModuleMap<F>> differentials;  // differentials[j]: terms[j + 1] -> terms[j]
  ModuleMap<F> augmentation;
  bool complete = false;
};

template <Field F>
GpResolution<F> proper_gp_resolution(const Module<F>& m, const GpClassification<F>& gp, std::size_t length) {
  GpResolution<F> r;
  auto a = right_gp_approximation(m, gp);
  r.terms.push_back(a.map.source);
  r.augmentation = a.map;
  ModuleMap<F> prev = a.map;
  while (r.terms.size() <= length) {
    auto k = map_spaces(prev).kernel;
    if (k.source.dim() == 0) {
      r.complete = true;
      break;
    }
    auto next = right_gp_approximation(k.source, gp);
    ModuleMap<F> d{next.map.source, prev.source, k.matrix * next.map.matrix};
    r.terms.push_back(next.map.source);
    r.differentials.push_back(d);
    prev = d;
  }
  return r;
}

/// dim Gext^i(m, n) via a proper GP resolution of m.
template <Field F>
std::size_t gext_dim(const Module<F>& m, const Module<F>& n, std::size_t i, const GpClassification<F>& gp) {
  require_same_algebra(m, n);
  auto r = proper_gp_resolution(m, gp, i + 1);
  if (r.terms.size() <= i) return 0;
  const auto hi = hom_space(r.terms[i], n);
  std::size_t out = hi.dim();
  if (out == 0) return 0;
  if (r.differentials.size() > i) {
    const auto& d = r.differentials[i];  // terms[i+1] -> terms[i]
    out -= rank(hom_pre(d, hi, hom_space(r.terms[i + 1], n)));
  }
  if (i >= 1) {
    const auto& d = r.differentials[i - 1];  // terms[i] -> terms[i-1]
    out -= rank(hom_pre(d, hom_space(r.terms[i - 1], n), hi));
  }
  return out;
}

struct GExactness {
  bool g_exact = false;
  std::optional<std::size_t> witness;  // index into the GP list
  std::string failure;
};

/// X -f-> Y -g-> Z (-> 0): requires ordinary exactness (and injectivity of f if short), then tests Hom(G, -).
template <Field F>
GExactness is_g_exact(const ModuleMap<F>& f, const ModuleMap<F>& g, const GpClassification<F>& gp,
                      bool short_exact = false) {
  if (f.target.dim() != g.source.dim()) throw Error("sequence maps are not composable");
  if (!(g.matrix * f.matrix).is_zero()) throw Error("sequence is not exact: composite is nonzero");
  if (rank(f.matrix) + rank(g.matrix) != f.target.dim()) throw Error("sequence is not exact at the middle term");
  if (!g.is_surjective()) throw Error("sequence is not exact: last map is not onto");
  if (short_exact && !f.is_injective()) throw Error("sequence is not exact: first map is not injective");
  GExactness out;
  for (std::size_t i = 0; i < gp.modules.size(); ++i) {
    const auto& x = gp.modules[i];
    const auto hx = hom_space(x, f.source), hy = hom_space(x, f.target), hz = hom_space(x, g.target);
    const std::size_t rf = hx.dim() && hy.dim() ? rank(hom_post(f, hx, hy)) : 0;
    const std::size_t rg = hy.dim() && hz.dim() ? rank(hom_post(g, hy, hz)) : 0;
    if (rg != hz.dim()) {
      out.witness = i;
      out.failure = "Hom(G, last map) is not onto";
      return out;
    }
    if (hy.dim() - rg != rf) {
      out.witness = i;
      out.failure = "Hom(G, -) is not exact at the middle term";
      return out;
    }
  }
  out.g_exact = true;
  return out;
}

/// M in Gen_G T: the evaluation map from Add T is onto and G-epic (any G-epi from Add T factors through it).
template <Field F>
bool gen_g_contains(const Module<F>& t, const Module<F>& m, const GpClassification<F>& gp) {
  detail::require_complete(gp);
  if (m.dim() == 0) return true;
  const auto ev = right_add_approximation(t, m);
  return ev.is_surjective() && is_g_epic(ev, gp);
}

template <Field F>
bool d_theta_contains(const GpPresentation<F>& theta, const Module<F>& m) {
  require_same_algebra(theta.map.target, m);
  return hom_pre_surjective(theta.map, m);
}

/// Proper GP presentation of t plus the stalk G' -> 0, G' the sum of listed GP modules G with Hom(G, t) = 0.
template <Field F>
GpPresentation<F> gs_auto_presentation(const Module<F>& t, const GpClassification<F>& gp) {
  auto p = proper_gp_presentation(t, gp);
  std::vector<Module<F>> parts{p.map.source};
  std::vector<std::size_t> extra;
  for (std::size_t i = 0; i < gp.modules.size(); ++i)
    if (hom_space(gp.modules[i], t).dim() == 0) {
      parts.push_back(gp.modules[i]);
      extra.push_back(i);
    }
  if (extra.empty()) return p;
  const Module<F> g1 = sum_of(gp.algebra, parts);
  Matrix<F> mat(t.field(), p.map.target.dim(), g1.dim());
  mat.set_block(0, 0, p.map.matrix);
  auto g1s = p.g1_summands;
  g1s.insert(g1s.end(), extra.begin(), extra.end());
  return {{g1, p.map.target, mat}, p.cokernel, g1s, p.g0_summands};
}

/// Sequence p -phi-> T0 -> T_{-1} -> 0 with T0, T_{-1} in Add t.
template <Field F>
struct LeftApproximationSequence {
  bool found = false;
  ModuleMap<F> phi;
  ModuleMap<F> cokernel;
  std::vector<std::size_t> multiplicities;  // copies of each distinct summand of t in T0
  bool cokernel_in_add = false;
  bool exact_g = false;
  bool approximation_on_probes = false;
  std::optional<std::size_t> failing_probe;
  std::size_t probe_bound = 0;
};

/// Left Add(t)-approximation of p: coevaluation into the distinct summands of t, pruned copy by copy from the end.
template <Field F>
std::pair<ModuleMap<F>, std::vector<std::size_t>> left_add_approximation(const Module<F>& p,
                                                                       const std::vector<Module<F>>& summands) {
  const F& f = p.field();
  std::vector<std::size_t> idx;
  std::vector<Matrix<F>> blocks;
  for (std::size_t j = 0; j < summands.size(); ++j)
    for (const auto& b : hom_space(p, summands[j]).basis) {
      idx.push_back(j);
      blocks.push_back(b);
    }
  auto assemble = [&](const std::vector<bool>& keep) {
    std::vector<Module<F>> parts;
    std::vector<Matrix<F>> bs;
    std::vector<std::size_t> mult(summands.size(), 0);
    for (std::size_t k = 0; k < idx.size(); ++k)
      if (keep[k]) {
        parts.push_back(summands[idx[k]]);
        bs.push_back(blocks[k]);
        ++mult[idx[k]];
      }
    const Module<F> tgt = sum_of(p.algebra_ptr(), parts);
    const Matrix<F> mat = bs.empty() ? Matrix<F>(f, 0, p.dim()) : vstack<F>(f, p.dim(), bs);
    return std::make_pair(ModuleMap<F>{p, tgt, mat}, mult);
  };
  auto is_approx = [&](const ModuleMap<F>& phi) {
    for (const auto& s : summands)
      if (!hom_pre_surjective(phi, s)) return false;
    return true;
  };
  std::vector<bool> keep(idx.size(), true);
  for (std::size_t k = idx.size(); k-- > 0;) {
    keep[k] = false;
    if (!is_approx(assemble(keep).first)) keep[k] = true;
  }
  return assemble(keep);
}

/// Checks a given p -phi-> T0 against Add(t): cokernel in Add t, (G-)exactness, left D_theta-approximation on probes.
template <Field F>
LeftApproximationSequence<F> evaluate_left_sequence(const ModuleMap<F>& phi, std::vector<std::size_t> multiplicities,
                                                    const std::vector<Module<F>>& summands,
                                                    const GpPresentation<F>& theta, const GpClassification<F>& gp,
                                                    const std::vector<Module<F>>& probes, bool require_g_exact,
                                                    const SearchOptions& opt = {}) {
  LeftApproximationSequence<F> s;
  s.phi = phi;
  s.multiplicities = std::move(multiplicities);
  s.cokernel = map_spaces(phi).cokernel;
  const auto& rest = s.cokernel.target;
  s.cokernel_in_add = true;
  if (rest.dim() > 0)
    for (const auto& part : decompose(rest, opt)) {
      bool in = false;
      for (const auto& u : summands) in = in || indecomposable_isomorphism(u, part.module).has_value();
      if (!in) s.cokernel_in_add = false;
    }
  s.exact_g = !require_g_exact || is_g_exact(phi, s.cokernel, gp).g_exact;
  s.approximation_on_probes = true;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    if (!d_theta_contains(theta, probes[i])) continue;
    if (!hom_pre_surjective(phi, probes[i])) {
      s.approximation_on_probes = false;
      s.failing_probe = i;
      break;
    }
  }
  s.found = s.cokernel_in_add && s.exact_g && s.approximation_on_probes;
  return s;
}

/// Searches p -> T0 -> T_{-1} -> 0; the canonical left Add(t)-approximation decides existence, since any
/// admissible phi differs from it by a split summand 0 -> T''.
template <Field F>
LeftApproximationSequence<F> left_approximation_sequence(const Module<F>& p, const Module<F>& t,
                                                         const GpPresentation<F>& theta, const GpClassification<F>& gp,
                                                         const std::vector<Module<F>>& probes, bool require_g_exact,
                                                         const SearchOptions& opt = {}) {
  const auto summands = t.dim() ? distinct_summands(t, opt) : std::vector<Module<F>>{};
  auto [phi, mult] = left_add_approximation(p, summands);
  return evaluate_left_sequence(phi, mult, summands, theta, gp, probes, require_g_exact, opt);
}

enum class GorensteinVerdict { gorenstein_silting, partial_only, not_gorenstein_silting, undecided };

inline std::string to_string(GorensteinVerdict v) {
  switch (v) {
    case GorensteinVerdict::gorenstein_silting: return "gorenstein_silting";
    case GorensteinVerdict::partial_only: return "partial_only";
    case GorensteinVerdict::not_gorenstein_silting: return "not";
    case GorensteinVerdict::undecided: return "undecided";
  }
  return "undecided";
}

template <Field F>
struct GorensteinSiltingCertificate {
  Module<F> module;
  GpPresentation<F> presentation;
  std::string presentation_name;
  GorensteinVerdict verdict = GorensteinVerdict::undecided;
  bool in_d_theta = false;
  std::size_t probe_bound = 0;
  std::vector<ProbeRecord> probes;  // in_d_sigma records D_theta, in_gen records Gen_G
  std::optional<std::size_t> mismatch;
  std::vector<LeftApproximationSequence<F>> sequences;  // per GP-list module
  bool all_sequences_found = false;
  std::vector<std::string> notes;
};

template <Field F>
GorensteinSiltingCertificate<F> gorenstein_silting_check(const Module<F>& t, const GpPresentation<F>& theta,
                                                         const std::string& name, const GpClassification<F>& gp,
                                                         const SiltingOptions& opt = {}) {
  detail::require_complete(gp);
  GorensteinSiltingCertificate<F> c;
  c.module = t;
  c.presentation = theta;
  c.presentation_name = name;
  c.notes.push_back("D_theta is closed under coproducts: the presentation terms are finitely generated");
  c.notes.push_back("GP classification complete within dimension bound " + std::to_string(gp.bound));
  if (!is_isomorphic(theta.cokernel.target, t, opt.search))
    throw Error("presentation cokernel is not isomorphic to the module");
  try {
    c.in_d_theta = d_theta_contains(theta, t);
    const auto probes = enumerate_indecomposables(t.algebra_ptr(), opt.enumeration);
    c.probe_bound = opt.enumeration.dim_bound;
    for (std::size_t i = 0; i < probes.size(); ++i) {
      ProbeRecord r{i, probes[i].dimension_vector(), d_theta_contains(theta, probes[i]), gen_g_contains(t, probes[i], gp)};
      if (r.in_d_sigma != r.in_gen && !c.mismatch) c.mismatch = i;
      c.probes.push_back(std::move(r));
    }
    c.all_sequences_found = true;
    for (const auto& g : gp.modules) {
      c.sequences.push_back(left_approximation_sequence(g, t, theta, gp, probes, true, opt.search));
      if (!c.sequences.back().found) c.all_sequences_found = false;
    }
    if (!c.in_d_theta)
      c.verdict = GorensteinVerdict::not_gorenstein_silting;
    else if (c.mismatch)
      c.verdict = c.all_sequences_found ? GorensteinVerdict::undecided : GorensteinVerdict::partial_only;
    else
      c.verdict = c.all_sequences_found ? GorensteinVerdict::gorenstein_silting : GorensteinVerdict::undecided;
    if (c.verdict == GorensteinVerdict::undecided) c.notes.push_back("probe sweep and approximation sequences disagree");
  } catch (const Undecided& e) {
    c.verdict = GorensteinVerdict::undecided;
    c.notes.push_back(e.what());
  }
  return c;
}

template <Field F>
GorensteinSiltingCertificate<F> gorenstein_silting_check(const Module<F>& t, const GpClassification<F>& gp,
                                                         const SiltingOptions& opt = {}) {
  return gorenstein_silting_check(t, gs_auto_presentation(t, gp), "auto", gp, opt);
}

}  // namespace silting
