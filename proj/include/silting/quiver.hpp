#pragma once

#include "silting/algebra.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace silting {

struct QuiverArrow {
  std::string name;
  std::string source;
  std::string target;
};

struct RelationTerm {
  std::string coeff;
  std::vector<std::string> path;  // application order: first arrow applied first
};

/// Quiver with relations. A relation is a linear combination of paths.
struct QuiverPresentation {
  FieldSpec field;
  std::vector<std::string> vertices;
  std::vector<QuiverArrow> arrows;
  std::vector<std::vector<RelationTerm>> relations;
  std::optional<std::size_t> length_bound;

  std::size_t effective_length_bound() const {
    return length_bound.value_or(2 * (vertices.size() + arrows.size()) + 2);
  }
};

namespace detail {

struct Path {
  std::size_t source = 0;
  std::size_t target = 0;
  std::vector<std::size_t> arrows;
};

}  // namespace detail

/// Path algebra modulo relations. The basis consists of the irreducible paths (normal forms with
/// respect to the order: length first, then lexicographic in arrow names); trivial paths are the
/// distinguished idempotents.
template <Field F>
AlgebraPtr<F> compile_quiver_algebra(const QuiverPresentation& q, F field) {
  using detail::Path;
  const std::size_t nv = q.vertices.size();
  if (nv == 0) throw Error("quiver has no vertices");
  std::map<std::string, std::size_t> vid, aid;
  for (std::size_t i = 0; i < nv; ++i)
    if (!vid.emplace(q.vertices[i], i).second) throw Error("duplicate vertex '" + q.vertices[i] + "'");
  std::vector<std::size_t> asrc, atgt;
  for (std::size_t i = 0; i < q.arrows.size(); ++i) {
    const auto& a = q.arrows[i];
    if (!aid.emplace(a.name, i).second) throw Error("duplicate arrow '" + a.name + "'");
    auto s = vid.find(a.source), t = vid.find(a.target);
    if (s == vid.end() || t == vid.end()) throw Error("arrow '" + a.name + "' has an undeclared endpoint");
    asrc.push_back(s->second);
    atgt.push_back(t->second);
  }
  const std::size_t bound = q.effective_length_bound();
  if (bound == 0) throw Error("length_bound must be positive");

  // All paths of length <= bound, sorted by (length, arrow names).
  std::vector<Path> paths;
  for (std::size_t v = 0; v < nv; ++v) paths.push_back(Path{v, v, {}});
  std::vector<Path> layer;
  for (std::size_t a = 0; a < q.arrows.size(); ++a) layer.push_back(Path{asrc[a], atgt[a], {a}});
  auto name_key = [&](const Path& p) {
    std::vector<std::string> k;
    for (auto a : p.arrows) k.push_back(q.arrows[a].name);
    return k;
  };
  for (std::size_t len = 1; len <= bound && !layer.empty(); ++len) {
    std::sort(layer.begin(), layer.end(), [&](const Path& x, const Path& y) { return name_key(x) < name_key(y); });
    paths.insert(paths.end(), layer.begin(), layer.end());
    if (len == bound) break;
    std::vector<Path> next;
    for (const auto& p : layer)
      for (std::size_t a = 0; a < q.arrows.size(); ++a)
        if (asrc[a] == p.target) {
          Path np = p;
          np.arrows.push_back(a);
          np.target = atgt[a];
          next.push_back(std::move(np));
        }
    layer = std::move(next);
  }
  const std::size_t np = paths.size();
  std::map<std::vector<std::size_t>, std::size_t> index_of_arrow_path;
  for (std::size_t i = nv; i < np; ++i) index_of_arrow_path[paths[i].arrows] = i;

  // Relations as vectors, after admissibility checks.
  struct Term {
    typename F::value_type c;
    Path path;
  };
  std::vector<std::vector<Term>> rels;
  for (std::size_t r = 0; r < q.relations.size(); ++r) {
    std::vector<Term> terms;
    std::optional<std::size_t> src, tgt;
    for (const auto& t : q.relations[r]) {
      if (t.path.size() < 2)
        throw Error("relation " + std::to_string(r) + " is not admissible: contains a path of length < 2");
      Path p;
      for (std::size_t k = 0; k < t.path.size(); ++k) {
        auto it = aid.find(t.path[k]);
        if (it == aid.end()) throw Error("relation " + std::to_string(r) + " uses unknown arrow '" + t.path[k] + "'");
        if (k > 0 && asrc[it->second] != atgt[p.arrows.back()])
          throw Error("relation " + std::to_string(r) + " contains a non-composable path");
        p.arrows.push_back(it->second);
      }
      p.source = asrc[p.arrows.front()];
      p.target = atgt[p.arrows.back()];
      if ((src && *src != p.source) || (tgt && *tgt != p.target))
        throw Error("relation " + std::to_string(r) + " is not admissible: paths have different endpoints");
      src = p.source;
      tgt = p.target;
      terms.push_back(Term{field.parse(t.coeff), p});
    }
    if (!terms.empty()) rels.push_back(std::move(terms));
  }

  // Columns in descending path order so that pivots land on the largest paths.
  auto col_of = [&](std::size_t path_index) { return np - 1 - path_index; };
  auto path_index = [&](const std::vector<std::size_t>& arrows, std::size_t vertex) -> std::optional<std::size_t> {
    if (arrows.empty()) return vertex;
    auto it = index_of_arrow_path.find(arrows);
    if (it == index_of_arrow_path.end()) return std::nullopt;  // longer than the bound
    return it->second;
  };
  std::vector<Matrix<F>> gens;
  for (const auto& rel : rels) {
    const std::size_t s = rel.front().path.source, t = rel.front().path.target;
    for (std::size_t u = 0; u < np; ++u) {
      if (paths[u].target != s) continue;
      for (std::size_t w = 0; w < np; ++w) {
        if (paths[w].source != t) continue;
        Matrix<F> g(field, 1, np);
        for (const auto& term : rel) {
          std::vector<std::size_t> full = paths[u].arrows;
          full.insert(full.end(), term.path.arrows.begin(), term.path.arrows.end());
          full.insert(full.end(), paths[w].arrows.begin(), paths[w].arrows.end());
          if (auto idx = path_index(full, s)) g(0, col_of(*idx)) = field.add(g(0, col_of(*idx)), term.c);
        }
        if (!g.is_zero()) gens.push_back(std::move(g));
      }
    }
  }
  Matrix<F> ideal = gens.empty() ? Matrix<F>(field, 0, np) : vstack<F>(field, np, gens);
  const auto red = rref(ideal, false);
  std::vector<bool> is_pivot(np, false);
  for (auto p : red.pivots) is_pivot[p] = true;

  // Normal form of a path vector (row vector over columns).
  auto normal_form = [&](Matrix<F> v) {
    for (std::size_t k = 0; k < red.pivots.size(); ++k) {
      const auto c = v(0, red.pivots[k]);
      if (field.is_zero(c)) continue;
      for (std::size_t j = 0; j < np; ++j) v(0, j) = field.sub(v(0, j), field.mul(c, red.reduced(k, j)));
    }
    return v;
  };

  for (std::size_t i = 0; i < np; ++i) {
    if (paths[i].arrows.size() != bound) continue;
    Matrix<F> v(field, 1, np);
    v(0, col_of(i)) = field.one();
    if (!normal_form(v).is_zero()) {
      std::string desc;
      for (auto a : paths[i].arrows) desc += (desc.empty() ? "" : ".") + q.arrows[a].name;
      throw Error("dimension not certified finite within length_bound " + std::to_string(bound) +
                  ": path " + desc + " survives");
    }
  }

  std::vector<std::size_t> basis_paths;
  for (std::size_t i = 0; i < np; ++i)
    if (!is_pivot[col_of(i)]) basis_paths.push_back(i);
  const std::size_t dim = basis_paths.size();
  std::vector<std::size_t> coord_of_path(np, dim);
  for (std::size_t k = 0; k < dim; ++k) coord_of_path[basis_paths[k]] = k;

  std::vector<std::string> labels;
  for (auto i : basis_paths) {
    if (paths[i].arrows.empty()) {
      labels.push_back("e" + q.vertices[paths[i].source]);
      continue;
    }
    std::string l;
    for (auto a : paths[i].arrows) l += (l.empty() ? "" : ".") + q.arrows[a].name;
    labels.push_back(l);
  }

  auto to_coords = [&](const Matrix<F>& row) {
    Matrix<F> c(field, dim, 1);
    for (std::size_t j = 0; j < np; ++j) {
      if (field.is_zero(row(0, j))) continue;
      const std::size_t pi = np - 1 - j;
      if (coord_of_path[pi] == dim) throw Error("internal: normal form left a reducible path");
      c(coord_of_path[pi], 0) = row(0, j);
    }
    return c;
  };

  std::vector<Matrix<F>> left(dim, Matrix<F>(field, dim, dim));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      const Path& pi = paths[basis_paths[i]];
      const Path& pj = paths[basis_paths[j]];
      if (pj.target != pi.source) continue;  // b_i * b_j applies b_j first
      std::vector<std::size_t> full = pj.arrows;
      full.insert(full.end(), pi.arrows.begin(), pi.arrows.end());
      auto idx = path_index(full, pj.source);
      if (!idx) continue;
      Matrix<F> v(field, 1, np);
      v(0, col_of(*idx)) = field.one();
      left[i].set_block(0, j, to_coords(normal_form(v)));
    }

  std::vector<Matrix<F>> idems;
  for (std::size_t v = 0; v < nv; ++v) idems.push_back(Matrix<F>::unit_vector(field, dim, coord_of_path[v]));
  return std::make_shared<const Algebra<F>>(field, std::move(labels), std::move(left), std::move(idems), q.vertices,
                                            "quiver");
}

}  // namespace silting
