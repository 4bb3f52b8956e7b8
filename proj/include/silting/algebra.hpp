#pragma once

#include "silting/matrix.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace silting {

template <Field F>
class Algebra;

template <Field F>
using AlgebraPtr = std::shared_ptr<const Algebra<F>>;

/// Composable word in the arrow generators, applied left to right. An empty word is the idempotent
/// at `vertex`.
struct Word {
  std::size_t vertex = 0;
  std::vector<std::size_t> arrows;
};

/// Finite-dimensional unital associative algebra with a distinguished complete set of orthogonal
/// primitive idempotents.
///
/// Multiplication is stored as left-multiplication matrices: column j of left_mult(i) is the basis
/// expansion of b_i * b_j. The product x * y acts on a left module by applying y first.
///
/// Construction certifies associativity, the idempotent data, and that the distinguished idempotents
/// split the algebra as a basic algebra: every corner e_i A e_i is local with one-dimensional top,
/// and the resulting radical is a nilpotent two-sided ideal. The arrows (a basis of J/J^2 split
/// by vertices) and a spanning set of arrow words are derived from that.
template <Field F>
class Algebra {
 public:
  using value_type = typename F::value_type;

  Algebra(F field, std::vector<std::string> labels, std::vector<Matrix<F>> left_mult,
          std::vector<Matrix<F>> idempotents, std::vector<std::string> vertex_names, std::string provenance)
      : field_(field),
        labels_(std::move(labels)),
        left_mult_(std::move(left_mult)),
        idempotents_(std::move(idempotents)),
        vertex_names_(std::move(vertex_names)),
        provenance_(std::move(provenance)) {
    validate();
    analyze();
    hash_ = compute_hash();
  }

  const F& field() const { return field_; }
  std::size_t dim() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  std::size_t label_index(const std::string& l) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] == l) return i;
    throw Error("unknown basis label '" + l + "'");
  }
  const std::string& provenance() const { return provenance_; }
  const Matrix<F>& left_mult(std::size_t i) const { return left_mult_[i]; }

  std::size_t num_vertices() const { return idempotents_.size(); }
  const Matrix<F>& idempotent(std::size_t i) const { return idempotents_[i]; }
  const std::vector<Matrix<F>>& idempotents() const { return idempotents_; }
  const std::string& vertex_name(std::size_t i) const { return vertex_names_[i]; }
  const std::vector<std::string>& vertex_names() const { return vertex_names_; }

  Matrix<F> basis_vector(std::size_t i) const { return Matrix<F>::unit_vector(field_, dim(), i); }
  Matrix<F> unit() const {
    Matrix<F> u(field_, dim(), 1);
    for (const auto& e : idempotents_) u = u + e;
    return u;
  }

  /// Matrix of y -> x * y.
  Matrix<F> left_mult_of(const Matrix<F>& x) const {
    Matrix<F> l(field_, dim(), dim());
    for (std::size_t i = 0; i < dim(); ++i) l.add_scaled(x(i, 0), left_mult_[i]);
    return l;
  }
  /// Matrix of y -> y * x.
  Matrix<F> right_mult_of(const Matrix<F>& x) const {
    Matrix<F> r(field_, dim(), dim());
    for (std::size_t j = 0; j < dim(); ++j) r.set_block(0, j, left_mult_[j] * x);
    return r;
  }
  Matrix<F> product(const Matrix<F>& x, const Matrix<F>& y) const { return left_mult_of(x) * y; }
  Matrix<F> structure_constant(std::size_t i, std::size_t j) const { return left_mult_[i].col(j); }

  /// Basis (as columns) of e_target A e_source.
  const Matrix<F>& piece(std::size_t target, std::size_t source) const { return pieces_[target][source]; }
  /// Basis (as columns) of the Jacobson radical.
  const Matrix<F>& radical() const { return radical_; }
  std::size_t loewy_length() const { return loewy_length_; }

  std::size_t num_arrows() const { return arrow_elements_.size(); }
  std::size_t arrow_source(std::size_t a) const { return arrow_source_[a]; }
  std::size_t arrow_target(std::size_t a) const { return arrow_target_[a]; }
  const Matrix<F>& arrow_element(std::size_t a) const { return arrow_elements_[a]; }

  /// Words whose elements form a basis of the algebra, and the coefficients expressing basis
  /// element k as sum_w word_coefficients()(w, k) * word_w.
  const std::vector<Word>& words() const { return words_; }
  const Matrix<F>& word_coefficients() const { return word_coeffs_; }

  /// Algebra generators: idempotents followed by arrows, as elements.
  std::vector<Matrix<F>> generators() const {
    std::vector<Matrix<F>> g = idempotents_;
    g.insert(g.end(), arrow_elements_.begin(), arrow_elements_.end());
    return g;
  }

  std::uint64_t hash() const { return hash_; }
  std::string id() const {
    std::ostringstream os;
    os << std::hex << hash_;
    return os.str();
  }

 private:
  void validate() const {
    const std::size_t n = dim();
    if (left_mult_.size() != n) throw Error("structure constants: expected one matrix per basis element");
    for (const auto& l : left_mult_)
      if (l.rows() != n || l.cols() != n) throw Error("structure constants: wrong matrix shape");
    if (vertex_names_.size() != idempotents_.size()) throw Error("vertex names do not match idempotents");
    for (const auto& e : idempotents_)
      if (e.rows() != n || e.cols() != 1) throw Error("idempotent has wrong shape");

    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!(left_mult_of(left_mult_[i].col(j)) == left_mult_[i] * left_mult_[j]))
          throw Error("multiplication is not associative at (" + labels_[i] + ", " + labels_[j] + ")");

    const Matrix<F> u = unit();
    if (!(left_mult_of(u) == Matrix<F>::identity(field_, n)) || !(right_mult_of(u) == Matrix<F>::identity(field_, n)))
      throw Error("idempotents do not sum to the unit");
    for (std::size_t i = 0; i < idempotents_.size(); ++i)
      for (std::size_t j = 0; j < idempotents_.size(); ++j) {
        const Matrix<F> p = product(idempotents_[i], idempotents_[j]);
        if (i == j ? !(p == idempotents_[i]) : !p.is_zero())
          throw Error("distinguished idempotents are not orthogonal idempotents");
      }
    for (const auto& e : idempotents_)
      if (e.is_zero()) throw Error("zero idempotent");
  }

  Matrix<F> span_basis(const std::vector<Matrix<F>>& vecs) const {
    if (vecs.empty()) return Matrix<F>(field_, dim(), 0);
    return column_space(hstack<F>(field_, dim(), vecs));
  }

  void analyze() {
    const std::size_t n = dim();
    const std::size_t nv = num_vertices();
    pieces_.assign(nv, std::vector<Matrix<F>>(nv));
    for (std::size_t t = 0; t < nv; ++t)
      for (std::size_t s = 0; s < nv; ++s) {
        const Matrix<F> proj = left_mult_of(idempotents_[t]) * right_mult_of(idempotents_[s]);
        pieces_[t][s] = column_space(proj);
      }

    // Radical: off-diagonal pieces plus the nilpotent part of each local corner.
    std::vector<Matrix<F>> rad;
    for (std::size_t t = 0; t < nv; ++t)
      for (std::size_t s = 0; s < nv; ++s) {
        const Matrix<F>& b = pieces_[t][s];
        if (t != s) {
          for (std::size_t c = 0; c < b.cols(); ++c) rad.push_back(b.col(c));
          continue;
        }
        const Matrix<F> linv = left_inverse(b);
        for (std::size_t c = 0; c < b.cols(); ++c) {
          const Matrix<F> v = b.col(c);
          const Matrix<F> restricted = linv * left_mult_of(v) * b;
          const auto lambda = single_eigenvalue(restricted);
          if (!lambda)
            throw Error("corner at vertex " + vertex_names_[s] +
                        " is not split local (non-split simple or non-primitive idempotent)");
          rad.push_back(v - idempotents_[s].scaled(*lambda));
        }
      }
    radical_ = span_basis(rad);

    // Two-sided ideal and nilpotency certificates.
    for (std::size_t c = 0; c < radical_.cols(); ++c)
      for (std::size_t i = 0; i < n; ++i) {
        const Matrix<F> x = radical_.col(c);
        if (!in_column_space(radical_, left_mult_[i] * x) || !in_column_space(radical_, product(x, basis_vector(i))))
          throw Error("radical candidate is not an ideal; the distinguished idempotents do not make the algebra basic");
      }
    std::vector<Matrix<F>> radical_powers{radical_};
    loewy_length_ = radical_.cols() == 0 ? (n == 0 ? 0 : 1) : 0;
    if (radical_.cols() > 0) {
      Matrix<F> cur = radical_;
      std::size_t k = 1;
      while (cur.cols() > 0) {
        if (k > n + 1) throw Error("radical candidate is not nilpotent");
        std::vector<Matrix<F>> prods;
        for (std::size_t a = 0; a < cur.cols(); ++a)
          for (std::size_t b = 0; b < radical_.cols(); ++b) {
            Matrix<F> p = product(cur.col(a), radical_.col(b));
            if (!p.is_zero()) prods.push_back(std::move(p));
          }
        cur = span_basis(prods);
        radical_powers.push_back(cur);
        ++k;
      }
      loewy_length_ = k;
    }

    // Arrows: basis of e_t (J / J^2) e_s, chosen among the piece basis vectors.
    const Matrix<F> rad2 = radical_powers.size() > 1 ? radical_powers[1] : Matrix<F>(field_, n, 0);
    for (std::size_t s = 0; s < nv; ++s)
      for (std::size_t t = 0; t < nv; ++t) {
        const Matrix<F> proj = left_mult_of(idempotents_[t]) * right_mult_of(idempotents_[s]);
        const Matrix<F> local_rad = column_space(proj * radical_);
        const Matrix<F> local_rad2 = column_space(proj * rad2);
        std::vector<Matrix<F>> current;
        for (std::size_t c = 0; c < local_rad2.cols(); ++c) current.push_back(local_rad2.col(c));
        std::size_t have = local_rad2.cols();
        for (std::size_t c = 0; c < local_rad.cols(); ++c) {
          current.push_back(local_rad.col(c));
          if (rank(hstack<F>(field_, n, current)) > have) {
            ++have;
            arrow_source_.push_back(s);
            arrow_target_.push_back(t);
            arrow_elements_.push_back(local_rad.col(c));
          } else {
            current.pop_back();
          }
        }
      }

    // Words in the arrows up to the Loewy length, then a spanning subset.
    std::vector<Word> all_words;
    std::vector<Matrix<F>> all_elems;
    for (std::size_t v = 0; v < nv; ++v) {
      all_words.push_back(Word{v, {}});
      all_elems.push_back(idempotents_[v]);
    }
    std::vector<std::size_t> frontier;
    for (std::size_t a = 0; a < num_arrows(); ++a) {
      all_words.push_back(Word{arrow_source_[a], {a}});
      all_elems.push_back(arrow_elements_[a]);
      frontier.push_back(all_words.size() - 1);
    }
    while (!frontier.empty()) {
      std::vector<std::size_t> next;
      for (std::size_t w : frontier) {
        const std::size_t end = arrow_target_[all_words[w].arrows.back()];
        for (std::size_t a = 0; a < num_arrows(); ++a) {
          if (arrow_source_[a] != end) continue;
          Matrix<F> e = product(arrow_elements_[a], all_elems[w]);
          if (e.is_zero()) continue;
          Word nw = all_words[w];
          nw.arrows.push_back(a);
          all_words.push_back(std::move(nw));
          all_elems.push_back(std::move(e));
          next.push_back(all_words.size() - 1);
        }
      }
      frontier = std::move(next);
    }
    if (n > 0) {
      const Matrix<F> all = hstack<F>(field_, n, all_elems);
      const auto r = rref(all, false);
      if (r.rank != n) throw Error("arrows and idempotents do not generate the algebra");
      const Matrix<F> chosen = all.select_cols(r.pivots);
      for (auto p : r.pivots) words_.push_back(all_words[p]);
      word_coeffs_ = *solve(chosen, Matrix<F>::identity(field_, n)).particular;
    } else {
      word_coeffs_ = Matrix<F>(field_, 0, 0);
    }
  }

  std::uint64_t compute_hash() const {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&](const std::string& s) {
      for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
      }
      h ^= 0xff;
      h *= 1099511628211ULL;
    };
    mix(field_.name());
    for (const auto& l : labels_) mix(l);
    std::ostringstream os;
    for (const auto& l : left_mult_) os << l;
    for (const auto& e : idempotents_) os << e;
    mix(os.str());
    return h;
  }

  F field_;
  std::vector<std::string> labels_;
  std::vector<Matrix<F>> left_mult_;
  std::vector<Matrix<F>> idempotents_;
  std::vector<std::string> vertex_names_;
  std::string provenance_;

  std::vector<std::vector<Matrix<F>>> pieces_;
  Matrix<F> radical_;
  std::size_t loewy_length_ = 0;
  std::vector<std::size_t> arrow_source_, arrow_target_;
  std::vector<Matrix<F>> arrow_elements_;
  std::vector<Word> words_;
  Matrix<F> word_coeffs_;
  std::uint64_t hash_ = 0;
};

template <Field F>
bool same_algebra(const Algebra<F>& a, const Algebra<F>& b) {
  return &a == &b || a.hash() == b.hash();
}

}  // namespace silting
