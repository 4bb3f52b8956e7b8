#include <catch_amalgamated.hpp>

#include "silting/bimodule.hpp"
#include "silting/corpus.hpp"
#include "silting/derive.hpp"

#include <set>

using namespace silting;

namespace {

const PrimeField F2(2);

AlgebraPtr<PrimeField> build(const QuiverPresentation& q) { return compile_quiver_algebra(q, F2); }

// Paths of a quiver that avoid every monomial relation, by direct enumeration.
std::size_t count_monomial_paths(const QuiverPresentation& q, std::size_t max_len) {
  std::vector<std::vector<std::string>> rels;
  for (const auto& r : q.relations) rels.push_back(r.front().path);
  auto contains_relation = [&](const std::vector<std::string>& p) {
    for (const auto& r : rels)
      for (std::size_t s = 0; s + r.size() <= p.size(); ++s)
        if (std::equal(r.begin(), r.end(), p.begin() + s)) return true;
    return false;
  };
  std::size_t count = q.vertices.size();
  std::vector<std::pair<std::string, std::vector<std::string>>> layer;  // (end vertex, path)
  for (const auto& a : q.arrows) layer.push_back({a.target, {a.name}});
  for (std::size_t len = 1; len <= max_len && !layer.empty(); ++len) {
    std::vector<std::pair<std::string, std::vector<std::string>>> next;
    for (const auto& [end, p] : layer) {
      if (contains_relation(p)) continue;
      ++count;
      for (const auto& a : q.arrows)
        if (a.source == end) {
          auto np = p;
          np.push_back(a.name);
          next.push_back({a.target, np});
        }
    }
    layer = std::move(next);
  }
  return count;
}

template <Field F>
void check_associative(const Algebra<F>& a) {
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      for (std::size_t k = 0; k < a.dim(); ++k) {
        const auto lhs = a.product(a.product(a.basis_vector(i), a.basis_vector(j)), a.basis_vector(k));
        const auto rhs = a.product(a.basis_vector(i), a.product(a.basis_vector(j), a.basis_vector(k)));
        REQUIRE(lhs == rhs);
      }
}

}  // namespace

TEST_CASE("quiver compilation") {
  auto a2 = build(corpus::a2());
  CHECK(a2->dim() == 3);
  CHECK(a2->labels() == std::vector<std::string>{"e1", "e2", "a"});
  CHECK(a2->num_vertices() == 2);
  CHECK(a2->num_arrows() == 1);
  CHECK(a2->loewy_length() == 2);

  auto d = build(corpus::dual_numbers());
  CHECK(d->dim() == 2);
  CHECK(d->num_vertices() == 1);

  const auto q3 = corpus::a3_zero_relation();
  const std::size_t oracle = count_monomial_paths(q3, 6);
  CHECK(oracle == 5);
  CHECK(build(q3)->dim() == oracle);

  const auto g = corpus::gamma0();
  CHECK(build(g)->dim() == count_monomial_paths(g, 6));

  for (const auto& q : {corpus::a2(), corpus::dual_numbers(), q3, corpus::semisimple_pair(), g})
    check_associative(*build(q));
}

TEST_CASE("quiver compilation over Q with a commutativity relation") {
  // square 1->2->4, 1->3->4 with a.b - c.d = 0
  QuiverPresentation q{FieldSpec::rational(),
                       {"1", "2", "3", "4"},
                       {{"a", "1", "2"}, {"b", "2", "4"}, {"c", "1", "3"}, {"d", "3", "4"}},
                       {{{"1", {"a", "b"}}, {"-1", {"c", "d"}}}},
                       std::nullopt};
  auto alg = compile_quiver_algebra(q, RationalField{});
  CHECK(alg->dim() == 9);
  check_associative(*alg);
}

TEST_CASE("quiver compilation errors") {
  auto bad = corpus::a2();
  bad.arrows.push_back({"b", "2", "1"});
  bad.relations = {{{"1", {"a"}}}};
  CHECK_THROWS_WITH(build(bad), Catch::Matchers::ContainsSubstring("not admissible"));

  auto mixed = corpus::a3_zero_relation();
  mixed.arrows.push_back({"c", "1", "1"});
  mixed.relations = {{{"1", {"a", "b"}}, {"1", {"c", "c"}}}};
  CHECK_THROWS_WITH(build(mixed), Catch::Matchers::ContainsSubstring("different endpoints"));

  auto loop = corpus::dual_numbers();
  loop.relations.clear();
  loop.length_bound = 4;
  CHECK_THROWS_WITH(build(loop), Catch::Matchers::ContainsSubstring("x.x.x.x survives"));

  auto unknown = corpus::a2();
  unknown.relations = {{{"1", {"a", "z"}}}};
  CHECK_THROWS_WITH(build(unknown), Catch::Matchers::ContainsSubstring("unknown arrow"));
}

TEST_CASE("non-split local corner is rejected") {
  // F_2[x]/(x^2 + x + 1) = F_4 with basis {1, x}
  const auto l1 = Matrix<PrimeField>::identity(F2, 2);
  const auto lx = Matrix<PrimeField>::from_rows(F2, {{0, 1}, {1, 1}});
  CHECK_THROWS_WITH((Algebra<PrimeField>(F2, {"1", "x"}, {l1, lx}, {Matrix<PrimeField>::unit_vector(F2, 2, 0)},
                                         {"1"}, "test")),
                    Catch::Matchers::ContainsSubstring("not split local"));
}

TEST_CASE("derived algebras") {
  auto a2 = build(corpus::a2());
  auto c = corner(*a2, {1});
  CHECK(c.algebra->dim() == 1);
  auto q = quotient_by_idempotents(*a2, {1});
  CHECK(q.algebra->dim() == 1);
  CHECK(q.ideal.cols() == 2);
  CHECK(c.algebra->dim() + q.algebra->dim() <= a2->dim());
  CHECK(q.algebra->label(0) == "e1");

  auto t = tensor(*a2, *a2);
  CHECK(t->dim() == 9);
  CHECK(t->num_vertices() == 4);
  check_associative(*t);

  auto d = build(corpus::dual_numbers());
  auto dop = opposite(*d);
  for (std::size_t i = 0; i < d->dim(); ++i) CHECK(dop->left_mult(i) == d->left_mult(i));
  auto a2op = opposite(*a2);
  CHECK(a2op->dim() == 3);
  CHECK(a2op->arrow_source(0) == 1);

  CHECK_THROWS_WITH(corner(*a2, {2}), Catch::Matchers::ContainsSubstring("not among the distinguished"));
  auto aq = compile_quiver_algebra(corpus::a2(FieldSpec::prime(3)), PrimeField(3));
  CHECK_THROWS_AS(tensor(*a2, *compile_quiver_algebra(corpus::a2(), PrimeField(3))), Error);
  (void)aq;
}

TEST_CASE("quotient by idempotents is an idempotent ideal on the corpus") {
  for (const auto& q : {corpus::a2(), corpus::a3_zero_relation(), corpus::gamma0(), corpus::semisimple_pair()}) {
    auto a = build(q);
    for (std::size_t v = 0; v < a->num_vertices(); ++v) {
      auto quo = quotient_by_idempotents(*a, {v});
      auto cor = corner(*a, {v});
      CHECK(cor.algebra->dim() + quo.algebra->dim() <= a->dim());
      check_associative(*quo.algebra);
      check_associative(*cor.algebra);
    }
  }
  auto a = build(corpus::a2());
  auto all = quotient_by_idempotents(*a, {0, 1});
  CHECK(all.algebra->dim() == 0);
  CHECK(corner(*a, {0, 1}).algebra->dim() == 3);
}

TEST_CASE("triangular matrix algebras") {
  auto k = build(corpus::point());
  auto d = build(corpus::dual_numbers());
  // D as a (k, D)-bimodule
  auto reg = regular_bimodule(d);
  Bimodule<PrimeField> n{k, d, 2, {Matrix<PrimeField>::identity(F2, 2)}, reg.right_action};
  n.validate();
  auto g = triangular_algebra(k, d, n);
  CHECK(g.algebra->dim() == 5);
  check_associative(*g.algebra);
  // corners reproduce A and B
  CHECK(corner(*g.algebra, g.a_vertices).algebra->dim() == 1);
  auto cb = corner(*g.algebra, g.b_vertices);
  CHECK(cb.algebra->dim() == 2);
  CHECK(cb.algebra->left_mult(1) == d->left_mult(1));

  auto a2 = build(corpus::a2());
  auto prod = triangular_algebra(a2, k, zero_bimodule(a2, k));
  CHECK(prod.algebra->dim() == 4);
  CHECK(prod.algebra->num_vertices() == 3);

  Bimodule<PrimeField> bad = n;
  bad.right_action[1] = Matrix<PrimeField>::identity(F2, 2);
  CHECK_THROWS_AS(bad.validate(), ModuleValidationError);
}
