#include <catch_amalgamated.hpp>

#include "silting/matrix.hpp"

#include <random>

using namespace silting;

namespace {

template <Field F>
Matrix<F> random_matrix(const F& f, std::mt19937_64& rng, std::size_t r, std::size_t c, int spread) {
  std::uniform_int_distribution<int> d(-spread, spread);
  Matrix<F> m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = f.from_int(d(rng) * (d(rng) % 2 == 0));
  return m;
}

// Brute force over F_p^n: all x with a x = b.
std::vector<std::vector<std::uint32_t>> all_solutions(const PrimeField& f, const Matrix<PrimeField>& a,
                                                      const Matrix<PrimeField>& b) {
  std::vector<std::vector<std::uint32_t>> out;
  const std::size_t n = a.cols();
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= f.p;
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<std::uint32_t> x(n);
    std::size_t c = code;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = std::uint32_t(c % f.p);
      c /= f.p;
    }
    bool ok = true;
    for (std::size_t r = 0; r < a.rows() && ok; ++r) {
      std::uint64_t s = 0;
      for (std::size_t i = 0; i < n; ++i) s += std::uint64_t(a(r, i)) * x[i];
      ok = s % f.p == b(r, 0);
    }
    if (ok) out.push_back(x);
  }
  return out;
}

}  // namespace

TEST_CASE("rref examples") {
  const PrimeField f2(2);
  const RationalField q;
  auto r1 = rref(Matrix<PrimeField>::from_rows(f2, {{1, 1}, {1, 1}}));
  CHECK(r1.rank == 1);

  const auto id = Matrix<RationalField>::identity(q, 3);
  auto r2 = rref(id);
  CHECK(r2.rank == 3);
  CHECK(r2.reduced == id);

  const auto m = Matrix<RationalField>::from_rows(q, {{2, 4}, {1, 2}});
  auto r3 = rref(m);
  CHECK(r3.rank == 1);
  CHECK(r3.reduced == Matrix<RationalField>::from_rows(q, {{1, 2}, {0, 0}}));
  CHECK(r3.rowops * m == r3.reduced);
}

TEST_CASE("solve examples") {
  const RationalField q;
  const auto b = Matrix<RationalField>::from_rows(q, {{3}, {-1}, {7}});
  auto s1 = solve(Matrix<RationalField>::identity(q, 3), b);
  REQUIRE(s1.particular);
  CHECK(*s1.particular == b);
  CHECK(s1.nullbasis.empty());

  auto s2 = solve(Matrix<RationalField>(q, 2, 2), Matrix<RationalField>(q, 2, 1));
  REQUIRE(s2.particular);
  CHECK(s2.particular->is_zero());
  CHECK(s2.nullbasis.size() == 2);

  const PrimeField f2(2);
  const auto a = Matrix<PrimeField>::from_rows(f2, {{1, 1}});
  const auto rhs = Matrix<PrimeField>::from_rows(f2, {{1}});
  const auto brute = all_solutions(f2, a, rhs);
  // two solutions: an affine line, so one null vector
  CHECK(brute.size() == 2);
  auto s3 = solve(a, rhs);
  REQUIRE(s3.particular);
  CHECK(a * *s3.particular == rhs);
  CHECK(s3.nullbasis.size() == 1);

  CHECK_THROWS_AS(solve(a, Matrix<PrimeField>(f2, 2, 1)), Error);
}

TEMPLATE_TEST_CASE("linear algebra properties on random matrices", "", PrimeField, RationalField) {
  TestType f;
  if constexpr (std::is_same_v<TestType, PrimeField>) f = PrimeField(5);
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> size(0, 6);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = size(rng), c = size(rng);
    const auto m = random_matrix(f, rng, r, c, 3);
    const auto red = rref(m);
    // rowops * m == reduced, idempotence
    CHECK(red.rowops * m == red.reduced);
    CHECK(rref(red.reduced).reduced == red.reduced);
    // rank-nullity
    const auto k = kernel(m);
    CHECK(red.rank + k.dim() == c);
    if (k.dim()) CHECK((m * k.basis).is_zero());
    // solve/rref consistency
    const auto b = random_matrix(f, rng, r, 1, 2);
    const auto s = solve(m, b);
    Matrix<TestType> aug(f, r, c + 1);
    aug.set_block(0, 0, m);
    aug.set_block(0, c, b);
    CHECK(s.particular.has_value() == (rank(aug) == red.rank));
    if (s.particular) CHECK(m * *s.particular == b);
  }
}

TEST_CASE("brute-force solution counts agree with the null space over F_3") {
  const PrimeField f3(3);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_matrix(f3, rng, 2, 4, 2);
    const auto b = random_matrix(f3, rng, 2, 1, 2);
    const auto brute = all_solutions(f3, a, b);
    const auto s = solve(a, b);
    std::size_t expected = 0;
    if (s.particular) {
      expected = 1;
      for (std::size_t i = 0; i < s.nullbasis.size(); ++i) expected *= 3;
    }
    CHECK(brute.size() == expected);
  }
}

TEST_CASE("inverse, column space, complements") {
  const RationalField q;
  const auto m = Matrix<RationalField>::from_rows(q, {{1, 2}, {3, 4}});
  auto inv = inverse(m);
  REQUIRE(inv);
  CHECK(*inv * m == Matrix<RationalField>::identity(q, 2));
  CHECK_FALSE(inverse(Matrix<RationalField>::from_rows(q, {{1, 2}, {2, 4}})));

  const auto tall = Matrix<RationalField>::from_rows(q, {{1, 0}, {1, 1}, {0, 1}});
  CHECK(left_inverse(tall) * tall == Matrix<RationalField>::identity(q, 2));
  CHECK(complement_indices(tall).size() == 1);
  CHECK(column_space(Matrix<RationalField>::from_rows(q, {{1, 2, 3}, {2, 4, 6}})).cols() == 1);
}

TEST_CASE("scalar parsing and printing") {
  const RationalField q;
  CHECK(q.to_string(q.parse("-7/2")) == "-7/2");
  CHECK(q.to_string(q.parse("6/3")) == "2");
  CHECK_THROWS_AS(q.parse("x"), Error);
  const PrimeField f7(7);
  CHECK(f7.parse("-1") == 6);
  CHECK(f7.parse("1/2") == 4);
  CHECK_THROWS_AS(PrimeField(8), Error);
}

TEST_CASE("single eigenvalue detection") {
  const PrimeField f2(2);
  // unipotent 2x2 over F_2: minimal polynomial (x+1)^2 = x^2 + 1
  const auto u = Matrix<PrimeField>::from_rows(f2, {{1, 1}, {0, 1}});
  auto l = single_eigenvalue(u);
  REQUIRE(l);
  CHECK(*l == 1);
  CHECK_FALSE(single_eigenvalue(Matrix<PrimeField>::from_rows(f2, {{1, 0}, {0, 0}})));
  const RationalField q;
  auto l2 = single_eigenvalue(Matrix<RationalField>::from_rows(q, {{3, 1}, {0, 3}}));
  REQUIRE(l2);
  CHECK(*l2 == 3);
}
