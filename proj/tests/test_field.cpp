#include <functional>
#include <random>

#include "doctest.h"
#include "quiverkit/matrix.hpp"

using namespace quiverkit;

namespace {

template <typename F>
errc error_code_of(F&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return errc::invalid_argument;
}

Scalar random_scalar(const FieldPtr& f, std::mt19937_64& rng) {
  auto small = [&](long lo, long hi) { return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1)); };
  switch (f->kind()) {
    case FieldKind::prime:
      return Scalar::from_int(f, small(0, f->modulus() - 1));
    case FieldKind::rationals:
      return Scalar::from_rat(f, Rat(Int(small(-9, 9)), Int(small(1, 9))));
    case FieldKind::number_field: {
      std::vector<Rat> c;
      for (std::size_t i = 0; i < f->degree(); ++i) c.emplace_back(Int(small(-5, 5)), Int(small(1, 4)));
      return Scalar::from_coeffs(f, std::move(c));
    }
  }
  return Scalar::zero(f);
}

Matrix random_matrix(const FieldPtr& f, std::size_t r, std::size_t c, std::mt19937_64& rng) {
  Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = random_scalar(f, rng);
  return m;
}

// Independent rank oracle: largest size of a square submatrix with nonzero
// determinant, determinants by Laplace expansion.
Scalar det_laplace(const Matrix& m, std::vector<std::size_t> rows, std::vector<std::size_t> cols) {
  const FieldPtr& f = m.field();
  if (rows.size() == 1) return m.at(rows[0], cols[0]);
  Scalar acc = Scalar::zero(f);
  for (std::size_t k = 0; k < cols.size(); ++k) {
    if (m.at(rows[0], cols[k]).is_zero()) continue;
    std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
    std::vector<std::size_t> sub_cols;
    for (std::size_t j = 0; j < cols.size(); ++j)
      if (j != k) sub_cols.push_back(cols[j]);
    Scalar term = m.at(rows[0], cols[k]) * det_laplace(m, sub_rows, sub_cols);
    acc = (k % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

void combinations(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> idx(k);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == k) {
      visit(idx);
      return;
    }
    for (std::size_t i = start; i + (k - depth) <= n; ++i) {
      idx[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
}

std::size_t minor_rank_oracle(const Matrix& m) {
  for (std::size_t k = std::min(m.rows(), m.cols()); k >= 1; --k) {
    bool found = false;
    combinations(m.rows(), k, [&](const std::vector<std::size_t>& rows) {
      if (found) return;
      combinations(m.cols(), k, [&](const std::vector<std::size_t>& cols) {
        if (found) return;
        if (!det_laplace(m, rows, cols).is_zero()) found = true;
      });
    });
    if (found) return k;
  }
  return 0;
}

}  // namespace

TEST_CASE("field descriptor parsing") {
  CHECK(FieldSpec::parse("Q")->kind() == FieldKind::rationals);
  CHECK(FieldSpec::parse("F_7")->modulus() == 7);
  auto k = FieldSpec::parse("Q[x]/(x^2-2)");
  CHECK(k->kind() == FieldKind::number_field);
  CHECK(k->degree() == 2);
  CHECK(k->heuristically_irreducible());
  CHECK(FieldSpec::parse(" Q [x] / ( x^2 - 2 ) ")->same(*k));

  CHECK(error_code_of([] { FieldSpec::parse("F_4"); }) == errc::non_prime_modulus);
  CHECK(error_code_of([] { FieldSpec::parse("Q[x]/(x^2-2x+1)"); }) == errc::not_squarefree);
  CHECK(error_code_of([] { FieldSpec::parse("R"); }) == errc::malformed_descriptor);
  CHECK(error_code_of([] { FieldSpec::parse("Q[x]/(2x^2-1)"); }) == errc::malformed_descriptor);

  // Squarefree but reducible: accepted, flagged as not (heuristically) a field.
  auto etale = FieldSpec::parse("Q[x]/(x^2-1)");
  CHECK_FALSE(etale->heuristically_irreducible());
  CHECK(FieldSpec::parse("Q[x]/(x^3+x+1)")->heuristically_irreducible());
  CHECK_FALSE(FieldSpec::parse("Q[x]/(x^3-x)")->heuristically_irreducible());
}

TEST_CASE("scalar canonical forms and arithmetic") {
  auto q = FieldSpec::rationals();
  CHECK(Scalar::parse(q, "2/4").str() == "1/2");
  CHECK((Scalar::parse(q, "1/3") + Scalar::parse(q, "1/6")).str() == "1/2");

  auto f3 = FieldSpec::prime(3);
  CHECK((Scalar::from_int(f3, 2) * Scalar::from_int(f3, 2)).str() == "1");
  CHECK(Scalar::from_int(f3, -1).str() == "2");

  auto k = FieldSpec::parse("Q[x]/(x^2-2)");
  Scalar sqrt2 = Scalar::from_coeffs(k, {Rat(0), Rat(1)});
  CHECK((sqrt2 * sqrt2).str() == "2");
  CHECK((sqrt2.inverse() * sqrt2).is_one());
  CHECK(sqrt2.inverse().str() == "1/2*x");
}

TEST_CASE("field axioms hold on randomized scalars (all three kinds)") {
  std::mt19937_64 rng(20240817);
  for (const auto& f : {FieldSpec::rationals(), FieldSpec::prime(5), FieldSpec::parse("Q[x]/(x^3-2)")}) {
    for (int t = 0; t < 60; ++t) {
      Scalar a = random_scalar(f, rng), b = random_scalar(f, rng), c = random_scalar(f, rng);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
    }
  }
}

TEST_CASE("rref base cases") {
  auto q = FieldSpec::rationals();
  Matrix id = Matrix::identity(q, 2);
  auto r = rref(id);
  CHECK(r.rank == 2);
  CHECK(r.reduced == id);

  Matrix m(q, 2, 2);
  m.at(0, 0) = Scalar::from_int(q, 1);
  m.at(0, 1) = Scalar::from_int(q, 2);
  m.at(1, 0) = Scalar::from_int(q, 2);
  m.at(1, 1) = Scalar::from_int(q, 4);
  auto r2 = rref(m);
  CHECK(r2.rank == 1);
  CHECK(r2.reduced.at(0, 0).is_one());
  CHECK(r2.reduced.at(0, 1).str() == "2");
  CHECK(r2.reduced.at(1, 0).is_zero());
  CHECK(r2.reduced.at(1, 1).is_zero());
}

TEST_CASE("rref rank agrees with the exhaustive minor oracle over F_3") {
  auto f3 = FieldSpec::prime(3);
  std::mt19937_64 rng(7);
  for (int t = 0; t < 10; ++t) {
    Matrix m = random_matrix(f3, 5, 7, rng);
    auto r = rref(m);
    CHECK(r.rank == minor_rank_oracle(m));
    // Idempotence.
    auto r2 = rref(r.reduced);
    CHECK(r2.reduced == r.reduced);
  }
}

TEST_CASE("solve_linear") {
  auto q = FieldSpec::rationals();

  SUBCASE("identity system") {
    Matrix id = Matrix::identity(q, 3);
    Vec b{Scalar::from_int(q, 5), Scalar::from_int(q, -1), Scalar::parse(q, "2/3")};
    auto sol = solve_linear(id, b);
    REQUIRE(sol.has_value());
    CHECK(sol->particular == b);
    CHECK(sol->kernel_basis.empty());
  }

  SUBCASE("zero matrix, zero rhs") {
    Matrix z(q, 2, 2);
    auto sol = solve_linear(z, vec_zero(q, 2));
    REQUIRE(sol.has_value());
    CHECK(vec_is_zero(sol->particular));
    CHECK(sol->kernel_basis.size() == 2);
  }

  SUBCASE("underdetermined row, verified by substitution") {
    Matrix a(q, 1, 2);
    a.at(0, 0) = Scalar::from_int(q, 1);
    a.at(0, 1) = Scalar::from_int(q, 1);
    Vec b{Scalar::from_int(q, 2)};
    auto sol = solve_linear(a, b);
    REQUIRE(sol.has_value());
    CHECK(a.apply(sol->particular) == b);
    CHECK(sol->kernel_basis.size() == 1);
    CHECK(vec_is_zero(a.apply(sol->kernel_basis[0])));
  }

  SUBCASE("inconsistent system") {
    Matrix a(q, 2, 1);
    a.at(0, 0) = Scalar::from_int(q, 1);
    a.at(1, 0) = Scalar::from_int(q, 1);
    Vec b{Scalar::from_int(q, 0), Scalar::from_int(q, 1)};
    CHECK_FALSE(solve_linear(a, b).has_value());
  }

  SUBCASE("row count mismatch throws") {
    Matrix a(q, 2, 2);
    CHECK_THROWS_AS((void)solve_linear(a, vec_zero(q, 3)), Error);
  }
}

TEST_CASE("rank-nullity on random systems, exact substitution checks") {
  std::mt19937_64 rng(99);
  for (const auto& f : {FieldSpec::rationals(), FieldSpec::prime(3)}) {
    for (int t = 0; t < 8; ++t) {
      Matrix a = random_matrix(f, 4, 6, rng);
      auto r = rref(a);
      auto sol = solve_linear(a, vec_zero(f, 4));
      REQUIRE(sol.has_value());
      CHECK(r.rank + sol->kernel_basis.size() == a.cols());
      for (const auto& k : sol->kernel_basis) CHECK(vec_is_zero(a.apply(k)));
      // A random consistent rhs: A*x for random x.
      Vec x(a.cols(), Scalar::zero(f));
      for (auto& c : x) c = random_scalar(f, rng);
      Vec b = a.apply(x);
      auto sol2 = solve_linear(a, b);
      REQUIRE(sol2.has_value());
      CHECK(a.apply(sol2->particular) == b);
    }
  }
}
