#include <catch_amalgamated.hpp>

#include <random>

#include "crossmod/intmat.hpp"
#include "oracles.hpp"

using namespace crossmod;

namespace {

void check_snf_contract(const IntMatrix& a) {
  SmithDecomposition s = smith_normal_form(a);
  REQUIRE(s.U * a * s.V == s.D);
  Int du = oracles::determinant(s.U), dv = oracles::determinant(s.V);
  REQUIRE((du == 1 || du == -1));
  REQUIRE((dv == 1 || dv == -1));
  int n = std::min(a.rows(), a.cols());
  for (int i = 0; i < n; ++i) REQUIRE(s.D(i, i) >= 0);
  // off-diagonal zero
  for (int i = 0; i < s.D.rows(); ++i)
    for (int j = 0; j < s.D.cols(); ++j)
      if (i != j) REQUIRE(s.D(i, j) == 0);
  // divisibility chain
  for (int i = 0; i + 1 < n; ++i) {
    if (s.D(i + 1, i + 1) == 0) continue;
    REQUIRE(s.D(i, i) != 0);
    REQUIRE(mpz_divisible_p(s.D(i + 1, i + 1).get_mpz_t(), s.D(i, i).get_mpz_t()));
  }
  // diagonal agrees with the naive elimination oracle
  std::vector<Int> diag = oracles::snf_diagonal(a);
  for (int i = 0; i < n; ++i) REQUIRE(s.D(i, i) == diag[i]);
}

}  // namespace

TEST_CASE("smith normal form on fixed examples") {
  CHECK(smith_normal_form(IntMatrix::identity(3)).D == IntMatrix::identity(3));

  IntMatrix d23{{2, 0}, {0, 3}};
  auto s = smith_normal_form(d23);
  CHECK(s.D == IntMatrix{{1, 0}, {0, 6}});
  CHECK(s.U * d23 * s.V == s.D);

  IntMatrix z(2, 3);
  CHECK(smith_normal_form(z).D == z);
}

TEST_CASE("smith normal form properties on random matrices") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t)
    check_snf_contract(oracles::random_matrix(rng, 6, -9, 9));
}

TEST_CASE("kernel basis") {
  CHECK(kernel_basis(IntMatrix::identity(4)).empty());

  auto k = kernel_basis(IntMatrix{{1, 1}});
  REQUIRE(k.size() == 1);
  CHECK(k[0][0] == -k[0][1]);
  CHECK((k[0][0] == 1 || k[0][0] == -1));

  // Z-expansion of d2 for <x | x^2>: (1+x)(1-x) = 0 in ZC2.
  IntMatrix n2{{1, 1}, {1, 1}};
  auto k2 = kernel_basis(n2);
  REQUIRE(k2.size() == 1);
  CHECK(k2[0][0] == -k2[0][1]);

  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    IntMatrix a = oracles::random_matrix(rng, 6, -4, 4);
    auto basis = kernel_basis(a);
    auto s = smith_normal_form(a);
    CHECK(static_cast<int>(basis.size()) == a.cols() - s.rank());
    for (const auto& v : basis) {
      auto img = a.apply(v);
      for (const Int& e : img) CHECK(e == 0);
    }
  }
}

TEST_CASE("cokernel structure") {
  CHECK(cokernel_structure(IntMatrix(1, 1)) == AbelianGroupStructure{1, {}});
  CHECK(cokernel_structure(IntMatrix{{5}}) == AbelianGroupStructure{0, {5}});
  // diag(2,4) has invariant factors (2,4) already
  CHECK(cokernel_structure(IntMatrix{{2, 0}, {0, 4}}) ==
        AbelianGroupStructure{0, {2, 4}});
  // oracle route for one more: diag(4,6) ~ (2,12)
  CHECK(cokernel_structure(IntMatrix{{4, 0}, {0, 6}}) ==
        AbelianGroupStructure{0, {2, 12}});
}

TEST_CASE("cokernel invariant under permutations") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 60; ++t) {
    IntMatrix a = oracles::random_matrix(rng, 5, -6, 6);
    auto base = cokernel_structure(a);
    IntMatrix b = a;
    std::uniform_int_distribution<int> rd(0, a.rows() - 1), cd(0, a.cols() - 1);
    b.swap_rows(rd(rng), rd(rng));
    b.swap_cols(cd(rng), cd(rng));
    CHECK(cokernel_structure(b) == base);
  }
}

TEST_CASE("integer solve") {
  std::vector<Int> b{Int(4), Int(-2), Int(7)};
  auto x = solve_integer(IntMatrix::identity(3), b);
  REQUIRE(x.has_value());
  CHECK(*x == b);

  CHECK_FALSE(solve_integer(IntMatrix{{2}}, {Int(1)}).has_value());

  auto y = solve_integer(IntMatrix{{2, 3}}, {Int(1)});
  REQUIRE(y.has_value());
  CHECK(2 * (*y)[0] + 3 * (*y)[1] == 1);

  // solvable iff gcd divides
  auto z = solve_integer(IntMatrix{{6, 10}}, {Int(7)});
  CHECK_FALSE(z.has_value());

  std::mt19937_64 rng(37);
  for (int t = 0; t < 80; ++t) {
    IntMatrix a = oracles::random_matrix(rng, 5, -5, 5);
    std::uniform_int_distribution<long> val(-3, 3);
    std::vector<Int> v(a.cols());
    for (auto& e : v) e = val(rng);
    std::vector<Int> rhs = a.apply(v);
    auto sol = solve_integer(a, rhs);
    REQUIRE(sol.has_value());
    CHECK(a.apply(*sol) == rhs);
  }
}

TEST_CASE("unimodular inverse") {
  IntMatrix u{{1, 2}, {0, 1}};
  CHECK(unimodular_inverse(u) * u == IntMatrix::identity(2));
  CHECK_THROWS_AS(unimodular_inverse(IntMatrix{{2}}), InputError);
}

TEST_CASE("solver reuse") {
  IntSolver solver(IntMatrix{{2, 0}, {0, 3}});
  auto a = solver.solve({Int(4), Int(9)});
  REQUIRE(a.has_value());
  CHECK((*a)[0] == 2);
  CHECK((*a)[1] == 3);
  CHECK_FALSE(solver.solve({Int(1), Int(0)}).has_value());
}
