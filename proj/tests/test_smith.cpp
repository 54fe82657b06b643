#include <random>

#include "doctest.h"

#include "cohomforge/smith.hpp"

using namespace cohomforge;

namespace {

IntMat from_rows(std::initializer_list<std::initializer_list<long>> rows) {
  IntMat m(static_cast<Index>(rows.size()),
           rows.size() ? static_cast<Index>(rows.begin()->size()) : 0);
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (long v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

// independent determinant oracle: fraction-free Bareiss elimination
Int bareiss_det(IntMat a) {
  const Index n = a.rows();
  REQUIRE(n == a.cols());
  if (n == 0) return 1;
  Int prev = 1;
  int sign = 1;
  for (Index k = 0; k + 1 < n; ++k) {
    if (is_zero(a(k, k))) {
      Index swap = -1;
      for (Index i = k + 1; i < n; ++i)
        if (!is_zero(a(i, k))) {
          swap = i;
          break;
        }
      if (swap < 0) return 0;
      a.row(k).swap(a.row(swap));
      sign = -sign;
    }
    for (Index i = k + 1; i < n; ++i)
      for (Index j = k + 1; j < n; ++j)
        a(i, j) = (a(k, k) * a(i, j) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

void check_smith_form(const IntMat& a) {
  auto s = smith_normal_form(a);
  REQUIRE(IntMat(s.u * a * s.v) == s.d);
  CHECK(abs(bareiss_det(s.u)) == 1);
  CHECK(abs(bareiss_det(s.v)) == 1);
  for (Index i = 0; i < s.d.rows(); ++i)
    for (Index j = 0; j < s.d.cols(); ++j)
      if (i != j) CHECK(is_zero(s.d(i, j)));
  for (Index i = 0; i + 1 < s.rank; ++i) {
    CHECK(s.d(i, i) > 0);
    CHECK(is_zero(s.d(i + 1, i + 1) % s.d(i, i)));
  }
  for (Index i = s.rank; i < std::min(s.d.rows(), s.d.cols()); ++i) CHECK(is_zero(s.d(i, i)));
}

}  // namespace

TEST_CASE("smith normal form of fixed matrices") {
  SUBCASE("1x1 zero") {
    auto s = smith_normal_form(from_rows({{0}}));
    CHECK(s.rank == 0);
    CHECK(is_zero(s.d(0, 0)));
  }
  SUBCASE("the 2x2 example with diagonal (2, 6)") {
    auto s = smith_normal_form(from_rows({{2, 4}, {-2, 2}}));
    CHECK(s.rank == 2);
    CHECK(s.d(0, 0) == 2);
    CHECK(s.d(1, 1) == 6);
    check_smith_form(from_rows({{2, 4}, {-2, 2}}));
  }
  SUBCASE("identity") {
    auto s = smith_normal_form(IntMat(IntMat::Identity(3, 3)));
    CHECK(s.rank == 3);
    for (Index i = 0; i < 3; ++i) CHECK(s.d(i, i) == 1);
  }
  SUBCASE("empty shapes") {
    auto s = smith_normal_form(IntMat(IntMat::Zero(0, 3)));
    CHECK(s.rank == 0);
    CHECK(s.v.rows() == 3);
  }
}

TEST_CASE("smith normal form properties on random small matrices") {
  std::mt19937 rng(20240811);
  std::uniform_int_distribution<int> dim(1, 6), entry(-9, 9);
  for (int trial = 0; trial < 60; ++trial) {
    IntMat a(dim(rng), dim(rng));
    for (Index i = 0; i < a.rows(); ++i)
      for (Index j = 0; j < a.cols(); ++j) a(i, j) = entry(rng);
    check_smith_form(a);
  }
}

TEST_CASE("full-rank cokernel order equals the product of the diagonal") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> entry(-5, 5);
  int seen = 0;
  while (seen < 25) {
    IntMat a(3, 3);
    for (Index i = 0; i < 3; ++i)
      for (Index j = 0; j < 3; ++j) a(i, j) = entry(rng);
    Int det = bareiss_det(a);
    if (is_zero(det)) continue;
    ++seen;
    auto s = smith_normal_form(a);
    Int prod = s.d(0, 0) * s.d(1, 1) * s.d(2, 2);
    CHECK(prod == abs(det));
  }
}

TEST_CASE("linear solver") {
  IntMat a = from_rows({{2, 0}, {0, 3}});
  LinearSolver solver(a);
  SUBCASE("solvable") {
    IntVec b(2);
    b << 4, -9;
    auto x = solver.solve(b);
    REQUIRE(x.has_value());
    CHECK(IntVec(a * *x) == b);
  }
  SUBCASE("unsolvable by divisibility") {
    IntVec b(2);
    b << 1, 3;
    CHECK(!solver.solve(b).has_value());
  }
  SUBCASE("general dense system") {
    IntMat m = from_rows({{1, 2, 3}, {0, 5, 7}});
    LinearSolver s(m);
    IntVec b(2);
    b << 6, 12;
    auto x = s.solve(b);
    REQUIRE(x.has_value());
    CHECK(IntVec(m * *x) == b);
  }
}

TEST_CASE("lattice kernel and preimage lattices") {
  SUBCASE("kernel of [1 1]") {
    IntMat a = from_rows({{1, 1}});
    IntMat k = lattice_kernel(a);
    REQUIRE(k.cols() == 1);
    CHECK(is_zero(k(0, 0) + k(1, 0)));
    CHECK(abs(k(0, 0)) == 1);
  }
  SUBCASE("preimage mod 2 of multiplication by 3 on Z") {
    IntMat a = from_rows({{3}});
    IntMat gens = preimage_lattice_mod(a, 2);
    // { x : 3x = 0 mod 2 } = 2Z
    REQUIRE(gens.cols() == 1);
    CHECK(abs(gens(0, 0)) == 2);
  }
  SUBCASE("sparse product agrees with dense") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> entry(-3, 3);
    IntMat a(4, 3), b(3, 5);
    for (Index i = 0; i < 4; ++i)
      for (Index j = 0; j < 3; ++j) a(i, j) = entry(rng);
    for (Index i = 0; i < 3; ++i)
      for (Index j = 0; j < 5; ++j) b(i, j) = entry(rng);
    CHECK(sparse_product(a, b) == IntMat(a * b));
  }
}
