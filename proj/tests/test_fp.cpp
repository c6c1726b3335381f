#include "largehom/fp.hpp"

#include <random>

#include "doctest.h"
#include "oracle.hpp"

using namespace largehom;

namespace {

fp_matrix random_matrix(std::mt19937& rng, std::int64_t p, int rows, int cols) {
  fp_matrix m(p, rows, cols);
  std::uniform_int_distribution<std::int64_t> d(0, p - 1);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m.at(r, c) = d(rng);
  return m;
}

subspace random_subspace(std::mt19937& rng, std::int64_t p, int ambient, int gens) {
  return row_space(random_matrix(rng, p, gens, ambient));
}

}  // namespace

TEST_CASE("rref fixed examples") {
  SUBCASE("identity is its own rref") {
    fp_matrix id = fp_matrix::identity(5, 3);
    rref_result r = rref(id);
    CHECK(r.mat == id);
    CHECK(r.rank == 3);
  }
  SUBCASE("zero matrix") {
    fp_matrix z(2, 2, 4);
    rref_result r = rref(z);
    CHECK(r.mat == z);
    CHECK(r.rank == 0);
  }
  SUBCASE("[[2,4],[1,2]] over F_5") {
    // By hand: scale row0 by 2^{-1}=3 -> [1,2]; row1 - [1,2] -> 0.
    fp_matrix m(5, 2, 2);
    m.at(0, 0) = 2; m.at(0, 1) = 4;
    m.at(1, 0) = 1; m.at(1, 1) = 2;
    rref_result r = rref(m);
    CHECK(r.rank == 1);
    CHECK(r.rank == oracle::naive_rank(m));
    CHECK(r.mat.at(0, 0) == 1);
    CHECK(r.mat.at(0, 1) == 2);
    CHECK(r.mat.at(1, 0) == 0);
    CHECK(r.mat.at(1, 1) == 0);
  }
}

TEST_CASE("kernel fixed examples") {
  SUBCASE("identity has zero kernel") {
    CHECK(kernel_basis(fp_matrix::identity(3, 4)).dim() == 0);
  }
  SUBCASE("zero map has full kernel") {
    subspace k = kernel_basis(fp_matrix(7, 3, 5));
    CHECK(k == subspace::full(7, 5));
  }
  SUBCASE("[[1,1]] over F_3 against enumeration") {
    fp_matrix m(3, 1, 2);
    m.at(0, 0) = 1; m.at(0, 1) = 1;
    subspace k = kernel_basis(m);
    CHECK(k.dim() == 1);
    CHECK(k.contains(fp_vector{1, 2}));
    auto all = oracle::enumerate_kernel(m);
    CHECK(all.size() == 3);  // 3^(dim 1)
    for (const auto& v : all) CHECK(k.contains(v));
  }
}

TEST_CASE("subspace trivial identities") {
  subspace full = subspace::full(5, 2);
  fp_matrix wm(5, 1, 2);
  wm.at(0, 0) = 1; wm.at(0, 1) = 3;
  subspace w = row_space(wm);
  CHECK(subspace_intersect(full, w) == w);
  CHECK(subspace_sum(w, w) == w);

  fp_matrix e1(5, 1, 2), e2(5, 1, 2);
  e1.at(0, 0) = 1;
  e2.at(0, 1) = 1;
  CHECK(subspace_intersect(row_space(e1), row_space(e2)).dim() == 0);
}

TEST_CASE("rank-nullity and rref idempotence on random matrices") {
  std::mt19937 rng(20240817);
  for (std::int64_t p : {2, 3, 5, 32003}) {
    for (int trial = 0; trial < 25; ++trial) {
      int rows = 1 + static_cast<int>(rng() % 6);
      int cols = 1 + static_cast<int>(rng() % 6);
      fp_matrix m = random_matrix(rng, p, rows, cols);
      rref_result r = rref(m);
      CHECK(r.rank + kernel_basis(m).dim() == cols);
      CHECK(r.rank == oracle::naive_rank(m));
      CHECK(rref(r.mat).mat == r.mat);
    }
  }
}

TEST_CASE("dimension formula for sum and intersection") {
  std::mt19937 rng(7);
  for (std::int64_t p : {2, 3, 5}) {
    for (int trial = 0; trial < 30; ++trial) {
      int ambient = 2 + static_cast<int>(rng() % 5);
      subspace a = random_subspace(rng, p, ambient, 1 + rng() % 4);
      subspace b = random_subspace(rng, p, ambient, 1 + rng() % 4);
      subspace s = subspace_sum(a, b);
      subspace i = subspace_intersect(a, b);
      CHECK(a.dim() + b.dim() == s.dim() + i.dim());
      CHECK(s.contains(a));
      CHECK(s.contains(b));
      CHECK(a.contains(i));
      CHECK(b.contains(i));
    }
  }
}

TEST_CASE("linear_solver particular solutions") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    std::int64_t p = (trial % 2) ? 5 : 3;
    int rows = 1 + static_cast<int>(rng() % 5);
    int cols = 1 + static_cast<int>(rng() % 5);
    fp_matrix m = random_matrix(rng, p, rows, cols);
    fp_vector x(cols);
    for (auto& v : x) v = rng() % p;
    fp_vector b = m.apply(x);
    linear_solver solver(m);
    auto sol = solver.solve(b);
    REQUIRE(sol.has_value());
    CHECK(m.apply(*sol) == b);
  }
}

TEST_CASE("induced quotient map") {
  // f = identity on F_5^2, A = span{(1,0)}, B = span{(1,0)}: the induced
  // map on the second coordinate is the identity.
  fp_matrix f = fp_matrix::identity(5, 2);
  fp_matrix am(5, 1, 2);
  am.at(0, 0) = 1;
  subspace a = row_space(am);
  fp_matrix q = induced_quotient_map(f, a, a);
  CHECK(q.rows() == 1);
  CHECK(q.cols() == 1);
  CHECK(q.at(0, 0) == 1);

  // f mapping A outside B must throw.
  fp_matrix bm(5, 1, 2);
  bm.at(0, 1) = 1;
  CHECK_THROWS(induced_quotient_map(f, a, row_space(bm)));
}

TEST_CASE("prime validation") {
  CHECK_THROWS_AS(fp_matrix(6, 1, 1), not_prime_error);
  CHECK_THROWS_AS(fp_matrix(1, 1, 1), not_prime_error);
  CHECK_NOTHROW(fp_matrix(32003, 1, 1));
}
