#include "largehom/koszul.hpp"

#include "doctest.h"
#include "oracle.hpp"

using namespace largehom;

namespace {

quotient_ring ring_of(const std::string& text) { return make_ring(parse_ring_spec(text)); }

ring_ideal ideal_of(const quotient_ring& r, const std::vector<std::string>& gens) {
  std::vector<polynomial> polys;
  for (const auto& g : gens) polys.push_back(parse_polynomial(g, r.p(), r.vars()));
  return make_ideal(r, polys);
}

}  // namespace

TEST_CASE("koszul homology of small fixtures") {
  SUBCASE("k[x]/(x^2), gens {x}: H_1 = (0:x) e_1") {
    quotient_ring r = ring_of("p = 5\nvars = x\nrelations = x^2\n");
    koszul_homology h = koszul_homology_of_ring(r);
    CHECK(h.h_dim(0) == 1);
    CHECK(h.h_dim(1) == 1);
    // The representative is x*e_1 (the only cycle class).
    fp_vector rep = h.representatives(1).row(0);
    fp_vector expect(2, 0);
    expect[r.basis_index(monomial{1})] = 1;
    CHECK(rep == expect);
  }
  SUBCASE("k[x,y]/(x^2,y^2): H_1 = 2, H_2 = 1, ranks against oracle") {
    quotient_ring r = ring_of("p = 5\nvars = x, y\nrelations = x^2, y^2\n");
    koszul_complex k(r, {r.variable(0), r.variable(1)});
    CHECK(oracle::naive_rank(k.differential(1)) == 3);
    CHECK(oracle::naive_rank(k.differential(2)) == 3);
    koszul_homology h((koszul_complex(k)));
    CHECK(h.h_dim(1) == 2);
    CHECK(h.h_dim(2) == 1);
  }
  SUBCASE("k[x,y]/(x^2,xy,y^2): H_1 = 3, H_2 = 2") {
    quotient_ring r = ring_of("p = 5\nvars = x, y\nrelations = x^2, x*y, y^2\n");
    koszul_homology h = koszul_homology_of_ring(r);
    CHECK(h.h_dim(1) == 3);
    CHECK(h.h_dim(2) == 2);
  }
}

TEST_CASE("Euler characteristic consistency per degree") {
  for (const char* text :
       {"p = 5\nvars = x, y\nrelations = x^2, y^2\n",
        "p = 5\nvars = x, y, z\nrelations = x^2, y^2, z^2\n",
        "p = 3\nvars = x, y, z\nrelations = x^2, x*y, x*z, y^2, z^2\n"}) {
    quotient_ring r = ring_of(text);
    koszul_homology h = koszul_homology_of_ring(r);
    for (int i = 0; i <= h.length(); ++i) {
      const int prev_b = (i == 0) ? 0 : h.boundaries(i - 1).dim();
      // dim K_i = dim Z_i + rank d_i, and rank d_i = dim B_{i-1}.
      CHECK(h.complex().flat_dim(i) == h.cycles(i).dim() + prev_b);
    }
  }
}

TEST_CASE("dim H_1(K(R)) equals the minimal number of relations") {
  struct fixture { const char* text; int mu; };
  for (auto [text, mu] : {fixture{"p = 5\nvars = x, y\nrelations = x^2, y^2\n", 2},
                          fixture{"p = 5\nvars = x, y\nrelations = x^2, x*y, y^2\n", 3},
                          fixture{"p = 5\nvars = x, y, z\nrelations = x^2, y^2, z^2\n", 3},
                          fixture{"p = 5\nvars = x, y, z\nrelations = x^2, x*y, x*z, y^2, z^2\n", 5}}) {
    koszul_homology h = koszul_homology_of_ring(ring_of(text));
    CHECK(h.h_dim(1) == mu);
  }
}

TEST_CASE("homology products") {
  SUBCASE("H_1^2 spans H_2 for the complete intersection k[x,y]/(x^2,y^2)") {
    quotient_ring r = ring_of("p = 5\nvars = x, y\nrelations = x^2, y^2\n");
    koszul_homology h = koszul_homology_of_ring(r);
    subspace prod = homology_product(h, 1, 1);
    CHECK(prod.dim() == h.h_dim(2));
    CHECK(h.h_dim(2) == 1);
  }
  SUBCASE("H_1^2 vanishes for the Golod ring k[x,y]/(x^2,xy,y^2)") {
    quotient_ring r = ring_of("p = 5\nvars = x, y\nrelations = x^2, x*y, y^2\n");
    koszul_homology h = koszul_homology_of_ring(r);
    subspace prod = homology_product(h, 1, 1);
    CHECK(prod.dim() == 0);
    CHECK(h.h_dim(2) == 2);
  }
  SUBCASE("wedge with H_0 acts as identity") {
    quotient_ring r = ring_of("p = 5\nvars = x, y\nrelations = x^2, y^2\n");
    koszul_homology h = koszul_homology_of_ring(r);
    subspace prod = homology_product(h, 0, 1);
    CHECK(prod.dim() == h.h_dim(1));
  }
}

TEST_CASE("induced map H(R) -> H(S)") {
  SUBCASE("I = 0: identity, surjective in every degree") {
    quotient_ring r = ring_of("p = 5\nvars = x, y\nrelations = x^2, y^2\n");
    quotient_result q = quotient_by(r, make_ideal(r, std::vector<ring_element>{}));
    koszul_homology hr = koszul_homology_adapted(r, q);
    koszul_homology hs = koszul_homology_of_ring(*q.ring);
    for (int i = 0; i <= 2; ++i) {
      induced_map_result m = induced_map_hr_to_hs(hr, hs, q, i);
      CHECK(m.surjective);
      CHECK(m.matrix == fp_matrix::identity(5, hr.h_dim(i)));
    }
  }
  SUBCASE("section-3 ring, S = R/(x): surjective at i = 1, 2") {
    quotient_ring r = ring_of("p = 5\nvars = x, y, z\nrelations = x^2, x*y, x*z, y^2, z^2\n");
    quotient_result q = quotient_by(r, ideal_of(r, {"x"}));
    koszul_homology hr = koszul_homology_adapted(r, q);
    koszul_homology hs = koszul_homology_of_ring(*q.ring);
    CHECK(induced_map_hr_to_hs(hr, hs, q, 1).surjective);
    CHECK(induced_map_hr_to_hs(hr, hs, q, 2).surjective);
  }
  SUBCASE("Example 3.9, S = R/(x+y+z): NOT surjective at i = 2") {
    quotient_ring r = ring_of("p = 5\nvars = x, y, z\nrelations = x^2, y^2, z^2\n");
    quotient_result q = quotient_by(r, ideal_of(r, {"x + y + z"}));
    koszul_homology hr = koszul_homology_adapted(r, q);
    koszul_homology hs = koszul_homology_of_ring(*q.ring);
    CHECK_FALSE(induced_map_hr_to_hs(hr, hs, q, 2).surjective);
  }
}

TEST_CASE("surjectivity of H_1(R) -> H_1(S) whenever NC holds") {
  struct fixture { const char* ring; const char* gen; };
  for (auto [text, gen] : {fixture{"p = 5\nvars = x, y, z\nrelations = x^2, y^2, z^2\n", "x + y + z"},
                           fixture{"p = 5\nvars = x, y, z\nrelations = x^2, x*y, x*z, y^2, z^2\n", "x"},
                           fixture{"p = 3\nvars = x, y\nrelations = x^2, y^2\n", "x"}}) {
    quotient_ring r = ring_of(text);
    ring_ideal i = ideal_of(r, {gen});
    REQUIRE(check_nc(r, i).holds);
    quotient_result q = quotient_by(r, i);
    koszul_homology hr = koszul_homology_adapted(r, q);
    koszul_homology hs = koszul_homology_of_ring(*q.ring);
    CHECK(induced_map_hr_to_hs(hr, hs, q, 1).surjective);
  }
}

TEST_CASE("map H_1(I) tensor k -> H_1(R)") {
  SUBCASE("k[x,y]/(x^2,y^2), I = (x): injective, nonzero, dim 1") {
    quotient_ring r = ring_of("p = 5\nvars = x, y\nrelations = x^2, y^2\n");
    ring_ideal i = ideal_of(r, {"x"});
    quotient_result q = quotient_by(r, i);
    h1_map_result m = map_h1i_to_h1r(r, i, q);
    CHECK(m.h1i_tensor_dim == 1);
    CHECK(m.injective);
    CHECK(m.nonzero);
  }
  SUBCASE("Example 3.9, I = (x+y+z): NOT injective") {
    quotient_ring r = ring_of("p = 5\nvars = x, y, z\nrelations = x^2, y^2, z^2\n");
    ring_ideal i = ideal_of(r, {"x + y + z"});
    quotient_result q = quotient_by(r, i);
    h1_map_result m = map_h1i_to_h1r(r, i, q);
    CHECK_FALSE(m.injective);
  }
  SUBCASE("I = m: identity on H_1") {
    quotient_ring r = ring_of("p = 5\nvars = x, y\nrelations = x^2, y^2\n");
    ring_ideal i = maximal_ideal(r);
    quotient_result q = quotient_by(r, i);
    h1_map_result m = map_h1i_to_h1r(r, i, q);
    CHECK(m.injective);
    CHECK(m.h1i_tensor_dim == 2);
  }
  SUBCASE("NC violation raises") {
    quotient_ring r = ring_of("p = 5\nvars = x\nrelations = x^3\n");
    ring_ideal i = ideal_of(r, {"x^2"});
    quotient_result q = quotient_by(r, i);
    CHECK_THROWS_AS(map_h1i_to_h1r(r, i, q), nc_violation_error);
  }
}

TEST_CASE("power ring detection") {
  CHECK(is_power_ring(ring_of("p = 5\nvars = x, y\nrelations = x^2, x*y, y^2\n")));
  CHECK(is_power_ring(ring_of("p = 5\nvars = x, y, z\nrelations = x^3, x^2*y, x^2*z, x*y^2, "
                              "x*y*z, x*z^2, y^3, y^2*z, y*z^2, z^3\n")));
  CHECK_FALSE(is_power_ring(ring_of("p = 5\nvars = x, y\nrelations = x^2, y^2\n")));
  CHECK_FALSE(is_power_ring(ring_of("p = 5\nvars = x, y, z\nrelations = x^2, y^2, z^2\n")));
  int power = 0;
  is_power_ring(ring_of("p = 2\nvars = x, y\nrelations = x^2, x*y, y^2\n"), &power);
  CHECK(power == 2);
}

TEST_CASE("lemma_power_check") {
  SUBCASE("k[x,y]/(x,y)^2, I = (x)") {
    quotient_ring r = ring_of("p = 2\nvars = x, y\nrelations = x^2, x*y, y^2\n");
    power_check_result res = lemma_power_check(r, ideal_of(r, {"x"}));
    CHECK(res.holds);
  }
  SUBCASE("k[x,y,z]/(x,y,z)^2, I = (x,y): holds at i = 1, 2") {
    quotient_ring r = ring_of(
        "p = 5\nvars = x, y, z\nrelations = x^2, x*y, x*z, y^2, y*z, z^2\n");
    power_check_result res = lemma_power_check(r, ideal_of(r, {"x", "y"}));
    CHECK(res.holds);
  }
  SUBCASE("cube power ring, several ideals") {
    quotient_ring r = ring_of("p = 3\nvars = x, y\nrelations = x^3, x^2*y, x*y^2, y^3\n");
    CHECK(lemma_power_check(r, ideal_of(r, {"x"})).holds);
    CHECK(lemma_power_check(r, ideal_of(r, {"x", "y"})).holds);
    CHECK(lemma_power_check(r, ideal_of(r, {"x + 2y"})).holds);
  }
  SUBCASE("I = 0 vacuously holds") {
    quotient_ring r = ring_of("p = 2\nvars = x, y\nrelations = x^2, x*y, y^2\n");
    power_check_result res = lemma_power_check(r, make_ideal(r, std::vector<ring_element>{}));
    CHECK(res.holds);
  }
  SUBCASE("non-power ring raises") {
    quotient_ring r = ring_of("p = 5\nvars = x, y\nrelations = x^2, y^2\n");
    CHECK_THROWS_AS(lemma_power_check(r, ideal_of(r, {"x"})), not_power_ideal_error);
  }
}
