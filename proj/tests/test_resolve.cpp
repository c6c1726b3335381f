#include "largehom/resolution.hpp"

#include <cstdlib>
#include <random>

#include "doctest.h"
#include "largehom/koszul.hpp"

using namespace largehom;

namespace {

quotient_ring ring_of(const std::string& text) { return make_ring(parse_ring_spec(text)); }

ring_ideal ideal_of(const quotient_ring& r, const std::vector<std::string>& gens) {
  std::vector<polynomial> polys;
  for (const auto& g : gens) polys.push_back(parse_polynomial(g, r.p(), r.vars()));
  return make_ideal(r, polys);
}

// The quotient map R/W -> k killing everything of positive degree.
module_hom map_to_field(const fd_module& m, const fd_module& k) {
  fp_matrix f(m.owner().p(), 1, m.dim());
  for (int i = 0; i < m.dim(); ++i) f.at(0, i) = (m.degree(i) == 0) ? 1 : 0;
  return make_module_hom(m, k, std::move(f));
}

module_hom inclusion(const fd_module& sub, const fd_module& big, const subspace& sub_sp,
                     const subspace& big_sp) {
  fp_matrix f(sub_sp.p, big_sp.dim(), sub_sp.dim());
  for (int j = 0; j < sub_sp.dim(); ++j) {
    auto c = big_sp.coordinates(sub_sp.basis.row(j));
    REQUIRE(c.has_value());
    for (int i = 0; i < big_sp.dim(); ++i) f.at(i, j) = (*c)[i];
  }
  return make_module_hom(sub, big, std::move(f));
}

}  // namespace

TEST_CASE("minimal resolutions of k over small rings") {
  SUBCASE("k over k[x]/(x^2): periodic, all differentials (x)") {
    quotient_ring r = ring_of("p = 5\nvars = x\nrelations = x^2\n");
    free_resolution res = minimal_resolution(fd_module::field(r), 5);
    CHECK(res.betti == std::vector<int>{1, 1, 1, 1, 1, 1});
    const ring_element x = r.variable(0);
    for (int i = 1; i <= 5; ++i) {
      REQUIRE(res.entries[i - 1].size() == 1);
      CHECK(res.entries[i - 1][0][0].coords == x.coords);
    }
  }
  SUBCASE("k over k[x,y]/(x^2,y^2): beta_i = i+1, diagonal table") {
    quotient_ring r = ring_of("p = 5\nvars = x, y\nrelations = x^2, y^2\n");
    free_resolution res = minimal_resolution(fd_module::field(r), 4);
    CHECK(res.betti == std::vector<int>{1, 2, 3, 4, 5});
    betti_table t = betti_of(res);
    for (int i = 0; i <= 4; ++i) {
      CHECK(t.beta(i, i) == i + 1);
      CHECK(t.total(i) == i + 1);
    }
  }
  SUBCASE("k over k[x,y]/(x^2,xy,y^2): beta_i = 2^i") {
    quotient_ring r = ring_of("p = 5\nvars = x, y\nrelations = x^2, x*y, y^2\n");
    CHECK(poincare_coeffs(fd_module::field(r), 5) ==
          std::vector<std::int64_t>{1, 2, 4, 8, 16, 32});
  }
  SUBCASE("zero module") {
    quotient_ring r = ring_of("p = 5\nvars = x\nrelations = x^2\n");
    free_resolution res = minimal_resolution(fd_module::zero(r), 3);
    CHECK(res.betti == std::vector<int>{0, 0, 0, 0});
  }
  SUBCASE("free module resolves itself") {
    quotient_ring r = ring_of("p = 5\nvars = x, y\nrelations = x^2, y^2\n");
    free_resolution res = minimal_resolution(fd_module::regular(r), 3);
    CHECK(res.betti == std::vector<int>{1, 0, 0, 0});
  }
  SUBCASE("beta_0(R/I) = 1 and graded consistency beta_{i,j} = 0 for j < i") {
    quotient_ring r = ring_of("p = 5\nvars = x, y, z\nrelations = x^2, y^2, z^2\n");
    fd_module m = fd_module::quotient(r, ideal_of(r, {"x + y + z"}).space);
    free_resolution res = minimal_resolution(m, 4);
    CHECK(res.betti[0] == 1);
    for (int i = 0; i <= 4; ++i)
      for (int s : res.shifts[i]) CHECK(s >= i);
  }
}

TEST_CASE("beta_2(k) = C(n,2) + dim H_1(K(R))") {
  for (const char* text :
       {"p = 5\nvars = x, y\nrelations = x^2, y^2\n",
        "p = 5\nvars = x, y\nrelations = x^2, x*y, y^2\n",
        "p = 3\nvars = x, y, z\nrelations = x^2, x*y, x*z, y^2, z^2\n",
        "p = 5\nvars = x, y\nrelations = x^2 - y^2, x*y\n"}) {
    quotient_ring r = ring_of(text);
    free_resolution res = minimal_resolution(fd_module::field(r), 2);
    koszul_homology h = koszul_homology_of_ring(r);
    const int n = r.nvars();
    CHECK(res.betti[2] == n * (n - 1) / 2 + h.h_dim(1));
  }
}

TEST_CASE("tor_comparison") {
  SUBCASE("identity gives identity matrices") {
    quotient_ring r = ring_of("p = 5\nvars = x, y\nrelations = x^2, y^2\n");
    fd_module k = fd_module::field(r);
    module_hom id = make_module_hom(k, k, fp_matrix::identity(5, 1));
    tor_map t = tor_comparison(id, 4);
    for (int i = 0; i <= 4; ++i)
      CHECK(t.matrices[i] == fp_matrix::identity(5, i + 1));
  }
  SUBCASE("R/I -> k not injective for Example 3.9") {
    quotient_ring r = ring_of("p = 5\nvars = x, y, z\nrelations = x^2, y^2, z^2\n");
    fd_module m = fd_module::quotient(r, ideal_of(r, {"x + y + z"}).space);
    fd_module k = fd_module::field(r);
    tor_map t = tor_comparison(map_to_field(m, k), 4);
    bool all_injective = true;
    for (int i = 0; i <= 4; ++i) all_injective = all_injective && t.injective[i];
    CHECK_FALSE(all_injective);
  }
  SUBCASE("R/I -> k injective for the large quotient of the section-3 ring") {
    quotient_ring r = ring_of("p = 5\nvars = x, y, z\nrelations = x^2, x*y, x*z, y^2, z^2\n");
    fd_module m = fd_module::quotient(r, ideal_of(r, {"x"}).space);
    fd_module k = fd_module::field(r);
    tor_map t = tor_comparison(map_to_field(m, k), 4);
    for (int i = 0; i <= 4; ++i) CHECK(t.injective[i]);
  }
  SUBCASE("mI into I is the zero map for R = k[x,y]/(x^2,y^2), I = (x)") {
    quotient_ring r = ring_of("p = 5\nvars = x, y\nrelations = x^2, y^2\n");
    ring_ideal i = ideal_of(r, {"x"});
    ring_ideal mi = ideal_m_times(r, i);
    fd_module mod_i = fd_module::submodule(r, i.space);
    fd_module mod_mi = fd_module::submodule(r, mi.space);
    tor_map t = tor_comparison(inclusion(mod_mi, mod_i, mi.space, i.space), 4);
    for (int d = 0; d <= 4; ++d) CHECK(t.zero[d]);
  }
}

TEST_CASE("tor_kk_map") {
  SUBCASE("S = R: identity") {
    quotient_ring r = ring_of("p = 5\nvars = x, y\nrelations = x^2, y^2\n");
    quotient_result q = quotient_by(r, make_ideal(r, std::vector<ring_element>{}));
    tor_kk_result t = tor_kk_map(r, q, 4);
    for (int i = 0; i <= 4; ++i) {
      CHECK(t.surjective[i]);
      CHECK(t.matrices[i] == fp_matrix::identity(5, i + 1));
    }
  }
  SUBCASE("section-3 ring, S = R/(x): surjective everywhere") {
    quotient_ring r = ring_of("p = 5\nvars = x, y, z\nrelations = x^2, x*y, x*z, y^2, z^2\n");
    quotient_result q = quotient_by(r, ideal_of(r, {"x"}));
    tor_kk_result t = tor_kk_map(r, q, 4);
    for (int i = 0; i <= 4; ++i) CHECK(t.surjective[i]);
  }
  SUBCASE("Koszul CI, S = R/(x+y+z): surjectivity fails by i = 3") {
    quotient_ring r = ring_of("p = 5\nvars = x, y, z\nrelations = x^2, y^2, z^2\n");
    quotient_result q = quotient_by(r, ideal_of(r, {"x + y + z"}));
    tor_kk_result t = tor_kk_map(r, q, 3);
    CHECK(t.surjective[0]);
    CHECK_FALSE((t.surjective[1] && t.surjective[2] && t.surjective[3]));
  }
}

TEST_CASE("surjectivity of Tor(k,k) matches injectivity of Tor(S,k) -> Tor(k,k)") {
  struct fixture { const char* ring; const char* gen; };
  for (auto [text, gen] : {fixture{"p = 5\nvars = x, y, z\nrelations = x^2, x*y, x*z, y^2, z^2\n", "x"},
                           fixture{"p = 5\nvars = x, y, z\nrelations = x^2, y^2, z^2\n", "x + y + z"},
                           fixture{"p = 3\nvars = x, y\nrelations = x^2, y^2\n", "x"}}) {
    quotient_ring r = ring_of(text);
    ring_ideal i = ideal_of(r, {gen});
    quotient_result q = quotient_by(r, i);
    tor_kk_result f = tor_kk_map(r, q, 3);
    fd_module m = fd_module::quotient(r, i.space);
    fd_module k = fd_module::field(r);
    tor_map phi = tor_comparison(map_to_field(m, k), 3);
    // Definition-level equivalence: both characterizations give the same
    // overall verdict.  The failure degrees themselves may differ by one
    // (the connecting maps shift a degree), so only the verdicts are compared
    // degree-for-degree after the first failure is aligned.
    int first_surj_fail = 4, first_inj_fail = 4;
    for (int d = 3; d >= 0; --d) {
      if (!f.surjective[d]) first_surj_fail = d;
      if (!phi.injective[d]) first_inj_fail = d;
    }
    CHECK((first_surj_fail == 4) == (first_inj_fail == 4));
    if (first_surj_fail < 4) CHECK(std::abs(first_surj_fail - first_inj_fail) <= 1);
  }
}

TEST_CASE("linearity defect and Koszul modules") {
  SUBCASE("k over k[x,y]/(x^2,y^2)") {
    quotient_ring r = ring_of("p = 5\nvars = x, y\nrelations = x^2, y^2\n");
    linearity_report rep = linearity_defect(fd_module::field(r), 5);
    CHECK(rep.ld == 0);
    CHECK(rep.koszul_module);
  }
  SUBCASE("k over k[x]/(x^3): not Koszul") {
    quotient_ring r = ring_of("p = 5\nvars = x\nrelations = x^3\n");
    free_resolution res = minimal_resolution(fd_module::field(r), 3);
    betti_table t = betti_of(res);
    CHECK(t.beta(1, 1) == 1);
    CHECK(t.beta(2, 3) == 1);
    linearity_report rep = linearity_defect(fd_module::field(r), 4);
    CHECK_FALSE(rep.koszul_module);
    CHECK(rep.ld >= 1);
  }
  SUBCASE("R/(x) over the Gorenstein ring k[x,y]/(x^2 - y^2, xy)") {
    quotient_ring r = ring_of("p = 5\nvars = x, y\nrelations = x^2 - y^2, x*y\n");
    REQUIRE(r.dim() == 4);
    fd_module m = fd_module::quotient(r, ideal_of(r, {"x"}).space);
    linearity_report rep = linearity_defect(m, 4);
    CHECK(rep.koszul_module);
    CHECK(rep.ld == 0);
  }
}

TEST_CASE("balancedness oracle: Tor(M,k) by resolving M vs tensoring F(k)") {
  std::mt19937 rng(20240817);
  for (const char* text :
       {"p = 5\nvars = x, y\nrelations = x^2, y^2\n",
        "p = 3\nvars = x, y\nrelations = x^2, x*y, y^2\n",
        "p = 5\nvars = x, y\nrelations = x^2 - y^2, x*y\n"}) {
    quotient_ring r = ring_of(text);
    free_resolution res_k = minimal_resolution(fd_module::field(r), 4);

    std::vector<fd_module> modules;
    modules.push_back(fd_module::regular(r));
    modules.push_back(fd_module::field(r));
    for (int trial = 0; trial < 10; ++trial) {
      // Random cyclic-ish submodules and quotients of R.
      fp_vector coeffs(r.dim());
      for (auto& c : coeffs) c = std::uniform_int_distribution<int>(0, static_cast<int>(r.p()) - 1)(rng);
      // Avoid units so the quotient is proper but keep the element possibly zero.
      coeffs[0] = 0;
      ring_ideal i = make_ideal(r, std::vector<ring_element>{ring_element{&r, coeffs}});
      modules.push_back(fd_module::quotient(r, i.space));
      if (i.space.dim() > 0) modules.push_back(fd_module::submodule(r, i.space));
    }
    for (const fd_module& m : modules) {
      std::vector<std::int64_t> direct = poincare_coeffs(m, 3);
      std::vector<int> tensored = tor_dims_via_tensor(res_k, m, 3);
      for (int i = 0; i <= 3; ++i) CHECK(direct[i] == tensored[i]);
    }
  }
}

TEST_CASE("betti_numbers matches the full resolution engine") {
  std::mt19937 rng(61803);
  for (const char* text :
       {"p = 5\nvars = x, y, z\nrelations = x^2, y^2, z^2\n",
        "p = 5\nvars = x, y, z\nrelations = x^2, x*y, x*z, y^2, z^2\n",
        "p = 2\nvars = x, y\nrelations = x^2, x*y, y^2\n",
        "p = 3\nvars = x, y\nrelations = x^3, x^2*y, x*y^2, y^3\n",
        "p = 5\nvars = x, y\nrelations = x^2 - y^2, x*y\n"}) {
    quotient_ring r = ring_of(text);

    std::vector<fd_module> modules;
    modules.push_back(fd_module::field(r));
    modules.push_back(fd_module::regular(r));
    for (int trial = 0; trial < 4; ++trial) {
      // Homogeneous cyclic quotients and submodules.
      const int d = 1 + trial % 2;
      // Random homogeneous element of degree d.
      polynomial f(r.p(), r.nvars());
      for (int b = 0; b < r.dim(); ++b)
        if (r.basis_degree(b) == d)
          f.add_term(r.basis()[b],
                     std::uniform_int_distribution<int>(0, static_cast<int>(r.p()) - 1)(rng));
      ring_ideal i = make_ideal(r, std::vector<polynomial>{f});
      modules.push_back(fd_module::quotient(r, i.space));
      if (i.space.dim() > 0) modules.push_back(fd_module::submodule(r, i.space));
    }
    for (const fd_module& m : modules) {
      const free_resolution res = minimal_resolution(m, 4);
      const std::vector<int> fast = betti_numbers(m, 4);
      REQUIRE(fast.size() == res.betti.size());
      for (std::size_t i = 0; i < fast.size(); ++i) CHECK(fast[i] == res.betti[i]);
    }
  }
}
