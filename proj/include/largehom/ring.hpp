#pragma once

// Artinian graded quotient rings R = k[x1..xn]/J over F_p: monomial bases,
// normal forms, multiplication matrices, ideals as generator lists plus
// k-subspaces, and the I cap m^2 = mI check.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "largehom/fp.hpp"
#include "largehom/poly.hpp"

namespace largehom {

struct not_artinian_error : std::runtime_error {
  not_artinian_error() : std::runtime_error("quotient is not Artinian") {}
};

struct non_homogeneous_error : std::runtime_error {
  non_homogeneous_error() : std::runtime_error("ideal is not homogeneous") {}
};

struct not_graded_error : std::runtime_error {
  not_graded_error() : std::runtime_error("operation requires a graded ring") {}
};

class quotient_ring;

struct ring_element {
  const quotient_ring* owner = nullptr;
  fp_vector coords;

  bool is_zero() const {
    for (auto c : coords)
      if (c != 0) return false;
    return true;
  }
};

class quotient_ring {
 public:
  quotient_ring(std::int64_t p, std::vector<std::string> vars, std::vector<polynomial> relations)
      : p_(p), vars_(std::move(vars)), relations_(std::move(relations)) {
    if (!is_prime(p_)) throw not_prime_error(p_);
    const int n = nvars();
    for (const auto& f : relations_)
      if (f.nvars() != n) throw dimension_mismatch("relation variable count");
    gb_ = groebner_basis(relations_);
    for (const auto& g : gb_)
      if (g.degree() == 0) throw std::runtime_error("defining ideal is the unit ideal");
    graded_ = true;
    for (const auto& f : relations_)
      if (!f.is_homogeneous()) graded_ = false;

    enumerate_basis();
    build_multiplication();
  }

  std::int64_t p() const { return p_; }
  int nvars() const { return static_cast<int>(vars_.size()); }
  const std::vector<std::string>& vars() const { return vars_; }
  const std::vector<polynomial>& relations() const { return relations_; }
  const std::vector<polynomial>& groebner() const { return gb_; }
  bool graded() const { return graded_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<monomial>& basis() const { return basis_; }
  int basis_degree(int i) const { return basis_degrees_[i]; }
  const std::vector<int>& basis_degrees() const { return basis_degrees_; }
  int max_degree() const { return basis_degrees_.empty() ? 0 : basis_degrees_.back(); }

  int basis_index(const monomial& m) const {
    auto it = basis_index_.find(m);
    if (it == basis_index_.end()) throw std::runtime_error("not a standard monomial");
    return it->second;
  }

  // Number of minimal generators of the defining ideal J (the reduced
  // Groebner basis is a minimal generating set for the fixtures used here;
  // computed honestly as dim J/(nJ + ambient m * J) in the polynomial ring
  // would need a free resolution, so we count via normal forms instead).
  int relation_count() const { return static_cast<int>(gb_.size()); }

  ring_element zero() const { return {this, fp_vector(dim(), 0)}; }
  ring_element one() const {
    ring_element e = zero();
    e.coords[basis_index(monomial(nvars(), 0))] = 1;
    return e;
  }
  ring_element variable(int v) const {
    monomial m(nvars(), 0);
    m[v] = 1;
    return normal_form(polynomial::variable(p_, nvars(), v));
  }

  ring_element normal_form(const polynomial& f) const {
    if (f.nvars() != nvars()) throw dimension_mismatch("normal_form variable count");
    polynomial r = poly_reduce(f, gb_);
    ring_element e = zero();
    for (const auto& [m, c] : r.terms()) e.coords[basis_index(m)] = c;
    return e;
  }

  polynomial lift(const ring_element& e) const {
    polynomial f(p_, nvars());
    for (int i = 0; i < dim(); ++i)
      if (e.coords[i] != 0) f.add_term(basis_[i], e.coords[i]);
    return f;
  }

  const fp_matrix& var_action(int v) const { return var_mult_[v]; }
  const fp_matrix& monomial_action(int basis_idx) const { return mono_mult_[basis_idx]; }

  fp_matrix mult_matrix(const ring_element& e) const {
    fp_matrix m(p_, dim(), dim());
    for (int i = 0; i < dim(); ++i) {
      if (e.coords[i] == 0) continue;
      const fp_matrix& mm = mono_mult_[i];
      for (int r = 0; r < dim(); ++r)
        for (int c = 0; c < dim(); ++c)
          m.at(r, c) = (m.at(r, c) + e.coords[i] * mm.at(r, c)) % p_;
    }
    return m;
  }

  ring_element mul(const ring_element& a, const ring_element& b) const {
    ring_element out = zero();
    for (int i = 0; i < dim(); ++i) {
      if (a.coords[i] == 0) continue;
      const fp_matrix& mm = mono_mult_[i];
      for (int r = 0; r < dim(); ++r) {
        std::int64_t acc = out.coords[r];
        for (int c = 0; c < dim(); ++c) acc = (acc + a.coords[i] * mm.at(r, c) % p_ * b.coords[c]) % p_;
        out.coords[r] = acc;
      }
    }
    return out;
  }

  ring_element add(const ring_element& a, const ring_element& b) const {
    ring_element out = zero();
    for (int i = 0; i < dim(); ++i) out.coords[i] = (a.coords[i] + b.coords[i]) % p_;
    return out;
  }

  // Coordinate subspace spanned by basis monomials of degree >= k; this is
  // the ideal m^k because normal forms preserve internal degree.
  subspace power_of_max_ideal(int k) const {
    if (!graded_) throw not_graded_error();
    std::vector<fp_vector> rows;
    for (int i = 0; i < dim(); ++i) {
      if (basis_degrees_[i] >= k) {
        fp_vector v(dim(), 0);
        v[i] = 1;
        rows.push_back(std::move(v));
      }
    }
    return row_space(fp_matrix::from_rows(p_, rows, dim()));
  }

  bool element_homogeneous(const ring_element& e, int* degree_out = nullptr) const {
    int d = -1;
    for (int i = 0; i < dim(); ++i) {
      if (e.coords[i] == 0) continue;
      if (d < 0) d = basis_degrees_[i];
      else if (basis_degrees_[i] != d) return false;
    }
    if (degree_out) *degree_out = d;  // -1 for the zero element
    return true;
  }

  // Is every defining relation of degree >= 2 (minimal standard-graded
  // presentation)? Holds for all rings built by quotient construction.
  bool minimally_presented() const {
    for (const auto& g : gb_)
      if (g.degree() < 2) return false;
    return true;
  }

 private:
  void enumerate_basis() {
    const int n = nvars();
    // Artinian iff every variable has a pure power among the leading terms.
    for (int v = 0; v < n; ++v) {
      bool found = false;
      for (const auto& g : gb_) {
        const monomial& lt = g.leading_monomial();
        bool pure = lt[v] > 0;
        for (int w = 0; w < n && pure; ++w)
          if (w != v && lt[w] != 0) pure = false;
        if (pure) { found = true; break; }
      }
      if (!found) throw not_artinian_error();
    }
    std::vector<monomial> queue{monomial(n, 0)};
    std::map<monomial, bool> seen;
    seen[queue[0]] = true;
    std::vector<monomial> standard;
    while (!queue.empty()) {
      monomial m = queue.back();
      queue.pop_back();
      bool divisible = false;
      for (const auto& g : gb_)
        if (mono_divides(g.leading_monomial(), m)) { divisible = true; break; }
      if (divisible) continue;
      standard.push_back(m);
      for (int v = 0; v < n; ++v) {
        monomial next = m;
        ++next[v];
        if (!seen[next]) {
          seen[next] = true;
          queue.push_back(next);
        }
      }
    }
    std::sort(standard.begin(), standard.end(), [](const monomial& a, const monomial& b) {
      const int da = mono_degree(a), db = mono_degree(b);
      if (da != db) return da < db;
      return degrevlex_greater(b, a);
    });
    basis_ = std::move(standard);
    for (int i = 0; i < dim(); ++i) {
      basis_index_[basis_[i]] = i;
      basis_degrees_.push_back(mono_degree(basis_[i]));
    }
  }

  void build_multiplication() {
    const int n = nvars(), d = dim();
    var_mult_.assign(n, fp_matrix(p_, d, d));
    for (int v = 0; v < n; ++v) {
      for (int j = 0; j < d; ++j) {
        monomial m = basis_[j];
        ++m[v];
        polynomial f(p_, n);
        f.add_term(m, 1);
        ring_element nf = normal_form(f);
        for (int i = 0; i < d; ++i) var_mult_[v].at(i, j) = nf.coords[i];
      }
    }
    mono_mult_.reserve(d);
    for (int i = 0; i < d; ++i) {
      fp_matrix m = fp_matrix::identity(p_, d);
      for (int v = 0; v < n; ++v)
        for (int e = 0; e < basis_[i][v]; ++e) m = var_mult_[v] * m;
      mono_mult_.push_back(std::move(m));
    }
  }

  std::int64_t p_;
  std::vector<std::string> vars_;
  std::vector<polynomial> relations_;
  std::vector<polynomial> gb_;
  bool graded_ = false;
  std::vector<monomial> basis_;
  std::map<monomial, int> basis_index_;
  std::vector<int> basis_degrees_;
  std::vector<fp_matrix> var_mult_;
  std::vector<fp_matrix> mono_mult_;
};

inline quotient_ring make_ring(const ring_spec& spec) {
  return quotient_ring(spec.p, spec.vars, spec.relations());
}

struct ring_ideal {
  const quotient_ring* owner = nullptr;
  std::vector<ring_element> gens;
  subspace space;  // k-span of {g * b : g in gens, b in monomial basis}

  int dim() const { return space.dim(); }
};

inline ring_ideal make_ideal(const quotient_ring& R, std::vector<ring_element> gens) {
  std::vector<fp_vector> rows;
  for (const auto& g : gens) {
    if (g.owner != &R) throw dimension_mismatch("ideal generator owner");
    const fp_matrix m = R.mult_matrix(g);
    for (int c = 0; c < R.dim(); ++c) {
      fp_vector col(R.dim());
      for (int r = 0; r < R.dim(); ++r) col[r] = m.at(r, c);
      rows.push_back(std::move(col));
    }
  }
  subspace sp = row_space(fp_matrix::from_rows(R.p(), rows, R.dim()));
  return {&R, std::move(gens), std::move(sp)};
}

inline ring_ideal make_ideal(const quotient_ring& R, const std::vector<polynomial>& gens) {
  std::vector<ring_element> elems;
  for (const auto& g : gens) elems.push_back(R.normal_form(g));
  return make_ideal(R, std::move(elems));
}

inline ring_ideal maximal_ideal(const quotient_ring& R) {
  std::vector<ring_element> gens;
  for (int v = 0; v < R.nvars(); ++v) gens.push_back(R.variable(v));
  return make_ideal(R, std::move(gens));
}

// m * I as an ideal, generated by {x_v * g}.
inline ring_ideal ideal_m_times(const quotient_ring& R, const ring_ideal& I) {
  std::vector<ring_element> gens;
  for (const auto& g : I.gens)
    for (int v = 0; v < R.nvars(); ++v) gens.push_back(R.mul(R.variable(v), g));
  return make_ideal(R, std::move(gens));
}

// Discard generators lying in mI + span(already kept); afterwards
// |gens| = dim I/mI.
inline ring_ideal trim_ideal(const quotient_ring& R, const ring_ideal& I) {
  const ring_ideal mI = ideal_m_times(R, I);
  subspace current = mI.space;
  std::vector<ring_element> kept;
  for (const auto& g : I.gens) {
    if (current.contains(g.coords)) continue;
    kept.push_back(g);
    std::vector<fp_vector> rows{g.coords};
    current = subspace_sum(current, row_space(fp_matrix::from_rows(R.p(), rows, R.dim())));
  }
  ring_ideal out = make_ideal(R, kept);
  if (!(out.space == I.space)) throw std::runtime_error("trim changed the ideal");
  return out;
}

inline int minimal_generator_count(const quotient_ring& R, const ring_ideal& I) {
  return I.dim() - ideal_m_times(R, I).dim();
}

// Necessary condition for largeness: I cap m^2 = mI.
struct nc_result {
  bool holds = false;
  std::optional<fp_vector> witness;  // element of (I cap m^2) \ mI
  int i_cap_m2_dim = 0;
  int mi_dim = 0;
};

inline nc_result check_nc(const quotient_ring& R, const ring_ideal& I) {
  const subspace m2 = R.power_of_max_ideal(2);
  const subspace lhs = subspace_intersect(I.space, m2);
  const subspace rhs = ideal_m_times(R, I).space;
  nc_result out;
  out.i_cap_m2_dim = lhs.dim();
  out.mi_dim = rhs.dim();
  out.holds = (lhs == rhs);
  if (!out.holds)
    for (int r = 0; r < lhs.dim(); ++r)
      if (!rhs.contains(lhs.basis.row(r))) {
        out.witness = lhs.basis.row(r);
        break;
      }
  return out;
}

// (0 : I) = {a : a g = 0 for every generator g}.
inline ring_ideal annihilator(const quotient_ring& R, const ring_ideal& I) {
  if (I.gens.empty()) {
    std::vector<ring_element> gens{R.one()};
    return make_ideal(R, std::move(gens));
  }
  fp_matrix stacked(R.p(), 0, R.dim());
  bool first = true;
  for (const auto& g : I.gens) {
    const fp_matrix m = R.mult_matrix(g);
    stacked = first ? m : stack_rows(stacked, m);
    first = false;
  }
  subspace ker = kernel_basis(stacked);
  std::vector<ring_element> gens;
  for (int r = 0; r < ker.dim(); ++r) gens.push_back(ring_element{&R, ker.basis.row(r)});
  ring_ideal out = make_ideal(R, std::move(gens));
  return trim_ideal(R, out);
}

// ---- quotient ring construction -----------------------------------------

// Ring homomorphism determined by images of the source variables.
struct ring_hom {
  const quotient_ring* from = nullptr;
  const quotient_ring* to = nullptr;
  std::vector<polynomial> var_images;  // over `to`'s variables

  ring_element apply(const ring_element& e) const {
    const polynomial f = from->lift(e);
    return to->normal_form(f.substitute(var_images, to->nvars()));
  }
  ring_element apply(const polynomial& f) const {
    return to->normal_form(f.substitute(var_images, to->nvars()));
  }
};

struct quotient_result {
  std::shared_ptr<quotient_ring> ring;  // S = R/I, minimally presented
  ring_hom proj;                        // R -> S
  int embdim = 0;
  // Linear generators of I in variable coordinates, RREF (s x n).
  fp_matrix linear_forms;
  std::vector<int> pivot_vars;  // eliminated
  std::vector<int> free_vars;   // surviving, in order, = variables of S
};

// Present S = R/I minimally: homogeneous linear generators of I eliminate
// variables; higher-degree generators become relations.
inline quotient_result quotient_by(const quotient_ring& R, const ring_ideal& I) {
  if (!R.graded()) throw not_graded_error();
  const int n = R.nvars();
  for (const auto& g : I.gens)
    if (!R.element_homogeneous(g)) throw non_homogeneous_error();

  const ring_ideal trimmed = trim_ideal(R, I);
  std::vector<fp_vector> linear_rows;
  std::vector<polynomial> higher;
  for (const auto& g : trimmed.gens) {
    int d = -1;
    R.element_homogeneous(g, &d);
    if (d <= 0) continue;
    if (d == 1) {
      fp_vector row(n, 0);
      for (int v = 0; v < n; ++v) {
        monomial m(n, 0);
        m[v] = 1;
        row[v] = g.coords[R.basis_index(m)];
      }
      linear_rows.push_back(std::move(row));
    } else {
      higher.push_back(R.lift(g));
    }
  }

  subspace lin = row_space(fp_matrix::from_rows(R.p(), linear_rows, n));
  std::vector<bool> is_pivot(n, false);
  for (int c : lin.pivot_cols) is_pivot[c] = true;
  quotient_result out;
  for (int v = 0; v < n; ++v)
    (is_pivot[v] ? out.pivot_vars : out.free_vars).push_back(v);
  out.linear_forms = lin.basis;

  const int nf = static_cast<int>(out.free_vars.size());
  std::vector<std::string> new_vars;
  for (int v : out.free_vars) new_vars.push_back(R.vars()[v]);

  // Old variable -> polynomial in the new variables.
  std::vector<polynomial> images(n, polynomial(R.p(), nf));
  std::vector<int> new_index(n, -1);
  for (int j = 0; j < nf; ++j) new_index[out.free_vars[j]] = j;
  for (int v = 0; v < n; ++v) {
    if (!is_pivot[v]) {
      images[v] = polynomial::variable(R.p(), nf, new_index[v]);
      continue;
    }
    // v is the pivot of some RREF row: x_v = -sum(coeff_f * x_f).
    int row = -1;
    for (int r = 0; r < lin.dim(); ++r)
      if (lin.pivot_cols[r] == v) { row = r; break; }
    polynomial img(R.p(), nf);
    for (int j = 0; j < nf; ++j) {
      const std::int64_t c = lin.basis.at(row, out.free_vars[j]);
      if (c != 0) img = img - polynomial::variable(R.p(), nf, j, c);
    }
    images[v] = img;
  }

  std::vector<polynomial> new_relations;
  for (const auto& f : R.relations()) new_relations.push_back(f.substitute(images, nf));
  for (const auto& f : higher) new_relations.push_back(f.substitute(images, nf));

  out.ring = std::make_shared<quotient_ring>(R.p(), new_vars, new_relations);
  out.proj = ring_hom{&R, out.ring.get(), images};
  out.embdim = nf;
  if (out.ring->dim() != R.dim() - I.space.dim())
    throw std::runtime_error("quotient dimension mismatch");
  return out;
}

// Parse a full ring spec into a ring plus its optional distinguished ideal.
struct parsed_ring {
  std::shared_ptr<quotient_ring> ring;
  std::vector<polynomial> ideal_gens;
  int truncation = 0;
};

inline parsed_ring parse_ring(const std::string& text) {
  const ring_spec spec = parse_ring_spec(text);
  parsed_ring out;
  out.ring = std::make_shared<quotient_ring>(spec.p, spec.vars, spec.relations());
  out.ideal_gens = spec.ideal_gens();
  out.truncation = spec.truncation;
  return out;
}

}  // namespace largehom
