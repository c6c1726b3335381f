#pragma once

// Koszul complexes on minimal generating sets, their homology with chosen
// cycle representatives, the wedge product on homology, and the induced
// maps H(I) -> H(R) and H(R) -> H(S).

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "largehom/fp.hpp"
#include "largehom/parallel.hpp"
#include "largehom/ring.hpp"

namespace largehom {

struct nc_violation_error : std::runtime_error {
  nc_violation_error() : std::runtime_error("I cap m^2 != mI; K(I) is not a subcomplex of K(R)") {}
};

struct degree_out_of_range : std::runtime_error {
  degree_out_of_range() : std::runtime_error("homological degree out of range") {}
};

struct not_power_ideal_error : std::runtime_error {
  not_power_ideal_error()
      : std::runtime_error("ring is not of the form Q/n^p (pure power of the maximal ideal)") {}
};

inline int popcount32(std::uint32_t x) {
  int n = 0;
  while (x) { x &= x - 1; ++n; }
  return n;
}

class koszul_complex {
 public:
  koszul_complex(const quotient_ring& R, std::vector<ring_element> gens)
      : R_(&R), gens_(std::move(gens)), r_(static_cast<int>(gens_.size())) {
    for (const auto& g : gens_) {
      int d = -1;
      if (!R.element_homogeneous(g, &d)) throw non_homogeneous_error();
      gen_degrees_.push_back(d);
    }
    subsets_.assign(r_ + 1, {});
    subset_index_.assign(r_ + 1, {});
    for (std::uint32_t s = 0; s < (1u << r_); ++s) {
      const int i = popcount32(s);
      subset_index_[i][s] = static_cast<int>(subsets_[i].size());
      subsets_[i].push_back(s);
    }
    std::vector<fp_matrix> gen_mult;
    for (const auto& g : gens_) gen_mult.push_back(R.mult_matrix(g));

    diff_.assign(r_ + 1, fp_matrix());
    const int d = R.dim();
    for (int i = 1; i <= r_; ++i) {
      fp_matrix m(R.p(), static_cast<int>(subsets_[i - 1].size()) * d,
                  static_cast<int>(subsets_[i].size()) * d);
      for (std::size_t si = 0; si < subsets_[i].size(); ++si) {
        const std::uint32_t s = subsets_[i][si];
        int pos = 0;
        for (int j = 0; j < r_; ++j) {
          if (!(s & (1u << j))) continue;
          const std::uint32_t t = s & ~(1u << j);
          const int ti = subset_index_[i - 1].at(t);
          const std::int64_t sign = (pos % 2 == 0) ? 1 : R.p() - 1;
          const fp_matrix& gm = gen_mult[j];
          for (int rr = 0; rr < d; ++rr)
            for (int cc = 0; cc < d; ++cc)
              m.at(ti * d + rr, static_cast<int>(si) * d + cc) =
                  (m.at(ti * d + rr, static_cast<int>(si) * d + cc) + sign * gm.at(rr, cc)) %
                  R.p();
          ++pos;
        }
      }
      diff_[i] = std::move(m);
    }
    for (int i = 1; i + 1 <= r_; ++i)
      if (!(diff_[i] * diff_[i + 1]).is_zero())
        throw std::runtime_error("Koszul differential fails d o d = 0");
  }

  const quotient_ring& ring() const { return *R_; }
  const std::vector<ring_element>& gens() const { return gens_; }
  int length() const { return r_; }
  int module_rank(int i) const {
    return (i < 0 || i > r_) ? 0 : static_cast<int>(subsets_[i].size());
  }
  int flat_dim(int i) const { return module_rank(i) * R_->dim(); }
  const fp_matrix& differential(int i) const { return diff_[i]; }
  const std::vector<std::uint32_t>& subsets(int i) const { return subsets_[i]; }
  int subset_position(int i, std::uint32_t s) const { return subset_index_[i].at(s); }

  // Internal degree of flat coordinate (subset slot, ring basis slot).
  int coord_degree(int i, int flat) const {
    const int d = R_->dim();
    const std::uint32_t s = subsets_[i][flat / d];
    int deg = R_->basis_degree(flat % d);
    for (int j = 0; j < r_; ++j)
      if (s & (1u << j)) deg += gen_degrees_[j];
    return deg;
  }

  // Wedge product of flat chains, K_i x K_j -> K_{i+j}.
  fp_vector wedge(int i, const fp_vector& v, int j, const fp_vector& w) const {
    const int d = R_->dim();
    const std::int64_t p = R_->p();
    fp_vector out(flat_dim(i + j), 0);
    if (i + j > r_) return out;
    for (std::size_t si = 0; si < subsets_[i].size(); ++si) {
      const std::uint32_t s = subsets_[i][si];
      for (std::size_t tj = 0; tj < subsets_[j].size(); ++tj) {
        const std::uint32_t t = subsets_[j][tj];
        if (s & t) continue;
        // Parity of pairs (a in s, b in t) with a > b.
        int inv = 0;
        for (int a = 0; a < r_; ++a)
          if (s & (1u << a))
            for (int b = 0; b < a; ++b)
              if (t & (1u << b)) ++inv;
        const std::int64_t sign = (inv % 2 == 0) ? 1 : p - 1;
        const int ui = subset_position(i + j, s | t);
        for (int bs = 0; bs < d; ++bs) {
          const std::int64_t a = v[si * d + bs];
          if (a == 0) continue;
          const fp_matrix& mm = R_->monomial_action(bs);
          for (int bt = 0; bt < d; ++bt) {
            const std::int64_t b = w[tj * d + bt];
            if (b == 0) continue;
            const std::int64_t c = sign * a % p * b % p;
            for (int rr = 0; rr < d; ++rr)
              out[ui * d + rr] = (out[ui * d + rr] + c * mm.at(rr, bt)) % p;
          }
        }
      }
    }
    return out;
  }

  // Multiplication by a ring element on K_i, flattened.
  fp_vector scalar_action(int i, const ring_element& a, const fp_vector& v) const {
    const int d = R_->dim();
    const fp_matrix m = R_->mult_matrix(a);
    fp_vector out(flat_dim(i), 0);
    for (int blk = 0; blk < module_rank(i); ++blk) {
      fp_vector piece(v.begin() + blk * d, v.begin() + (blk + 1) * d);
      fp_vector img = m.apply(piece);
      for (int rr = 0; rr < d; ++rr) out[blk * d + rr] = img[rr];
    }
    return out;
  }

 private:
  const quotient_ring* R_;
  std::vector<ring_element> gens_;
  std::vector<int> gen_degrees_;
  int r_;
  std::vector<std::vector<std::uint32_t>> subsets_;
  std::vector<std::map<std::uint32_t, int>> subset_index_;
  std::vector<fp_matrix> diff_;
};

class koszul_homology {
 public:
  explicit koszul_homology(koszul_complex complex) : k_(std::move(complex)) {
    const int r = k_.length();
    cycles_.resize(r + 1);
    boundaries_.resize(r + 1);
    reps_.resize(r + 1);
    rep_degrees_.resize(r + 1);
    solvers_.resize(r + 1);
    parallel_for(r + 1, [&](int i) {
      cycles_[i] = (i == 0) ? subspace::full(k_.ring().p(), k_.flat_dim(0))
                            : kernel_basis(k_.differential(i));
      boundaries_[i] = (i == r) ? subspace::zero(k_.ring().p(), k_.flat_dim(i))
                                : image_basis(k_.differential(i + 1));
    });
    for (int i = 0; i <= r; ++i) {
      // Homogeneous representatives: RREF rows of Z independent modulo B.
      subspace span = boundaries_[i];
      std::vector<fp_vector> reps;
      for (int row = 0; row < cycles_[i].dim(); ++row) {
        fp_vector v = cycles_[i].basis.row(row);
        if (span.contains(v)) continue;
        reps.push_back(v);
        span = subspace_sum(span, row_space(fp_matrix::from_rows(k_.ring().p(), {v},
                                                                 k_.flat_dim(i))));
      }
      reps_[i] = fp_matrix::from_rows(k_.ring().p(), reps, k_.flat_dim(i));
      for (const auto& v : reps) {
        int deg = -1;
        for (int c = 0; c < k_.flat_dim(i); ++c)
          if (v[c] != 0) {
            const int dc = k_.coord_degree(i, c);
            if (deg < 0) deg = dc;
            else if (deg != dc) throw std::runtime_error("inhomogeneous cycle representative");
          }
        rep_degrees_[i].push_back(deg);
      }
      // Solver for H-coordinates: v = reps^T h + B^T b.
      solvers_[i] = std::make_shared<linear_solver>(
          stack_rows(reps_[i], boundaries_[i].basis).transpose());
    }
  }

  const koszul_complex& complex() const { return k_; }
  int length() const { return k_.length(); }
  const subspace& cycles(int i) const { return cycles_[i]; }
  const subspace& boundaries(int i) const { return boundaries_[i]; }
  const fp_matrix& representatives(int i) const { return reps_[i]; }
  const std::vector<int>& representative_degrees(int i) const { return rep_degrees_[i]; }

  int h_dim(int i) const {
    if (i < 0 || i > k_.length()) return 0;
    return cycles_[i].dim() - boundaries_[i].dim();
  }

  // Coordinates of a cycle's class in the chosen representative basis.
  fp_vector class_coords(int i, const fp_vector& cycle) const {
    auto sol = solvers_[i]->solve(cycle);
    if (!sol) throw std::runtime_error("class_coords: input is not a cycle");
    return fp_vector(sol->begin(), sol->begin() + reps_[i].rows());
  }

 private:
  koszul_complex k_;
  std::vector<subspace> cycles_, boundaries_;
  std::vector<fp_matrix> reps_;
  std::vector<std::vector<int>> rep_degrees_;
  std::vector<std::shared_ptr<linear_solver>> solvers_;
};

inline koszul_homology koszul_homology_of(const quotient_ring& R,
                                          std::vector<ring_element> gens) {
  return koszul_homology(koszul_complex(R, std::move(gens)));
}

// Homology of K(m): the generating set is the full list of variables.
inline koszul_homology koszul_homology_of_ring(const quotient_ring& R) {
  std::vector<ring_element> gens;
  for (int v = 0; v < R.nvars(); ++v) gens.push_back(R.variable(v));
  return koszul_homology_of(R, std::move(gens));
}

// Subspace of H_{i+j} spanned by products of H_i and H_j classes, in the
// coordinates of the chosen representatives of H_{i+j}.
inline subspace homology_product(const koszul_homology& h, int i, int j) {
  const int target = i + j;
  if (target > h.length()) throw degree_out_of_range();
  std::vector<fp_vector> rows;
  for (int a = 0; a < h.representatives(i).rows(); ++a)
    for (int b = 0; b < h.representatives(j).rows(); ++b) {
      fp_vector prod = h.complex().wedge(i, h.representatives(i).row(a), j,
                                         h.representatives(j).row(b));
      rows.push_back(h.class_coords(target, prod));
    }
  return row_space(fp_matrix::from_rows(h.complex().ring().p(), rows, h.h_dim(target)));
}

// Adapted minimal generating set of m: the linear generators of I first
// (they die in S), then the surviving variables.
inline koszul_homology koszul_homology_adapted(const quotient_ring& R, const quotient_result& q) {
  std::vector<ring_element> gens;
  for (int row = 0; row < q.linear_forms.rows(); ++row) {
    polynomial f(R.p(), R.nvars());
    for (int v = 0; v < R.nvars(); ++v)
      if (q.linear_forms.at(row, v) != 0)
        f = f + polynomial::variable(R.p(), R.nvars(), v, q.linear_forms.at(row, v));
    gens.push_back(R.normal_form(f));
  }
  for (int v : q.free_vars) gens.push_back(R.variable(v));
  return koszul_homology_of(R, std::move(gens));
}

struct induced_map_result {
  fp_matrix matrix;  // h_dim_S(i) x h_dim_R(i), on representative coordinates
  bool surjective = false;
};

// H_i(R) -> H_i(S) induced by K(R) -> K(S): coefficients pass through the
// projection, wedge slots of the dying generators map to zero.
// `hr` must be built by koszul_homology_adapted(R, q); `hs` is the Koszul
// homology of the ring of q.
inline induced_map_result induced_map_hr_to_hs(const koszul_homology& hr,
                                               const koszul_homology& hs,
                                               const quotient_result& q, int i) {
  const quotient_ring& R = *q.proj.from;
  const quotient_ring& S = *q.ring;
  if (i < 0 || i > hr.length()) throw degree_out_of_range();
  const int s = q.linear_forms.rows();  // dying generators occupy slots [0, s)
  const int dR = R.dim(), dS = S.dim();

  // k-linear matrix of proj on ring coordinates.
  fp_matrix proj_mat(R.p(), dS, dR);
  for (int b = 0; b < dR; ++b) {
    ring_element img = q.proj.apply(ring_element{&R, [&] {
                                      fp_vector v(dR, 0);
                                      v[b] = 1;
                                      return v;
                                    }()});
    for (int rr = 0; rr < dS; ++rr) proj_mat.at(rr, b) = img.coords[rr];
  }

  induced_map_result out;
  out.matrix = fp_matrix(R.p(), hs.h_dim(i), hr.h_dim(i));
  if (i > hs.length()) {  // H_i(S) = 0
    out.surjective = true;
    return out;
  }
  for (int rep = 0; rep < hr.representatives(i).rows(); ++rep) {
    const fp_vector v = hr.representatives(i).row(rep);
    fp_vector img(hs.complex().flat_dim(i), 0);
    if (i <= hs.length()) {
      for (std::size_t si = 0; si < hr.complex().subsets(i).size(); ++si) {
        const std::uint32_t sub = hr.complex().subsets(i)[si];
        if (sub & ((1u << s) - 1)) continue;  // hits a dying generator
        const std::uint32_t shifted = sub >> s;
        const int ti = hs.complex().subset_position(i, shifted);
        for (int b = 0; b < dR; ++b) {
          const std::int64_t c = v[si * dR + b];
          if (c == 0) continue;
          for (int rr = 0; rr < dS; ++rr)
            img[ti * dS + rr] = (img[ti * dS + rr] + c * proj_mat.at(rr, b)) % R.p();
        }
      }
    }
    const fp_vector cls = hs.class_coords(i, img);
    for (int rr = 0; rr < hs.h_dim(i); ++rr) out.matrix.at(rr, rep) = cls[rr];
  }
  out.surjective = (rank_of(out.matrix) == hs.h_dim(i));
  return out;
}

struct h1_map_result {
  fp_matrix matrix;       // H_1(I) tensor k -> H_1(R), complement coordinates
  fp_matrix full_matrix;  // H_1(I) -> H_1(R) on representative coordinates
  bool injective = false;
  bool nonzero = false;
  int h1i_tensor_dim = 0;
};

// The natural map H_1(I) tensor_R k -> H_1(R). Requires NC, so that K(I) is
// a subcomplex of K(R) for the adapted generating set.
inline h1_map_result map_h1i_to_h1r(const quotient_ring& R, const ring_ideal& I,
                                    const quotient_result& q) {
  if (!check_nc(R, I).holds) throw nc_violation_error();
  const int s = q.linear_forms.rows();
  const int dR = R.dim();

  std::vector<ring_element> igens;
  for (int row = 0; row < s; ++row) {
    polynomial f(R.p(), R.nvars());
    for (int v = 0; v < R.nvars(); ++v)
      if (q.linear_forms.at(row, v) != 0)
        f = f + polynomial::variable(R.p(), R.nvars(), v, q.linear_forms.at(row, v));
    igens.push_back(R.normal_form(f));
  }
  koszul_homology hi = koszul_homology_of(R, igens);
  koszul_homology hr = koszul_homology_adapted(R, q);

  const int h1i = hi.h_dim(1), h1r = hr.h_dim(1);
  h1_map_result out;
  out.full_matrix = fp_matrix(R.p(), h1r, h1i);

  // Push each H_1(I) representative into K_1(R) (first s wedge slots).
  for (int rep = 0; rep < h1i; ++rep) {
    const fp_vector v = hi.representatives(1).row(rep);
    fp_vector w(hr.complex().flat_dim(1), 0);
    for (int blk = 0; blk < s; ++blk) {
      const int src = hi.complex().subset_position(1, 1u << blk);
      const int dst = hr.complex().subset_position(1, 1u << blk);
      for (int b = 0; b < dR; ++b) w[dst * dR + b] = v[src * dR + b];
    }
    const fp_vector cls = hr.class_coords(1, w);
    for (int rr = 0; rr < h1r; ++rr) out.full_matrix.at(rr, rep) = cls[rr];
  }
  out.nonzero = rank_of(out.full_matrix) > 0;

  // m H_1(I) in representative coordinates: classes of v * rep.
  std::vector<fp_vector> mh1_rows;
  for (int rep = 0; rep < h1i; ++rep)
    for (int v = 0; v < R.nvars(); ++v) {
      fp_vector moved =
          hi.complex().scalar_action(1, R.variable(v), hi.representatives(1).row(rep));
      mh1_rows.push_back(hi.class_coords(1, moved));
    }
  subspace mh1 = row_space(fp_matrix::from_rows(R.p(), mh1_rows, h1i));
  out.h1i_tensor_dim = h1i - mh1.dim();
  out.matrix = induced_quotient_map(out.full_matrix, mh1, subspace::zero(R.p(), h1r));
  out.injective = (rank_of(out.matrix) == out.h1i_tensor_dim);
  return out;
}

// R = Q/n^powk detection: the monomial basis is exactly all monomials of
// internal degree < powk.
inline bool is_power_ring(const quotient_ring& R, int* power_out = nullptr) {
  if (!R.graded()) return false;
  if (R.nvars() == 0) return false;
  const int powk = R.max_degree() + 1;
  if (powk < 2) return false;
  // Count of monomials of degree < powk in nvars variables, vs basis size.
  long long count = 0, per_degree = 1;
  for (int d = 0; d < powk; ++d) {
    count += per_degree;
    per_degree = per_degree * (R.nvars() + d) / (d + 1);
  }
  if (count != R.dim()) return false;
  if (power_out) *power_out = powk;
  return true;
}

struct power_check_result {
  bool holds = false;
  std::vector<int> failing_degrees;
};

// Over R = Q/n^powk with NC holding: every class of H_i(I) has a
// representative inside m^{powk-1} K_i(I).
inline power_check_result lemma_power_check(const quotient_ring& R, const ring_ideal& I) {
  int powk = 0;
  if (!is_power_ring(R, &powk)) throw not_power_ideal_error();
  if (!check_nc(R, I).holds) throw nc_violation_error();
  const ring_ideal trimmed = trim_ideal(R, I);
  koszul_homology h = koszul_homology_of(R, trimmed.gens);
  power_check_result out;
  out.holds = true;
  const int dR = R.dim();
  for (int i = 1; i <= h.length(); ++i) {
    // Coordinate subspace m^{powk-1} K_i.
    std::vector<fp_vector> rows;
    for (int c = 0; c < h.complex().flat_dim(i); ++c)
      if (R.basis_degree(c % dR) >= powk - 1) {
        fp_vector v(h.complex().flat_dim(i), 0);
        v[c] = 1;
        rows.push_back(std::move(v));
      }
    subspace w = row_space(fp_matrix::from_rows(R.p(), rows, h.complex().flat_dim(i)));
    if (!h.cycles(i).contains(w))
      throw std::runtime_error("m^{p-1} K_i contains non-cycles");  // impossible for linear gens
    subspace reach = subspace_sum(w, h.boundaries(i));
    if (!reach.contains(h.cycles(i))) {
      out.holds = false;
      out.failing_degrees.push_back(i);
    }
  }
  return out;
}

}  // namespace largehom
