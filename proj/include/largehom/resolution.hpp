#pragma once
// Minimal graded free resolutions over Artinian graded algebras.
//
// A finitely generated module is carried as a finite-dimensional k-space with
// one commuting action matrix per ring variable.  Syzygy modules are kept as
// k-subspaces of flattened free modules (a free module R^b flattens to
// k^{b*dim R}, coordinate (slot g, basis monomial b) at index g*dimR + b), so
// every resolution step is exact linear algebra over F_p: minimal generators
// come from a complement of m*M, the next syzygy is the kernel of the
// evaluation map, and variable actions restrict to that kernel.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "largehom/parallel.hpp"
#include "largehom/ring.hpp"

namespace largehom {

struct lift_failure : std::runtime_error {
  lift_failure() : std::runtime_error("chain-map lift has no solution") {}
};

// Finite-dimensional module over a quotient ring: variable action matrices
// plus the internal degree of each basis vector.
class fd_module {
 public:
  fd_module(const quotient_ring& r, std::vector<fp_matrix> actions,
            std::vector<int> degrees)
      : owner_(&r), actions_(std::move(actions)), degrees_(std::move(degrees)) {
    verify();
  }

  // Internal constructor for actions obtained by restricting/inducing already
  // verified ones; skips the quadratic-cost consistency asserts.
  static fd_module trusted(const quotient_ring& r, std::vector<fp_matrix> actions,
                           std::vector<int> degrees) {
    fd_module m;
    m.owner_ = &r;
    m.actions_ = std::move(actions);
    m.degrees_ = std::move(degrees);
    return m;
  }

  static fd_module field(const quotient_ring& r) {
    std::vector<fp_matrix> acts(r.nvars(), fp_matrix(r.p(), 1, 1));
    return fd_module(r, std::move(acts), {0});
  }

  static fd_module regular(const quotient_ring& r) {
    std::vector<fp_matrix> acts;
    for (int v = 0; v < r.nvars(); ++v) acts.push_back(r.var_action(v));
    return fd_module(r, std::move(acts), r.basis_degrees());
  }

  static fd_module zero(const quotient_ring& r) {
    std::vector<fp_matrix> acts(r.nvars(), fp_matrix(r.p(), 0, 0));
    return trusted(r, std::move(acts), {});
  }

  // Submodule of the regular module spanned by an R-stable subspace.
  static fd_module submodule(const quotient_ring& r, const subspace& w) {
    return submodule_of_free(r, 1, {0}, w);
  }

  // R / w for an R-stable subspace (e.g. an ideal's span).
  static fd_module quotient(const quotient_ring& r, const subspace& w) {
    return quotient_of_free(r, 1, {0}, w);
  }

  // Submodule of a free module R(-s_0) + ... + R(-s_{rank-1}) given by a
  // subspace of the flattened free module; actions restrict.
  static fd_module submodule_of_free(const quotient_ring& r, int rank,
                                     const std::vector<int>& shifts,
                                     const subspace& w) {
    std::vector<int> flat_deg = flat_degrees(r, shifts);
    std::vector<int> degrees(w.dim());
    for (int i = 0; i < w.dim(); ++i)
      degrees[i] = homogeneous_degree(w.basis.row(i), flat_deg);
    std::vector<fp_matrix> acts;
    for (int v = 0; v < r.nvars(); ++v) {
      fp_matrix a(r.p(), w.dim(), w.dim());
      for (int j = 0; j < w.dim(); ++j) {
        fp_vector img = block_var_apply(r, rank, v, w.basis.row(j));
        std::optional<fp_vector> c = w.coordinates(img);
        if (!c) throw std::runtime_error("subspace is not an R-submodule");
        for (int i = 0; i < w.dim(); ++i) a.at(i, j) = (*c)[i];
      }
      acts.push_back(std::move(a));
    }
    return fd_module(r, std::move(acts), std::move(degrees));
  }

  // Quotient of a free module by an R-stable subspace.
  static fd_module quotient_of_free(const quotient_ring& r, int rank,
                                    const std::vector<int>& shifts,
                                    const subspace& w) {
    std::vector<int> flat_deg = flat_degrees(r, shifts);
    const int n = rank * r.dim();
    std::vector<bool> is_pivot(n, false);
    for (int c : w.pivot_cols) is_pivot[c] = true;
    std::vector<int> degrees;
    for (int c = 0; c < n; ++c)
      if (!is_pivot[c]) degrees.push_back(flat_deg[c]);
    std::vector<fp_matrix> acts;
    for (int v = 0; v < r.nvars(); ++v) {
      fp_matrix full(r.p(), n, n);
      for (int j = 0; j < n; ++j) {
        fp_vector e(n, 0);
        e[j] = 1;
        fp_vector img = block_var_apply(r, rank, v, e);
        for (int i = 0; i < n; ++i) full.at(i, j) = img[i];
      }
      acts.push_back(induced_quotient_map(full, w, w));
    }
    return fd_module(r, std::move(acts), std::move(degrees));
  }

  const quotient_ring& owner() const { return *owner_; }
  int dim() const { return static_cast<int>(degrees_.size()); }
  const fp_matrix& action(int v) const { return actions_[v]; }
  int degree(int i) const { return degrees_[i]; }
  const std::vector<int>& degrees() const { return degrees_; }

  // Apply a basis monomial of the ring, one variable at a time.
  fp_vector monomial_apply(const monomial& m, fp_vector v) const {
    for (int var = 0; var < static_cast<int>(m.size()); ++var)
      for (int e = 0; e < m[var]; ++e) v = actions_[var].apply(v);
    return v;
  }

  fp_vector element_apply(const ring_element& e, const fp_vector& v) const {
    fp_vector out(dim(), 0);
    const std::int64_t p = owner_->p();
    for (int b = 0; b < owner_->dim(); ++b) {
      if (e.coords[b] == 0) continue;
      fp_vector part = monomial_apply(owner_->basis()[b], v);
      for (int i = 0; i < dim(); ++i)
        out[i] = fp_reduce(out[i] + e.coords[b] * part[i], p);
    }
    return out;
  }

  fp_matrix element_action(const ring_element& e) const {
    fp_matrix a(owner_->p(), dim(), dim());
    for (int j = 0; j < dim(); ++j) {
      fp_vector col(dim(), 0);
      col[j] = 1;
      col = element_apply(e, col);
      for (int i = 0; i < dim(); ++i) a.at(i, j) = col[i];
    }
    return a;
  }

  // m*M as a subspace of the underlying k-space.
  subspace radical_image() const {
    subspace s = subspace::zero(owner_->p(), dim());
    for (const auto& a : actions_) s = subspace_sum(s, image_basis(a));
    return s;
  }

  static std::vector<int> flat_degrees(const quotient_ring& r,
                                       const std::vector<int>& shifts) {
    std::vector<int> out;
    for (int s : shifts)
      for (int b = 0; b < r.dim(); ++b) out.push_back(s + r.basis_degree(b));
    return out;
  }

  static fp_vector block_var_apply(const quotient_ring& r, int rank, int v,
                                   const fp_vector& flat) {
    const int d = r.dim();
    fp_vector out(flat.size(), 0);
    for (int g = 0; g < rank; ++g) {
      fp_vector seg(flat.begin() + g * d, flat.begin() + (g + 1) * d);
      seg = r.var_action(v).apply(seg);
      std::copy(seg.begin(), seg.end(), out.begin() + g * d);
    }
    return out;
  }

 private:
  fd_module() = default;

  static int homogeneous_degree(const fp_vector& v, const std::vector<int>& deg) {
    int d = -1;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] == 0) continue;
      if (d == -1) d = deg[i];
      if (deg[i] != d) throw not_graded_error();
    }
    return d == -1 ? 0 : d;
  }

  void verify() const {
    const int n = owner_->nvars(), d = dim();
    if (static_cast<int>(actions_.size()) != n)
      throw dimension_mismatch("fd_module actions");
    for (const auto& a : actions_)
      if (a.rows() != d || a.cols() != d) throw dimension_mismatch("fd_module actions");
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (!(actions_[u] * actions_[v] == actions_[v] * actions_[u]))
          throw std::runtime_error("fd_module: actions do not commute");
    // The defining relations must annihilate the module.
    const fp_matrix zero_mat(owner_->p(), d, d);
    for (const auto& g : owner_->groebner()) {
      fp_matrix acc(owner_->p(), d, d);
      for (const auto& [mono, coeff] : g.terms()) {
        fp_matrix part = fp_matrix::identity(owner_->p(), d);
        for (int var = 0; var < n; ++var)
          for (int e = 0; e < mono[var]; ++e) part = actions_[var] * part;
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j)
            acc.at(i, j) = fp_reduce(acc.at(i, j) + coeff * part.at(i, j), owner_->p());
      }
      if (!(acc == zero_mat))
        throw std::runtime_error("fd_module: relations not satisfied");
    }
    if (owner_->graded()) {
      for (int v = 0; v < n; ++v)
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j)
            if (actions_[v].at(i, j) != 0 && degrees_[i] != degrees_[j] + 1)
              throw not_graded_error();
    }
  }

  const quotient_ring* owner_ = nullptr;
  std::vector<fp_matrix> actions_;
  std::vector<int> degrees_;
};

// Degree-0 morphism of fd_modules, as a matrix to.dim x from.dim.
struct module_hom {
  const fd_module* from = nullptr;
  const fd_module* to = nullptr;
  fp_matrix matrix;
};

inline module_hom make_module_hom(const fd_module& from, const fd_module& to,
                                  fp_matrix matrix) {
  if (matrix.rows() != to.dim() || matrix.cols() != from.dim())
    throw dimension_mismatch("module_hom");
  for (int v = 0; v < from.owner().nvars(); ++v)
    if (!(matrix * from.action(v) == to.action(v) * matrix))
      throw std::runtime_error("module_hom: does not commute with the actions");
  return {&from, &to, std::move(matrix)};
}

// Minimal free resolution F_N -> ... -> F_0 -> M -> 0, truncated at N.
// flat[0] is the augmentation F_0 -> M; flat[i] (i >= 1) is the flattened
// differential F_i -> F_{i-1}; entries[i][h][g] is the same differential as a
// matrix over R.
// ---------------------------------------------------------------------------
// Degree-blocked linear algebra.  Over a graded ring every map in sight is
// homogeneous, so kernels, radicals, products and coordinate solves split into
// independent blocks indexed by internal degree.  Each block is tiny compared
// to the flattened free module, and the merged blockwise RREF equals the
// global RREF (pivot columns live in disjoint degree classes), so results are
// identical to the dense computations they replace.

namespace detail {

inline std::map<int, std::vector<int>> degree_classes(const std::vector<int>& deg) {
  std::map<int, std::vector<int>> out;
  for (std::size_t i = 0; i < deg.size(); ++i) out[deg[i]].push_back(static_cast<int>(i));
  return out;
}

// A graded subspace of a flattened free module, stored blockwise: one
// canonical RREF basis per internal degree, over that degree's columns.
struct graded_subspace {
  struct block {
    int degree = 0;
    std::vector<int> cols;  // global flat indices of this degree, ascending
    fp_matrix basis;        // RREF over `cols`
    std::vector<int> pivot_local;
  };
  std::vector<block> blocks;  // ascending degree

  int dim() const {
    int s = 0;
    for (const auto& b : blocks) s += b.basis.rows();
    return s;
  }
  const block* at_degree(int d) const {
    for (const auto& b : blocks)
      if (b.degree == d) return &b;
    return nullptr;
  }
};

// Kernel of a homogeneous map ev : (flat free module) -> cur, degreewise.
inline graded_subspace graded_kernel(const fp_matrix& ev,
                                     const std::vector<int>& row_deg,
                                     const std::vector<int>& col_deg) {
  graded_subspace out;
  auto row_classes = degree_classes(row_deg);
  for (const auto& [d, cols] : degree_classes(col_deg)) {
    const std::vector<int>* rows = nullptr;
    if (auto it = row_classes.find(d); it != row_classes.end()) rows = &it->second;
    const int nr = rows ? static_cast<int>(rows->size()) : 0;
    fp_matrix sub(ev.p(), nr, static_cast<int>(cols.size()));
    for (int r = 0; r < nr; ++r)
      for (std::size_t c = 0; c < cols.size(); ++c)
        sub.at(r, static_cast<int>(c)) = ev.at((*rows)[r], cols[c]);
    subspace ker = kernel_basis(sub);
    if (ker.dim() == 0) continue;
    graded_subspace::block blk;
    blk.degree = d;
    blk.cols = cols;
    blk.basis = std::move(ker.basis);
    blk.pivot_local = std::move(ker.pivot_cols);
    out.blocks.push_back(std::move(blk));
  }
  return out;
}

// Image of x_v on one compact block row: contributions land in the flat
// columns of the next degree; `target_pos[gc]` maps a global flat index to
// its position inside that class (or -1).
inline fp_vector block_row_var_image(const quotient_ring& r, int v,
                                     const std::vector<int>& src_cols,
                                     const fp_vector& w,
                                     const std::vector<int>& target_pos,
                                     int target_size) {
  const int dr = r.dim();
  const fp_matrix& va = r.var_action(v);
  fp_vector img(target_size, 0);
  for (std::size_t s = 0; s < src_cols.size(); ++s) {
    if (w[s] == 0) continue;
    const int g = src_cols[s] / dr, sb = src_cols[s] % dr;
    for (int tb = 0; tb < dr; ++tb) {
      const std::int64_t a = va.at(tb, sb);
      if (a == 0) continue;
      const int pos = target_pos[g * dr + tb];
      if (pos < 0) throw not_graded_error();
      img[pos] = fp_reduce(img[pos] + a * w[s], r.p());
    }
  }
  return img;
}

// x_v * b' decomposition of each non-constant ring basis monomial, plus the
// basis indices sorted by ascending degree.
struct basis_split {
  std::vector<int> order;
  std::vector<std::pair<int, int>> split;  // b -> (v, index of b / x_v)
};

inline basis_split make_basis_split(const quotient_ring& r) {
  const int dr = r.dim();
  basis_split bs;
  bs.order.resize(dr);
  for (int b = 0; b < dr; ++b) bs.order[b] = b;
  std::sort(bs.order.begin(), bs.order.end(),
            [&](int a, int b) { return r.basis_degree(a) < r.basis_degree(b); });
  bs.split.assign(dr, {-1, -1});
  for (int b = 0; b < dr; ++b) {
    if (r.basis_degree(b) == 0) continue;
    monomial mono = r.basis()[b];
    int v = 0;
    while (mono[v] == 0) ++v;
    --mono[v];
    bs.split[b] = {v, r.basis_index(mono)};
  }
  return bs;
}

// Pivot coordinates of m * cur, found one internal degree at a time.
inline std::vector<bool> generator_pivots(const quotient_ring& r, const fd_module& cur) {
  const int nv = r.nvars();
  auto buckets = degree_classes(cur.degrees());
  std::vector<bool> is_pivot(cur.dim(), false);
  for (const auto& [f, tgt] : buckets) {
    auto it = buckets.find(f - 1);
    if (it == buckets.end()) continue;
    const std::vector<int>& src = it->second;
    fp_matrix rows(r.p(), nv * static_cast<int>(src.size()),
                   static_cast<int>(tgt.size()));
    for (int v = 0; v < nv; ++v)
      for (std::size_t s = 0; s < src.size(); ++s)
        for (std::size_t t = 0; t < tgt.size(); ++t)
          rows.at(v * static_cast<int>(src.size()) + static_cast<int>(s),
                  static_cast<int>(t)) = cur.action(v).at(tgt[t], src[s]);
    for (int pc : rref(std::move(rows)).pivot_cols) is_pivot[tgt[pc]] = true;
  }
  return is_pivot;
}

// Evaluation map F_i -> cur over a graded ring: the column for (g, b) is the
// column for (g, b / x_v) pushed through one degree-restricted action of x_v.
inline fp_matrix build_ev(const quotient_ring& r, const fd_module& cur,
                          const std::vector<int>& gens, const std::vector<int>& shift,
                          const basis_split& bs) {
  const int dr = r.dim();
  const int beta = static_cast<int>(gens.size());
  auto buckets = degree_classes(cur.degrees());
  fp_matrix ev(r.p(), cur.dim(), beta * dr);
  for (int g = 0; g < beta; ++g) {
    std::vector<fp_vector> memo(dr);
    for (int b : bs.order) {
      memo[b] = fp_vector(cur.dim(), 0);
      if (r.basis_degree(b) == 0) {
        memo[b][gens[g]] = 1;
      } else {
        const auto [v, prev] = bs.split[b];
        const fp_vector& w = memo[prev];
        auto tgt = buckets.find(shift[g] + r.basis_degree(b));
        auto srcb = buckets.find(shift[g] + r.basis_degree(b) - 1);
        if (tgt != buckets.end() && srcb != buckets.end())
          for (int t : tgt->second) {
            std::int64_t acc = 0;
            for (int s : srcb->second)
              acc = (acc + cur.action(v).at(t, s) * w[s]) % r.p();
            memo[b][t] = acc;
          }
      }
      for (int row = 0; row < cur.dim(); ++row) ev.at(row, g * dr + b) = memo[b][row];
    }
  }
  return ev;
}

// Syzygy module induced on a graded kernel, in the canonical (pivot-sorted)
// basis ordering; `space` equals what kernel_basis gives on the dense map.
struct syzygy_data {
  subspace space;
  std::vector<int> deg;
  std::vector<fp_matrix> acts;
};

inline syzygy_data induce_syzygy(const quotient_ring& r, const graded_subspace& ker,
                                 const std::vector<int>& flat_deg) {
  const int ambient = static_cast<int>(flat_deg.size());
  const int kd = ker.dim();

  auto flat_classes = degree_classes(flat_deg);
  std::vector<int> flat_pos(flat_deg.size(), -1);
  for (const auto& [d, cols] : flat_classes)
    for (std::size_t c = 0; c < cols.size(); ++c)
      flat_pos[cols[c]] = static_cast<int>(c);

  struct row_ref {
    int pivot, block, local;
  };
  std::vector<row_ref> order;
  for (std::size_t bi = 0; bi < ker.blocks.size(); ++bi) {
    const auto& blk = ker.blocks[bi];
    for (int j = 0; j < blk.basis.rows(); ++j)
      order.push_back({blk.cols[blk.pivot_local[j]], static_cast<int>(bi), j});
  }
  std::sort(order.begin(), order.end(),
            [](const row_ref& a, const row_ref& b) { return a.pivot < b.pivot; });
  std::vector<std::vector<int>> global_of(ker.blocks.size());
  for (std::size_t bi = 0; bi < ker.blocks.size(); ++bi)
    global_of[bi].assign(ker.blocks[bi].basis.rows(), -1);
  for (std::size_t idx = 0; idx < order.size(); ++idx)
    global_of[order[idx].block][order[idx].local] = static_cast<int>(idx);

  syzygy_data out;
  out.space.p = r.p();
  out.space.ambient = ambient;
  out.space.basis = fp_matrix(r.p(), kd, ambient);
  out.deg.resize(kd);
  for (std::size_t idx = 0; idx < order.size(); ++idx) {
    const auto& blk = ker.blocks[order[idx].block];
    const int j = order[idx].local;
    for (std::size_t c = 0; c < blk.cols.size(); ++c)
      out.space.basis.at(static_cast<int>(idx), blk.cols[c]) =
          blk.basis.at(j, static_cast<int>(c));
    out.space.pivot_cols.push_back(order[idx].pivot);
    out.deg[idx] = blk.degree;
  }

  out.acts.assign(r.nvars(), fp_matrix(r.p(), kd, kd));
  for (std::size_t bi = 0; bi < ker.blocks.size(); ++bi) {
    const auto& blk = ker.blocks[bi];
    const graded_subspace::block* tgt = ker.at_degree(blk.degree + 1);
    int tgt_bi = -1;
    if (tgt)
      for (std::size_t t = 0; t < ker.blocks.size(); ++t)
        if (&ker.blocks[t] == tgt) tgt_bi = static_cast<int>(t);
    auto cls = flat_classes.find(blk.degree + 1);
    for (int v = 0; v < r.nvars(); ++v)
      for (int j = 0; j < blk.basis.rows(); ++j) {
        if (cls == flat_classes.end()) continue;  // image is forced to zero
        fp_vector img =
            block_row_var_image(r, v, blk.cols, blk.basis.row(j), flat_pos,
                                static_cast<int>(cls->second.size()));
        if (tgt)
          for (int t = 0; t < tgt->basis.rows(); ++t) {
            const std::int64_t c = img[tgt->pivot_local[t]];
            if (c == 0) continue;
            out.acts[v].at(global_of[tgt_bi][t], global_of[bi][j]) = c;
            const std::int64_t* row = tgt->basis.row_ptr(t);
            for (std::size_t k = 0; k < img.size(); ++k)
              img[k] = fp_reduce(img[k] - c * row[k], r.p());
          }
        for (std::int64_t e : img)
          if (e != 0) throw std::runtime_error("syzygy not stable under action");
      }
  }
  return out;
}

// a * b for homogeneous a, b: only blocks whose three degree labels agree can
// contribute.
inline fp_matrix graded_product(const fp_matrix& a, const std::vector<int>& row_deg,
                                const std::vector<int>& mid_deg, const fp_matrix& b,
                                const std::vector<int>& col_deg) {
  fp_matrix out(a.p(), a.rows(), b.cols());
  auto row_classes = degree_classes(row_deg);
  auto col_classes = degree_classes(col_deg);
  for (const auto& [d, mids] : degree_classes(mid_deg)) {
    auto rit = row_classes.find(d);
    auto cit = col_classes.find(d);
    if (rit == row_classes.end() || cit == col_classes.end()) continue;
    for (int rr : rit->second) {
      std::int64_t* orow = out.row_ptr(rr);
      for (int mm : mids) {
        const std::int64_t va = a.at(rr, mm);
        if (va == 0) continue;
        const std::int64_t* brow = b.row_ptr(mm);
        for (int cc : cit->second) orow[cc] = (orow[cc] + va * brow[cc]) % a.p();
      }
    }
  }
  return out;
}

// Span of the (homogeneous) columns of d, as a canonical subspace of the
// space indexed by d's rows.
inline subspace graded_column_space(const fp_matrix& d, const std::vector<int>& row_deg,
                                    const std::vector<int>& col_deg) {
  auto row_classes = degree_classes(row_deg);
  struct piece {
    int pivot;
    fp_vector row;
  };
  std::vector<piece> pieces;
  for (const auto& [dg, cols] : degree_classes(col_deg)) {
    auto rit = row_classes.find(dg);
    const std::vector<int>* rows = rit == row_classes.end() ? nullptr : &rit->second;
    const int nr = rows ? static_cast<int>(rows->size()) : 0;
    fp_matrix sub(d.p(), static_cast<int>(cols.size()), nr);
    for (std::size_t c = 0; c < cols.size(); ++c)
      for (int rr = 0; rr < nr; ++rr)
        sub.at(static_cast<int>(c), rr) = d.at((*rows)[rr], cols[c]);
    rref_result red = rref(std::move(sub));
    for (int i = 0; i < red.rank; ++i) {
      piece pc;
      pc.pivot = (*rows)[red.pivot_cols[i]];
      pc.row = fp_vector(row_deg.size(), 0);
      for (int rr = 0; rr < nr; ++rr) pc.row[(*rows)[rr]] = red.mat.at(i, rr);
      pieces.push_back(std::move(pc));
    }
  }
  std::sort(pieces.begin(), pieces.end(),
            [](const piece& a, const piece& b) { return a.pivot < b.pivot; });
  subspace out;
  out.p = d.p();
  out.ambient = static_cast<int>(row_deg.size());
  out.basis = fp_matrix(d.p(), static_cast<int>(pieces.size()), out.ambient);
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    for (int c = 0; c < out.ambient; ++c)
      out.basis.at(static_cast<int>(i), c) = pieces[i].row[c];
    out.pivot_cols.push_back(pieces[i].pivot);
  }
  return out;
}

// Solver for a homogeneous linear system, one block per row degree.  The
// system is block-diagonal under the degree partition, so the particular
// solution (free variables zero) matches the dense solver's exactly.
class graded_solver {
 public:
  graded_solver(const fp_matrix& m, const std::vector<int>& row_deg,
                const std::vector<int>& col_deg)
      : cols_(m.cols()), row_deg_(row_deg) {
    auto col_classes = degree_classes(col_deg);
    for (const auto& [d, rws] : degree_classes(row_deg)) {
      block blk;
      blk.rows = rws;
      if (auto it = col_classes.find(d); it != col_classes.end()) blk.cols = it->second;
      fp_matrix sub(m.p(), static_cast<int>(rws.size()),
                    static_cast<int>(blk.cols.size()));
      for (std::size_t rr = 0; rr < rws.size(); ++rr)
        for (std::size_t cc = 0; cc < blk.cols.size(); ++cc)
          sub.at(static_cast<int>(rr), static_cast<int>(cc)) =
              m.at(rws[rr], blk.cols[cc]);
      blk.solver = std::make_unique<linear_solver>(sub);
      blocks_.emplace(d, std::move(blk));
    }
  }

  std::optional<fp_vector> solve(const fp_vector& rhs) const {
    fp_vector sol(cols_, 0);
    std::vector<int> seen;
    for (std::size_t i = 0; i < rhs.size(); ++i)
      if (rhs[i] != 0) {
        const int d = row_deg_[i];
        if (std::find(seen.begin(), seen.end(), d) == seen.end()) seen.push_back(d);
      }
    for (int d : seen) {
      const block& blk = blocks_.at(d);
      fp_vector sub(blk.rows.size(), 0);
      for (std::size_t i = 0; i < blk.rows.size(); ++i) sub[i] = rhs[blk.rows[i]];
      std::optional<fp_vector> s = blk.solver->solve(sub);
      if (!s) return std::nullopt;
      for (std::size_t i = 0; i < blk.cols.size(); ++i) sol[blk.cols[i]] = (*s)[i];
    }
    return sol;
  }

 private:
  struct block {
    std::vector<int> rows, cols;
    std::unique_ptr<linear_solver> solver;
  };
  int cols_ = 0;
  std::vector<int> row_deg_;
  std::map<int, block> blocks_;
};

}  // namespace detail

struct free_resolution {
  const quotient_ring* owner = nullptr;
  int truncation = 0;
  std::vector<int> betti;
  std::vector<std::vector<int>> shifts;
  std::vector<fp_matrix> flat;
  std::vector<std::vector<std::vector<ring_element>>> entries;

  int flat_dim(int i) const { return betti[i] * owner->dim(); }
};

inline free_resolution minimal_resolution(const fd_module& m, int truncation) {
  if (truncation < 0) throw std::invalid_argument("truncation must be >= 0");
  const quotient_ring& r = m.owner();
  const int dr = r.dim();
  const bool graded = r.graded();
  detail::basis_split bs;
  if (graded) bs = detail::make_basis_split(r);
  free_resolution res;
  res.owner = &r;
  res.truncation = truncation;

  fd_module cur = m;
  fp_matrix embed;            // flat(F_{i-1}) x cur.dim, columns = syzygy basis
  subspace prev_kernel;       // the syzygy inside flat(F_{i-1})
  for (int i = 0; i <= truncation; ++i) {
    if (cur.dim() == 0) {
      const int prev_flat = i == 0 ? m.dim() : res.flat_dim(i - 1);
      res.betti.push_back(0);
      res.shifts.emplace_back();
      res.flat.emplace_back(r.p(), prev_flat, 0);
      if (i > 0) res.entries.emplace_back();
      continue;
    }
    std::vector<bool> is_pivot(cur.dim(), false);
    if (graded) {
      is_pivot = detail::generator_pivots(r, cur);
    } else {
      const subspace rad = cur.radical_image();
      for (int c : rad.pivot_cols) is_pivot[c] = true;
    }
    std::vector<int> gens;
    for (int c = 0; c < cur.dim(); ++c)
      if (!is_pivot[c]) gens.push_back(c);
    const int beta = static_cast<int>(gens.size());
    std::vector<int> shift;
    for (int c : gens) shift.push_back(cur.degree(c));
    const std::vector<int> flat_deg = fd_module::flat_degrees(r, shift);

    // Evaluation map F_i -> current module: column (g, b) = b . gen_g.
    fp_matrix ev(r.p(), cur.dim(), beta * dr);
    if (graded) {
      ev = detail::build_ev(r, cur, gens, shift, bs);
    } else {
      parallel_for(beta * dr, [&](int col) {
        const int g = col / dr, b = col % dr;
        fp_vector e(cur.dim(), 0);
        e[gens[g]] = 1;
        fp_vector img = cur.monomial_apply(r.basis()[b], std::move(e));
        for (int row = 0; row < cur.dim(); ++row) ev.at(row, col) = img[row];
      });
    }

    res.betti.push_back(beta);
    res.shifts.push_back(shift);
    if (i == 0) {
      res.flat.push_back(ev);
    } else {
      const std::vector<int> prev_flat_deg =
          graded ? fd_module::flat_degrees(r, res.shifts[i - 1]) : std::vector<int>();
      fp_matrix d = graded ? detail::graded_product(embed, prev_flat_deg,
                                                    cur.degrees(), ev, flat_deg)
                           : embed * ev;
      // Minimality: every entry of the differential lies in m, i.e. its
      // coefficient on the basis monomial 1 vanishes.
      std::vector<std::vector<ring_element>> ent(
          res.betti[i - 1], std::vector<ring_element>(beta, r.zero()));
      for (int g = 0; g < beta; ++g)
        for (int h = 0; h < res.betti[i - 1]; ++h) {
          fp_vector coords(dr, 0);
          for (int b = 0; b < dr; ++b) coords[b] = d.at(h * dr + b, g * dr);
          if (coords[0] != 0)
            throw std::runtime_error("resolution is not minimal");
          ent[h][g] = ring_element{&r, std::move(coords)};
        }
      // Exactness at the previous spot: the columns of d span ker(d_{i-1}).
      const subspace img = graded ? detail::graded_column_space(d, prev_flat_deg, flat_deg)
                                  : image_basis(d);
      if (!(img == prev_kernel))
        throw std::runtime_error("resolution is not exact");
      // d^2 = 0 (includes augmentation . d_1 = 0).
      const fp_matrix square =
          graded ? detail::graded_product(
                       res.flat[i - 1],
                       i == 1 ? m.degrees()
                              : fd_module::flat_degrees(r, res.shifts[i - 2]),
                       prev_flat_deg, d, flat_deg)
                 : res.flat[i - 1] * d;
      for (int row = 0; row < square.rows(); ++row)
        for (int col = 0; col < square.cols(); ++col)
          if (square.at(row, col) != 0)
            throw std::runtime_error("d^2 != 0");
      res.flat.push_back(std::move(d));
      res.entries.push_back(std::move(ent));
    }

    if (i == truncation) break;

    if (graded) {
      detail::graded_subspace gker = detail::graded_kernel(ev, cur.degrees(), flat_deg);
      detail::syzygy_data sd = detail::induce_syzygy(r, gker, flat_deg);
      cur = fd_module::trusted(r, std::move(sd.acts), std::move(sd.deg));
      embed = sd.space.basis.transpose();
      prev_kernel = std::move(sd.space);
      continue;
    }

    subspace ker = kernel_basis(ev);
    // Induced data on the syzygy module.
    std::vector<int> deg(ker.dim());
    for (int row = 0; row < ker.dim(); ++row) {
      int d0 = -1;
      const fp_vector v = ker.basis.row(row);
      for (std::size_t c = 0; c < v.size(); ++c) {
        if (v[c] == 0) continue;
        if (d0 == -1) d0 = flat_deg[c];
        if (flat_deg[c] != d0) throw not_graded_error();
      }
      deg[row] = d0 == -1 ? 0 : d0;
    }
    std::vector<fp_matrix> acts(r.nvars(), fp_matrix(r.p(), ker.dim(), ker.dim()));
    for (int v = 0; v < r.nvars(); ++v) {
      parallel_for(ker.dim(), [&, v](int j) {
        fp_vector img = fd_module::block_var_apply(r, beta, v, ker.basis.row(j));
        std::optional<fp_vector> c = ker.coordinates(img);
        if (!c) throw std::runtime_error("syzygy not stable under action");
        for (int row = 0; row < ker.dim(); ++row) acts[v].at(row, j) = (*c)[row];
      });
    }
    cur = fd_module::trusted(r, std::move(acts), std::move(deg));
    embed = ker.basis.transpose();
    prev_kernel = std::move(ker);
  }
  return res;
}

// Graded Betti numbers beta_{i,j}.
struct betti_table {
  std::vector<std::map<int, int>> rows;  // rows[i][j] = beta_{i,j}

  int beta(int i, int j) const {
    if (i < 0 || i >= static_cast<int>(rows.size())) return 0;
    auto it = rows[i].find(j);
    return it == rows[i].end() ? 0 : it->second;
  }
  int total(int i) const {
    int s = 0;
    for (const auto& [j, b] : rows[i]) s += b;
    return s;
  }
};

inline betti_table betti_of(const free_resolution& res) {
  betti_table t;
  for (const auto& shift : res.shifts) {
    std::map<int, int> row;
    for (int s : shift) ++row[s];
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline std::vector<std::int64_t> poincare_coeffs(const free_resolution& res) {
  return std::vector<std::int64_t>(res.betti.begin(), res.betti.end());
}

inline std::vector<std::int64_t> poincare_coeffs(const fd_module& m, int truncation) {
  return poincare_coeffs(minimal_resolution(m, truncation));
}

// Total Betti numbers beta_0..beta_N of a graded module: the same
// degree-blocked steps as the resolution engine, but without assembling,
// checking or storing any differential matrices, and with a dimension-count
// shortcut at the final step.  Equals minimal_resolution(m, N).betti; the
// test suite cross-checks the two.
inline std::vector<int> betti_numbers(const fd_module& m, int truncation) {
  const quotient_ring& r = m.owner();
  if (!r.graded()) {
    free_resolution res = minimal_resolution(m, truncation);
    return res.betti;
  }
  const int dr = r.dim();
  const int nv = r.nvars();
  const detail::basis_split bs = detail::make_basis_split(r);

  std::vector<int> betti;
  fd_module cur = m;
  for (int i = 0; i <= truncation; ++i) {
    if (cur.dim() == 0) {
      betti.push_back(0);
      continue;
    }

    const std::vector<bool> is_pivot = detail::generator_pivots(r, cur);
    std::vector<int> gens, shift;
    for (int c = 0; c < cur.dim(); ++c)
      if (!is_pivot[c]) {
        gens.push_back(c);
        shift.push_back(cur.degree(c));
      }
    const int beta = static_cast<int>(gens.size());
    betti.push_back(beta);
    if (i == truncation) break;

    const std::vector<int> flat_deg = fd_module::flat_degrees(r, shift);
    const fp_matrix ev = detail::build_ev(r, cur, gens, shift, bs);
    detail::graded_subspace ker = detail::graded_kernel(ev, cur.degrees(), flat_deg);
    if (ker.dim() == 0) {
      while (static_cast<int>(betti.size()) <= truncation) betti.push_back(0);
      break;
    }

    if (i + 1 == truncation) {
      // Only the next Betti number is needed: beta = dim ker - dim m*ker,
      // with m*ker ranked degreewise inside the flat free module.
      auto flat_classes = detail::degree_classes(flat_deg);
      std::vector<int> flat_pos(flat_deg.size(), -1);
      for (const auto& [d, cols] : flat_classes)
        for (std::size_t c = 0; c < cols.size(); ++c)
          flat_pos[cols[c]] = static_cast<int>(c);
      int rad_dim = 0;
      for (const auto& blk : ker.blocks) {
        auto cls = flat_classes.find(blk.degree + 1);
        if (cls == flat_classes.end()) continue;
        const int width = static_cast<int>(cls->second.size());
        std::vector<fp_vector> img_rows;
        for (int v = 0; v < nv; ++v)
          for (int j = 0; j < blk.basis.rows(); ++j)
            img_rows.push_back(detail::block_row_var_image(
                r, v, blk.cols, blk.basis.row(j), flat_pos, width));
        rad_dim += rank_of(fp_matrix::from_rows(r.p(), img_rows, width));
      }
      betti.push_back(ker.dim() - rad_dim);
      break;
    }

    detail::syzygy_data sd = detail::induce_syzygy(r, ker, flat_deg);
    cur = fd_module::trusted(r, std::move(sd.acts), std::move(sd.deg));
  }
  while (static_cast<int>(betti.size()) <= truncation) betti.push_back(0);
  return betti;
}

// Chain-map lift of a module morphism between minimal resolutions, reduced
// mod m: the induced maps Tor_i(M,k) -> Tor_i(M',k).
struct tor_map {
  std::vector<fp_matrix> matrices;  // beta'_i x beta_i
  std::vector<bool> injective, surjective, zero;
};

namespace detail {

// Extend generator columns R-linearly to the full flattened chain map:
// column (g, b) = b . phi(e_g), built from column (g, b / x_v) by one
// variable action.
inline fp_matrix extend_flat(const quotient_ring& r, int target_rank,
                             const std::vector<fp_vector>& gen_cols, int src_rank) {
  const int dr = r.dim();
  const basis_split bs = make_basis_split(r);
  fp_matrix out(r.p(), target_rank * dr, src_rank * dr);
  for (int g = 0; g < src_rank; ++g) {
    std::vector<fp_vector> memo(dr);
    for (int b : bs.order) {
      if (r.basis_degree(b) == 0) {
        memo[b] = gen_cols[g];
      } else {
        const auto [v, prev] = bs.split[b];
        memo[b] = fd_module::block_var_apply(r, target_rank, v, memo[prev]);
      }
      for (std::size_t row = 0; row < memo[b].size(); ++row)
        out.at(static_cast<int>(row), g * dr + b) = memo[b][row];
    }
  }
  return out;
}

inline void classify(tor_map& t) {
  for (const auto& m : t.matrices) {
    const int rk = rank_of(m);
    t.injective.push_back(rk == m.cols());
    t.surjective.push_back(rk == m.rows());
    bool z = true;
    for (int i = 0; i < m.rows() && z; ++i)
      for (int j = 0; j < m.cols(); ++j)
        if (m.at(i, j) != 0) {
          z = false;
          break;
        }
    t.zero.push_back(z);
  }
}

}  // namespace detail

inline tor_map tor_comparison(const module_hom& f, int truncation,
                              const free_resolution& F, const free_resolution& G) {
  const quotient_ring& r = f.from->owner();
  const int dr = r.dim();
  // The lift can be solved one internal degree at a time exactly when the
  // comparison map itself preserves degrees.
  bool graded = r.graded();
  for (int i = 0; i < f.matrix.rows() && graded; ++i)
    for (int j = 0; j < f.matrix.cols(); ++j)
      if (f.matrix.at(i, j) != 0 && f.to->degree(i) != f.from->degree(j)) {
        graded = false;
        break;
      }
  tor_map out;
  fp_matrix prev_phi;             // flat(G_{i-1}) x flat(F_{i-1})
  std::vector<int> phi_rows_deg;  // degrees of prev_phi's rows (graded only)
  for (int i = 0; i <= truncation; ++i) {
    // Solve for phi_i on each free generator of F_i.
    const fp_matrix& target_map = G.flat[i];  // aug or differential
    std::optional<linear_solver> dense;
    std::optional<detail::graded_solver> blocked;
    std::vector<int> cols_deg;
    std::map<int, std::vector<int>> gprev_classes, fprev_classes;
    if (graded) {
      const std::vector<int> rows_deg =
          i == 0 ? f.to->degrees() : fd_module::flat_degrees(r, G.shifts[i - 1]);
      cols_deg = fd_module::flat_degrees(r, G.shifts[i]);
      blocked.emplace(target_map, rows_deg, cols_deg);
      if (i > 0) {
        gprev_classes = detail::degree_classes(phi_rows_deg);
        fprev_classes =
            detail::degree_classes(fd_module::flat_degrees(r, F.shifts[i - 1]));
      }
    } else {
      dense.emplace(target_map);
    }
    std::vector<fp_vector> gen_cols;
    fp_matrix tor(r.p(), G.betti[i], F.betti[i]);
    for (int g = 0; g < F.betti[i]; ++g) {
      // d_F(e_g) is the (g, 1) column of the flattened map.
      fp_vector dcol(F.flat[i].rows(), 0);
      for (int row = 0; row < F.flat[i].rows(); ++row)
        dcol[row] = F.flat[i].at(row, g * dr);
      fp_vector rhs;
      if (i == 0) {
        rhs = f.matrix.apply(dcol);
      } else if (graded) {
        // prev_phi is homogeneous: only the degree class of d_F(e_g) acts.
        rhs = fp_vector(prev_phi.rows(), 0);
        auto git = gprev_classes.find(F.shifts[i][g]);
        auto fit = fprev_classes.find(F.shifts[i][g]);
        if (git != gprev_classes.end() && fit != fprev_classes.end())
          for (int rr : git->second) {
            std::int64_t acc = 0;
            const std::int64_t* prow = prev_phi.row_ptr(rr);
            for (int cc : fit->second) acc = (acc + prow[cc] * dcol[cc]) % r.p();
            rhs[rr] = acc;
          }
      } else {
        rhs = prev_phi.apply(dcol);
      }
      std::optional<fp_vector> sol = graded ? blocked->solve(rhs) : dense->solve(rhs);
      if (!sol) throw lift_failure();
      for (int h = 0; h < G.betti[i]; ++h) tor.at(h, g) = (*sol)[h * dr];
      gen_cols.push_back(std::move(*sol));
    }
    out.matrices.push_back(std::move(tor));
    if (i < truncation) {
      prev_phi = detail::extend_flat(r, G.betti[i], gen_cols, F.betti[i]);
      phi_rows_deg = std::move(cols_deg);
    }
  }
  detail::classify(out);
  return out;
}

inline tor_map tor_comparison(const module_hom& f, int truncation) {
  return tor_comparison(f, truncation, minimal_resolution(*f.from, truncation),
                        minimal_resolution(*f.to, truncation));
}

// Tor^R_i(k,k) -> Tor^S_i(k,k) for S = R/I: base-change the minimal
// R-resolution of k along proj and lift the identity of k to a chain map into
// the minimal S-resolution of k.
struct tor_kk_result {
  std::vector<fp_matrix> matrices;  // betaS_i x betaR_i
  std::vector<bool> surjective;
};

inline tor_kk_result tor_kk_map(const quotient_ring& r, const quotient_result& q,
                                int truncation) {
  const quotient_ring& s = *q.ring;
  const int ds = s.dim();
  const free_resolution F = minimal_resolution(fd_module::field(r), truncation);
  const free_resolution G = minimal_resolution(fd_module::field(s), truncation);

  // The projection preserves degrees when both rings carry gradings, so the
  // base-changed lift splits into internal-degree blocks.
  const bool graded = r.graded() && s.graded();
  tor_kk_result out;
  fp_matrix prev_phi;
  std::vector<int> phi_rows_deg;  // degrees of prev_phi's rows (graded only)
  for (int i = 0; i <= truncation; ++i) {
    // Flattened differential of F tensor_R S in homological degree i.
    fp_matrix dfs;
    if (i > 0) {
      std::vector<fp_vector> gen_cols;
      for (int g = 0; g < F.betti[i]; ++g) {
        fp_vector col(F.betti[i - 1] * ds, 0);
        for (int h = 0; h < F.betti[i - 1]; ++h) {
          const ring_element img = q.proj.apply(F.entries[i - 1][h][g]);
          std::copy(img.coords.begin(), img.coords.end(), col.begin() + h * ds);
        }
        gen_cols.push_back(std::move(col));
      }
      dfs = detail::extend_flat(s, F.betti[i - 1], gen_cols, F.betti[i]);
    }

    std::optional<linear_solver> dense;
    std::optional<detail::graded_solver> blocked;
    std::vector<int> cols_deg;
    std::map<int, std::vector<int>> gprev_classes, fprev_classes;
    if (graded) {
      const std::vector<int> rows_deg =
          i == 0 ? std::vector<int>{0} : fd_module::flat_degrees(s, G.shifts[i - 1]);
      cols_deg = fd_module::flat_degrees(s, G.shifts[i]);
      blocked.emplace(G.flat[i], rows_deg, cols_deg);
      if (i > 0) {
        gprev_classes = detail::degree_classes(phi_rows_deg);
        fprev_classes =
            detail::degree_classes(fd_module::flat_degrees(s, F.shifts[i - 1]));
      }
    } else {
      dense.emplace(G.flat[i]);
    }
    std::vector<fp_vector> gen_cols;
    fp_matrix tor(s.p(), G.betti[i], F.betti[i]);
    for (int g = 0; g < F.betti[i]; ++g) {
      fp_vector rhs;
      if (i == 0) {
        rhs = fp_vector(1, 1);  // generator of k
      } else {
        fp_vector dcol(dfs.rows(), 0);
        for (int row = 0; row < dfs.rows(); ++row) dcol[row] = dfs.at(row, g * ds);
        if (graded) {
          rhs = fp_vector(prev_phi.rows(), 0);
          auto git = gprev_classes.find(F.shifts[i][g]);
          auto fit = fprev_classes.find(F.shifts[i][g]);
          if (git != gprev_classes.end() && fit != fprev_classes.end())
            for (int rr : git->second) {
              std::int64_t acc = 0;
              const std::int64_t* prow = prev_phi.row_ptr(rr);
              for (int cc : fit->second) acc = (acc + prow[cc] * dcol[cc]) % s.p();
              rhs[rr] = acc;
            }
        } else {
          rhs = prev_phi.apply(dcol);
        }
      }
      std::optional<fp_vector> sol = graded ? blocked->solve(rhs) : dense->solve(rhs);
      if (!sol) throw lift_failure();
      for (int h = 0; h < G.betti[i]; ++h) tor.at(h, g) = (*sol)[h * ds];
      gen_cols.push_back(std::move(*sol));
    }
    out.surjective.push_back(rank_of(tor) == tor.rows());
    out.matrices.push_back(std::move(tor));
    if (i < truncation) {
      prev_phi = detail::extend_flat(s, G.betti[i], gen_cols, F.betti[i]);
      phi_rows_deg = std::move(cols_deg);
    }
  }
  return out;
}

// Linearity defect via the linear part lin(F): keep exactly the differential
// blocks whose generator-degree shift is 1 (entries are homogeneous, so those
// blocks are the linear entries) and take homology.
struct linearity_report {
  int ld = 0;               // largest i in [1, computed_to] with H_i(lin F) != 0
  int computed_to = 0;      // homology known for 1..computed_to
  bool koszul_module = false;
  std::vector<int> lin_h_dims;  // H_1..H_{computed_to}
};

inline linearity_report linearity_defect(const fd_module& m, int truncation) {
  const quotient_ring& r = m.owner();
  if (!r.graded()) throw not_graded_error();
  const free_resolution res = minimal_resolution(m, truncation);
  const int dr = r.dim();

  std::vector<fp_matrix> lin;  // lin[i] for i >= 1
  for (int i = 1; i <= truncation; ++i) {
    fp_matrix d = res.flat[i];
    for (int g = 0; g < res.betti[i]; ++g)
      for (int h = 0; h < res.betti[i - 1]; ++h)
        if (res.shifts[i][g] - res.shifts[i - 1][h] != 1)
          for (int a = 0; a < dr; ++a)
            for (int b = 0; b < dr; ++b) d.at(h * dr + a, g * dr + b) = 0;
    lin.push_back(std::move(d));
  }

  linearity_report rep;
  rep.computed_to = std::max(0, truncation - 1);
  for (int i = 1; i <= rep.computed_to; ++i) {
    const int ker = res.flat_dim(i) - rank_of(lin[i - 1]);
    const int im = rank_of(lin[i]);
    const int h = ker - im;
    rep.lin_h_dims.push_back(h);
    if (h != 0) rep.ld = i;
  }
  bool diagonal = true;
  for (int i = 0; i <= truncation && diagonal; ++i)
    for (int s : res.shifts[i])
      if (s != i) {
        diagonal = false;
        break;
      }
  rep.koszul_module = diagonal;
  // The two characterizations must agree on the computed range.
  if (diagonal && rep.ld != 0)
    throw std::runtime_error("linearity defect: inconsistent characterizations");
  return rep;
}

// Independent oracle: dim Tor_i(k, M) computed by tensoring the resolution of
// k with M, for cross-checking against resolving M directly.
inline std::vector<int> tor_dims_via_tensor(const free_resolution& res_of_k,
                                            const fd_module& m, int up_to) {
  const int dm = m.dim();
  std::vector<fp_matrix> t;  // t[i]: F_i tensor M -> F_{i-1} tensor M, i >= 1
  for (int i = 1; i <= up_to + 1 && i <= res_of_k.truncation; ++i) {
    fp_matrix block(m.owner().p(), res_of_k.betti[i - 1] * dm, res_of_k.betti[i] * dm);
    for (int h = 0; h < res_of_k.betti[i - 1]; ++h)
      for (int g = 0; g < res_of_k.betti[i]; ++g) {
        fp_matrix a = m.element_action(res_of_k.entries[i - 1][h][g]);
        for (int x = 0; x < dm; ++x)
          for (int y = 0; y < dm; ++y) block.at(h * dm + x, g * dm + y) = a.at(x, y);
      }
    t.push_back(std::move(block));
  }
  std::vector<int> dims;
  for (int i = 0; i <= up_to; ++i) {
    const int total = res_of_k.betti[i] * dm;
    const int ker = i == 0 ? total : total - rank_of(t[i - 1]);
    const int im = i < static_cast<int>(t.size()) ? rank_of(t[i]) : 0;
    dims.push_back(ker - im);
  }
  return dims;
}

}  // namespace largehom
