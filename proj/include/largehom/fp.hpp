#pragma once

// Exact dense linear algebra over a prime field F_p.
// Matrices are row-major with entries reduced into [0, p); subspaces are
// kept in reduced row-echelon form so that equality of subspaces is
// equality of matrices.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace largehom {

struct not_prime_error : std::runtime_error {
  explicit not_prime_error(std::int64_t p)
      : std::runtime_error("not a prime: " + std::to_string(p)) {}
};

struct dimension_mismatch : std::runtime_error {
  explicit dimension_mismatch(const std::string& what)
      : std::runtime_error("dimension mismatch: " + what) {}
};

inline bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline std::int64_t fp_reduce(std::int64_t v, std::int64_t p) {
  v %= p;
  return v < 0 ? v + p : v;
}

// Modular inverse by Fermat; p is prime and a != 0 mod p.
inline std::int64_t fp_inverse(std::int64_t a, std::int64_t p) {
  a = fp_reduce(a, p);
  if (a == 0) throw std::runtime_error("fp_inverse of zero");
  std::int64_t result = 1, base = a, e = p - 2;
  while (e > 0) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result;
}

using fp_vector = std::vector<std::int64_t>;

class fp_matrix {
 public:
  fp_matrix() = default;
  fp_matrix(std::int64_t p, int rows, int cols)
      : p_(p), rows_(rows), cols_(cols),
        a_(static_cast<std::size_t>(rows) * cols, 0) {
    if (!is_prime(p)) throw not_prime_error(p);
  }

  std::int64_t p() const { return p_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  std::int64_t& at(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  std::int64_t at(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

  std::int64_t* row_ptr(int r) { return a_.data() + static_cast<std::size_t>(r) * cols_; }
  const std::int64_t* row_ptr(int r) const { return a_.data() + static_cast<std::size_t>(r) * cols_; }

  fp_vector row(int r) const {
    return fp_vector(row_ptr(r), row_ptr(r) + cols_);
  }
  void set_row(int r, const fp_vector& v) {
    if (static_cast<int>(v.size()) != cols_) throw dimension_mismatch("set_row");
    for (int c = 0; c < cols_; ++c) at(r, c) = fp_reduce(v[c], p_);
  }

  static fp_matrix identity(std::int64_t p, int n) {
    fp_matrix m(p, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  static fp_matrix from_rows(std::int64_t p, const std::vector<fp_vector>& rows, int cols) {
    fp_matrix m(p, static_cast<int>(rows.size()), cols);
    for (int r = 0; r < m.rows(); ++r) m.set_row(r, rows[r]);
    return m;
  }

  fp_matrix transpose() const {
    fp_matrix t(p_, cols_, rows_);
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
    return t;
  }

  bool is_zero() const {
    for (auto v : a_)
      if (v != 0) return false;
    return true;
  }

  friend bool operator==(const fp_matrix& x, const fp_matrix& y) {
    return x.p_ == y.p_ && x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }

  friend fp_matrix operator*(const fp_matrix& x, const fp_matrix& y) {
    if (x.cols_ != y.rows_) throw dimension_mismatch("matrix product");
    fp_matrix z(x.p_, x.rows_, y.cols_);
    const std::int64_t p = x.p_;
    for (int i = 0; i < x.rows_; ++i)
      for (int k = 0; k < x.cols_; ++k) {
        const std::int64_t xv = x.at(i, k);
        if (xv == 0) continue;
        const std::int64_t* src = y.row_ptr(k);
        std::int64_t* dst = z.row_ptr(i);
        for (int j = 0; j < y.cols_; ++j) dst[j] = (dst[j] + xv * src[j]) % p;
      }
    return z;
  }

  friend fp_matrix operator+(const fp_matrix& x, const fp_matrix& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw dimension_mismatch("matrix sum");
    fp_matrix z(x.p_, x.rows_, x.cols_);
    for (std::size_t i = 0; i < x.a_.size(); ++i) z.a_[i] = (x.a_[i] + y.a_[i]) % x.p_;
    return z;
  }

  friend fp_matrix operator-(const fp_matrix& x, const fp_matrix& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw dimension_mismatch("matrix diff");
    fp_matrix z(x.p_, x.rows_, x.cols_);
    for (std::size_t i = 0; i < x.a_.size(); ++i)
      z.a_[i] = fp_reduce(x.a_[i] - y.a_[i], x.p_);
    return z;
  }

  fp_vector apply(const fp_vector& v) const {
    if (static_cast<int>(v.size()) != cols_) throw dimension_mismatch("matrix apply");
    fp_vector out(rows_, 0);
    for (int r = 0; r < rows_; ++r) {
      std::int64_t acc = 0;
      const std::int64_t* src = row_ptr(r);
      for (int c = 0; c < cols_; ++c) acc = (acc + src[c] * v[c]) % p_;
      out[r] = acc;
    }
    return out;
  }

 private:
  std::int64_t p_ = 2;
  int rows_ = 0, cols_ = 0;
  fp_vector a_;
};

inline fp_matrix stack_rows(const fp_matrix& top, const fp_matrix& bottom) {
  if (top.cols() != bottom.cols()) throw dimension_mismatch("stack_rows");
  fp_matrix m(top.p(), top.rows() + bottom.rows(), top.cols());
  for (int r = 0; r < top.rows(); ++r)
    for (int c = 0; c < top.cols(); ++c) m.at(r, c) = top.at(r, c);
  for (int r = 0; r < bottom.rows(); ++r)
    for (int c = 0; c < top.cols(); ++c) m.at(top.rows() + r, c) = bottom.at(r, c);
  return m;
}

struct rref_result {
  fp_matrix mat;
  int rank = 0;
  std::vector<int> pivot_cols;
};

inline rref_result rref(fp_matrix m) {
  const std::int64_t p = m.p();
  int rank = 0;
  std::vector<int> pivots;
  for (int col = 0; col < m.cols() && rank < m.rows(); ++col) {
    int sel = -1;
    for (int r = rank; r < m.rows(); ++r)
      if (m.at(r, col) != 0) { sel = r; break; }
    if (sel < 0) continue;
    if (sel != rank)
      for (int c = 0; c < m.cols(); ++c) std::swap(m.at(sel, c), m.at(rank, c));
    const std::int64_t inv = fp_inverse(m.at(rank, col), p);
    {
      std::int64_t* row = m.row_ptr(rank);
      for (int c = col; c < m.cols(); ++c) row[c] = row[c] * inv % p;
    }
    const std::int64_t* prow = m.row_ptr(rank);
    for (int r = rank + 1; r < m.rows(); ++r) {
      const std::int64_t f = m.at(r, col);
      if (f == 0) continue;
      std::int64_t* row = m.row_ptr(r);
      for (int c = col; c < m.cols(); ++c)
        row[c] = fp_reduce(row[c] - f * prow[c], p);
    }
    pivots.push_back(col);
    ++rank;
  }
  // Clear entries above the pivots in one backward pass.
  for (int i = rank - 1; i > 0; --i) {
    const int col = pivots[i];
    const std::int64_t* prow = m.row_ptr(i);
    for (int r = 0; r < i; ++r) {
      const std::int64_t f = m.at(r, col);
      if (f == 0) continue;
      std::int64_t* row = m.row_ptr(r);
      for (int c = col; c < m.cols(); ++c)
        row[c] = fp_reduce(row[c] - f * prow[c], p);
    }
  }
  return {std::move(m), rank, std::move(pivots)};
}

inline int rank_of(const fp_matrix& m) { return rref(m).rank; }

// A k-subspace of F_p^ambient, basis rows in RREF. Equality of subspaces is
// equality of the representation.
struct subspace {
  std::int64_t p = 2;
  int ambient = 0;
  fp_matrix basis;  // dim x ambient, RREF, no zero rows
  std::vector<int> pivot_cols;

  int dim() const { return basis.rows(); }

  static subspace zero(std::int64_t p, int ambient) {
    return {p, ambient, fp_matrix(p, 0, ambient), {}};
  }
  static subspace full(std::int64_t p, int ambient) {
    subspace s{p, ambient, fp_matrix::identity(p, ambient), {}};
    for (int i = 0; i < ambient; ++i) s.pivot_cols.push_back(i);
    return s;
  }

  friend bool operator==(const subspace& a, const subspace& b) {
    return a.p == b.p && a.ambient == b.ambient && a.basis == b.basis;
  }

  // Residual of v after reduction against the basis rows; zero iff v lies in
  // the subspace.
  fp_vector reduce(fp_vector v) const {
    for (int r = 0; r < basis.rows(); ++r) {
      const std::int64_t f = v[pivot_cols[r]];
      if (f == 0) continue;
      const std::int64_t* row = basis.row_ptr(r);
      for (int c = 0; c < ambient; ++c) v[c] = fp_reduce(v[c] - f * row[c], p);
    }
    return v;
  }

  bool contains(const fp_vector& v) const {
    for (auto x : reduce(v))
      if (x != 0) return false;
    return true;
  }

  bool contains(const subspace& other) const {
    for (int r = 0; r < other.basis.rows(); ++r)
      if (!contains(other.basis.row(r))) return false;
    return true;
  }

  // Coordinates of v in the RREF basis, or nullopt if v is outside.
  std::optional<fp_vector> coordinates(const fp_vector& v) const {
    fp_vector coords(dim());
    for (int r = 0; r < dim(); ++r) coords[r] = v[pivot_cols[r]];
    fp_vector res = v;
    for (int r = 0; r < dim(); ++r) {
      if (coords[r] == 0) continue;
      const std::int64_t* row = basis.row_ptr(r);
      for (int c = 0; c < ambient; ++c)
        res[c] = fp_reduce(res[c] - coords[r] * row[c], p);
    }
    for (auto x : res)
      if (x != 0) return std::nullopt;
    return coords;
  }
};

inline subspace row_space(const fp_matrix& m) {
  rref_result r = rref(m);
  fp_matrix b(m.p(), r.rank, m.cols());
  for (int i = 0; i < r.rank; ++i)
    for (int c = 0; c < m.cols(); ++c) b.at(i, c) = r.mat.at(i, c);
  return {m.p(), m.cols(), std::move(b), std::move(r.pivot_cols)};
}

inline subspace image_basis(const fp_matrix& m) { return row_space(m.transpose()); }

// {v : Mv = 0}.
inline subspace kernel_basis(const fp_matrix& m) {
  rref_result r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int c : r.pivot_cols) is_pivot[c] = true;
  std::vector<fp_vector> rows;
  for (int c = 0; c < m.cols(); ++c) {
    if (is_pivot[c]) continue;
    fp_vector v(m.cols(), 0);
    v[c] = 1;
    for (int i = 0; i < r.rank; ++i)
      v[r.pivot_cols[i]] = fp_reduce(-r.mat.at(i, c), m.p());
    rows.push_back(std::move(v));
  }
  return row_space(fp_matrix::from_rows(m.p(), rows, m.cols()));
}

inline subspace subspace_sum(const subspace& a, const subspace& b) {
  if (a.ambient != b.ambient || a.p != b.p) throw dimension_mismatch("subspace_sum");
  return row_space(stack_rows(a.basis, b.basis));
}

// Intersection via the kernel of [A^T | -B^T]: pairs (x, y) with
// x.A = y.B parameterize common elements.
inline subspace subspace_intersect(const subspace& a, const subspace& b) {
  if (a.ambient != b.ambient || a.p != b.p) throw dimension_mismatch("subspace_intersect");
  const int da = a.dim(), db = b.dim();
  if (da == 0 || db == 0) return subspace::zero(a.p, a.ambient);
  fp_matrix m(a.p, a.ambient, da + db);
  for (int c = 0; c < a.ambient; ++c) {
    for (int i = 0; i < da; ++i) m.at(c, i) = a.basis.at(i, c);
    for (int j = 0; j < db; ++j) m.at(c, da + j) = fp_reduce(-b.basis.at(j, c), a.p);
  }
  subspace ker = kernel_basis(m);
  std::vector<fp_vector> rows;
  for (int r = 0; r < ker.dim(); ++r) {
    fp_vector v(a.ambient, 0);
    for (int i = 0; i < da; ++i) {
      const std::int64_t x = ker.basis.at(r, i);
      if (x == 0) continue;
      for (int c = 0; c < a.ambient; ++c)
        v[c] = (v[c] + x * a.basis.at(i, c)) % a.p;
    }
    rows.push_back(std::move(v));
  }
  return row_space(fp_matrix::from_rows(a.p, rows, a.ambient));
}

inline bool subspace_contains(const subspace& a, const fp_vector& v) { return a.contains(v); }

// Solver for M x = b with deterministic particular solutions (free
// variables set to zero). Reusable across right-hand sides.
class linear_solver {
 public:
  explicit linear_solver(const fp_matrix& m) : m_(m) {
    // Row-reduce [M | I] so solutions can be read off for any rhs.
    fp_matrix aug(m.p(), m.rows(), m.cols() + m.rows());
    for (int r = 0; r < m.rows(); ++r) {
      for (int c = 0; c < m.cols(); ++c) aug.at(r, c) = m.at(r, c);
      aug.at(r, m.cols() + r) = 1;
    }
    const std::int64_t p = m.p();
    int rank = 0;
    for (int col = 0; col < m.cols() && rank < m.rows(); ++col) {
      int sel = -1;
      for (int r = rank; r < m.rows(); ++r)
        if (aug.at(r, col) != 0) { sel = r; break; }
      if (sel < 0) continue;
      if (sel != rank)
        for (int c = 0; c < aug.cols(); ++c) std::swap(aug.at(sel, c), aug.at(rank, c));
      const std::int64_t inv = fp_inverse(aug.at(rank, col), p);
      for (int c = 0; c < aug.cols(); ++c) aug.at(rank, c) = aug.at(rank, c) * inv % p;
      for (int r = 0; r < m.rows(); ++r) {
        if (r == rank) continue;
        const std::int64_t f = aug.at(r, col);
        if (f == 0) continue;
        for (int c = 0; c < aug.cols(); ++c)
          aug.at(r, c) = fp_reduce(aug.at(r, c) - f * aug.at(rank, c), p);
      }
      pivots_.push_back(col);
      ++rank;
    }
    rank_ = rank;
    reduced_ = std::move(aug);
  }

  int rank() const { return rank_; }

  std::optional<fp_vector> solve(const fp_vector& b) const {
    if (static_cast<int>(b.size()) != m_.rows()) throw dimension_mismatch("solve rhs");
    const std::int64_t p = m_.p();
    // Transformed rhs: T b where T is the recorded row operations.
    fp_vector tb(m_.rows(), 0);
    for (int r = 0; r < m_.rows(); ++r) {
      std::int64_t acc = 0;
      for (int c = 0; c < m_.rows(); ++c)
        acc = (acc + reduced_.at(r, m_.cols() + c) * b[c]) % p;
      tb[r] = acc;
    }
    for (int r = rank_; r < m_.rows(); ++r)
      if (tb[r] != 0) return std::nullopt;
    fp_vector x(m_.cols(), 0);
    for (int i = 0; i < rank_; ++i) x[pivots_[i]] = tb[i];
    return x;
  }

 private:
  fp_matrix m_;
  fp_matrix reduced_;
  std::vector<int> pivots_;
  int rank_ = 0;
};

// Matrix of the induced map (V/A) -> (W/B) for f : V -> W with f(A) <= B.
// Coordinates are the complements of the pivot columns of A and B.
inline fp_matrix induced_quotient_map(const fp_matrix& f, const subspace& a, const subspace& b) {
  if (f.cols() != a.ambient || f.rows() != b.ambient)
    throw dimension_mismatch("induced_quotient_map");
  for (int r = 0; r < a.dim(); ++r)
    if (!b.contains(f.apply(a.basis.row(r))))
      throw std::runtime_error("induced_quotient_map: f(A) not contained in B");
  std::vector<int> dom_free, cod_free;
  {
    std::vector<bool> piv(a.ambient, false);
    for (int c : a.pivot_cols) piv[c] = true;
    for (int c = 0; c < a.ambient; ++c)
      if (!piv[c]) dom_free.push_back(c);
  }
  {
    std::vector<bool> piv(b.ambient, false);
    for (int c : b.pivot_cols) piv[c] = true;
    for (int c = 0; c < b.ambient; ++c)
      if (!piv[c]) cod_free.push_back(c);
  }
  fp_matrix out(f.p(), static_cast<int>(cod_free.size()), static_cast<int>(dom_free.size()));
  for (int j = 0; j < static_cast<int>(dom_free.size()); ++j) {
    fp_vector e(a.ambient, 0);
    e[dom_free[j]] = 1;
    fp_vector img = b.reduce(f.apply(e));
    for (int i = 0; i < static_cast<int>(cod_free.size()); ++i) out.at(i, j) = img[cod_free[i]];
  }
  return out;
}

}  // namespace largehom
