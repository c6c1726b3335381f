#pragma once
// Truncated power series with exact integer coefficients, and the series-level
// checks built on them: Poincare multiplicativity, the Golod ring and Golod
// map identities, deviation extraction, and the complete-intersection test.
// Series verdicts are always "holds up to the truncation"; decisive verdicts
// are the business of the criteria layer.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "largehom/koszul.hpp"
#include "largehom/resolution.hpp"

namespace largehom {

using bigint = boost::multiprecision::cpp_int;

struct non_unit_constant_term : std::runtime_error {
  non_unit_constant_term() : std::runtime_error("series has non-unit constant term") {}
};

struct inconsistent_series : std::runtime_error {
  explicit inconsistent_series(int degree)
      : std::runtime_error("negative deviation extracted at degree " +
                           std::to_string(degree)) {}
};

struct internal_inconsistency : std::runtime_error {
  explicit internal_inconsistency(const std::string& what) : std::runtime_error(what) {}
};

class truncated_series {
 public:
  explicit truncated_series(int trunc) : c_(trunc + 1) {}
  truncated_series(std::vector<bigint> coeffs, int trunc) : c_(std::move(coeffs)) {
    c_.resize(trunc + 1);
  }

  static truncated_series one(int trunc) {
    truncated_series s(trunc);
    s.c_[0] = 1;
    return s;
  }
  // 1 + sign * t^k.
  static truncated_series one_plus(int k, int sign, int trunc) {
    truncated_series s = one(trunc);
    if (k <= trunc) s.c_[k] = sign;
    return s;
  }
  static truncated_series from_ints(const std::vector<std::int64_t>& v, int trunc) {
    truncated_series s(trunc);
    for (std::size_t i = 0; i < v.size() && i <= static_cast<std::size_t>(trunc); ++i)
      s.c_[i] = v[i];
    return s;
  }

  int trunc() const { return static_cast<int>(c_.size()) - 1; }
  const bigint& operator[](int i) const { return c_[i]; }
  bigint& operator[](int i) { return c_[i]; }
  const std::vector<bigint>& coeffs() const { return c_; }

  friend bool operator==(const truncated_series& a, const truncated_series& b) {
    return a.c_ == b.c_;
  }

  friend truncated_series operator+(const truncated_series& a, const truncated_series& b) {
    truncated_series s(a.trunc());
    for (int i = 0; i <= a.trunc(); ++i) s.c_[i] = a.c_[i] + b.c_[i];
    return s;
  }
  friend truncated_series operator-(const truncated_series& a, const truncated_series& b) {
    truncated_series s(a.trunc());
    for (int i = 0; i <= a.trunc(); ++i) s.c_[i] = a.c_[i] - b.c_[i];
    return s;
  }
  friend truncated_series operator*(const truncated_series& a, const truncated_series& b) {
    truncated_series s(a.trunc());
    for (int i = 0; i <= a.trunc(); ++i) {
      if (a.c_[i] == 0) continue;
      for (int j = 0; i + j <= a.trunc(); ++j) s.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return s;
  }

  truncated_series inverse() const {
    if (c_[0] != 1 && c_[0] != -1) throw non_unit_constant_term();
    truncated_series s(trunc());
    s.c_[0] = c_[0];  // 1/(+-1) = +-1
    for (int i = 1; i <= trunc(); ++i) {
      bigint acc = 0;
      for (int j = 1; j <= i; ++j) acc += c_[j] * s.c_[i - j];
      s.c_[i] = -c_[0] * acc;
    }
    return s;
  }

  truncated_series pow(int e) const {
    truncated_series s = one(trunc());
    for (int i = 0; i < e; ++i) s = s * *this;
    return s;
  }

 private:
  std::vector<bigint> c_;
};

// (1+t)^n.
inline truncated_series binomial_power(int n, int trunc) {
  return truncated_series::one_plus(1, 1, trunc).pow(n);
}

// Result of a coefficientwise series comparison up to the truncation.
struct series_check {
  bool holds = true;
  int first_difference = -1;
  bigint lhs_at_difference, rhs_at_difference;
  truncated_series lhs, rhs;
};

inline series_check compare_series(truncated_series lhs, truncated_series rhs) {
  series_check out{true, -1, 0, 0, lhs, rhs};
  for (int i = 0; i <= lhs.trunc(); ++i) {
    if (lhs[i] != rhs[i]) {
      out.holds = false;
      out.first_difference = i;
      out.lhs_at_difference = lhs[i];
      out.rhs_at_difference = rhs[i];
      break;
    }
  }
  return out;
}

inline truncated_series poincare_series_of(const fd_module& m, int trunc) {
  std::vector<int> b = betti_numbers(m, trunc);
  return truncated_series::from_ints(
      std::vector<std::int64_t>(b.begin(), b.end()), trunc);
}

inline truncated_series poincare_series_of_k(const quotient_ring& r, int trunc) {
  return poincare_series_of(fd_module::field(r), trunc);
}

// Definition-level multiplicativity P^R_k = P^R_S . P^S_k for S = R/I.
inline series_check multiplicativity_check(const quotient_ring& r, const ring_ideal& i,
                                           int trunc) {
  quotient_result q = quotient_by(r, i);
  truncated_series lhs = poincare_series_of_k(r, trunc);
  truncated_series prs = poincare_series_of(fd_module::quotient(r, i.space), trunc);
  truncated_series psk = poincare_series_of_k(*q.ring, trunc);
  return compare_series(std::move(lhs), prs * psk);
}

// The Golod series (1+t)^n / (1 - sum_i dim H_i(K(R)) t^{i+1}).
inline truncated_series golod_series(const quotient_ring& r, const koszul_homology& h,
                                     int trunc) {
  truncated_series denom = truncated_series::one(trunc);
  for (int i = 1; i <= h.length(); ++i)
    if (i + 1 <= trunc) denom[i + 1] -= h.h_dim(i);
  return binomial_power(r.nvars(), trunc) * denom.inverse();
}

inline series_check golod_ring_check(const quotient_ring& r, int trunc) {
  if (!r.minimally_presented())
    throw std::runtime_error("golod_ring_check requires a minimal presentation");
  koszul_homology h = koszul_homology_of_ring(r);
  return compare_series(poincare_series_of_k(r, trunc), golod_series(r, h, trunc));
}

// Definition 3.3: R -> S = R/I' is Golod iff P^S_k = P^R_k / (1 - t(P^R_S - 1)).
inline series_check golod_map_check(const quotient_ring& r, const ring_ideal& iprime,
                                    int trunc) {
  quotient_result q = quotient_by(r, iprime);
  truncated_series prk = poincare_series_of_k(r, trunc);
  truncated_series prs = poincare_series_of(fd_module::quotient(r, iprime.space), trunc);
  truncated_series denom = truncated_series::one(trunc);
  for (int i = 0; i < trunc; ++i) {
    bigint c = prs[i] - (i == 0 ? bigint(1) : bigint(0));
    denom[i + 1] -= c;  // 1 - t(P^R_S - 1)
  }
  return compare_series(poincare_series_of_k(*q.ring, trunc), prk * denom.inverse());
}

// Deviations from P^R_k via the product formula
// P = prod_{odd i} (1+t^i)^{eps_i} / prod_{even i} (1-t^i)^{eps_i}.
inline std::vector<int> deviations_from_poincare(const truncated_series& p) {
  if (p[0] != 1) throw non_unit_constant_term();
  const int n = p.trunc();
  truncated_series q = p;
  std::vector<int> eps;
  for (int d = 1; d <= n; ++d) {
    if (q[d] < 0) throw inconsistent_series(d);
    const int e = static_cast<int>(q[d]);
    eps.push_back(e);
    // Divide out (1+t^d)^e for odd d, (1-t^d)^{-e} for even d.
    if (d % 2 == 1)
      q = q * truncated_series::one_plus(d, 1, n).pow(e).inverse();
    else
      q = q * truncated_series::one_plus(d, -1, n).pow(e);
  }
  return eps;
}

inline truncated_series series_from_deviations(const std::vector<int>& eps, int trunc) {
  truncated_series p = truncated_series::one(trunc);
  for (int d = 1; d <= trunc && d <= static_cast<int>(eps.size()); ++d) {
    const int sign = (d % 2 == 1) ? 1 : -1;
    truncated_series factor = truncated_series::one_plus(d, sign, trunc).pow(eps[d - 1]);
    p = p * (d % 2 == 1 ? factor : factor.inverse());
  }
  return p;
}

// Complete-intersection test for a minimally presented Artinian graded
// algebra, decided three independent ways that must agree:
//   (1) dim H_1(K(S)) = embdim(S)          (mu of the defining ideal = codim)
//   (2) eps_3(S) = 0                        (deviation rigidity)
//   (3) H_2(K(S)) = H_1(K(S))^2             (Tate/Assmus)
inline bool ci_check(const quotient_ring& s) {
  if (!s.minimally_presented())
    throw std::runtime_error("ci_check requires a minimal presentation");
  koszul_homology h = koszul_homology_of_ring(s);
  const bool by_mu = h.h_dim(1) == s.nvars();

  const int trunc = 4;
  std::vector<int> eps = deviations_from_poincare(poincare_series_of_k(s, trunc));
  const bool by_eps = eps.size() < 3 || eps[2] == 0;

  const bool by_product =
      h.length() < 2 || homology_product(h, 1, 1).dim() == h.h_dim(2);

  if (by_mu != by_eps || by_mu != by_product)
    throw internal_inconsistency("ci_check sub-checks disagree");
  return by_mu;
}

}  // namespace largehom
