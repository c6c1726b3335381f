#pragma once

// Multivariate polynomials over F_p, degrevlex order, Buchberger's
// algorithm, and the ring-spec text format parser.

#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "largehom/fp.hpp"

namespace largehom {

struct parse_error : std::runtime_error {
  explicit parse_error(const std::string& what) : std::runtime_error("parse error: " + what) {}
};

using monomial = std::vector<int>;  // exponent vector

inline int mono_degree(const monomial& m) {
  int d = 0;
  for (int e : m) d += e;
  return d;
}

// a > b in degree reverse lexicographic order (x1 > x2 > ... > xn).
inline bool degrevlex_greater(const monomial& a, const monomial& b) {
  const int da = mono_degree(a), db = mono_degree(b);
  if (da != db) return da > db;
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

struct mono_order {
  bool operator()(const monomial& a, const monomial& b) const {
    return degrevlex_greater(a, b);  // leading term first in map iteration
  }
};

inline monomial mono_mul(const monomial& a, const monomial& b) {
  monomial c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

inline bool mono_divides(const monomial& a, const monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline monomial mono_div(const monomial& a, const monomial& b) {
  monomial c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

inline monomial mono_lcm(const monomial& a, const monomial& b) {
  monomial c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = std::max(a[i], b[i]);
  return c;
}

class polynomial {
 public:
  polynomial() = default;
  polynomial(std::int64_t p, int nvars) : p_(p), nvars_(nvars) {}

  std::int64_t p() const { return p_; }
  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<monomial, std::int64_t, mono_order>& terms() const { return terms_; }

  void add_term(const monomial& m, std::int64_t c) {
    if (static_cast<int>(m.size()) != nvars_) throw dimension_mismatch("polynomial term");
    c = fp_reduce(c, p_);
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      if (c != 0) terms_.emplace(m, c);
    } else {
      it->second = (it->second + c) % p_;
      if (it->second == 0) terms_.erase(it);
    }
  }

  static polynomial constant(std::int64_t p, int nvars, std::int64_t c) {
    polynomial f(p, nvars);
    f.add_term(monomial(nvars, 0), c);
    return f;
  }
  static polynomial variable(std::int64_t p, int nvars, int v, std::int64_t c = 1) {
    polynomial f(p, nvars);
    monomial m(nvars, 0);
    m[v] = 1;
    f.add_term(m, c);
    return f;
  }

  const monomial& leading_monomial() const {
    if (is_zero()) throw std::runtime_error("leading term of zero");
    return terms_.begin()->first;
  }
  std::int64_t leading_coeff() const { return terms_.begin()->second; }

  polynomial scaled(std::int64_t c) const {
    polynomial out(p_, nvars_);
    c = fp_reduce(c, p_);
    for (const auto& [m, v] : terms_) out.add_term(m, v * c % p_);
    return out;
  }

  polynomial monic() const { return scaled(fp_inverse(leading_coeff(), p_)); }

  polynomial times_monomial(const monomial& m, std::int64_t c = 1) const {
    polynomial out(p_, nvars_);
    for (const auto& [t, v] : terms_) out.add_term(mono_mul(t, m), v * c % p_);
    return out;
  }

  friend polynomial operator+(const polynomial& a, const polynomial& b) {
    polynomial out = a;
    for (const auto& [m, v] : b.terms_) out.add_term(m, v);
    return out;
  }
  friend polynomial operator-(const polynomial& a, const polynomial& b) {
    polynomial out = a;
    for (const auto& [m, v] : b.terms_) out.add_term(m, -v);
    return out;
  }
  friend polynomial operator*(const polynomial& a, const polynomial& b) {
    polynomial out(a.p_, a.nvars_);
    for (const auto& [ma, va] : a.terms_)
      for (const auto& [mb, vb] : b.terms_) out.add_term(mono_mul(ma, mb), va * vb % a.p_);
    return out;
  }

  bool is_homogeneous() const {
    if (is_zero()) return true;
    const int d = mono_degree(terms_.begin()->first);
    for (const auto& [m, v] : terms_)
      if (mono_degree(m) != d) return false;
    return true;
  }

  int degree() const {
    if (is_zero()) return -1;
    int d = 0;
    for (const auto& [m, v] : terms_) d = std::max(d, mono_degree(m));
    return d;
  }

  polynomial homogeneous_part(int d) const {
    polynomial out(p_, nvars_);
    for (const auto& [m, v] : terms_)
      if (mono_degree(m) == d) out.add_term(m, v);
    return out;
  }

  // Substitute images[i] for variable i; images live over `target_nvars`.
  polynomial substitute(const std::vector<polynomial>& images, int target_nvars) const {
    polynomial out(p_, target_nvars);
    for (const auto& [m, c] : terms_) {
      polynomial term = polynomial::constant(p_, target_nvars, c);
      for (int v = 0; v < nvars_; ++v)
        for (int e = 0; e < m[v]; ++e) term = term * images[v];
      out = out + term;
    }
    return out;
  }

  std::string to_string(const std::vector<std::string>& vars) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      bool printed = false;
      if (c != 1 || mono_degree(m) == 0) {
        os << c;
        printed = true;
      }
      for (int v = 0; v < nvars_; ++v) {
        if (m[v] == 0) continue;
        if (printed) os << "*";
        os << vars[v];
        if (m[v] > 1) os << "^" << m[v];
        printed = true;
      }
    }
    return os.str();
  }

 private:
  std::int64_t p_ = 2;
  int nvars_ = 0;
  std::map<monomial, std::int64_t, mono_order> terms_;
};

// Full normal form of f modulo the (not necessarily Groebner) basis gens.
inline polynomial poly_reduce(polynomial f, const std::vector<polynomial>& gens) {
  polynomial out(f.p(), f.nvars());
  while (!f.is_zero()) {
    bool reduced = false;
    for (const polynomial& g : gens) {
      if (g.is_zero()) continue;
      if (mono_divides(g.leading_monomial(), f.leading_monomial())) {
        const monomial q = mono_div(f.leading_monomial(), g.leading_monomial());
        const std::int64_t c =
            f.leading_coeff() * fp_inverse(g.leading_coeff(), f.p()) % f.p();
        f = f - g.times_monomial(q, c);
        reduced = true;
        break;
      }
    }
    if (!reduced) {
      out.add_term(f.leading_monomial(), f.leading_coeff());
      polynomial lead(f.p(), f.nvars());
      lead.add_term(f.leading_monomial(), f.leading_coeff());
      f = f - lead;
    }
  }
  return out;
}

inline polynomial s_polynomial(const polynomial& f, const polynomial& g) {
  const monomial l = mono_lcm(f.leading_monomial(), g.leading_monomial());
  polynomial a = f.times_monomial(mono_div(l, f.leading_monomial()),
                                  fp_inverse(f.leading_coeff(), f.p()));
  polynomial b = g.times_monomial(mono_div(l, g.leading_monomial()),
                                  fp_inverse(g.leading_coeff(), f.p()));
  return a - b;
}

// Buchberger with the coprime-leading-term criterion, then inter-reduction
// to the unique reduced Groebner basis.
inline std::vector<polynomial> groebner_basis(std::vector<polynomial> gens) {
  std::vector<polynomial> basis;
  for (auto& g : gens)
    if (!g.is_zero()) basis.push_back(g.monic());
  if (basis.empty()) return basis;

  std::vector<std::pair<int, int>> pairs;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j) pairs.emplace_back(i, j);

  while (!pairs.empty()) {
    auto [i, j] = pairs.back();
    pairs.pop_back();
    const monomial li = basis[i].leading_monomial();
    const monomial lj = basis[j].leading_monomial();
    if (mono_lcm(li, lj) == mono_mul(li, lj)) continue;  // coprime criterion
    polynomial r = poly_reduce(s_polynomial(basis[i], basis[j]), basis);
    if (r.is_zero()) continue;
    r = r.monic();
    for (std::size_t t = 0; t < basis.size(); ++t) pairs.emplace_back(t, basis.size());
    basis.push_back(std::move(r));
  }

  // Minimalize and reduce.
  std::vector<polynomial> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < basis.size() && !redundant; ++j)
      if (j != i && mono_divides(basis[j].leading_monomial(), basis[i].leading_monomial()) &&
          !(i < j && basis[j].leading_monomial() == basis[i].leading_monomial()))
        redundant = true;
    if (!redundant) minimal.push_back(basis[i]);
  }
  std::vector<polynomial> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<polynomial> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    polynomial r = poly_reduce(minimal[i], others);
    if (!r.is_zero()) reduced.push_back(r.monic());
  }
  return reduced;
}

// ---- text parsing ------------------------------------------------------

namespace detail {

inline void skip_ws(const std::string& s, std::size_t& i) {
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
}

}  // namespace detail

// Polynomial grammar: signed sums of terms; term = <coeff>? ('*'? <var>
// ('^' <int>)?)+ ; whitespace insignificant.
inline polynomial parse_polynomial(const std::string& text, std::int64_t p,
                                   const std::vector<std::string>& vars) {
  const int n = static_cast<int>(vars.size());
  polynomial out(p, n);
  std::size_t i = 0;
  detail::skip_ws(text, i);
  if (i >= text.size()) throw parse_error("empty polynomial");
  bool first = true;
  while (i < text.size()) {
    std::int64_t sign = 1;
    detail::skip_ws(text, i);
    if (text[i] == '+' || text[i] == '-') {
      sign = (text[i] == '-') ? -1 : 1;
      ++i;
    } else if (!first) {
      throw parse_error("expected '+' or '-' in polynomial: " + text);
    }
    first = false;
    detail::skip_ws(text, i);
    std::int64_t coeff = 1;
    bool saw_anything = false;
    if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      coeff = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        coeff = coeff * 10 + (text[i] - '0');
        coeff %= p;
        ++i;
      }
      saw_anything = true;
    }
    monomial m(n, 0);
    while (true) {
      detail::skip_ws(text, i);
      if (i < text.size() && text[i] == '*') {
        ++i;
        detail::skip_ws(text, i);
      }
      if (i >= text.size() || !std::isalpha(static_cast<unsigned char>(text[i]))) break;
      std::string name;
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
        name += text[i++];
      int v = -1;
      for (int t = 0; t < n; ++t)
        if (vars[t] == name) { v = t; break; }
      if (v < 0) throw parse_error("unknown variable '" + name + "'");
      int e = 1;
      detail::skip_ws(text, i);
      if (i < text.size() && text[i] == '^') {
        ++i;
        detail::skip_ws(text, i);
        if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
          throw parse_error("expected exponent after '^'");
        e = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
          e = e * 10 + (text[i++] - '0');
      }
      m[v] += e;
      saw_anything = true;
    }
    if (!saw_anything) throw parse_error("empty term in polynomial: " + text);
    out.add_term(m, sign * coeff);
    detail::skip_ws(text, i);
  }
  return out;
}

inline std::vector<std::string> split_top_level(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

// Parsed ring-spec text: lines `p = ...`, `vars = ...`, `relations = ...`,
// optional `ideal = ...`, optional `truncation = ...`.
struct ring_spec {
  std::int64_t p = 0;
  std::vector<std::string> vars;
  std::vector<std::string> relation_texts;
  std::vector<std::string> ideal_texts;
  int truncation = 0;  // 0: unset

  std::vector<polynomial> relations() const {
    std::vector<polynomial> out;
    for (const auto& t : relation_texts) out.push_back(parse_polynomial(t, p, vars));
    return out;
  }
  std::vector<polynomial> ideal_gens() const {
    std::vector<polynomial> out;
    for (const auto& t : ideal_texts) out.push_back(parse_polynomial(t, p, vars));
    return out;
  }
};

inline std::string strip(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

inline ring_spec parse_ring_spec(const std::string& text) {
  ring_spec spec;
  bool saw_p = false, saw_vars = false;
  for (const std::string& raw : split_top_level(text, '\n')) {
    std::string line = strip(raw);
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw parse_error("expected 'key = value': " + line);
    const std::string key = strip(line.substr(0, eq));
    const std::string value = strip(line.substr(eq + 1));
    if (key == "p") {
      spec.p = std::stoll(value);
      saw_p = true;
    } else if (key == "vars") {
      if (!value.empty()) {
        for (auto& v : split_top_level(value, ',')) {
          std::string name = strip(v);
          if (name.empty()) throw parse_error("empty variable name");
          spec.vars.push_back(name);
        }
      }
      saw_vars = true;
    } else if (key == "relations") {
      for (auto& v : split_top_level(value, ','))
        if (!strip(v).empty()) spec.relation_texts.push_back(strip(v));
    } else if (key == "ideal") {
      for (auto& v : split_top_level(value, ','))
        if (!strip(v).empty()) spec.ideal_texts.push_back(strip(v));
    } else if (key == "truncation") {
      spec.truncation = std::stoi(value);
    } else {
      throw parse_error("unknown key '" + key + "'");
    }
  }
  if (!saw_p) throw parse_error("missing 'p ='");
  if (!saw_vars) throw parse_error("missing 'vars ='");
  if (!is_prime(spec.p)) throw not_prime_error(spec.p);
  return spec;
}

}  // namespace largehom
