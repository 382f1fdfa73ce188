#pragma once

// Sparse multivariate polynomials in up to four variables with the graded
// reverse lexicographic term order (x > y > z > w). Terms are kept in a map
// whose iteration order is descending, so begin() is the leading term.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "core.hpp"
#include "fields.hpp"

namespace conelab {

constexpr unsigned kMaxVars = 4;
using Expo = std::array<std::uint16_t, kMaxVars>;

inline unsigned expo_degree(const Expo& e) { return e[0] + e[1] + e[2] + e[3]; }

// Graded reverse lexicographic comparison: higher total degree wins; on equal
// degree a > b when the last nonzero entry of a - b is negative.
inline bool grevlex_greater(const Expo& a, const Expo& b) {
  unsigned da = expo_degree(a), db = expo_degree(b);
  if (da != db) return da > db;
  for (unsigned i = kMaxVars; i-- > 0;) {
    int d = static_cast<int>(a[i]) - static_cast<int>(b[i]);
    if (d != 0) return d < 0;
  }
  return false;
}

struct GrevlexDescending {
  bool operator()(const Expo& a, const Expo& b) const { return grevlex_greater(a, b); }
};

inline bool expo_divides(const Expo& a, const Expo& b) {  // a | b
  for (unsigned i = 0; i < kMaxVars; ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline Expo expo_mul(const Expo& a, const Expo& b) {
  Expo out{};
  for (unsigned i = 0; i < kMaxVars; ++i) out[i] = a[i] + b[i];
  return out;
}

inline Expo expo_div(const Expo& a, const Expo& b) {  // a / b, caller checks divisibility
  Expo out{};
  for (unsigned i = 0; i < kMaxVars; ++i) out[i] = a[i] - b[i];
  return out;
}

inline Expo expo_lcm(const Expo& a, const Expo& b) {
  Expo out{};
  for (unsigned i = 0; i < kMaxVars; ++i) out[i] = std::max(a[i], b[i]);
  return out;
}

// All exponent vectors in `nvars` variables of total degree `deg`, descending.
inline std::vector<Expo> monomial_basis(unsigned nvars, unsigned deg) {
  if (nvars < 1 || nvars > kMaxVars) throw error("monomial basis: variable count out of range");
  std::vector<Expo> out;
  Expo e{};
  auto rec = [&](auto&& self, unsigned var, unsigned remaining) -> void {
    if (var + 1 == nvars) {
      e[var] = static_cast<std::uint16_t>(remaining);
      out.push_back(e);
      e[var] = 0;
      return;
    }
    for (unsigned k = 0; k <= remaining; ++k) {
      e[var] = static_cast<std::uint16_t>(k);
      self(self, var + 1, remaining - k);
    }
    e[var] = 0;
  };
  rec(rec, 0, deg);
  std::sort(out.begin(), out.end(), GrevlexDescending{});
  return out;
}

inline std::string default_var_name(unsigned i) {
  static const char* names[kMaxVars] = {"x", "y", "z", "w"};
  return names[i];
}

template <FieldType K>
class MultiPoly {
 public:
  using Terms = std::map<Expo, K, GrevlexDescending>;

  MultiPoly() : nvars_(0) {}
  explicit MultiPoly(unsigned nvars) : nvars_(nvars) { check_nvars(); }

  static MultiPoly zero(unsigned nvars) { return MultiPoly(nvars); }

  static MultiPoly constant(unsigned nvars, const K& c) {
    MultiPoly f(nvars);
    if (!c.is_zero()) f.terms_[Expo{}] = c;
    return f;
  }

  static MultiPoly variable(unsigned i, unsigned nvars, const K& one) {
    MultiPoly f(nvars);
    if (i >= nvars) throw error("variable index out of range");
    Expo e{};
    e[i] = 1;
    f.terms_[e] = one.make(1);
    return f;
  }

  static MultiPoly monomial(unsigned nvars, const Expo& e, const K& c) {
    MultiPoly f(nvars);
    for (unsigned i = nvars; i < kMaxVars; ++i)
      if (e[i] != 0) throw error("monomial uses a variable outside the ambient ring");
    if (!c.is_zero()) f.terms_[e] = c;
    return f;
  }

  static MultiPoly linear_form(const std::vector<K>& coeffs) {
    MultiPoly f(static_cast<unsigned>(coeffs.size()));
    for (unsigned i = 0; i < coeffs.size(); ++i) {
      if (coeffs[i].is_zero()) continue;
      Expo e{};
      e[i] = 1;
      f.terms_[e] = coeffs[i];
    }
    return f;
  }

  unsigned nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const Terms& terms() const { return terms_; }

  int degree() const {
    if (terms_.empty()) return -1;
    return static_cast<int>(expo_degree(terms_.begin()->first));
  }

  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    unsigned d = expo_degree(terms_.begin()->first);
    for (auto& [e, c] : terms_)
      if (expo_degree(e) != d) return false;
    return true;
  }

  // Degree with the homogeneity requirement enforced.
  unsigned homogeneous_degree() const {
    if (terms_.empty()) throw error("zero polynomial has no homogeneous degree");
    if (!is_homogeneous()) throw error("polynomial is not homogeneous");
    return expo_degree(terms_.begin()->first);
  }

  const Expo& leading_exponent() const {
    if (terms_.empty()) throw error("zero polynomial has no leading term");
    return terms_.begin()->first;
  }
  const K& leading_coefficient() const {
    if (terms_.empty()) throw error("zero polynomial has no leading term");
    return terms_.begin()->second;
  }

  K coefficient(const Expo& e) const {
    auto it = terms_.find(e);
    if (it == terms_.end()) return unit().make(0);
    return it->second;
  }

  // A context-carrying 1 when any term exists; bare otherwise.
  K unit() const {
    if (!terms_.empty()) return terms_.begin()->second.make(1);
    return K(1);
  }

  MultiPoly operator+(const MultiPoly& o) const {
    MultiPoly out = *this;
    out.check_same_ambient(o);
    for (auto& [e, c] : o.terms_) out.add_term(e, c);
    return out;
  }
  MultiPoly operator-(const MultiPoly& o) const {
    MultiPoly out = *this;
    out.check_same_ambient(o);
    for (auto& [e, c] : o.terms_) out.add_term(e, -c);
    return out;
  }
  MultiPoly operator-() const {
    MultiPoly out = *this;
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
  }
  MultiPoly operator*(const MultiPoly& o) const {
    check_same_ambient(o);
    MultiPoly out(nvars_);
    for (auto& [e1, c1] : terms_)
      for (auto& [e2, c2] : o.terms_) out.add_term(expo_mul(e1, e2), c1 * c2);
    return out;
  }
  MultiPoly operator*(const K& s) const {
    MultiPoly out(nvars_);
    if (s.is_zero()) return out;
    for (auto& [e, c] : terms_) {
      K v = c * s;
      if (!v.is_zero()) out.terms_[e] = v;
    }
    return out;
  }
  MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
  MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  bool operator==(const MultiPoly& o) const {
    if (nvars_ != o.nvars_ || terms_.size() != o.terms_.size()) return false;
    auto it = terms_.begin(), jt = o.terms_.begin();
    for (; it != terms_.end(); ++it, ++jt)
      if (it->first != jt->first || !(it->second == jt->second)) return false;
    return true;
  }

  MultiPoly pow(unsigned n) const {
    MultiPoly acc = constant(nvars_, unit());
    MultiPoly base = *this;
    while (n) {
      if (n & 1u) acc = acc * base;
      base = n > 1 ? base * base : base;
      n >>= 1;
    }
    return acc;
  }

  // Leading coefficient scaled to 1 (the projective-representative normal form).
  MultiPoly normalized() const {
    if (terms_.empty()) return *this;
    return *this * leading_coefficient().inv();
  }

  MultiPoly partial_derivative(unsigned var) const {
    if (var >= nvars_) throw error("derivative variable out of range");
    MultiPoly out(nvars_);
    for (auto& [e, c] : terms_) {
      if (e[var] == 0) continue;
      K v = c * c.make(e[var]);
      if (v.is_zero()) continue;
      Expo e2 = e;
      --e2[var];
      out.terms_[e2] = v;
    }
    return out;
  }

  // j-th divided-power derivative in `var`: x^e -> C(e, j) x^{e-j}. Equals
  // (1/j!) d^j/dx^j but stays valid in small characteristic because the
  // binomial coefficient is formed as an integer first.
  MultiPoly divided_derivative(unsigned var, unsigned j) const {
    if (var >= nvars_) throw error("derivative variable out of range");
    MultiPoly out(nvars_);
    for (auto& [e, c] : terms_) {
      if (e[var] < j) continue;
      K v = c * c.make(static_cast<std::int64_t>(binomial_u64(e[var], j)));
      if (v.is_zero()) continue;
      Expo e2 = e;
      e2[var] = static_cast<std::uint16_t>(e2[var] - j);
      out.add_term(e2, v);
    }
    return out;
  }

  // Coefficients of t^0, t^1, ... in f(..., x_var + t*g, ...). The shift
  // polynomial g may involve any of the ambient variables.
  std::vector<MultiPoly> taylor_coefficients(unsigned var, const MultiPoly& g) const {
    check_same_ambient(g);
    unsigned top = 0;
    for (auto& [e, c] : terms_) top = std::max<unsigned>(top, e[var]);
    std::vector<MultiPoly> out;
    MultiPoly gpow = constant(nvars_, unit());
    for (unsigned j = 0; j <= top; ++j) {
      out.push_back(divided_derivative(var, j) * gpow);
      if (j < top) gpow = gpow * g;
    }
    return out;
  }

  template <FieldType L>
  L evaluate(const std::vector<L>& point) const {
    if (point.size() != nvars_) throw ambient_mismatch_error("evaluation point has wrong length");
    if (terms_.empty()) {
      if (point.empty()) throw ambient_mismatch_error("cannot evaluate without context");
      return point[0].make(0);
    }
    L acc = point.empty() ? L(0) : point[0].make(0);
    for (auto& [e, c] : terms_) {
      L term = embed_scalar(c, acc.make(1)) + acc.make(0);
      for (unsigned i = 0; i < nvars_; ++i)
        for (unsigned k = 0; k < e[i]; ++k) term = term * point[i];
      acc = acc + term;
    }
    return acc;
  }

  // Substitute forms[i] for variable i. Every form must live in a common
  // ambient ring; the result lives there too.
  MultiPoly compose(const std::vector<MultiPoly>& forms) const {
    if (forms.size() != nvars_) throw ambient_mismatch_error("composition needs one form per variable");
    unsigned m = forms[0].nvars();
    for (auto& f : forms)
      if (f.nvars() != m) throw ambient_mismatch_error("composition forms in mixed ambients");
    MultiPoly acc(m);
    for (auto& [e, c] : terms_) {
      MultiPoly term = constant(m, c);
      for (unsigned i = 0; i < nvars_; ++i)
        if (e[i] > 0) term = term * forms[i].pow(e[i]);
      acc += term;
    }
    return acc;
  }

  // Substitute the linear change of coordinates x_i -> sum_j A(i, j) x_j.
  template <class Mat>
  MultiPoly apply_linear_forms(const Mat& a) const {
    if (a.rows() != nvars_ || a.cols() != nvars_)
      throw ambient_mismatch_error("linear substitution needs a square matrix of ambient size");
    std::vector<MultiPoly> forms;
    forms.reserve(nvars_);
    for (unsigned i = 0; i < nvars_; ++i) forms.push_back(linear_form(a.row(i)));
    return compose(forms);
  }

  // Exact multivariate division; throws when the quotient does not exist.
  MultiPoly divexact(const MultiPoly& g) const {
    MultiPoly q(nvars_);
    if (!try_divide(g, q)) throw error("inexact multivariate division");
    return q;
  }

  bool try_divide(const MultiPoly& g, MultiPoly& q) const {
    check_same_ambient(g);
    if (g.is_zero()) throw error("division by zero polynomial");
    q = MultiPoly(nvars_);
    MultiPoly r = *this;
    const Expo& ge = g.leading_exponent();
    K glc = g.leading_coefficient();
    while (!r.is_zero()) {
      const Expo& re = r.leading_exponent();
      if (!expo_divides(ge, re)) return false;
      K c = r.leading_coefficient() / glc;
      Expo m = expo_div(re, ge);
      q.add_term(m, c);
      MultiPoly piece = monomial(nvars_, m, c);
      r -= piece * g;
    }
    return true;
  }

  // Coefficients against the descending degree-`deg` monomial basis.
  std::vector<K> coefficient_vector(unsigned deg) const {
    if (!is_zero() && (!is_homogeneous() || homogeneous_degree() != deg))
      throw error("coefficient vector requested at the wrong degree");
    auto basis = monomial_basis(nvars_, deg);
    std::vector<K> out;
    out.reserve(basis.size());
    K zero = unit().make(0);
    for (auto& e : basis) {
      auto it = terms_.find(e);
      out.push_back(it == terms_.end() ? zero : it->second);
    }
    return out;
  }

  static MultiPoly from_coefficient_vector(unsigned nvars, unsigned deg, const std::vector<K>& v) {
    auto basis = monomial_basis(nvars, deg);
    if (v.size() != basis.size()) throw error("coefficient vector has wrong length");
    MultiPoly f(nvars);
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (!v[i].is_zero()) f.terms_[basis[i]] = v[i];
    return f;
  }

  // Univariate view: set every variable except `keep` to the given constants
  // (commonly 1 for a dehomogenization slot, 0 elsewhere).
  UPoly<K> to_upoly(unsigned keep, const std::vector<K>& others) const {
    if (others.size() != nvars_) throw ambient_mismatch_error("substitution vector has wrong length");
    unsigned top = 0;
    for (auto& [e, c] : terms_) top = std::max<unsigned>(top, e[keep]);
    std::vector<K> coeffs(top + 1, unit().make(0));
    for (auto& [e, c] : terms_) {
      K v = c;
      for (unsigned i = 0; i < nvars_; ++i) {
        if (i == keep) continue;
        for (unsigned k = 0; k < e[i]; ++k) v = v * others[i];
      }
      coeffs[e[keep]] = coeffs[e[keep]] + v;
    }
    return UPoly<K>(std::move(coeffs));
  }

  // Coefficient-wise map into another coefficient field.
  template <FieldType L, class Fn>
  MultiPoly<L> map_coefficients(unsigned nvars, Fn&& fn) const {
    MultiPoly<L> out(nvars);
    for (auto& [e, c] : terms_) out.add_term(e, fn(c));
    return out;
  }

  void add_term(const Expo& e, const K& c) {
    for (unsigned i = nvars_; i < kMaxVars; ++i)
      if (e[i] != 0) throw error("term uses a variable outside the ambient ring");
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      if (!c.is_zero()) terms_.emplace(e, c);
      return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  std::string to_str(const std::vector<std::string>& names = {}) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto& [e, c] : terms_) {
      std::string cs = c.to_str();
      bool negated = false;
      if (!first && cs.size() && cs[0] == '-' && cs.find_first_of("+-", 1) == std::string::npos) {
        negated = true;
        cs = cs.substr(1);
      }
      out += first ? "" : (negated ? " - " : " + ");
      first = false;
      std::string mono;
      for (unsigned i = 0; i < nvars_; ++i) {
        if (e[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += i < names.size() ? names[i] : default_var_name(i);
        if (e[i] > 1) mono += "^" + std::to_string(e[i]);
      }
      bool composite = cs.find_first_of("+-") != std::string::npos ||
                       cs.find_first_of("*/ ") != std::string::npos;
      if (mono.empty()) {
        out += composite ? "(" + cs + ")" : cs;
      } else if (cs == "1") {
        out += mono;
      } else {
        out += (composite ? "(" + cs + ")" : cs) + "*" + mono;
      }
    }
    return out;
  }

 private:
  void check_nvars() const {
    if (nvars_ < 1 || nvars_ > kMaxVars) throw error("variable count out of range");
  }
  void check_same_ambient(const MultiPoly& o) const {
    if (nvars_ != o.nvars_) throw ambient_mismatch_error("polynomials from different ambients");
  }

  unsigned nvars_;
  Terms terms_;
};

// Euler's relation check helper: sum_i x_i df/dx_i = deg(f) * f for
// homogeneous f (used as a cross-check in tests and sanity assertions).
template <FieldType K>
MultiPoly<K> euler_combination(const MultiPoly<K>& f) {
  MultiPoly<K> acc(f.nvars());
  K one = f.unit();
  for (unsigned i = 0; i < f.nvars(); ++i)
    acc += MultiPoly<K>::variable(i, f.nvars(), one) * f.partial_derivative(i);
  return acc;
}

}  // namespace conelab
