#pragma once
// Univariate polynomials over any FieldType: arithmetic, gcd, resultants,
// irreducibility and factorization over finite fields, root extraction.

#include <gmpxx.h>

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "fields.hpp"

namespace conelab {

template <FieldType K>
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }
  UPoly(std::initializer_list<K> coeffs) : c_(coeffs) { trim(); }
  static UPoly constant(const K& k) { return UPoly(std::vector<K>{k}); }
  static UPoly X() { return UPoly(std::vector<K>{K(), K().make(1)}); }
  static UPoly monomial(const K& c, std::size_t deg) {
    std::vector<K> v(deg + 1, c.make(0));
    v[deg] = c;
    return UPoly(std::move(v));
  }

  bool is_zero() const { return c_.empty(); }
  // Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const K& lc() const {
    if (c_.empty()) throw error("leading coefficient of zero polynomial");
    return c_.back();
  }
  K coeff(std::size_t i) const { return i < c_.size() ? c_[i] : unit().make(0); }
  const std::vector<K>& coeffs() const { return c_; }
  // A context-carrying sample coefficient (falls back to a bare constant).
  K unit() const {
    for (const auto& k : c_)
      return k;
    return K();
  }

  UPoly operator+(const UPoly& o) const {
    std::vector<K> r(std::max(c_.size(), o.c_.size()), K());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) + o.coeff(i);
    return UPoly(std::move(r));
  }
  UPoly operator-(const UPoly& o) const {
    std::vector<K> r(std::max(c_.size(), o.c_.size()), K());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) - o.coeff(i);
    return UPoly(std::move(r));
  }
  UPoly operator-() const {
    std::vector<K> r(c_);
    for (auto& k : r) k = -k;
    return UPoly(std::move(r));
  }
  UPoly operator*(const UPoly& o) const {
    if (is_zero() || o.is_zero()) return UPoly();
    std::vector<K> r(c_.size() + o.c_.size() - 1, K());
    for (std::size_t i = 0; i < c_.size(); ++i)
      for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] = r[i + j] + c_[i] * o.c_[j];
    return UPoly(std::move(r));
  }
  UPoly operator*(const K& k) const {
    std::vector<K> r(c_);
    for (auto& x : r) x = x * k;
    return UPoly(std::move(r));
  }
  bool operator==(const UPoly& o) const {
    if (c_.size() != o.c_.size()) return false;
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!(c_[i] == o.c_[i])) return false;
    return true;
  }
  bool operator!=(const UPoly& o) const { return !(*this == o); }

  // Quotient and remainder; divisor must be nonzero.
  std::pair<UPoly, UPoly> divmod(const UPoly& d) const {
    if (d.is_zero()) throw error("polynomial division by zero");
    UPoly q, r = *this;
    K dlc_inv = d.lc().inv();
    std::vector<K> qc(degree() >= d.degree() && degree() >= 0
                          ? static_cast<std::size_t>(degree() - d.degree()) + 1
                          : 0,
                      K());
    while (!r.is_zero() && r.degree() >= d.degree()) {
      K f = r.lc() * dlc_inv;
      int shift = r.degree() - d.degree();
      qc[static_cast<std::size_t>(shift)] = f;
      std::vector<K> rc = r.c_;
      for (std::size_t i = 0; i < d.c_.size(); ++i) {
        std::size_t idx = i + static_cast<std::size_t>(shift);
        rc[idx] = rc[idx] - f * d.c_[i];
      }
      rc.pop_back();  // leading term cancels exactly
      r = UPoly(std::move(rc));
    }
    return {UPoly(std::move(qc)), r};
  }
  UPoly operator/(const UPoly& d) const { return divmod(d).first; }
  UPoly operator%(const UPoly& d) const { return divmod(d).second; }

  // Exact division; throws if there is a remainder.
  UPoly divexact(const UPoly& d) const {
    auto [q, r] = divmod(d);
    if (!r.is_zero()) throw error("inexact polynomial division");
    return q;
  }
  bool divides(const UPoly& f) const { return f.divmod(*this).second.is_zero(); }

  UPoly monic() const {
    if (is_zero()) return *this;
    return *this * lc().inv();
  }

  UPoly derivative() const {
    if (c_.size() <= 1) return UPoly();
    std::vector<K> r(c_.size() - 1, K());
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * c_[i].make(static_cast<std::int64_t>(i));
    return UPoly(std::move(r));
  }

  template <FieldType L>
  L eval(const L& x) const {
    L acc = x.make(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + lift_coeff<L>(c_[i], x);
    return acc;
  }

  UPoly compose(const UPoly& g) const {
    UPoly acc;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * g + UPoly::constant(c_[i]);
    return acc;
  }

  UPoly shifted_up(std::size_t k) const {  // multiply by X^k
    if (is_zero()) return UPoly();
    std::vector<K> r(c_.size() + k, K());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i + k] = c_[i];
    return UPoly(std::move(r));
  }

  UPoly pow(std::uint64_t e) const {
    UPoly r = UPoly::constant(unit().make(1)), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }

  std::string to_str(const std::string& var = "t") const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (c_[i].is_zero()) continue;
      if (!out.empty()) out += " + ";
      std::string cs = c_[i].to_str();
      if (i == 0) {
        out += cs;
      } else {
        out += (cs == "1" ? "" : "(" + cs + ")*");
        out += var;
        if (i > 1) out += "^" + std::to_string(i);
      }
    }
    return out;
  }

 private:
  template <FieldType L>
  static L lift_coeff(const K& c, const L& sample) {
    if constexpr (std::is_same_v<K, L>) {
      (void)sample;
      return c;
    } else {
      return L(c) * sample.make(1);  // canonical embedding, aligned to sample's context
    }
  }
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<K> c_;
};

// gcd, made monic so it is canonical.
template <FieldType K>
UPoly<K> poly_gcd(UPoly<K> a, UPoly<K> b) {
  while (!b.is_zero()) {
    UPoly<K> r = a % b;
    a = b;
    b = r;
  }
  return a.monic();
}

// Extended gcd: returns (g, u, v) with u*a + v*b = g, g monic (or zero).
template <FieldType K>
std::tuple<UPoly<K>, UPoly<K>, UPoly<K>> poly_xgcd(const UPoly<K>& a, const UPoly<K>& b) {
  UPoly<K> r0 = a, r1 = b;
  UPoly<K> u0 = UPoly<K>::constant(K().make(1)), u1;
  UPoly<K> v0, v1 = UPoly<K>::constant(K().make(1));
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    r0 = r1;
    r1 = r;
    UPoly<K> ut = u0 - q * u1;
    u0 = u1;
    u1 = ut;
    UPoly<K> vt = v0 - q * v1;
    v0 = v1;
    v1 = vt;
  }
  if (r0.is_zero()) return {r0, u0, v0};
  K s = r0.lc().inv();
  return {r0 * s, u0 * s, v0 * s};
}

template <FieldType K>
UPoly<K> squarefree_part(const UPoly<K>& f) {
  if (f.is_zero() || f.degree() == 0) return f.monic();
  UPoly<K> g = poly_gcd(f, f.derivative());
  if (g.degree() <= 0) return f.monic();
  return f.divexact(g).monic();
}

// Resultant of two univariate polynomials via the Euclidean remainder sequence.
template <FieldType K>
K poly_resultant(UPoly<K> f, UPoly<K> g) {
  K one = (f.is_zero() ? g : f).unit().make(1);
  if (f.is_zero() || g.is_zero()) return one.make(0);
  K acc = one;
  bool neg = false;
  while (g.degree() > 0) {
    UPoly<K> r = f % g;
    if (r.is_zero()) return one.make(0);
    // res(f,g) = (-1)^{deg f deg g} lc(g)^{deg f - deg r} res(g, r)
    if ((f.degree() & 1) && (g.degree() & 1)) neg = !neg;
    K lg = g.lc();
    K pw = one;
    for (int i = 0; i < f.degree() - r.degree(); ++i) pw = pw * lg;
    acc = acc * pw;
    f = g;
    g = r;
  }
  // deg g == 0: res = lc(g)^{deg f}
  K pw = one;
  for (int i = 0; i < f.degree(); ++i) pw = pw * g.lc();
  acc = acc * pw;
  return neg ? -acc : acc;
}

template <FieldType K>
K poly_discriminant(const UPoly<K>& f) {
  if (f.degree() < 1) throw error("discriminant needs degree >= 1");
  K r = poly_resultant(f, f.derivative());
  K lead_inv = f.lc().inv();
  K d = r * lead_inv;
  int n = f.degree();
  if (((n * (n - 1)) / 2) % 2 == 1) d = -d;
  return d;
}

// base^e mod m, with an arbitrary-precision exponent.
template <FieldType K>
UPoly<K> poly_powmod(const UPoly<K>& base, const mpz_class& e, const UPoly<K>& m) {
  UPoly<K> r = UPoly<K>::constant(m.unit().make(1));
  UPoly<K> b = base % m;
  mp_bitcnt_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  if (e == 0) return r;
  for (mp_bitcnt_t i = bits; i-- > 0;) {
    r = (r * r) % m;
    if (mpz_tstbit(e.get_mpz_t(), i)) r = (r * b) % m;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Finite-field routines. `sample` must carry the field context; field_order()
// and characteristic() come from the field's helper overloads.

// Rabin irreducibility test for a monic polynomial over a finite field.
template <FieldType K>
bool is_irreducible(const UPoly<K>& f, const K& sample) {
  if (!is_finite_field(sample)) throw incompatible_field_error("irreducibility test needs a finite field");
  int n = f.degree();
  if (n <= 0) return false;
  if (n == 1) return true;
  mpz_class q = field_order(sample);
  UPoly<K> x = UPoly<K>::X() * sample.make(1);
  // x^(q^n) == x mod f, and gcd(x^(q^(n/l)) - x, f) == 1 for prime l | n.
  mpz_class qn;
  mpz_pow_ui(qn.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(n));
  if (!(poly_powmod(x, qn, f) == x % f)) return false;
  for (auto [l, e] : factor_u64(static_cast<std::uint64_t>(n))) {
    (void)e;
    mpz_class qd;
    mpz_pow_ui(qd.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(n / static_cast<int>(l)));
    UPoly<K> g = poly_gcd(poly_powmod(x, qd, f) - (x % f), f);
    if (g.degree() != 0) return false;
  }
  return true;
}

// Deterministic least irreducible monic polynomial of the given degree:
// coefficient vectors (c_0, ..., c_{m-1}) are enumerated in odometer order
// (c_0 fastest) using the field's canonical element enumeration, and the first
// irreducible candidate wins.
template <FieldType K>
UPoly<K> find_irreducible(const K& sample, unsigned degree) {
  if (degree == 0) throw error("extension degree must be positive");
  mpz_class q = field_order(sample);
  mpz_class total;
  mpz_pow_ui(total.get_mpz_t(), q.get_mpz_t(), degree);
  if (!total.fits_ulong_p()) throw extension_exhausted_error("modulus search space too large", degree);
  std::uint64_t count = total.get_ui();
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::vector<K> c(degree + 1, K());
    std::uint64_t rest = idx;
    std::uint64_t qu = q.get_ui();
    for (unsigned i = 0; i < degree; ++i) {
      c[i] = element_at(sample, rest % qu);
      rest /= qu;
    }
    c[degree] = sample.make(1);
    UPoly<K> f{std::vector<K>(c)};
    if (is_irreducible(f, sample)) return f;
  }
  throw contract_violation_error("no irreducible polynomial found (impossible over a finite field)");
}

namespace detail {

// Cantor–Zassenhaus equal-degree splitting: h is squarefree, monic, a product
// of irreducible factors all of degree d over the finite field of `sample`.
template <FieldType K>
void equal_degree_factor(const UPoly<K>& h, unsigned d, const K& sample, SeededRng& rng,
                         std::vector<UPoly<K>>& out) {
  if (h.degree() <= 0) return;
  if (h.degree() == static_cast<int>(d)) {
    out.push_back(h.monic());
    return;
  }
  mpz_class q = field_order(sample);
  mpz_class qd;
  mpz_pow_ui(qd.get_mpz_t(), q.get_mpz_t(), d);
  mpz_class e = (qd - 1) / 2;
  for (int attempt = 0; attempt < 256; ++attempt) {
    std::vector<K> rc(static_cast<std::size_t>(h.degree()), K());
    for (auto& k : rc) k = random_element(sample, rng);
    UPoly<K> r{std::move(rc)};
    if (r.is_zero()) continue;
    UPoly<K> s = poly_powmod(r, e, h) - UPoly<K>::constant(sample.make(1));
    UPoly<K> g = poly_gcd(s, h);
    if (g.degree() > 0 && g.degree() < h.degree()) {
      equal_degree_factor(g, d, sample, rng, out);
      equal_degree_factor(h.divexact(g), d, sample, rng, out);
      return;
    }
  }
  throw error("equal-degree splitting did not converge");
}

}  // namespace detail

// Full factorization over a finite field: returns (irreducible monic factor,
// multiplicity) pairs, deterministically ordered by (degree, coefficient
// string). Input must be nonzero.
template <FieldType K>
std::vector<std::pair<UPoly<K>, unsigned>> factor_over_finite_field(const UPoly<K>& f_in,
                                                                    const K& sample,
                                                                    std::uint64_t seed = 7) {
  if (f_in.is_zero()) throw error("factorization of the zero polynomial");
  SeededRng rng(seed ^ 0xfac707);
  std::vector<std::pair<UPoly<K>, unsigned>> result;
  UPoly<K> f = f_in.monic();
  if (f.degree() == 0) return result;
  mpz_class q = field_order(sample);

  // Distinct-degree stage on the squarefree part; multiplicities recovered by
  // repeated exact division at the end.
  UPoly<K> sf = squarefree_part(f);
  std::vector<UPoly<K>> irreducibles;
  UPoly<K> rem = sf;
  UPoly<K> x = UPoly<K>::X() * sample.make(1);
  UPoly<K> xq = x;
  mpz_class qd(1);
  for (unsigned d = 1; rem.degree() > 0 && static_cast<int>(d) <= rem.degree(); ++d) {
    qd *= q;
    xq = poly_powmod(x, qd, rem);
    UPoly<K> g = poly_gcd(xq - (x % rem), rem);
    if (g.degree() > 0) {
      detail::equal_degree_factor(g, d, sample, rng, irreducibles);
      rem = rem.divexact(g);
    }
    if (2 * (d + 1) > static_cast<unsigned>(rem.degree()) && rem.degree() > 0) {
      irreducibles.push_back(rem.monic());
      rem = UPoly<K>::constant(sample.make(1));
    }
  }
  std::sort(irreducibles.begin(), irreducibles.end(), [](const UPoly<K>& a, const UPoly<K>& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.to_str() < b.to_str();
  });
  for (const auto& p : irreducibles) {
    unsigned mult = 0;
    while (p.divides(f)) {
      f = f.divexact(p);
      ++mult;
    }
    result.emplace_back(p, mult);
  }
  if (f.degree() != 0) throw contract_violation_error("factorization lost a factor");
  return result;
}

// All roots of f lying in the (finite) field of `sample`, sorted by canonical
// string; multiplicities are not repeated.
template <FieldType K>
std::vector<K> roots_in_field(const UPoly<K>& f, const K& sample, std::uint64_t seed = 11) {
  if (f.is_zero()) throw error("roots of the zero polynomial");
  SeededRng rng(seed ^ 0x5eed5);
  UPoly<K> sf = squarefree_part(f);
  if (sf.degree() <= 0) return {};
  mpz_class q = field_order(sample);
  UPoly<K> x = UPoly<K>::X() * sample.make(1);
  UPoly<K> lin = poly_gcd(poly_powmod(x, q, sf) - (x % sf), sf);
  std::vector<UPoly<K>> facs;
  if (lin.degree() > 0) detail::equal_degree_factor(lin, 1, sample, rng, facs);
  std::vector<K> roots;
  roots.reserve(facs.size());
  for (const auto& l : facs) roots.push_back(-l.coeff(0));
  std::sort(roots.begin(), roots.end(), [](const K& a, const K& b) { return a.to_str() < b.to_str(); });
  return roots;
}

// Square roots in a finite field, via root extraction on X^2 - c.
template <FieldType K>
bool field_sqrt(const K& c, const K& sample, K& out) {
  UPoly<K> f{-c, sample.make(0), sample.make(1)};
  auto r = roots_in_field(f, sample);
  if (r.empty()) return false;
  out = r.front();
  return true;
}

}  // namespace conelab
