#pragma once
// Exact coefficient fields: arbitrary-precision rationals and odd prime fields.
// Extension fields and univariate rational-function fields are layered on top
// in ext.hpp / ratfunc.hpp; all of them model the same duck-typed Field shape
// so the polynomial/linear-algebra templates work over any of them.
//
// Elements of parameterized fields carry their parameters (a prime, a modulus
// context). A default-constructed element is a *bare integer constant*: it has
// no field attached and adopts the parameters of the other operand when mixed.
// This keeps generic code natural (K() is zero, k.make(1) is one) while still
// detecting genuinely incompatible operands at runtime.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <type_traits>

#include "core.hpp"

namespace conelab {

template <class K>
concept FieldType = requires(const K a, const K b, std::int64_t n) {
  K();
  { a + b } -> std::same_as<K>;
  { a - b } -> std::same_as<K>;
  { a * b } -> std::same_as<K>;
  { a / b } -> std::same_as<K>;
  { -a } -> std::same_as<K>;
  { a.inv() } -> std::same_as<K>;
  { a.make(n) } -> std::same_as<K>;
  { a.is_zero() } -> std::same_as<bool>;
  { a == b } -> std::same_as<bool>;
  { a.to_str() } -> std::same_as<std::string>;
};

// ---------------------------------------------------------------------------
// Rational: Q, backed by GMP. Always in lowest terms with positive denominator
// (mpq_class maintains canonical form under arithmetic; constructors
// canonicalize).
class Rational {
 public:
  static constexpr bool finite_kind = false;
  Rational() : v_(0) {}
  Rational(std::int64_t n) : v_(static_cast<long>(n)) {}  // NOLINT: implicit by design
  Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw construction_error("rational with zero denominator");
    v_ = mpq_class(static_cast<long>(num), static_cast<long>(den));
    v_.canonicalize();
  }
  explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }
  explicit Rational(const mpz_class& v) : v_(v) {}

  Rational operator+(const Rational& o) const { return Rational::raw(v_ + o.v_); }
  Rational operator-(const Rational& o) const { return Rational::raw(v_ - o.v_); }
  Rational operator*(const Rational& o) const { return Rational::raw(v_ * o.v_); }
  Rational operator/(const Rational& o) const {
    if (o.is_zero()) throw error("division by zero in Q");
    return Rational::raw(v_ / o.v_);
  }
  Rational operator-() const { return Rational::raw(-v_); }
  Rational inv() const {
    if (is_zero()) throw error("inverse of zero in Q");
    return Rational::raw(1 / v_);
  }
  bool operator==(const Rational& o) const { return v_ == o.v_; }
  bool operator!=(const Rational& o) const { return v_ != o.v_; }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  Rational make(std::int64_t n) const { return Rational(n); }

  const mpq_class& value() const { return v_; }
  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

  std::string to_str() const { return v_.get_str(); }

 private:
  static Rational raw(const mpq_class& v) {
    Rational r;
    r.v_ = v;
    return r;
  }
  mpq_class v_;
};

// ---------------------------------------------------------------------------
// Fp: the prime field Z/p for an odd prime p >= 5. Characteristics 2 and 3 are
// rejected at construction: the geometry downstream divides by 2 and 3.
class Fp {
 public:
  static constexpr bool finite_kind = true;
  Fp() = default;  // bare constant 0

  Fp(std::int64_t c) {  // NOLINT: implicit bare constant by design
    p_ = 0;
    v_ = static_cast<std::uint64_t>(c);
  }

  Fp(std::uint64_t p, std::int64_t v) {
    validate_prime(p);
    p_ = p;
    v_ = reduce(v, p);
  }

  static Fp zero(std::uint64_t p) { return Fp(p, 0); }
  static Fp one(std::uint64_t p) { return Fp(p, 1); }

  bool has_context() const { return p_ != 0; }
  std::uint64_t prime() const { return p_; }
  // Canonical residue in [0, p). Only valid with context.
  std::uint64_t residue() const {
    if (!p_) throw incompatible_field_error("bare constant has no canonical residue");
    return v_;
  }
  std::int64_t bare_value() const { return static_cast<std::int64_t>(v_); }

  Fp operator+(const Fp& o) const {
    auto [a, b, p] = align(*this, o);
    if (!p) return Fp(checked(static_cast<__int128>(sval(a)) + sval(b)));
    std::uint64_t s = a + b;
    return from_res(p, s >= p ? s - p : s);
  }
  Fp operator-(const Fp& o) const {
    auto [a, b, p] = align(*this, o);
    if (!p) return Fp(checked(static_cast<__int128>(sval(a)) - sval(b)));
    return from_res(p, a >= b ? a - b : a + p - b);
  }
  Fp operator*(const Fp& o) const {
    auto [a, b, p] = align(*this, o);
    if (!p) return Fp(checked(static_cast<__int128>(sval(a)) * sval(b)));
    return from_res(p, static_cast<std::uint64_t>(
                           static_cast<unsigned __int128>(a) * b % p));
  }
  Fp operator/(const Fp& o) const { return *this * o.inv(); }
  Fp operator-() const {
    if (!p_) return Fp(-sval(v_));
    return from_res(p_, v_ ? p_ - v_ : 0);
  }
  Fp inv() const {
    if (!p_) {
      std::int64_t c = sval(v_);
      if (c == 1 || c == -1) return *this;
      throw incompatible_field_error("cannot invert bare constant without a field");
    }
    if (!v_) throw error("inverse of zero in F_" + std::to_string(p_));
    return from_res(p_, inv_mod(v_, p_));
  }
  bool operator==(const Fp& o) const {
    auto [a, b, p] = align(*this, o);
    if (!p) return sval(a) == sval(b);
    return a == b;
  }
  bool operator!=(const Fp& o) const { return !(*this == o); }
  bool is_zero() const { return p_ ? v_ == 0 : sval(v_) == 0; }
  bool is_one() const { return p_ ? v_ == 1 : sval(v_) == 1; }

  Fp make(std::int64_t n) const { return p_ ? Fp(p_, n) : Fp(n); }

  Fp pow(std::uint64_t e) const {
    Fp r = make(1), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }

  // Square root in F_p (Tonelli–Shanks). Returns false when not a square.
  bool sqrt(Fp& out) const {
    if (!p_) throw incompatible_field_error("sqrt needs a field context");
    std::uint64_t p = p_;
    if (v_ == 0) {
      out = from_res(p, 0);
      return true;
    }
    if (pow((p - 1) / 2).residue() != 1) return false;
    if (p % 4 == 3) {
      out = pow((p + 1) / 4);
      return true;
    }
    std::uint64_t q = p - 1;
    unsigned s = 0;
    while ((q & 1) == 0) {
      q >>= 1;
      ++s;
    }
    Fp z = from_res(p, 2);
    while (z.pow((p - 1) / 2).residue() == 1) z = z + make(1);
    Fp m = make(1), c = z.pow(q), t = pow(q), r = pow((q + 1) / 2);
    unsigned mm = s;
    while (!(t.residue() == 1)) {
      unsigned i = 0;
      Fp t2 = t;
      while (t2.residue() != 1) {
        t2 = t2 * t2;
        ++i;
      }
      Fp b = c;
      for (unsigned j = 0; j + i + 1 < mm; ++j) b = b * b;
      mm = i;
      c = b * b;
      t = t * c;
      r = r * b;
    }
    (void)m;
    out = r;
    return true;
  }

  std::string to_str() const {
    if (!p_) return std::to_string(sval(v_));
    return std::to_string(v_);
  }

 private:
  static void validate_prime(std::uint64_t p) {
    static thread_local std::uint64_t validated = 0;
    if (p == validated) return;
    if (p < 5 || !is_prime_u64(p))
      throw construction_error("prime field needs a prime p >= 5, got " + std::to_string(p));
    validated = p;
  }
  static std::int64_t sval(std::uint64_t raw) { return static_cast<std::int64_t>(raw); }
  static std::int64_t checked(__int128 v) {
    if (v > static_cast<__int128>(INT64_MAX / 4) || v < static_cast<__int128>(INT64_MIN / 4))
      throw error("bare constant arithmetic overflow; attach a field context");
    return static_cast<std::int64_t>(v);
  }
  static std::uint64_t reduce(std::int64_t v, std::uint64_t p) {
    std::int64_t m = v % static_cast<std::int64_t>(p);
    if (m < 0) m += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(m);
  }
  static Fp from_res(std::uint64_t p, std::uint64_t r) {
    Fp x;
    x.p_ = p;
    x.v_ = r;
    return x;
  }
  static std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
    std::int64_t t = 0, nt = 1;
    std::int64_t r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a);
    while (nr) {
      std::int64_t q = r / nr;
      std::int64_t tmp = t - q * nt;
      t = nt;
      nt = tmp;
      tmp = r - q * nr;
      r = nr;
      nr = tmp;
    }
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(t);
  }
  // Align two operands onto one context; returns residues and the prime
  // (prime 0 = both bare).
  static std::tuple<std::uint64_t, std::uint64_t, std::uint64_t> align(const Fp& x, const Fp& y) {
    if (x.p_ && y.p_) {
      if (x.p_ != y.p_)
        throw incompatible_field_error("mixed prime fields F_" + std::to_string(x.p_) + " and F_" +
                                       std::to_string(y.p_));
      return {x.v_, y.v_, x.p_};
    }
    if (x.p_) return {x.v_, reduce(sval(y.v_), x.p_), x.p_};
    if (y.p_) return {reduce(sval(x.v_), y.p_), y.v_, y.p_};
    return {x.v_, y.v_, 0};
  }

  std::uint64_t p_ = 0;
  std::uint64_t v_ = 0;
};

// ---------------------------------------------------------------------------
// Field metadata helpers (overloaded per field type; extended in ext.hpp /
// ratfunc.hpp).

inline std::uint64_t characteristic(const Rational&) { return 0; }
inline std::uint64_t characteristic(const Fp& sample) { return sample.prime(); }

inline bool is_finite_field(const Rational&) { return false; }
inline bool is_finite_field(const Fp& sample) { return sample.has_context(); }

inline std::string field_label(const Rational&) { return "QQ"; }
inline std::string field_label(const Fp& sample) {
  return sample.has_context() ? "F_" + std::to_string(sample.prime()) : "Z";
}

// Number of elements (finite fields only).
inline mpz_class field_order(const Fp& sample) {
  if (!sample.has_context()) throw incompatible_field_error("field order needs a context");
  return mpz_class(static_cast<unsigned long>(sample.prime()));
}

// Deterministic enumeration of field elements. For Q the sequence is
// 0, 1, -1, 2, -2, 1/2, -1/2, 3, ... (Calkin–Wilf order with alternating
// signs), guaranteeing any prefix is distinct.
inline Fp element_at(const Fp& sample, std::uint64_t i) {
  if (!sample.has_context()) throw incompatible_field_error("enumeration needs a field context");
  if (i >= sample.prime()) throw extension_exhausted_error("enumeration past field size", 1);
  return Fp(sample.prime(), static_cast<std::int64_t>(i));
}

inline Rational element_at(const Rational&, std::uint64_t i) {
  if (i == 0) return Rational(0);
  std::uint64_t j = (i + 1) / 2;  // positive index, 1-based
  mpq_class q(1);
  for (std::uint64_t step = 1; step < j; ++step) {
    // next Calkin–Wilf value: 1 / (2*floor(q) + 1 - q)
    mpz_class fl = q.get_num() / q.get_den();
    q = 1 / (2 * mpq_class(fl) + 1 - q);
  }
  if (i % 2 == 0) q = -q;
  return Rational(q);
}

inline Fp random_element(const Fp& sample, SeededRng& rng) {
  if (!sample.has_context()) throw incompatible_field_error("random draw needs a field context");
  return Fp(sample.prime(), static_cast<std::int64_t>(rng.below(sample.prime())));
}

inline Rational random_element(const Rational&, SeededRng& rng) {
  std::int64_t num = rng.small_signed(20);
  std::int64_t den = 1 + static_cast<std::int64_t>(rng.below(9));
  return Rational(num, den);
}

// Canonical embedding of a scalar into a (possibly larger) field. The
// same-type overload is the identity; extension towers and rational function
// fields add their own overloads.
template <FieldType K>
K embed_scalar(const K& c, const K&) {
  return c;
}

static_assert(FieldType<Rational>);
static_assert(FieldType<Fp>);

}  // namespace conelab
