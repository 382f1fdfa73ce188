#pragma once
// Simple algebraic extension L = K[X]/(modulus) of any coefficient field K,
// with a runtime monic modulus. Towers (extensions of extensions) compose
// freely. Elements share an immutable context; bare elements (no context)
// behave as constants from K and adopt a context on first contact.

#include <memory>
#include <string>
#include <vector>

#include "core.hpp"
#include "fields.hpp"
#include "upoly.hpp"

namespace conelab {

template <FieldType K>
struct ExtCtx {
  UPoly<K> modulus;  // monic, irreducible over K
  K base;            // context-carrying sample of the base field
  std::string gen;   // name of the residue class of X, for printing
};

template <FieldType K>
class Ext {
 public:
  static constexpr bool finite_kind = K::finite_kind;
  using Ctx = std::shared_ptr<const ExtCtx<K>>;

  Ext() = default;  // bare constant 0
  Ext(std::int64_t c) {  // NOLINT: implicit bare constant by design
    if (c != 0) c_.assign(1, K().make(c));
  }
  explicit Ext(const K& c) {
    if (!c.is_zero()) c_.assign(1, c);
  }
  Ext(Ctx ctx, const UPoly<K>& value) : ctx_(std::move(ctx)) {
    UPoly<K> r = value % ctx_->modulus;
    c_ = r.coeffs();
  }
  Ext(Ctx ctx, const K& c) : ctx_(std::move(ctx)) {
    if (!c.is_zero()) c_.assign(1, c);
  }

  static Ext generator(const Ctx& ctx) { return Ext(ctx, UPoly<K>::X() * ctx->base.make(1)); }

  bool has_context() const { return static_cast<bool>(ctx_); }
  const Ctx& context() const { return ctx_; }
  unsigned extension_degree() const {
    return ctx_ ? static_cast<unsigned>(ctx_->modulus.degree()) : 1;
  }
  UPoly<K> rep() const { return UPoly<K>(std::vector<K>(c_)); }
  K coeff(std::size_t i) const {
    if (i < c_.size()) return c_[i];
    return ctx_ ? ctx_->base.make(0) : K();
  }

  Ext operator+(const Ext& o) const {
    auto [a, b, ctx] = align(*this, o);
    return raw(ctx, a + b);
  }
  Ext operator-(const Ext& o) const {
    auto [a, b, ctx] = align(*this, o);
    return raw(ctx, a - b);
  }
  Ext operator*(const Ext& o) const {
    auto [a, b, ctx] = align(*this, o);
    UPoly<K> prod = a * b;
    if (ctx) prod = prod % ctx->modulus;
    return raw(ctx, prod);
  }
  Ext operator/(const Ext& o) const { return *this * o.inv(); }
  Ext operator-() const { return raw(ctx_, -rep()); }

  Ext inv() const {
    if (is_zero()) throw error("inverse of zero in extension field");
    if (!ctx_) {
      if (c_.size() == 1) return Ext(c_[0].inv());
      throw incompatible_field_error("cannot invert without extension context");
    }
    auto [g, u, v] = poly_xgcd(rep(), ctx_->modulus);
    (void)v;
    if (g.degree() != 0)
      throw construction_error("extension modulus is not irreducible (gcd degree " +
                               std::to_string(g.degree()) + ")");
    // g is the monic unit 1 after normalization inside poly_xgcd.
    return raw(ctx_, u % ctx_->modulus);
  }

  bool operator==(const Ext& o) const {
    auto [a, b, ctx] = align(*this, o);
    (void)ctx;
    return a == b;
  }
  bool operator!=(const Ext& o) const { return !(*this == o); }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }

  Ext make(std::int64_t n) const {
    if (!ctx_) return Ext(n);
    return Ext(ctx_, ctx_->base.make(n));
  }

  Ext pow(const mpz_class& e) const {
    if (e == 0) return make(1);
    Ext r = make(1), b = *this;
    mp_bitcnt_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (mp_bitcnt_t i = bits; i-- > 0;) {
      r = r * r;
      if (mpz_tstbit(e.get_mpz_t(), i)) r = r * b;
    }
    return r;
  }
  Ext pow(std::uint64_t e) const { return pow(mpz_class(static_cast<unsigned long>(e))); }

  // Frobenius x -> x^q over the base field (finite base fields only).
  Ext frobenius() const {
    if (!ctx_) throw incompatible_field_error("frobenius needs an extension context");
    return pow(field_order(ctx_->base));
  }

  // The degree of the smallest subfield (power of the base field's Frobenius
  // orbit) containing this element.
  unsigned residue_degree() const {
    if (!ctx_) return 1;
    Ext x = *this;
    unsigned d = 1;
    Ext fx = x.frobenius();
    while (!(fx == x)) {
      fx = fx.frobenius();
      ++d;
      if (d > extension_degree())
        throw contract_violation_error("frobenius orbit exceeded extension degree");
    }
    return d;
  }

  // Interpret as an element of the base field; throws if it is not one.
  K descend() const {
    if (c_.size() > 1)
      throw sampling_defect_error("element does not descend to the base field: " + to_str());
    if (c_.empty()) return ctx_ ? ctx_->base.make(0) : K();
    return c_[0];
  }

  std::string to_str() const {
    if (c_.empty()) return "0";
    return rep().to_str(ctx_ ? ctx_->gen : "a");
  }

 private:
  static Ext raw(const Ctx& ctx, const UPoly<K>& value) {
    Ext e;
    e.ctx_ = ctx;
    e.c_ = value.coeffs();
    return e;
  }
  static std::tuple<UPoly<K>, UPoly<K>, Ctx> align(const Ext& x, const Ext& y) {
    if (x.ctx_ && y.ctx_) {
      if (x.ctx_ != y.ctx_ && !(x.ctx_->modulus == y.ctx_->modulus))
        throw incompatible_field_error("mixed extension fields: moduli " + x.ctx_->modulus.to_str("X") +
                                       " vs " + y.ctx_->modulus.to_str("X"));
      return {x.rep(), y.rep(), x.ctx_};
    }
    const Ctx& ctx = x.ctx_ ? x.ctx_ : y.ctx_;
    return {x.rep(), y.rep(), ctx};
  }

  Ctx ctx_;           // null = bare constant over K
  std::vector<K> c_;  // coefficients, low to high, trimmed
};

// Build the canonical extension of the given degree over a finite base field:
// modulus is the deterministic least irreducible monic polynomial.
template <FieldType K>
typename Ext<K>::Ctx make_extension(const K& base_sample, unsigned degree,
                                    const std::string& gen = "a") {
  UPoly<K> mod = find_irreducible(base_sample, degree);
  return std::make_shared<const ExtCtx<K>>(ExtCtx<K>{mod, base_sample.make(1), gen});
}

// Build an extension with an explicitly given monic modulus (e.g. x^2 + x + 1
// over Q). Irreducibility is verified for finite base fields and trusted
// otherwise (a reducible modulus surfaces as a construction error on the first
// inversion).
template <FieldType K>
typename Ext<K>::Ctx make_extension_with_modulus(const UPoly<K>& modulus, const K& base_sample,
                                                 const std::string& gen = "a") {
  if (modulus.degree() < 1) throw construction_error("extension modulus must have degree >= 1");
  if (!(modulus.lc() == base_sample.make(1)))
    throw construction_error("extension modulus must be monic");
  if constexpr (K::finite_kind) {
    if (!is_irreducible(modulus, base_sample))
      throw construction_error("extension modulus is reducible: " + modulus.to_str("X"));
  }
  return std::make_shared<const ExtCtx<K>>(ExtCtx<K>{modulus, base_sample.make(1), gen});
}

template <FieldType K>
std::uint64_t characteristic(const Ext<K>& sample) {
  if (!sample.has_context()) throw incompatible_field_error("characteristic needs a context");
  return characteristic(sample.context()->base);
}

template <FieldType K>
bool is_finite_field(const Ext<K>& sample) {
  return sample.has_context() && is_finite_field(sample.context()->base);
}

template <FieldType K>
mpz_class field_order(const Ext<K>& sample) {
  if (!sample.has_context()) throw incompatible_field_error("field order needs a context");
  mpz_class base = field_order(sample.context()->base);
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), sample.extension_degree());
  return out;
}

template <FieldType K>
std::string field_label(const Ext<K>& sample) {
  if (!sample.has_context()) return "Z";
  const auto& ctx = sample.context();
  if constexpr (std::is_same_v<K, Fp>) {
    if (is_finite_field(sample)) {
      std::uint64_t p = characteristic(sample);
      unsigned k = sample.extension_degree();
      if (k == 1) return "F_" + std::to_string(p);
      return "F_{" + std::to_string(p) + "^" + std::to_string(k) + "}";
    }
  }
  return field_label(ctx->base) + "[" + ctx->gen + "]/(" + ctx->modulus.to_str(ctx->gen) + ")";
}

template <FieldType K>
Ext<K> element_at(const Ext<K>& sample, std::uint64_t i) {
  if (!sample.has_context()) throw incompatible_field_error("enumeration needs a field context");
  const auto& ctx = sample.context();
  mpz_class qz = field_order(ctx->base);
  if (!qz.fits_ulong_p()) throw extension_exhausted_error("base field too large to enumerate", 0);
  std::uint64_t q = qz.get_ui();
  unsigned m = sample.extension_degree();
  std::vector<K> c(m, ctx->base.make(0));
  for (unsigned j = 0; j < m; ++j) {
    c[j] = element_at(ctx->base, i % q);
    i /= q;
  }
  if (i != 0) throw extension_exhausted_error("enumeration past field size", m);
  return Ext<K>(ctx, UPoly<K>(std::move(c)));
}

template <FieldType K>
Ext<K> random_element(const Ext<K>& sample, SeededRng& rng) {
  if (!sample.has_context()) throw incompatible_field_error("random draw needs a field context");
  const auto& ctx = sample.context();
  unsigned m = sample.extension_degree();
  std::vector<K> c(m, ctx->base.make(0));
  for (auto& k : c) k = random_element(ctx->base, rng);
  return Ext<K>(ctx, UPoly<K>(std::move(c)));
}

// Embedding of a smaller field's scalar into the extension, recursing through
// towers (e.g. base -> Ext<base> -> Ext<Ext<base>>).
template <class C, FieldType K>
  requires(!std::is_same_v<C, Ext<K>>)
Ext<K> embed_scalar(const C& c, const Ext<K>& sample) {
  if (!sample.has_context()) throw incompatible_field_error("embedding needs a field context");
  return Ext<K>(sample.context(), embed_scalar(c, sample.context()->base));
}

// Coefficient-wise image of a univariate polynomial in a larger field.
template <FieldType L, FieldType K>
UPoly<L> lift_upoly(const UPoly<K>& f, const L& sample) {
  if constexpr (std::is_same_v<L, K>) {
    (void)sample;
    return f;
  } else {
    std::vector<L> c;
    c.reserve(f.coeffs().size());
    for (auto& v : f.coeffs()) c.push_back(embed_scalar(v, sample));
    return UPoly<L>(std::move(c));
  }
}

}  // namespace conelab
