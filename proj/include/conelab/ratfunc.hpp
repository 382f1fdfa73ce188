#pragma once
// Univariate rational functions over a coefficient field K, always reduced to
// lowest terms with a monic denominator. Used as the deformation field for
// flat-limit computations.

#include <string>
#include <utility>

#include "core.hpp"
#include "fields.hpp"
#include "upoly.hpp"

namespace conelab {

template <FieldType K>
class RatFunc {
 public:
  static constexpr bool finite_kind = false;
  RatFunc() : num_(), den_(UPoly<K>::constant(K().make(1))) {}
  RatFunc(std::int64_t c)  // NOLINT: implicit constant by design
      : num_(UPoly<K>::constant(K().make(c))), den_(UPoly<K>::constant(K().make(1))) {}
  explicit RatFunc(const K& c)
      : num_(UPoly<K>::constant(c)), den_(UPoly<K>::constant(c.make(1))) {}
  explicit RatFunc(const UPoly<K>& p)
      : num_(p), den_(UPoly<K>::constant(p.unit().make(1))) {}
  RatFunc(const UPoly<K>& num, const UPoly<K>& den) : num_(num), den_(den) { reduce(); }

  static RatFunc t() { return RatFunc(UPoly<K>::X()); }

  const UPoly<K>& numerator() const { return num_; }
  const UPoly<K>& denominator() const { return den_; }
  bool is_polynomial() const { return den_.degree() == 0; }

  RatFunc operator+(const RatFunc& o) const {
    return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  }
  RatFunc operator-(const RatFunc& o) const {
    return RatFunc(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
  }
  RatFunc operator*(const RatFunc& o) const { return RatFunc(num_ * o.num_, den_ * o.den_); }
  RatFunc operator/(const RatFunc& o) const {
    if (o.is_zero()) throw error("division by zero rational function");
    return RatFunc(num_ * o.den_, den_ * o.num_);
  }
  RatFunc operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
  }
  RatFunc inv() const {
    if (is_zero()) throw error("inverse of zero rational function");
    return RatFunc(den_, num_);
  }
  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }
  bool is_zero() const { return num_.is_zero(); }
  RatFunc make(std::int64_t n) const { return RatFunc(n); }

  // Order of vanishing at t = 0 (negative for poles; throws on zero).
  int valuation() const {
    if (is_zero()) throw error("valuation of zero rational function");
    auto val = [](const UPoly<K>& p) {
      int v = 0;
      while (p.coeff(static_cast<std::size_t>(v)).is_zero()) ++v;
      return v;
    };
    return val(num_) - val(den_);
  }

  // Evaluate at a point of K where the denominator does not vanish.
  K eval(const K& x) const {
    K d = den_.eval(x);
    if (d.is_zero()) throw error("rational function has a pole at evaluation point");
    return num_.eval(x) / d;
  }

  std::string to_str() const {
    if (den_.degree() == 0 && den_.coeff(0).is_one()) return num_.to_str();
    return "(" + num_.to_str() + ")/(" + den_.to_str() + ")";
  }

 private:
  void reduce() {
    if (den_.is_zero()) throw error("rational function with zero denominator");
    if (num_.is_zero()) {
      den_ = UPoly<K>::constant(den_.lc().make(1));
      return;
    }
    UPoly<K> g = poly_gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = num_.divexact(g);
      den_ = den_.divexact(g);
    }
    K s = den_.lc().inv();
    num_ = num_ * s;
    den_ = den_ * s;
  }

  UPoly<K> num_, den_;
};

template <FieldType K>
std::uint64_t characteristic(const RatFunc<K>& sample) {
  K k = sample.numerator().unit() + sample.denominator().unit();
  return characteristic(k);
}

template <FieldType K>
bool is_finite_field(const RatFunc<K>&) {
  return false;
}

template <FieldType K>
std::string field_label(const RatFunc<K>& sample) {
  return field_label(sample.denominator().unit()) + "(t)";
}

template <FieldType K>
RatFunc<K> random_element(const RatFunc<K>& sample, SeededRng& rng) {
  K base = sample.denominator().unit().make(1);
  auto rand_poly = [&](std::size_t len) {
    std::vector<K> c(len, base.make(0));
    for (auto& k : c) k = random_element(base, rng);
    return UPoly<K>(std::move(c));
  };
  UPoly<K> den;
  while (den.is_zero()) den = rand_poly(2);
  return RatFunc<K>(rand_poly(3), den);
}

// Embedding of a coefficient field scalar as a constant rational function.
template <class C, FieldType K>
  requires(!std::is_same_v<C, RatFunc<K>>)
RatFunc<K> embed_scalar(const C& c, const RatFunc<K>& sample) {
  return RatFunc<K>(embed_scalar(c, sample.denominator().unit()));
}

}  // namespace conelab
