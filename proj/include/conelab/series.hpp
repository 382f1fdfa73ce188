#pragma once
// Dense truncated power series in one local parameter s. Every series carries
// an explicit truncation order: coefficients 0..trunc are stored and exact,
// everything above is unknown. Binary operations require equal truncation.

#include <string>
#include <vector>

#include "core.hpp"
#include "fields.hpp"

namespace conelab {

template <FieldType K>
class PowerSeries {
 public:
  PowerSeries() = default;
  PowerSeries(std::vector<K> coeffs) : c_(std::move(coeffs)) {}  // NOLINT
  static PowerSeries zero(unsigned trunc, const K& sample) {
    return PowerSeries(std::vector<K>(trunc + 1, sample.make(0)));
  }
  static PowerSeries constant(unsigned trunc, const K& value) {
    PowerSeries s = zero(trunc, value);
    s.c_[0] = value;
    return s;
  }
  // c0 + c1*s, truncated.
  static PowerSeries linear(unsigned trunc, const K& c0, const K& c1) {
    PowerSeries s = zero(trunc, c0);
    s.c_[0] = c0;
    if (trunc >= 1) s.c_[1] = c1;
    return s;
  }

  unsigned trunc() const { return static_cast<unsigned>(c_.size()) - 1; }
  const K& coeff(std::size_t i) const { return c_.at(i); }
  K& coeff(std::size_t i) { return c_.at(i); }
  const std::vector<K>& coeffs() const { return c_; }
  K sample() const { return c_.at(0).make(0); }

  PowerSeries operator+(const PowerSeries& o) const {
    check(o);
    std::vector<K> r(c_);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = r[i] + o.c_[i];
    return PowerSeries(std::move(r));
  }
  PowerSeries operator-(const PowerSeries& o) const {
    check(o);
    std::vector<K> r(c_);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = r[i] - o.c_[i];
    return PowerSeries(std::move(r));
  }
  PowerSeries operator-() const {
    std::vector<K> r(c_);
    for (auto& k : r) k = -k;
    return PowerSeries(std::move(r));
  }
  PowerSeries operator*(const PowerSeries& o) const {
    check(o);
    std::vector<K> r(c_.size(), c_[0].make(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      for (std::size_t j = 0; i + j < c_.size(); ++j) r[i + j] = r[i + j] + c_[i] * o.c_[j];
    }
    return PowerSeries(std::move(r));
  }
  PowerSeries operator*(const K& k) const {
    std::vector<K> r(c_);
    for (auto& x : r) x = x * k;
    return PowerSeries(std::move(r));
  }

  bool operator==(const PowerSeries& o) const {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!(c_[i] == o.c_[i])) return false;
    return true;
  }

  bool is_zero() const {
    for (const auto& k : c_)
      if (!k.is_zero()) return false;
    return true;
  }

  // Order of the lowest nonzero coefficient; -1 when zero to the truncation.
  int valuation() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!c_[i].is_zero()) return static_cast<int>(i);
    return -1;
  }

  // Multiplicative inverse; constant term must be nonzero.
  PowerSeries inverse() const {
    if (c_[0].is_zero()) throw error("power series inverse needs a unit constant term");
    std::vector<K> r(c_.size(), c_[0].make(0));
    K u = c_[0].inv();
    r[0] = u;
    for (std::size_t n = 1; n < c_.size(); ++n) {
      K acc = c_[0].make(0);
      for (std::size_t i = 1; i <= n; ++i) acc = acc + c_[i] * r[n - i];
      r[n] = -(u * acc);
    }
    return PowerSeries(std::move(r));
  }

  // Divide by s^k exactly; the first k coefficients must vanish. The result
  // keeps the same storage length (trailing unknowns padded as zero is wrong,
  // so the truncation drops by k).
  PowerSeries shift_down(unsigned k) const {
    for (unsigned i = 0; i < k; ++i)
      if (!c_[i].is_zero()) throw error("series not divisible by s^" + std::to_string(k));
    if (k >= c_.size()) throw truncation_error("shift_down exceeds truncation");
    return PowerSeries(std::vector<K>(c_.begin() + k, c_.end()));
  }

  PowerSeries truncated(unsigned new_trunc) const {
    if (new_trunc >= c_.size()) throw truncation_error("cannot extend a truncated series");
    return PowerSeries(std::vector<K>(c_.begin(), c_.begin() + new_trunc + 1));
  }

  std::string to_str() const {
    std::string out;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      if (!out.empty()) out += " + ";
      out += "(" + c_[i].to_str() + ")*s^" + std::to_string(i);
    }
    if (out.empty()) out = "0";
    return out + " + O(s^" + std::to_string(c_.size()) + ")";
  }

 private:
  void check(const PowerSeries& o) const {
    if (c_.size() != o.c_.size())
      throw truncation_error("power series truncation mismatch: " + std::to_string(c_.size() - 1) +
                             " vs " + std::to_string(o.c_.size() - 1));
  }
  std::vector<K> c_;
};

}  // namespace conelab
