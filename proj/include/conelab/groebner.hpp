#pragma once

// Groebner bases for the grevlex order carried by MultiPoly: Buchberger's
// algorithm with the coprimality criterion, full interreduction, normal forms,
// standard monomials, and graded pieces of the ideal as subspaces.

#include <algorithm>
#include <string>
#include <vector>

#include "multipoly.hpp"
#include "subspace.hpp"

namespace conelab {

template <FieldType K>
class GroebnerBasis {
 public:
  GroebnerBasis() : nvars_(0) {}

  GroebnerBasis(unsigned nvars, std::vector<MultiPoly<K>> gens) : nvars_(nvars) {
    for (auto& g : gens) {
      if (g.is_zero()) continue;
      if (g.nvars() != nvars_) throw ambient_mismatch_error("generator in wrong ambient");
      g_.push_back(g.normalized());
    }
    run_buchberger();
    interreduce();
  }

  // Wrap an already-reduced basis (e.g. a coefficient-lifted copy).
  static GroebnerBasis trusted(unsigned nvars, std::vector<MultiPoly<K>> polys) {
    GroebnerBasis gb;
    gb.nvars_ = nvars;
    gb.g_ = std::move(polys);
    gb.sort_polys();
    return gb;
  }

  unsigned nvars() const { return nvars_; }
  const std::vector<MultiPoly<K>>& polys() const { return g_; }
  bool is_trivial() const {
    for (auto& g : g_)
      if (g.degree() == 0) return true;
    return false;
  }

  MultiPoly<K> normal_form(const MultiPoly<K>& f) const {
    if (f.nvars() != nvars_) throw ambient_mismatch_error("normal form in wrong ambient");
    MultiPoly<K> p = f, r(nvars_);
    while (!p.is_zero()) {
      const Expo& le = p.leading_exponent();
      bool reduced = false;
      for (auto& g : g_) {
        if (!expo_divides(g.leading_exponent(), le)) continue;
        K c = p.leading_coefficient() / g.leading_coefficient();
        p -= MultiPoly<K>::monomial(nvars_, expo_div(le, g.leading_exponent()), c) * g;
        reduced = true;
        break;
      }
      if (!reduced) {
        K c = p.leading_coefficient();
        r.add_term(le, c);
        p.add_term(le, -c);
      }
    }
    return r;
  }

  bool in_ideal(const MultiPoly<K>& f) const { return normal_form(f).is_zero(); }

  bool is_standard(const Expo& e) const {
    for (auto& g : g_)
      if (expo_divides(g.leading_exponent(), e)) return false;
    return true;
  }

  // Monomials of the quotient ring in degree `deg`, descending.
  std::vector<Expo> standard_monomials(unsigned deg) const {
    std::vector<Expo> out;
    for (auto& e : monomial_basis(nvars_, deg))
      if (is_standard(e)) out.push_back(e);
    return out;
  }

  // Degree-`deg` piece of the ideal as a subspace of the coefficient space.
  SubspaceBasis<K> ideal_piece(unsigned deg) const {
    Ambient amb = forms_ambient(nvars_, deg);
    Matrix<K> rows(0, amb.dim);
    for (auto& g : g_) {
      if (!g.is_homogeneous()) throw error("graded ideal piece needs homogeneous generators");
      unsigned d = g.homogeneous_degree();
      if (d > deg) continue;
      for (auto& m : monomial_basis(nvars_, deg - d)) {
        MultiPoly<K> mult = MultiPoly<K>::monomial(nvars_, m, g.unit()) * g;
        rows.append_row(mult.coefficient_vector(deg));
      }
    }
    return SubspaceBasis<K>(amb, std::move(rows));
  }

  // Order-insensitive content hash; identifies the ideal in ambient tags.
  std::string fingerprint() const {
    std::vector<std::string> reprs;
    for (auto& g : g_) reprs.push_back(g.to_str());
    std::sort(reprs.begin(), reprs.end());
    std::string cat = "n=" + std::to_string(nvars_) + ";";
    for (auto& r : reprs) cat += r + ";";
    return fnv1a64_hex(cat);
  }

 private:
  void sort_polys() {
    std::sort(g_.begin(), g_.end(), [](const MultiPoly<K>& a, const MultiPoly<K>& b) {
      return grevlex_greater(a.leading_exponent(), b.leading_exponent());
    });
  }

  MultiPoly<K> spoly(const MultiPoly<K>& f, const MultiPoly<K>& g) const {
    Expo l = expo_lcm(f.leading_exponent(), g.leading_exponent());
    K one = f.unit();
    MultiPoly<K> mf = MultiPoly<K>::monomial(nvars_, expo_div(l, f.leading_exponent()),
                                             one.make(1) / f.leading_coefficient());
    MultiPoly<K> mg = MultiPoly<K>::monomial(nvars_, expo_div(l, g.leading_exponent()),
                                             one.make(1) / g.leading_coefficient());
    return mf * f - mg * g;
  }

  void run_buchberger() {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < g_.size(); ++i)
      for (std::size_t j = i + 1; j < g_.size(); ++j) pairs.emplace_back(i, j);
    while (!pairs.empty()) {
      auto [i, j] = pairs.back();
      pairs.pop_back();
      const Expo &ei = g_[i].leading_exponent(), &ej = g_[j].leading_exponent();
      Expo l = expo_lcm(ei, ej);
      if (l == expo_mul(ei, ej)) continue;  // coprime leading monomials
      MultiPoly<K> s = normal_form(spoly(g_[i], g_[j]));
      if (s.is_zero()) continue;
      g_.push_back(s.normalized());
      for (std::size_t k = 0; k + 1 < g_.size(); ++k) pairs.emplace_back(k, g_.size() - 1);
    }
  }

  void interreduce() {
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = 0; i < g_.size(); ++i) {
        MultiPoly<K> gi = g_[i];
        std::vector<MultiPoly<K>> others;
        for (std::size_t j = 0; j < g_.size(); ++j)
          if (j != i) others.push_back(g_[j]);
        GroebnerBasis rest = trusted(nvars_, std::move(others));
        MultiPoly<K> red = rest.normal_form(gi);
        if (!(red == gi)) changed = true;
        if (red.is_zero()) {
          g_.erase(g_.begin() + static_cast<std::ptrdiff_t>(i));
          --i;
        } else {
          g_[i] = red.normalized();
        }
      }
    }
    sort_polys();
  }

  unsigned nvars_;
  std::vector<MultiPoly<K>> g_;
};

// Coefficient-wise image of a reduced basis in a larger field. Groebner bases
// are stable under coefficient field extension, so the image is wrapped
// without re-running the completion.
template <FieldType L, FieldType K>
GroebnerBasis<L> lift_basis(const GroebnerBasis<K>& gb, const L& sample) {
  std::vector<MultiPoly<L>> out;
  for (auto& g : gb.polys())
    out.push_back(g.template map_coefficients<L>(
        gb.nvars(), [&](const K& c) { return embed_scalar(c, sample); }));
  return GroebnerBasis<L>::trusted(gb.nvars(), std::move(out));
}

// Coefficient vector of a normal form against a fixed standard-monomial list.
template <FieldType K>
std::vector<K> vector_on_standard_monomials(const MultiPoly<K>& nf, const std::vector<Expo>& smons,
                                            const K& sample) {
  std::vector<K> out(smons.size(), sample.make(0));
  for (auto& [e, c] : nf.terms()) {
    auto it = std::find(smons.begin(), smons.end(), e);
    if (it == smons.end()) throw error("normal form has a non-standard monomial");
    out[static_cast<std::size_t>(it - smons.begin())] = c;
  }
  return out;
}

}  // namespace conelab
