// Exact linear algebra tests. Rank/rref are cross-checked against an
// independent fraction-free (Bareiss) elimination oracle written here.

#include <catch2/catch_amalgamated.hpp>

#include "conelab/fields.hpp"
#include "conelab/matrix.hpp"

using namespace conelab;

namespace {

// Independent rank oracle: Bareiss fraction-free elimination.
// Only uses ring operations plus exact division by previous pivots.
template <class K>
std::size_t bareiss_rank(Matrix<K> m) {
  std::size_t rows = m.rows(), cols = m.cols();
  std::size_t rank = 0;
  K prev(1);
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && m.at(piv, col).is_zero()) ++piv;
    if (piv == rows) continue;
    if (piv != rank)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m.at(piv, j), m.at(rank, j));
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j < cols; ++j)
        m.at(i, j) = (m.at(rank, col) * m.at(i, j) - m.at(i, col) * m.at(rank, j)) / prev;
      m.at(i, col) = K(0);
    }
    prev = m.at(rank, col);
    ++rank;
  }
  return rank;
}

template <class K>
Matrix<K> random_matrix(std::size_t r, std::size_t c, const K& sample, SeededRng& rng) {
  Matrix<K> m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = random_element(sample, rng);
  return m;
}

}  // namespace

TEST_CASE("rref of simple known matrices", "[linalg]") {
  Rational s(0);
  Matrix<Rational> m(2, 3);
  m.at(0, 0) = Rational(2);
  m.at(0, 1) = Rational(4);
  m.at(0, 2) = Rational(6);
  m.at(1, 0) = Rational(1);
  m.at(1, 1) = Rational(2);
  m.at(1, 2) = Rational(4);
  std::vector<std::size_t> pivots;
  std::size_t rk = rref_in_place(m, &pivots);
  REQUIRE(rk == 2);
  REQUIRE(pivots == std::vector<std::size_t>{0, 2});
  REQUIRE(m.at(0, 0) == Rational(1));
  REQUIRE(m.at(0, 1) == Rational(2));
  REQUIRE(m.at(0, 2).is_zero());
  REQUIRE(m.at(1, 2) == Rational(1));
}

TEST_CASE("rank agrees with fraction-free oracle on random matrices", "[linalg]") {
  SeededRng rng(11);
  Rational qs(0);
  Fp fs(101, 0);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = 1 + rng.below(6), c = 1 + rng.below(6);
    auto mq = random_matrix(r, c, qs, rng);
    REQUIRE(rank(mq) == bareiss_rank(mq));
    auto mf = random_matrix(r, c, fs, rng);
    REQUIRE(rank(mf) == bareiss_rank(mf));
  }
}

TEST_CASE("rank is bounded and rref idempotent", "[linalg]") {
  SeededRng rng(12);
  Fp s(13, 0);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t r = 1 + rng.below(5), c = 1 + rng.below(5);
    auto m = random_matrix(r, c, s, rng);
    auto e = rref(m);
    REQUIRE(rank(e) == rank(m));
    REQUIRE(rref(e) == e);
  }
}

TEST_CASE("kernel vectors annihilate the matrix", "[linalg]") {
  SeededRng rng(13);
  Rational s(0);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t r = 1 + rng.below(5), c = 1 + rng.below(6);
    auto m = random_matrix(r, c, s, rng);
    auto ker = kernel_basis(m);
    REQUIRE(ker.rows() == c - rank(m));  // rank-nullity
    for (std::size_t i = 0; i < ker.rows(); ++i) {
      auto img = m.apply(ker.row(i));
      for (auto& x : img) REQUIRE(x.is_zero());
    }
  }
}

TEST_CASE("inverse and solve", "[linalg]") {
  SeededRng rng(14);
  Fp s(101, 0);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 1 + rng.below(5);
    auto m = random_matrix(n, n, s, rng);
    if (rank(m) < n) {
      REQUIRE_THROWS_AS(inverse(m), error);
      continue;
    }
    auto mi = inverse(m);
    REQUIRE(m * mi == Matrix<Fp>::identity(n, s));
    std::vector<Fp> b(n, s);
    for (auto& x : b) x = random_element(s, rng);
    auto sol = solve(m, b);
    REQUIRE(sol.has_value());
    auto img = m.apply(*sol);
    for (std::size_t i = 0; i < n; ++i) REQUIRE(img[i] == b[i]);
  }
}

TEST_CASE("solve reports inconsistency", "[linalg]") {
  Rational s(0);
  Matrix<Rational> m(2, 2);
  m.at(0, 0) = Rational(1);
  m.at(0, 1) = Rational(1);
  m.at(1, 0) = Rational(2);
  m.at(1, 1) = Rational(2);
  std::vector<Rational> b{Rational(1), Rational(3)};  // inconsistent
  REQUIRE(!solve(m, b).has_value());
  std::vector<Rational> b2{Rational(1), Rational(2)};  // consistent
  auto sol = solve(m, b2);
  REQUIRE(sol.has_value());
}
