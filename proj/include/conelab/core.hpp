#pragma once
// Shared plumbing: error taxonomy, deterministic RNG, checksums, small integer utilities.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace conelab {

// Base class for all library errors. Subclasses mirror the failure modes the
// operations can report, so callers (and the CLI exit-code mapping) can react
// by type instead of parsing messages.
struct error : std::runtime_error {
  explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Mixing elements of different fields (or different runtime parameters of the
// same field template) in one arithmetic expression.
struct incompatible_field_error : error {
  using error::error;
};

// Subspace operation on operands that live in different graded pieces/models.
struct ambient_mismatch_error : error {
  using error::error;
};

// A computation needed points/roots beyond the configured extension-degree cap.
struct extension_exhausted_error : error {
  explicit extension_exhausted_error(const std::string& msg, unsigned cap_)
      : error(msg), cap(cap_) {}
  unsigned cap;
};

// A power-series computation could not certify an order within its truncation.
struct truncation_error : error {
  using error::error;
};

// Input curve data failed a smoothness/nondegeneracy requirement.
struct not_smooth_error : error {
  using error::error;
};

// Construction-time validation failure (bad field parameters, bad curve data).
struct construction_error : error {
  using error::error;
};

// A witness value that established theory says cannot occur; signals a bug in
// this library or corrupted input, never a legitimate data condition.
struct contract_violation_error : error {
  using error::error;
};

// Search budget exhausted; carries a token from which the search can resume.
struct budget_exhausted_error : error {
  budget_exhausted_error(const std::string& msg, std::uint64_t resume_)
      : error(msg), resume(resume_) {}
  std::uint64_t resume;
};

// A certified check failed; carries the record/claim that failed.
struct certificate_failure_error : error {
  certificate_failure_error(const std::string& record_, const std::string& msg)
      : error(record_ + ": " + msg), record(record_) {}
  std::string record;
};

// Requested cone/class is the zero class, or not unique where uniqueness is required.
struct zero_class_error : error {
  using error::error;
};

// The one-dimensional cone space expected at a birational vertex is bigger;
// carries the dimension found.
struct ambiguous_cone_error : error {
  ambiguous_cone_error(const std::string& msg, std::size_t dim_found_)
      : error(msg), dim_found(dim_found_) {}
  std::size_t dim_found;
};

// Limit direction violates its preconditions (base point off the curve, etc.).
struct invalid_direction_error : error {
  using error::error;
};

// Two supposedly equivalent computations of the same space disagreed, or an
// evaluation-based computation detected degenerate sampling.
struct sampling_defect_error : error {
  using error::error;
};

// CLI/config usage errors.
struct usage_error : error {
  using error::error;
};

// Deterministic RNG (splitmix64). All randomized behavior in the library is a
// pure function of the seed, across platforms.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : s_(seed + 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t next() {
    std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform-enough draw in [0, n). n must be nonzero.
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  // Signed draw in [-m, m].
  std::int64_t small_signed(std::int64_t m) {
    return static_cast<std::int64_t>(below(2 * static_cast<std::uint64_t>(m) + 1)) - m;
  }

  // Derive an independent stream deterministically.
  SeededRng fork(std::uint64_t salt) { return SeededRng(next() ^ (salt * 0x9e3779b97f4a7c15ULL)); }

 private:
  std::uint64_t s_;
};

// FNV-1a 64-bit, used to checksum report bodies.
inline std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string fnv1a64_hex(const std::string& data) {
  static const char* digits = "0123456789abcdef";
  std::uint64_t h = fnv1a64(data);
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = digits[h & 0xf];
  return out;
}

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d : {2ULL, 3ULL, 5ULL, 7ULL}) {
    if (n % d == 0) return n == d;
  }
  for (std::uint64_t d = 11; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::uint64_t next_prime_above(std::uint64_t n) {
  std::uint64_t c = n + 1;
  while (!is_prime_u64(c)) ++c;
  return c;
}

// Trial-division factorization; adequate for the small group orders used here.
inline std::vector<std::pair<std::uint64_t, unsigned>> factor_u64(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
    if (n % d == 0) {
      unsigned e = 0;
      while (n % d == 0) {
        n /= d;
        ++e;
      }
      out.emplace_back(d, e);
    }
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline std::uint64_t binomial_u64(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace conelab
