#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mla {

// Exact rational scalar used everywhere. mpq_class keeps values canonical
// after arithmetic; only string construction needs an explicit canonicalize.
using Rat = mpq_class;

inline Rat rat_from_string(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  q.canonicalize();
  return q;
}

// Canonical "num" or "num/den" form, den > 0, gcd reduced.
inline std::string rat_to_string(const Rat& q) { return q.get_str(); }

inline bool is_zero(const Rat& q) { return sgn(q) == 0; }

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline long rat_to_long(const Rat& q) {
  if (!is_integer(q) || !q.get_num().fits_slong_p())
    throw std::domain_error("rational is not a small integer: " + q.get_str());
  return q.get_num().get_si();
}

// FNV-1a over the canonical string form; used for run-report config hashes
// and sweep checksums, never for correctness.
inline std::uint64_t fnv1a(std::uint64_t h, const std::string& s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::uint64_t fnv1a(const std::string& s) {
  return fnv1a(14695981039346656037ULL, s);
}

}  // namespace mla
