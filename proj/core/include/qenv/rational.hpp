#pragma once

#include <gmpxx.h>
#include <string>

namespace qenv {

// Exact arbitrary-precision rational. All coefficient arithmetic in the
// library goes through this type; there is no floating point anywhere.
using Rat = mpq_class;

inline Rat rat(long n) { return Rat(n); }
inline Rat rat(long n, long d) { Rat r(n, d); r.canonicalize(); return r; }

inline std::string to_string(const Rat& r) { return r.get_str(); }

inline Rat rat_pow(const Rat& b, long e) {
  if (e == 0) return Rat(1);
  Rat base = e > 0 ? b : Rat(1) / b;
  long n = e > 0 ? e : -e;
  Rat acc(1);
  while (n) {
    if (n & 1) acc *= base;
    base *= base;
    n >>= 1;
  }
  return acc;
}

}  // namespace qenv
