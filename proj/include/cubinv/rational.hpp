#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace cubinv {

using Rat = mpq_class;
using Int = mpz_class;

// mpq_class(a, b) does not canonicalize on its own; route construction from
// pairs through here.
inline Rat make_rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat make_rat(const Int& num, const Int& den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline bool rat_is_zero(const Rat& r) { return sgn(r) == 0; }

// Height of p/q in lowest terms: max(|p|, q). Used by pivot rules, so ties
// must break the same way everywhere.
inline Int rat_height(const Rat& r) {
  Int num = abs(r.get_num());
  const Int& den = r.get_den();
  return num > den ? num : den;
}

inline Rat rat_pow(const Rat& base, unsigned long e) {
  Rat out(1);
  Rat b = base;
  while (e) {
    if (e & 1) out *= b;
    b *= b;
    e >>= 1;
  }
  return out;
}

// Exact square root in Q. Returns the nonnegative root when one exists.
inline std::optional<Rat> rat_sqrt(const Rat& r) {
  int s = sgn(r);
  if (s < 0) return std::nullopt;
  if (s == 0) return Rat(0);
  const Int& num = r.get_num();
  const Int& den = r.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) ||
      !mpz_perfect_square_p(den.get_mpz_t()))
    return std::nullopt;
  Int rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  return make_rat(rn, rd);
}

inline std::string rat_str(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

}  // namespace cubinv
