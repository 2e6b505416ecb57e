#pragma once

// Small independent arithmetic over F_p used only by tests, as a cross-check
// oracle for the exact rational code. Deliberately avoids the library's
// elimination machinery: points are enumerated and evaluated directly.

#include <cstdint>
#include <optional>
#include <vector>

#include "cubinv/poly.hpp"

namespace modp {

inline std::uint64_t norm_int(const cubinv::Int& v, std::uint64_t p) {
  cubinv::Int r = v % long(p);
  if (r < 0) r += long(p);
  return r.get_ui();
}

inline std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  return pow_mod(a, p - 2, p);
}

// num/den mod p; nullopt when the denominator is divisible by p (bad
// reduction for this coefficient).
inline std::optional<std::uint64_t> rat_mod(const cubinv::Rat& r,
                                            std::uint64_t p) {
  std::uint64_t den = norm_int(r.get_den(), p);
  if (den == 0) return std::nullopt;
  std::uint64_t num = norm_int(r.get_num(), p);
  return num * inv_mod(den, p) % p;
}

struct PolyFp {
  unsigned arity = 0;
  std::vector<std::pair<cubinv::Exp, std::uint64_t>> terms;
};

// Coefficient-wise reduction; requires rational (depth-0) coefficients.
inline std::optional<PolyFp> reduce_poly(const cubinv::MultiPoly& f,
                                         std::uint64_t p) {
  PolyFp out;
  out.arity = f.arity();
  for (const auto& [e, c] : f.terms()) {
    if (!c.is_rational()) return std::nullopt;
    auto v = rat_mod(c.rat_value(), p);
    if (!v) return std::nullopt;
    if (*v) out.terms.emplace_back(e, *v);
  }
  return out;
}

inline std::uint64_t eval(const PolyFp& f, const std::vector<std::uint64_t>& pt,
                          std::uint64_t p) {
  std::uint64_t acc = 0;
  for (const auto& [e, c] : f.terms) {
    std::uint64_t t = c;
    for (unsigned i = 0; i < f.arity; ++i)
      if (e[i]) t = t * pow_mod(pt[i], e[i], p) % p;
    acc = (acc + t) % p;
  }
  return acc;
}

inline PolyFp derivative(const PolyFp& f, unsigned var, std::uint64_t p) {
  PolyFp out;
  out.arity = f.arity;
  for (const auto& [e, c] : f.terms) {
    if (!e[var]) continue;
    cubinv::Exp r = e;
    r[var] -= 1;
    std::uint64_t v = c * (e[var] % p) % p;
    if (v) out.terms.emplace_back(std::move(r), v);
  }
  return out;
}

// Normalized representatives of projective space: first nonzero coordinate
// equals 1, enumerated lexicographically.
inline std::vector<std::vector<std::uint64_t>> projective_points(
    unsigned n, std::uint64_t p) {
  std::vector<std::vector<std::uint64_t>> pts;
  for (unsigned lead = 0; lead < n; ++lead) {
    std::vector<std::uint64_t> pt(n, 0);
    pt[lead] = 1;
    // vary the coordinates after `lead` through all of F_p^(n-lead-1)
    unsigned tail = n - lead - 1;
    std::uint64_t total = 1;
    for (unsigned i = 0; i < tail; ++i) total *= p;
    for (std::uint64_t code = 0; code < total; ++code) {
      std::uint64_t c = code;
      for (unsigned i = 0; i < tail; ++i) {
        pt[lead + 1 + i] = c % p;
        c /= p;
      }
      pts.push_back(pt);
    }
  }
  return pts;
}

inline bool has_projective_zero(const std::vector<PolyFp>& sys, unsigned arity,
                                std::uint64_t p) {
  for (const auto& pt : projective_points(arity, p)) {
    bool all_zero = true;
    for (const auto& f : sys) {
      if (eval(f, pt, p) != 0) {
        all_zero = false;
        break;
      }
    }
    if (all_zero) return true;
  }
  return false;
}

// Scans P^1(F_p) for roots of a binary form; a root where both partial
// derivatives also vanish is a multiple root (valid while p exceeds the
// degree, which holds for the primes 11 and 13 used by the tests).
struct BinaryRootScan {
  unsigned distinct_roots = 0;
  bool multiple_root = false;
};

inline BinaryRootScan scan_binary_roots(const PolyFp& f, std::uint64_t p) {
  BinaryRootScan out;
  PolyFp fx = derivative(f, 0, p);
  PolyFp fy = derivative(f, 1, p);
  for (const auto& pt : projective_points(2, p)) {
    if (eval(f, pt, p) != 0) continue;
    out.distinct_roots += 1;
    if (eval(fx, pt, p) == 0 && eval(fy, pt, p) == 0) out.multiple_root = true;
  }
  return out;
}

}  // namespace modp
