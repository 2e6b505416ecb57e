#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cubinv/error.hpp"
#include "cubinv/rational.hpp"

namespace cubinv {

// A tower of successive quadratic extensions of Q. A null pointer denotes Q
// itself; a node adjoins the square root of `radicand`, an element of the
// base field written in coordinates over that base. Towers are immutable and
// shared; adjoin_sqrt is the only intended way to build one, which keeps the
// invariant that no radicand is a square one level down.
struct FieldTower;
using TowerPtr = std::shared_ptr<const FieldTower>;

struct FieldTower {
  TowerPtr base;             // null = Q
  std::vector<Rat> radicand; // coordinates over `base`, never a square there
};

inline int tower_depth(const TowerPtr& t) {
  return t ? 1 + tower_depth(t->base) : 0;
}

inline std::size_t tower_dim(const TowerPtr& t) {
  return std::size_t(1) << tower_depth(t);
}

inline bool same_tower(const TowerPtr& a, const TowerPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  return a->radicand == b->radicand && same_tower(a->base, b->base);
}

// True when `big` equals `small` or extends it by further adjunctions.
inline bool tower_extends(const TowerPtr& big, const TowerPtr& small) {
  if (same_tower(big, small)) return true;
  if (!big) return false;
  return tower_extends(big->base, small);
}

namespace detail {

using Coords = std::vector<Rat>;

inline Coords lo_half(const Coords& a) {
  return Coords(a.begin(), a.begin() + a.size() / 2);
}
inline Coords hi_half(const Coords& a) {
  return Coords(a.begin() + a.size() / 2, a.end());
}
inline Coords concat(Coords lo, const Coords& hi) {
  lo.insert(lo.end(), hi.begin(), hi.end());
  return lo;
}

inline bool coords_zero(const Coords& a) {
  for (const Rat& c : a)
    if (!rat_is_zero(c)) return false;
  return true;
}

inline Coords coords_add(const Coords& a, const Coords& b) {
  Coords out(a);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

inline Coords coords_sub(const Coords& a, const Coords& b) {
  Coords out(a);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
  return out;
}

inline Coords coords_neg(const Coords& a) {
  Coords out(a);
  for (Rat& c : out) c = -c;
  return out;
}

inline Coords coords_scale(const Coords& a, const Rat& s) {
  Coords out(a);
  for (Rat& c : out) c *= s;
  return out;
}

// Multiplication in the field described by `t` (null = Q). Uses the
// Karatsuba-style split (a0 + a1*s)(b0 + b1*s) with s^2 = d from the tower.
inline Coords coords_mul(const FieldTower* t, const Coords& a,
                         const Coords& b) {
  if (!t) return {a[0] * b[0]};
  const FieldTower* base = t->base.get();
  Coords a0 = lo_half(a), a1 = hi_half(a);
  Coords b0 = lo_half(b), b1 = hi_half(b);
  Coords p00 = coords_mul(base, a0, b0);
  Coords p11 = coords_mul(base, a1, b1);
  Coords cross = coords_mul(base, coords_add(a0, a1), coords_add(b0, b1));
  cross = coords_sub(coords_sub(cross, p00), p11);
  Coords lo = coords_add(p00, coords_mul(base, t->radicand, p11));
  return concat(std::move(lo), cross);
}

inline Coords coords_inv(const FieldTower* t, const Coords& a) {
  if (!t) {
    if (rat_is_zero(a[0]))
      throw std::domain_error("division by zero in scalar field");
    return {Rat(1) / a[0]};
  }
  const FieldTower* base = t->base.get();
  Coords p = lo_half(a), q = hi_half(a);
  // 1/(p + q*s) = (p - q*s)/(p^2 - d*q^2); the norm vanishes only at zero
  // because d is not a square in the base field.
  Coords norm = coords_sub(coords_mul(base, p, p),
                           coords_mul(base, t->radicand, coords_mul(base, q, q)));
  Coords ni = coords_inv(base, norm);
  return concat(coords_mul(base, p, ni),
                coords_neg(coords_mul(base, q, ni)));
}

// Decides whether `a` is a square in the field of `t` and produces one root.
// Root choice is deterministic: rational roots are nonnegative, and in the
// mixed case the candidate with a0^2 = (p + s)/2 is tried before (p - s)/2.
inline std::optional<Coords> coords_sqrt(const FieldTower* t, const Coords& a) {
  if (!t) {
    auto r = rat_sqrt(a[0]);
    if (!r) return std::nullopt;
    return Coords{*r};
  }
  const FieldTower* base = t->base.get();
  Coords p = lo_half(a), q = hi_half(a);
  Coords zeros(p.size(), Rat(0));
  if (coords_zero(q)) {
    if (auto r = coords_sqrt(base, p)) return concat(std::move(*r), zeros);
    // b*s with b^2 = p/d is the only remaining shape a root could take
    Coords pd = coords_mul(base, p, coords_inv(base, t->radicand));
    if (auto b = coords_sqrt(base, pd)) return concat(std::move(zeros), *b);
    return std::nullopt;
  }
  // (a0 + a1*s)^2 = p + q*s needs a0^2 + d*a1^2 = p and 2*a0*a1 = q, hence
  // the norm p^2 - d*q^2 = (a0^2 - d*a1^2)^2 must be a square first.
  Coords n = coords_sub(coords_mul(base, p, p),
                        coords_mul(base, t->radicand, coords_mul(base, q, q)));
  auto s = coords_sqrt(base, n);
  if (!s) return std::nullopt;
  Rat half(1, 2);
  for (int sign : {+1, -1}) {
    Coords cand = sign > 0 ? coords_add(p, *s) : coords_sub(p, *s);
    cand = coords_scale(cand, half);
    auto a0 = coords_sqrt(base, cand);
    if (!a0 || coords_zero(*a0)) continue;
    Coords a1 = coords_mul(base, q, coords_inv(base, coords_scale(*a0, Rat(2))));
    Coords root = concat(std::move(*a0), a1);
    if (coords_mul(t, root, root) == a) return root;
  }
  return std::nullopt;
}

}  // namespace detail

// An element of a quadratic extension tower: the tower plus 2^depth rational
// coordinates over the canonical power basis. Mixed-tower arithmetic is
// allowed only when one tower extends the other (the smaller operand lifts).
class Scalar {
 public:
  Scalar() : coords_{Rat(0)} {}
  Scalar(long n) : coords_{Rat(n)} {}
  Scalar(const Rat& r) : coords_{r} {}
  Scalar(TowerPtr t, std::vector<Rat> coords)
      : tower_(std::move(t)), coords_(std::move(coords)) {
    if (coords_.size() != tower_dim(tower_))
      throw std::logic_error("scalar coordinate count does not match tower");
  }

  static Scalar zero(const TowerPtr& t) {
    return Scalar(t, std::vector<Rat>(tower_dim(t), Rat(0)));
  }
  static Scalar one(const TowerPtr& t) {
    std::vector<Rat> c(tower_dim(t), Rat(0));
    c[0] = 1;
    return Scalar(t, std::move(c));
  }

  const TowerPtr& tower() const { return tower_; }
  const std::vector<Rat>& coords() const { return coords_; }

  bool is_zero() const { return detail::coords_zero(coords_); }
  bool is_one() const {
    if (coords_[0] != 1) return false;
    for (std::size_t i = 1; i < coords_.size(); ++i)
      if (!rat_is_zero(coords_[i])) return false;
    return true;
  }
  bool is_rational() const {
    for (std::size_t i = 1; i < coords_.size(); ++i)
      if (!rat_is_zero(coords_[i])) return false;
    return true;
  }
  const Rat& rat_value() const {
    if (!is_rational())
      throw std::logic_error("scalar is not rational");
    return coords_[0];
  }

  // Rewrites the element over a deeper tower that extends the current one.
  Scalar lifted(const TowerPtr& target) const {
    if (same_tower(tower_, target)) return *this;
    if (!tower_extends(target, tower_))
      throw std::logic_error("cannot lift scalar to an unrelated tower");
    std::vector<Rat> c = coords_;
    c.resize(tower_dim(target), Rat(0));
    return Scalar(target, std::move(c));
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    auto [x, y] = aligned(a, b);
    return Scalar(x.tower_, detail::coords_add(x.coords_, y.coords_));
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) {
    auto [x, y] = aligned(a, b);
    return Scalar(x.tower_, detail::coords_sub(x.coords_, y.coords_));
  }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    auto [x, y] = aligned(a, b);
    return Scalar(x.tower_,
                  detail::coords_mul(x.tower_.get(), x.coords_, y.coords_));
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    return a * b.inverse();
  }
  Scalar operator-() const {
    return Scalar(tower_, detail::coords_neg(coords_));
  }
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    auto [x, y] = aligned(a, b);
    return x.coords_ == y.coords_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) {
    return !(a == b);
  }

  Scalar inverse() const {
    return Scalar(tower_, detail::coords_inv(tower_.get(), coords_));
  }

  std::optional<Scalar> sqrt() const {
    auto r = detail::coords_sqrt(tower_.get(), coords_);
    if (!r) return std::nullopt;
    return Scalar(tower_, std::move(*r));
  }

  Scalar pow(unsigned long e) const {
    Scalar out = Scalar::one(tower_);
    Scalar b = *this;
    while (e) {
      if (e & 1) out *= b;
      b *= b;
      e >>= 1;
    }
    return out;
  }

  Int height() const {
    Int h = 0;
    for (const Rat& c : coords_) {
      Int hc = rat_height(c);
      if (hc > h) h = hc;
    }
    return h;
  }

  // Text form over the power basis {1, r1, r2, r1*r2}, rationals plain.
  std::string str() const {
    if (is_rational()) return rat_str(coords_[0]);
    static const char* basis2[2] = {"", "*r1"};
    static const char* basis4[4] = {"", "*r1", "*r2", "*r1*r2"};
    const char** basis = coords_.size() == 2 ? basis2 : basis4;
    std::string out = "(";
    bool first = true;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (rat_is_zero(coords_[i])) continue;
      if (!first) out += " + ";
      out += rat_str(coords_[i]);
      out += basis[i];
      first = false;
    }
    out += ")";
    return out;
  }

 private:
  static std::pair<Scalar, Scalar> aligned(const Scalar& a, const Scalar& b) {
    if (same_tower(a.tower_, b.tower_)) return {a, b};
    if (tower_extends(a.tower_, b.tower_)) return {a, b.lifted(a.tower_)};
    if (tower_extends(b.tower_, a.tower_)) return {a.lifted(b.tower_), b};
    throw std::logic_error("scalars live in unrelated field towers");
  }

  TowerPtr tower_;            // null = Q
  std::vector<Rat> coords_;   // size = tower_dim(tower_)
};

struct AdjoinResult {
  TowerPtr tower;   // tower containing a square root of the radicand
  Scalar root;      // that root, as an element of `tower`
  bool extended;    // false when the radicand was already a square
};

// Adjoins sqrt(d) to the tower `t` (d given over t or a subtower of it).
// Returns the original tower when d is already a square there; otherwise
// extends by one level, capped at two nested radicals.
inline AdjoinResult adjoin_sqrt(const TowerPtr& t, const Scalar& d_in) {
  if (!tower_extends(t, d_in.tower()))
    throw std::logic_error("radicand does not live in the given tower");
  Scalar d = d_in.lifted(t);
  if (d.is_zero()) fail(errc::ZeroRadicand, "radicand is zero");
  if (auto r = d.sqrt()) return {t, *r, false};
  if (tower_depth(t) >= 2)
    fail(errc::DepthExceeded,
         "cannot adjoin sqrt(" + d.str() + "): tower already has depth 2");
  auto nt = std::make_shared<const FieldTower>(FieldTower{t, d.coords()});
  std::vector<Rat> c(tower_dim(nt), Rat(0));
  c[tower_dim(t)] = 1;
  return {nt, Scalar(nt, std::move(c)), true};
}

// Human-readable tower description for reports.
inline std::string tower_str(const TowerPtr& t) {
  if (!t) return "Q";
  std::string radicand;
  if (t->radicand.size() == 1) {
    radicand = rat_str(t->radicand[0]);
  } else {
    radicand = Scalar(t->base, t->radicand).str();
  }
  std::string base = tower_str(t->base);
  if (base == "Q") return "Q(sqrt(" + radicand + "))";
  return base.substr(0, base.size() - 1) + ", sqrt(" + radicand + "))";
}

}  // namespace cubinv
