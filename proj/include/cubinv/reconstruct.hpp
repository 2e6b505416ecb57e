#pragma once

// Inverse direction of the fixed-line projection. A ternary conic q is put
// into the shape l1*l2 - l3^2 (the determinant of the upper block of the
// projection matrix), possibly after adjoining one or two square roots, and
// a plane cubic g is then reassembled with it into an invariant cubic
// threefold l1*x3^2 + l2*x4^2 + 2*l3*x3*x4 + scale*g. Projecting that
// threefold from its fixed line recovers (g, q) up to one scalar each.

#include <optional>
#include <utility>
#include <vector>

#include "cubinv/fibration.hpp"

namespace cubinv {

// q in the shape (l1*l2 - l3^2)/scale. The linear forms may live over a
// tower extension of the coefficient field of q; scale never does.
struct ConicNormalForm {
  MultiPoly l1 = MultiPoly(3);
  MultiPoly l2 = MultiPoly(3);
  MultiPoly l3 = MultiPoly(3);
  Scalar scale = Scalar(1);  // l1*l2 - l3^2 == scale * q, exactly
  int rank = 0;              // 2 or 3; l3 == 0 exactly when the rank is 2
};

namespace rec_detail {

inline TowerPtr widest_tower(const MultiPoly& p) {
  TowerPtr t;
  for (const auto& [e, c] : p.terms())
    if (tower_depth(c.tower()) > tower_depth(t)) t = c.tower();
  return t;
}

struct Diagonalization {
  std::vector<Scalar> pivots;
  std::vector<MultiPoly> forms;  // input == sum of pivots[m] * forms[m]^2
};

// Greedy completion of the square. The pivot is the square term whose
// coefficient has the largest height, lowest variable index on ties. When no
// square term is present the substitution x_i -> x_i + x_j (first cross term
// in lex order) creates one; forms collected under that substitution are
// mapped back through x_i -> x_i - x_j before returning.
inline void split_squares(const MultiPoly& r, Diagonalization& out) {
  if (r.is_zero()) return;
  const unsigned n = r.arity();
  auto identity_images = [n] {
    std::vector<MultiPoly> im;
    for (unsigned v = 0; v < n; ++v) im.push_back(MultiPoly::variable(n, v));
    return im;
  };
  int pick = -1;
  Int best = 0;
  for (unsigned m = 0; m < n; ++m) {
    Exp e(n, 0);
    e[m] = 2;
    Scalar c = r.coeff(e);
    if (c.is_zero()) continue;
    Int h = c.height();
    if (pick < 0 || h > best) {
      pick = int(m);
      best = h;
    }
  }
  if (pick < 0) {
    unsigned bi = 0, bj = 1;
    bool found = false;
    for (unsigned i = 0; i < n && !found; ++i)
      for (unsigned j = i + 1; j < n && !found; ++j) {
        Exp e(n, 0);
        e[i] = 1;
        e[j] = 1;
        if (!r.coeff(e).is_zero()) {
          bi = i;
          bj = j;
          found = true;
        }
      }
    if (!found)
      throw std::logic_error("nonzero quadratic with no degree-2 term");
    auto fwd = identity_images();
    fwd[bi] = MultiPoly::variable(n, bi) + MultiPoly::variable(n, bj);
    std::size_t start = out.forms.size();
    split_squares(compose(r, fwd), out);
    auto bwd = identity_images();
    bwd[bi] = MultiPoly::variable(n, bi) - MultiPoly::variable(n, bj);
    for (std::size_t t = start; t < out.forms.size(); ++t)
      out.forms[t] = compose(out.forms[t], bwd);
    return;
  }
  Exp sq(n, 0);
  sq[pick] = 2;
  Scalar p = r.coeff(sq);
  MultiPoly u = MultiPoly::variable(n, unsigned(pick));
  for (unsigned j = 0; j < n; ++j) {
    if (int(j) == pick) continue;
    Exp e(n, 0);
    e[unsigned(pick)] += 1;
    e[j] += 1;
    Scalar c = r.coeff(e);
    if (!c.is_zero()) u += (c / (Scalar(2) * p)) * MultiPoly::variable(n, j);
  }
  out.pivots.push_back(p);
  out.forms.push_back(u);
  split_squares(r - p * (u * u), out);
}

}  // namespace rec_detail

// Writes q as (l1*l2 - l3^2)/scale over a tower with at most two adjoined
// square roots. Two paths, both normalizing the leading square of scale*q
// to coefficient 1:
//
//  - hyperbolic fast path: when some pair of variables x_i, x_j has square
//    coefficients zero but a nonzero cross term s*x_i*x_j, then q/s already
//    splits as (x_i + a*x_k)(x_j + b*x_k) + d'*x_k^2 and only -d' may need a
//    root. This keeps x0*x1 - x2^2 at exactly (x0, x1, x2) and splits rank-2
//    products like (x0+x1)(x0+x2) into their factors unchanged.
//  - otherwise: congruence diagonalization by completion of the square
//    (pivot rules in split_squares), scale = inverse of the first pivot,
//    l1 = U + beta*V, l2 = U - beta*V, l3 = gamma*W with beta^2 = -p1/p0
//    and gamma^2 = -p2/p0.
//
// Errors: RankTooLow when the conic is a double line, a single line or zero;
// DepthExceeded propagated from the root adjunctions.
inline ConicNormalForm conic_normal_form(const MultiPoly& q) {
  ScalarMat a = conic_matrix(q);  // validates arity and homogeneity
  int rk = int(rank(a));
  if (rk <= 1)
    fail(errc::RankTooLow,
         "conic has rank " + std::to_string(rk) +
             "; no reduced decomposition l1*l2 - l3^2 exists");
  TowerPtr base = rec_detail::widest_tower(q);
  ConicNormalForm out;
  out.rank = rk;

  for (unsigned i = 0; i < 3; ++i)
    for (unsigned j = i + 1; j < 3; ++j) {
      if (!a(i, i).is_zero() || !a(j, j).is_zero() || a(i, j).is_zero())
        continue;
      unsigned k = 3 - i - j;
      Scalar s = Scalar(2) * a(i, j);
      MultiPoly xk = MultiPoly::variable(3, k);
      out.l1 = MultiPoly::variable(3, i) + (Scalar(2) * a(j, k) / s) * xk;
      out.l2 = MultiPoly::variable(3, j) + (Scalar(2) * a(i, k) / s) * xk;
      Scalar d = a(k, k) - Scalar(4) * a(i, k) * a(j, k) / s;
      out.scale = s.inverse();
      if (!d.is_zero()) {
        AdjoinResult g = adjoin_sqrt(base, (-(d / s)).lifted(base));
        out.l3 = g.root * xk;
      }
      if (out.l1 * out.l2 - out.l3 * out.l3 != out.scale * q)
        throw std::logic_error("conic decomposition identity failed");
      return out;
    }

  rec_detail::Diagonalization d;
  rec_detail::split_squares(q, d);
  if (int(d.pivots.size()) != rk)
    throw std::logic_error("pivot count disagrees with the conic rank");
  const Scalar& p0 = d.pivots[0];
  out.scale = p0.inverse();
  AdjoinResult b = adjoin_sqrt(base, (-(d.pivots[1] / p0)).lifted(base));
  out.l1 = d.forms[0] + b.root * d.forms[1];
  out.l2 = d.forms[0] - b.root * d.forms[1];
  if (rk == 3) {
    AdjoinResult g =
        adjoin_sqrt(b.tower, (-(d.pivots[2] / p0)).lifted(b.tower));
    out.l3 = g.root * d.forms[2];
  }
  if (out.l1 * out.l2 - out.l3 * out.l3 != out.scale * q)
    throw std::logic_error("conic decomposition identity failed");
  return out;
}

// Builds the invariant cubic threefold whose fixed-line projection has
// branch pair (g, q): F = l1*x3^2 + l2*x4^2 + 2*l3*x3*x4 + scale*g with the
// sign action on x3, x4. The input is rejected unless g is smooth
// (CubicSingular), q has rank at least 2 (RankTooLow) and the two curves
// meet transversally (NotTransverse). Under those hypotheses the output is
// a smooth threefold; that is asserted, not reported.
inline CubicWithInvolution reconstruct(const MultiPoly& g, const MultiPoly& q) {
  if (!is_smooth_plane_cubic(g))
    fail(errc::CubicSingular,
         "plane cubic is singular; the projected double cover degenerates");
  ConicNormalForm nf = conic_normal_form(q);
  BranchFormResult bf = branch_form_of(g, q);
  if (!(bf.found && bf.transversal))
    fail(errc::NotTransverse,
         "cubic and conic do not meet in six distinct points");
  const std::vector<int> even = {0, 1, 2};
  MultiPoly x3 = MultiPoly::variable(5, 3);
  MultiPoly x4 = MultiPoly::variable(5, 4);
  MultiPoly F = reindex(nf.l1, 5, even) * x3 * x3 +
                reindex(nf.l2, 5, even) * x4 * x4 +
                Scalar(2) * (reindex(nf.l3, 5, even) * x3 * x4) +
                nf.scale * reindex(g, 5, even);
  CubicWithInvolution c = classify_involution(F, {0, 0, 0, 1, 1});
  if (!is_smooth_cubic_threefold(F))
    throw std::logic_error(
        "reconstruction from smooth transversal data produced a singular "
        "threefold");
  return c;
}

// The scalar s with b == s*a when the two polynomials are proportional.
inline std::optional<Scalar> scale_factor(const MultiPoly& a,
                                          const MultiPoly& b) {
  if (a.is_zero() || b.is_zero()) return std::nullopt;
  const auto& [ea, ca] = a.leading_term();
  const auto& [eb, cb] = b.leading_term();
  if (ea != eb) return std::nullopt;
  Scalar s = cb / ca;
  if (b == s * a) return s;
  return std::nullopt;
}

struct RoundTripReport {
  bool ok = false;
  MultiPoly recovered_g = MultiPoly(3);
  MultiPoly recovered_q = MultiPoly(3);
  std::pair<Scalar, Scalar> scalar_matches = {Scalar(0), Scalar(0)};
};

// project -> reconstruct -> project again, comparing the two branch pairs
// up to one nonzero scalar each. Both scalars equal the normalization
// factor of the conic, so inputs already in normal form report (1, 1).
inline RoundTripReport round_trip(const CubicWithInvolution& c) {
  FixedLineFibration first = project_from_fixed_line(c);
  CubicWithInvolution rebuilt =
      reconstruct(first.cubic_part, first.conic_part);
  FixedLineFibration second = project_from_fixed_line(rebuilt);
  RoundTripReport out;
  out.recovered_g = second.cubic_part;
  out.recovered_q = second.conic_part;
  auto sg = scale_factor(first.cubic_part, second.cubic_part);
  auto sq = scale_factor(first.conic_part, second.conic_part);
  out.ok = sg.has_value() && sq.has_value();
  if (out.ok) out.scalar_matches = {*sg, *sq};
  return out;
}

}  // namespace cubinv
