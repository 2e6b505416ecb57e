#pragma once

#include <array>
#include <optional>
#include <vector>

#include "cubinv/error.hpp"
#include "cubinv/groebner.hpp"
#include "cubinv/poly.hpp"

namespace cubinv {

// Diagonal involution of P^4 given by its sign vector: position i carries
// the eigenvalue (-1)^signs[i]. Canonical form has at most two 1 entries;
// flipping all signs gives the same projective involution, so vectors with
// three or more 1s are flipped on construction.
struct InvolutionSignature {
  std::vector<int> signs;  // length 5, entries 0/1, one or two 1s
  bool flipped = false;    // true when canonicalization applied the global flip
};

inline InvolutionSignature make_signature(std::vector<int> signs) {
  if (signs.size() != 5)
    fail(errc::UnsupportedSignature, "sign vector must have length 5");
  int ones = 0;
  for (int s : signs) {
    if (s != 0 && s != 1)
      fail(errc::UnsupportedSignature, "sign entries must be 0 or 1");
    ones += s;
  }
  bool flipped = false;
  if (ones > 2) {
    for (int& s : signs) s = 1 - s;
    ones = 5 - ones;
    flipped = true;
  }
  if (ones == 0)
    fail(errc::IdentityInvolution, "sign vector acts as the identity");
  return {std::move(signs), flipped};
}

enum class InvolutionKind { Eckardt, NonEckardt };

// Data of the two-minus-signs normal form: F decomposes as
//   x_a*q0(u,v) + x_b*q1(u,v) + x_c*q2(u,v) + g(x_a,x_b,x_c)
// over the even positions (a,b,c) and odd positions (u,v), equivalently as
//   l1*u^2 + l2*v^2 + 2*l3*u*v + g.
// The q_i live in arity 2 (the odd pair), the l_i and g in arity 3 (the even
// triple); both reassemblies are checked exactly on construction.
struct NonEckardtData {
  MultiPoly q0, q1, q2;  // binary quadratics
  MultiPoly l1, l2, l3;  // ternary linear forms
  MultiPoly g;           // ternary cubic
};

struct CubicWithInvolution {
  MultiPoly F;  // the input cubic, untouched
  InvolutionSignature sig;
  InvolutionKind kind = InvolutionKind::NonEckardt;
  std::optional<NonEckardtData> ne;
  std::vector<unsigned> even_positions;  // ascending, size 3 for NonEckardt
  std::vector<unsigned> odd_positions;   // ascending, size 2 for NonEckardt
};

namespace inv_detail {

inline MultiPoly apply_signs(const MultiPoly& F, const std::vector<int>& signs) {
  MultiPoly out(F.arity());
  for (const auto& [e, c] : F.terms()) {
    unsigned odd = 0;
    for (unsigned i = 0; i < F.arity(); ++i)
      if (signs[i]) odd += e[i];
    out.add_term(e, odd % 2 ? -c : c);
  }
  return out;
}

}  // namespace inv_detail

// Classifies an invariant cubic against a diagonal involution: canonicalizes
// the sign vector, verifies F is fixed by the action, names the type by the
// number of minus signs, and extracts the normal-form data in the
// two-minus-signs case.
inline CubicWithInvolution classify_involution(const MultiPoly& F,
                                               const std::vector<int>& signs) {
  if (F.arity() != 5 || F.is_zero() || !F.is_homogeneous() ||
      F.total_degree() != 3)
    throw std::logic_error("classification expects a homogeneous quintic-space cubic");
  CubicWithInvolution out;
  out.sig = make_signature(signs);
  out.F = F;
  if (inv_detail::apply_signs(F, out.sig.signs) != F)
    fail(errc::NotInvariant,
         "cubic is not fixed by the sign action (after canonicalization)");
  for (unsigned i = 0; i < 5; ++i) {
    if (out.sig.signs[i])
      out.odd_positions.push_back(i);
    else
      out.even_positions.push_back(i);
  }
  if (out.odd_positions.size() == 1) {
    out.kind = InvolutionKind::Eckardt;
    return out;
  }
  out.kind = InvolutionKind::NonEckardt;

  // split F along the parity of the exponent sum over the odd pair
  const auto& ev = out.even_positions;
  const auto& od = out.odd_positions;
  std::array<MultiPoly, 3> q = {MultiPoly(2), MultiPoly(2), MultiPoly(2)};
  MultiPoly g(3);
  for (const auto& [e, c] : F.terms()) {
    unsigned odd_deg = e[od[0]] + e[od[1]];
    if (odd_deg == 0) {
      g.add_term({e[ev[0]], e[ev[1]], e[ev[2]]}, c);
    } else {
      // invariance forces odd_deg = 2, leaving a single even variable
      int slot = -1;
      for (int i = 0; i < 3; ++i)
        if (e[ev[i]] == 1) slot = i;
      if (odd_deg != 2 || slot < 0)
        throw std::logic_error("invariant cubic violated the parity split");
      q[slot].add_term({e[od[0]], e[od[1]]}, c);
    }
  }
  NonEckardtData data;
  data.q0 = q[0];
  data.q1 = q[1];
  data.q2 = q[2];
  data.g = g;
  for (int j = 0; j < 3; ++j) {
    MultiPoly l(3);
    static const Exp shapes[3] = {{2, 0}, {0, 2}, {1, 1}};
    for (int i = 0; i < 3; ++i) {
      Scalar c = q[i].coeff(shapes[j]);
      if (j == 2) c = c / Scalar(2);
      if (!c.is_zero()) {
        Exp e(3, 0);
        e[i] = 1;
        l.add_term(std::move(e), c);
      }
    }
    (j == 0 ? data.l1 : j == 1 ? data.l2 : data.l3) = l;
  }

  // both reassemblies must reproduce F on the nose
  std::vector<int> embed_even = {int(ev[0]), int(ev[1]), int(ev[2])};
  std::vector<int> embed_odd = {int(od[0]), int(od[1])};
  MultiPoly eq1 = reindex(data.g, 5, embed_even);
  for (int i = 0; i < 3; ++i)
    eq1 += MultiPoly::variable(5, ev[i]) * reindex(q[i], 5, embed_odd);
  MultiPoly u = MultiPoly::variable(5, od[0]);
  MultiPoly v = MultiPoly::variable(5, od[1]);
  MultiPoly eq3 = reindex(data.l1, 5, embed_even) * u * u +
                  reindex(data.l2, 5, embed_even) * v * v +
                  Scalar(2) * (reindex(data.l3, 5, embed_even) * u * v) +
                  reindex(data.g, 5, embed_even);
  if (eq1 != F || eq3 != F)
    throw std::logic_error("normal-form reassembly failed to reproduce F");
  out.ne = std::move(data);
  return out;
}

// The fixed locus of the involution: the line cut by the even coordinates
// and the plane cut by the odd pair, both in the ambient 5 variables.
struct FixedLoci {
  std::array<MultiPoly, 3> line_forms;   // L = V(these)
  std::array<MultiPoly, 2> plane_forms;  // Pi = V(these)
};

inline FixedLoci fixed_loci(const CubicWithInvolution& c) {
  if (c.kind != InvolutionKind::NonEckardt)
    fail(errc::UnsupportedSignature,
         "fixed line and plane are defined for the two-minus-signs case");
  // defensive: L lies on the cubic iff every monomial uses an even variable
  for (const auto& [e, coeff] : c.F.terms()) {
    unsigned even_deg = 0;
    for (unsigned p : c.even_positions) even_deg += e[p];
    if (even_deg == 0)
      fail(errc::LineNotOnCubic, "fixed line does not lie on the cubic");
  }
  FixedLoci out;
  for (int i = 0; i < 3; ++i)
    out.line_forms[i] = MultiPoly::variable(5, c.even_positions[i]);
  for (int i = 0; i < 2; ++i)
    out.plane_forms[i] = MultiPoly::variable(5, c.odd_positions[i]);
  return out;
}

inline bool is_smooth_hypersurface(const MultiPoly& F) {
  IdealBasis jac;
  for (unsigned v = 0; v < F.arity(); ++v)
    jac.generators.push_back(partial_derivative(F, v));
  return is_projectively_empty(jac);
}

inline bool is_smooth_cubic_threefold(const MultiPoly& F) {
  if (F.arity() != 5 || F.is_zero() || !F.is_homogeneous() ||
      F.total_degree() != 3)
    throw std::logic_error("smoothness test expects a cubic in 5 variables");
  return is_smooth_hypersurface(F);
}

inline bool is_smooth_plane_cubic(const MultiPoly& g) {
  if (g.arity() != 3 || g.is_zero() || !g.is_homogeneous() ||
      g.total_degree() != 3)
    throw std::logic_error("smoothness test expects a ternary cubic");
  return is_smooth_hypersurface(g);
}

}  // namespace cubinv
