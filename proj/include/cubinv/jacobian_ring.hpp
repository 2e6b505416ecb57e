#pragma once

// Graded slices of the Jacobian ring R_F = C[x0..x4]/(dF/dx0..dF/dx4) of a
// smooth cubic threefold, their eigenspace splits under a diagonal sign
// involution, the Macaulay duality pairing R^1 x R^4 -> R^5, and the kernel
// criterion for the restricted multiplication map Sym^2((R^1)^tau) ->
// (R^2)^tau. Everything is straight linear algebra on monomial coefficient
// vectors; the grading keeps each piece finite, so no basis of the full
// quotient is ever needed.

#include <map>
#include <utility>
#include <vector>

#include "cubinv/involution.hpp"

namespace cubinv {

struct JacobianSlice {
  int degree = 0;
  std::vector<MultiPoly> monomial_basis;     // all degree-i monomials
  std::vector<MultiPoly> jacobian_subspace;  // reduced basis of J_F^i
  int quotient_dim = 0;                      // dim R_F^i
  std::pair<int, int> eigen_dims{0, 0};      // (invariant, anti-invariant)
};

namespace hodge_detail {

inline int parity(const Exp& e, const std::vector<int>& signs) {
  unsigned odd = 0;
  for (std::size_t v = 0; v < e.size(); ++v)
    if (signs[v]) odd += e[v];
  return int(odd % 2);
}

// Degree-d exponent vectors in the term order of MultiPoly (leading first).
inline std::vector<Exp> degree_monomials(unsigned arity, int d) {
  MultiPoly all(arity);
  Exp e(arity, 0);
  auto rec = [&](auto&& self, unsigned v, int left) -> void {
    if (v + 1 == arity) {
      e[v] = unsigned(left);
      all.add_term(e, Scalar(1));
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[v] = unsigned(k);
      self(self, v + 1, left - k);
    }
    e[v] = 0;
  };
  rec(rec, 0, d);
  std::vector<Exp> out;
  for (const auto& [exp, c] : all.terms()) out.push_back(exp);
  return out;
}

// The degree-i slice of the Jacobian ideal, row reduced over the monomial
// column order above. Rows of the generator matrix are monomial multiples
// of the five partials, each of pure parity, so the reduction never mixes
// eigenspaces and free columns split the quotient by their own parity.
struct SliceData {
  std::vector<Exp> mons;
  std::map<Exp, std::size_t> col;
  ScalarMat reduced{0, 0, Scalar(0)};
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> freecols;
};

inline SliceData slice_data(const MultiPoly& F, int i) {
  SliceData out;
  out.mons = degree_monomials(5, i);
  for (std::size_t c = 0; c < out.mons.size(); ++c) out.col[out.mons[c]] = c;
  std::vector<MultiPoly> gens;
  if (i >= 2) {
    std::vector<MultiPoly> partials;
    for (unsigned v = 0; v < 5; ++v)
      partials.push_back(partial_derivative(F, v));
    for (const Exp& m : degree_monomials(5, i - 2))
      for (unsigned v = 0; v < 5; ++v) {
        MultiPoly g = MultiPoly::monomial(5, m, Scalar(1)) * partials[v];
        if (!g.is_zero()) gens.push_back(std::move(g));
      }
  }
  ScalarMat mat(gens.size(), out.mons.size(), Scalar(0));
  for (std::size_t r = 0; r < gens.size(); ++r)
    for (const auto& [e, c] : gens[r].terms()) mat(r, out.col.at(e)) = c;
  out.pivots = rref(mat);
  out.reduced = std::move(mat);
  std::vector<bool> is_pivot(out.mons.size(), false);
  for (std::size_t p : out.pivots) is_pivot[p] = true;
  for (std::size_t c = 0; c < out.mons.size(); ++c)
    if (!is_pivot[c]) out.freecols.push_back(c);
  return out;
}

// Remainder of v modulo the reduced rows; supported on free columns only.
inline void reduce_vec(const SliceData& d, std::vector<Scalar>& v) {
  for (std::size_t k = 0; k < d.pivots.size(); ++k) {
    Scalar f = v[d.pivots[k]];
    if (f.is_zero()) continue;
    for (std::size_t j = 0; j < v.size(); ++j) v[j] -= f * d.reduced(k, j);
  }
}

inline std::vector<Scalar> poly_vec(const SliceData& d, const MultiPoly& p) {
  std::vector<Scalar> v(d.mons.size(), Scalar(0));
  for (const auto& [e, c] : p.terms()) v[d.col.at(e)] = c;
  return v;
}

inline void require_smooth(const MultiPoly& F) {
  if (!is_smooth_cubic_threefold(F))
    fail(errc::NotSmooth,
         "Jacobian ring is not Artinian for a singular cubic");
}

inline void require_invariant(const MultiPoly& F,
                              const InvolutionSignature& tau) {
  if (inv_detail::apply_signs(F, tau.signs) != F)
    fail(errc::NotInvariant,
         "cubic is not fixed by the sign action; eigenspaces undefined");
}

}  // namespace hodge_detail

// Basis data and eigen dimensions of R_F^i, 0 <= i <= 5.
inline JacobianSlice jacobian_slice(const MultiPoly& F, int i,
                                    const InvolutionSignature& tau) {
  if (i < 0 || i > 5)
    throw std::logic_error("Jacobian ring slices live in degrees 0..5");
  hodge_detail::require_smooth(F);
  hodge_detail::require_invariant(F, tau);
  hodge_detail::SliceData d = hodge_detail::slice_data(F, i);
  JacobianSlice out;
  out.degree = i;
  for (const Exp& e : d.mons)
    out.monomial_basis.push_back(MultiPoly::monomial(5, e, Scalar(1)));
  for (std::size_t r = 0; r < d.pivots.size(); ++r) {
    MultiPoly row(5);
    for (std::size_t c = 0; c < d.mons.size(); ++c)
      if (!d.reduced(r, c).is_zero()) row.add_term(d.mons[c], d.reduced(r, c));
    out.jacobian_subspace.push_back(std::move(row));
  }
  out.quotient_dim = int(d.mons.size() - d.pivots.size());
  for (std::size_t c : d.freecols) {
    if (hodge_detail::parity(d.mons[c], tau.signs) == 0)
      ++out.eigen_dims.first;
    else
      ++out.eigen_dims.second;
  }
  return out;
}

// Eigen dimensions of R_F^1, the tangent-space split of the intermediate
// Jacobian. For a two-minus-signs action this is (3, 2) by construction
// (the ideal is empty in degree 1), so the value is asserted, not reported.
inline std::pair<int, int> hodge_split(const MultiPoly& F,
                                       const InvolutionSignature& tau) {
  JacobianSlice s = jacobian_slice(F, 1, tau);
  int odd = 0;
  for (int v : tau.signs) odd += v;
  if (odd == 2 && s.eigen_dims != std::pair<int, int>{3, 2})
    throw std::logic_error("degree-1 eigen split must be (3, 2)");
  return s.eigen_dims;
}

// True when the multiplication pairing R^1 x R^4 -> R^5 is nondegenerate.
// The socle is one-dimensional and invariant; pairing entries between
// opposite eigenspaces vanish identically, and nondegeneracy forces the
// invariant dimensions of R^1 and R^4 to agree. Both facts are asserted.
inline bool macaulay_pairing_check(const MultiPoly& F,
                                   const InvolutionSignature& tau) {
  hodge_detail::require_smooth(F);
  hodge_detail::require_invariant(F, tau);
  hodge_detail::SliceData d4 = hodge_detail::slice_data(F, 4);
  hodge_detail::SliceData d5 = hodge_detail::slice_data(F, 5);
  if (d5.freecols.size() != 1)
    throw std::logic_error("socle of a smooth cubic must be a line");
  std::size_t socle = d5.freecols[0];
  if (hodge_detail::parity(d5.mons[socle], tau.signs) != 0)
    throw std::logic_error("socle representative must be invariant");

  ScalarMat pairing(5, d4.freecols.size(), Scalar(0));
  for (unsigned a = 0; a < 5; ++a)
    for (std::size_t b = 0; b < d4.freecols.size(); ++b) {
      MultiPoly prod = MultiPoly::variable(5, a) *
                       MultiPoly::monomial(5, d4.mons[d4.freecols[b]],
                                           Scalar(1));
      std::vector<Scalar> v = hodge_detail::poly_vec(d5, prod);
      hodge_detail::reduce_vec(d5, v);
      pairing(a, b) = v[socle];
      int pa = tau.signs[a] % 2;
      int pb = hodge_detail::parity(d4.mons[d4.freecols[b]], tau.signs);
      if (pa != pb && !pairing(a, b).is_zero())
        throw std::logic_error("pairing coupled opposite eigenspaces");
    }
  bool nondegenerate =
      d4.freecols.size() == 5 && rank(pairing) == 5;
  if (nondegenerate) {
    int inv1 = 0, inv4 = 0;
    for (unsigned a = 0; a < 5; ++a)
      if (!tau.signs[a]) ++inv1;
    for (std::size_t c : d4.freecols)
      if (hodge_detail::parity(d4.mons[c], tau.signs) == 0) ++inv4;
    if (inv1 != inv4)
      throw std::logic_error("duality broke the eigenspace dimensions");
  }
  return nondegenerate;
}

struct TorelliReport {
  int sym2_dim = 0;                    // dim Sym^2((R^1)^tau)
  int r2_inv_dim = 0;                  // dim (R^2)^tau
  int codifferential_kernel_dim = 0;   // dim(J_F^2 /\ Sym^2 of the plane)
  bool in_M0 = false;                  // l1, l2, l3 without a common zero
  bool common_zero_check = false;      // the two criteria agreed (asserted)
};

// Kernel of the restricted multiplication Sym^2((R^1)^tau) -> (R^2)^tau,
// computed twice: as the kernel of the exact 6 x dim matrix of the map and
// as dim(J_F^2) + 6 - rank of the two spaces stacked. The kernel vanishes
// exactly when the three linear forms of the two-minus-signs shape have no
// common projective zero; that equivalence is asserted on every input.
inline TorelliReport torelli_codifferential(const CubicWithInvolution& c) {
  if (!c.ne)
    throw std::logic_error(
        "codifferential needs the two-minus-signs data");
  hodge_detail::require_smooth(c.F);
  hodge_detail::SliceData d2 = hodge_detail::slice_data(c.F, 2);

  TorelliReport out;
  int inv1 = int(c.even_positions.size());
  out.sym2_dim = inv1 * (inv1 + 1) / 2;
  std::vector<std::size_t> inv_free;
  for (std::size_t col : d2.freecols)
    if (hodge_detail::parity(d2.mons[col], c.sig.signs) == 0)
      inv_free.push_back(col);
  out.r2_inv_dim = int(inv_free.size());

  // rows of the multiplication map: products of the fixed-plane variables,
  // reduced into quotient coordinates on the invariant free columns
  std::vector<Exp> sym2;
  for (std::size_t a = 0; a < c.even_positions.size(); ++a)
    for (std::size_t b = a; b < c.even_positions.size(); ++b) {
      Exp e(5, 0);
      e[c.even_positions[a]] += 1;
      e[c.even_positions[b]] += 1;
      sym2.push_back(std::move(e));
    }
  ScalarMat mul(sym2.size(), inv_free.size(), Scalar(0));
  for (std::size_t r = 0; r < sym2.size(); ++r) {
    std::vector<Scalar> v =
        hodge_detail::poly_vec(d2, MultiPoly::monomial(5, sym2[r], Scalar(1)));
    hodge_detail::reduce_vec(d2, v);
    for (std::size_t j = 0; j < inv_free.size(); ++j) mul(r, j) = v[inv_free[j]];
  }
  out.codifferential_kernel_dim = int(sym2.size() - rank(mul));

  // same number as an intersection dimension, independently
  ScalarMat stack(d2.pivots.size() + sym2.size(), d2.mons.size(), Scalar(0));
  for (std::size_t r = 0; r < d2.pivots.size(); ++r)
    for (std::size_t j = 0; j < d2.mons.size(); ++j)
      stack(r, j) = d2.reduced(r, j);
  for (std::size_t r = 0; r < sym2.size(); ++r)
    stack(d2.pivots.size() + r, d2.col.at(sym2[r])) = Scalar(1);
  int meet = int(d2.pivots.size() + sym2.size() - rank(stack));
  if (meet != out.codifferential_kernel_dim)
    throw std::logic_error("kernel and ideal intersection dims disagree");

  // common zero of l1, l2, l3 in the plane: full-rank coefficient matrix
  // means the only solution is the origin; otherwise eliminate
  const NonEckardtData& ne = *c.ne;
  ScalarMat coef(3, 3, Scalar(0));
  const MultiPoly* forms[3] = {&ne.l1, &ne.l2, &ne.l3};
  for (unsigned r = 0; r < 3; ++r)
    for (unsigned v = 0; v < 3; ++v) {
      Exp e(3, 0);
      e[v] = 1;
      coef(r, v) = forms[r]->coeff(e);
    }
  bool empty;
  if (rank(coef) == 3) {
    empty = true;
  } else {
    IdealBasis lines;
    for (const MultiPoly* f : forms)
      if (!f->is_zero()) lines.generators.push_back(*f);
    empty = is_projectively_empty(lines);
  }
  out.in_M0 = empty;
  if ((out.codifferential_kernel_dim == 0) != out.in_M0)
    throw std::logic_error(
        "kernel criterion and common-zero test disagree");
  out.common_zero_check = true;
  return out;
}

}  // namespace cubinv
