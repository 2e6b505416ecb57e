#pragma once

#include <algorithm>
#include <array>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cubinv/error.hpp"
#include "cubinv/involution.hpp"
#include "cubinv/matrix.hpp"
#include "cubinv/resultant.hpp"

namespace cubinv {

// A line in P^4, stored as the reduced row echelon form of a 2x5 spanning
// matrix. RREF makes equality a plain comparison.
struct Line {
  ScalarMat span;  // 2 rows, 5 cols, RREF, rank 2

  friend bool operator==(const Line& a, const Line& b) {
    return a.span == b.span;
  }
  friend bool operator!=(const Line& a, const Line& b) { return !(a == b); }
};

inline Line line_through(const std::vector<Scalar>& p,
                         const std::vector<Scalar>& q) {
  if (p.size() != 5 || q.size() != 5)
    throw std::logic_error("line points need 5 coordinates");
  ScalarMat m(2, 5, Scalar(0));
  for (std::size_t j = 0; j < 5; ++j) {
    m(0, j) = p[j];
    m(1, j) = q[j];
  }
  if (rref(m).size() != 2)
    throw std::logic_error("line points are proportional");
  return Line{m};
}

// The line cut out by three independent linear forms.
inline Line line_from_forms(const std::array<MultiPoly, 3>& forms) {
  ScalarMat coeffs(3, 5, Scalar(0));
  for (std::size_t i = 0; i < 3; ++i) {
    if (forms[i].arity() != 5 || forms[i].is_zero() ||
        forms[i].total_degree() != 1 || !forms[i].is_homogeneous())
      throw std::logic_error("line forms must be linear in 5 variables");
    for (const auto& [e, c] : forms[i].terms())
      for (unsigned v = 0; v < 5; ++v)
        if (e[v]) coeffs(i, v) = c;
  }
  auto kern = kernel_basis(coeffs);
  if (kern.size() != 2)
    throw std::logic_error("line forms do not cut out a line");
  return line_through(kern[0], kern[1]);
}

// Three independent linear forms vanishing on the line.
inline std::array<MultiPoly, 3> line_forms(const Line& l) {
  auto kern = kernel_basis(l.span);
  if (kern.size() != 3)
    throw std::logic_error("line span is degenerate");
  std::array<MultiPoly, 3> out;
  for (std::size_t i = 0; i < 3; ++i) {
    MultiPoly f(5);
    for (unsigned v = 0; v < 5; ++v) {
      if (kern[i][v].is_zero()) continue;
      Exp e(5, 0);
      e[v] = 1;
      f.add_term(std::move(e), kern[i][v]);
    }
    out[i] = std::move(f);
  }
  return out;
}

inline Line apply_involution_to_line(const Line& l,
                                     const std::vector<int>& signs) {
  std::vector<Scalar> p(5), q(5);
  for (unsigned j = 0; j < 5; ++j) {
    p[j] = signs[j] ? -l.span(0, j) : l.span(0, j);
    q[j] = signs[j] ? -l.span(1, j) : l.span(1, j);
  }
  return line_through(p, q);
}

// Restriction of F to the pencil s*p + t*q, as a binary form in (s, t).
inline MultiPoly restrict_to_pencil(const MultiPoly& F,
                                    const std::vector<Scalar>& p,
                                    const std::vector<Scalar>& q) {
  std::vector<std::vector<Scalar>> rows(F.arity());
  for (unsigned i = 0; i < F.arity(); ++i) rows[i] = {p[i], q[i]};
  return substitute_linear(F, rows);
}

// Symmetric coefficient matrix of a ternary quadratic form.
inline ScalarMat conic_matrix(const MultiPoly& q) {
  if (q.arity() != 3) throw std::logic_error("ternary conic expected");
  ScalarMat a(3, 3, Scalar(0));
  Scalar half(make_rat(1, 2));
  for (const auto& [e, c] : q.terms()) {
    if (exp_deg(e) != 2) throw std::logic_error("conic must be quadratic");
    int i = -1, j = -1;
    for (int v = 0; v < 3; ++v) {
      if (e[v] == 2) i = j = v;
      if (e[v] == 1) (i < 0 ? i : j) = v;
    }
    if (i == j) {
      a(i, i) = c;
    } else {
      a(i, j) = half * c;
      a(j, i) = a(i, j);
    }
  }
  return a;
}

// Branch form of the pair (g, q): eliminates one plane variable by a
// resultant, choosing x2 first, then x1, x0, then once more after the shear
// x2 -> x2 + x0. A variable is usable when both forms involve it and the
// eliminated direction is not a common zero (otherwise the resultant would
// miss intersection points). A usable direction can still collide two
// distinct intersection points that are collinear with it, which leaves a
// spurious multiple root in the resultant; since one squarefree degree-6
// resultant already certifies that all six points are distinct, the cascade
// keeps trying directions until one certifies, and only falls back to the
// first computed form when none does.
struct BranchFormResult {
  MultiPoly form = MultiPoly(2);  // binary in the two surviving variables
  bool transversal = false;
  unsigned eliminated = 2;
  bool sheared = false;
  bool found = false;
};

inline BranchFormResult branch_form_of(const MultiPoly& g,
                                       const MultiPoly& q) {
  auto usable = [](const MultiPoly& a, const MultiPoly& b, unsigned var) {
    if (a.degree_in(var) < 1 || b.degree_in(var) < 1) return false;
    Exp ea(3, 0), eb(3, 0);
    ea[var] = 3;
    eb[var] = 2;
    // eliminated direction is a common zero iff both pure powers are absent
    return !(a.coeff(ea).is_zero() && b.coeff(eb).is_zero());
  };
  std::optional<BranchFormResult> first;
  auto attempt = [&](const MultiPoly& a, const MultiPoly& b,
                     bool sheared) -> std::optional<BranchFormResult> {
    for (unsigned var : {2u, 1u, 0u}) {
      if (!usable(a, b, var)) continue;
      MultiPoly res = resultant_wrt(a, b, var);
      std::vector<int> keep(3, -1);
      int slot = 0;
      for (unsigned v = 0; v < 3; ++v)
        if (v != var) keep[v] = slot++;
      BranchFormResult out;
      out.form = reindex(res, 2, keep);
      out.eliminated = var;
      out.sheared = sheared;
      out.found = true;
      out.transversal = !out.form.is_zero() && out.form.total_degree() == 6 &&
                        is_squarefree_binary(out.form);
      if (out.transversal) return out;
      if (!first) first = out;
    }
    return std::nullopt;
  };
  if (auto r = attempt(g, q, false)) return *r;
  // shear x2 -> x2 + x0 and retry the same cascade
  std::vector<std::vector<Scalar>> shear = {{Scalar(1), Scalar(0), Scalar(0)},
                                            {Scalar(0), Scalar(1), Scalar(0)},
                                            {Scalar(1), Scalar(0), Scalar(1)}};
  MultiPoly gs = substitute_linear(g, shear);
  MultiPoly qs = substitute_linear(q, shear);
  if (auto r = attempt(gs, qs, true)) return *r;
  return first ? *first : BranchFormResult{};
}

// Projection of X from the pointwise fixed line: the 3x3 matrix of forms
// whose determinant cuts the discriminant, split into the conic part
// q = l1*l2 - l3^2 and the cubic part g.
struct FixedLineFibration {
  FormMat M;               // [[l1, l3, 0], [l3, l2, 0], [0, 0, g]]
  MultiPoly disc;          // det(M) = q * g, a plane quintic
  MultiPoly cubic_part;    // g
  MultiPoly conic_part;    // q
  MultiPoly branch_form;   // binary sextic from eliminating one variable
  bool transversal = false;
  int conic_rank = 0;
  unsigned eliminated_var = 2;
  bool sheared = false;
};

inline FixedLineFibration project_from_fixed_line(
    const CubicWithInvolution& c) {
  if (!c.ne)
    throw std::logic_error("fixed-line projection needs the two-minus-signs data");
  const NonEckardtData& d = *c.ne;
  FixedLineFibration out;
  out.M = FormMat(3, 3, MultiPoly::zero(3));
  out.M(0, 0) = d.l1;
  out.M(0, 1) = d.l3;
  out.M(1, 0) = d.l3;
  out.M(1, 1) = d.l2;
  out.M(2, 2) = d.g;
  out.cubic_part = d.g;
  out.conic_part = d.l1 * d.l2 - d.l3 * d.l3;
  out.disc = det_bareiss(out.M);
  if (out.disc != out.conic_part * out.cubic_part)
    throw std::logic_error("discriminant lost its block factorization");
  out.conic_rank = int(rank(conic_matrix(out.conic_part)));
  if (out.conic_rank <= 1)
    fail(errc::DegenerateFibration,
         "associated conic has rank <= 1; the branch divisor would be non-reduced");
  BranchFormResult bf = branch_form_of(out.cubic_part, out.conic_part);
  out.branch_form = bf.form;
  out.transversal = bf.found && bf.transversal;
  out.eliminated_var = bf.eliminated;
  out.sheared = bf.sheared;
  return out;
}

// The branch data of the conic-bundle projection, in ideal-theoretic form:
// the curve by its cubic, the divisor by the conic cutting it, the bundle
// marked as the hyperplane class. Points of the divisor are never listed;
// they generically live beyond the quadratic tower cap.
struct ConicSectionData {
  MultiPoly curve;    // g, cutting the plane cubic
  MultiPoly section;  // q, the conic section cutting the branch divisor
  std::pair<MultiPoly, MultiPoly> branch_pair;  // (g, q)
  std::string bundle = "hyperplane";
};

inline ConicSectionData branch_divisor_as_conic_section(
    const FixedLineFibration& f) {
  if (!f.transversal)
    fail(errc::NotTransverse,
         "branch divisor is only well-formed for transversal fibrations");
  ConicSectionData out;
  out.curve = f.cubic_part;
  out.section = f.conic_part;
  out.branch_pair = {f.cubic_part, f.conic_part};
  return out;
}

namespace fib_detail {

inline std::vector<Scalar> embed_plane_point(const CubicWithInvolution& c,
                                             const std::vector<Scalar>& pt) {
  std::vector<Scalar> out(5, Scalar(0));
  for (int i = 0; i < 3; ++i) out[c.even_positions[i]] = pt[i];
  return out;
}

inline std::vector<Scalar> embed_odd_direction(const CubicWithInvolution& c,
                                               const Scalar& d0,
                                               const Scalar& d1) {
  std::vector<Scalar> out(5, Scalar(0));
  out[c.odd_positions[0]] = d0;
  out[c.odd_positions[1]] = d1;
  return out;
}

// fiber quadratic of the fixed-line projection over a plane point:
// Q_pt(u, v) = sum pt_i * q_i(u, v)
inline MultiPoly fiber_quadratic(const CubicWithInvolution& c,
                                 const std::vector<Scalar>& pt) {
  const NonEckardtData& d = *c.ne;
  MultiPoly q = MultiPoly::constant(2, pt[0]) * d.q0;
  q += MultiPoly::constant(2, pt[1]) * d.q1;
  q += MultiPoly::constant(2, pt[2]) * d.q2;
  return q;
}

inline void normalize_first_nonzero(std::vector<Scalar>& v) {
  for (const Scalar& x : v) {
    if (x.is_zero()) continue;
    Scalar inv = x.inverse();
    for (Scalar& y : v) y = inv * y;
    return;
  }
}

// asserts that the line spanned by p and q lies on the cubic
inline void check_line_on_cubic(const MultiPoly& F,
                                const std::vector<Scalar>& p,
                                const std::vector<Scalar>& q,
                                errc code) {
  if (!restrict_to_pencil(F, p, q).is_zero())
    fail(code, "line does not lie on the cubic");
}

}  // namespace fib_detail

// The two invariant lines in the fiber over a point of the plane cubic,
// obtained by factoring the fiber quadratic; a square root of its
// discriminant may extend the tower. Lines are returned in a fixed order
// (the root with the +sqrt branch first) and coincide exactly in the
// tangential case.
struct InvariantLinePair {
  Line l;
  Line partner;
  TowerPtr tower;           // field of definition of the pair
  bool tangential = false;  // fiber quadratic has a double root
};

inline InvariantLinePair invariant_lines_over(const CubicWithInvolution& c,
                                              const std::vector<Scalar>& pt) {
  if (!c.ne)
    throw std::logic_error("invariant lines need the two-minus-signs data");
  if (pt.size() != 3) throw std::logic_error("plane point needs 3 coordinates");
  bool all_zero = true;
  for (const Scalar& x : pt) all_zero &= x.is_zero();
  if (all_zero) throw std::logic_error("zero vector is not a projective point");
  std::vector<Scalar> base = pt;
  fib_detail::normalize_first_nonzero(base);
  if (!c.ne->g.evaluate(base).is_zero())
    fail(errc::PointNotOnC, "point does not lie on the plane cubic");

  MultiPoly fq = fib_detail::fiber_quadratic(c, base);
  if (fq.is_zero())
    fail(errc::DegenerateFibration,
         "fiber quadratic vanishes identically; the cubic contains a plane");
  Scalar a = fq.coeff({2, 0});
  Scalar b = fq.coeff({1, 1});
  Scalar cc = fq.coeff({0, 2});

  // common tower of the inputs
  TowerPtr t;
  for (const Scalar& x : base)
    if (tower_extends(x.tower(), t)) t = x.tower();

  std::pair<Scalar, Scalar> d1, d2;  // (u, v) root directions
  bool tangential = false;
  if (!a.is_zero()) {
    Scalar disc = b * b - Scalar(4) * a * cc;
    if (disc.is_zero()) {
      tangential = true;
      Scalar r = -b / (Scalar(2) * a);
      d1 = d2 = {r, Scalar(1)};
    } else {
      AdjoinResult adj = adjoin_sqrt(t, disc);
      t = adj.tower;
      Scalar s = adj.root;
      Scalar two_a = Scalar(2) * a;
      d1 = {(-b + s) / two_a, Scalar(1)};
      d2 = {(-b - s) / two_a, Scalar(1)};
    }
  } else if (!b.is_zero()) {
    // fq = v * (b*u + c*v): the v = 0 factor gives direction (1, 0)
    d1 = {Scalar(1), Scalar(0)};
    d2 = {-cc / b, Scalar(1)};
  } else {
    // fq = c * v^2: double root at direction (1, 0)
    tangential = true;
    d1 = d2 = {Scalar(1), Scalar(0)};
  }

  std::vector<Scalar> p1 = fib_detail::embed_plane_point(c, base);
  auto build = [&](const std::pair<Scalar, Scalar>& d) {
    std::vector<Scalar> p2 =
        fib_detail::embed_odd_direction(c, d.first, d.second);
    fib_detail::check_line_on_cubic(c.F, p1, p2, errc::LineNotOnCubic);
    return line_through(p1, p2);
  };
  InvariantLinePair out;
  out.l = build(d1);
  out.partner = build(d2);
  out.tower = t;
  out.tangential = tangential;
  return out;
}

// Everything the invariant-line projection extracts, in the coordinates of
// the deterministic change: the base point moved to [0,0,1], the line
// becoming V(x0, x1, z). The ternary forms below live in (x0, x1, z).
struct InvariantLineFibration {
  Line l;
  Line partner;                   // coplanar partner in the same fiber
  std::vector<Scalar> base_point; // plane coordinates of l's foot on C
  MultiPoly L1, L2;               // linear, no z
  Scalar A;                       // scalar of the A*z matrix entry
  MultiPoly Q1;                   // quadratic, even in z
  MultiPoly N;                    // linear, no z
  MultiPoly G;                    // cubic, even in z
  FormMat M_l;                    // [[L1, A*z, Q1], [A*z, L2, z*N], [Q1, z*N, G]]
  MultiPoly disc_l;               // det(M_l), quintic, even in z
  MultiPoly fixed_points_form;    // binary quintic cut by z = 0
};

struct GeneralityReport {
  bool disc_smooth = false;
  bool corank2_locus_empty = false;
  bool fixed_points_distinct = false;
  bool a_nonzero = false;
};

inline std::pair<InvariantLineFibration, GeneralityReport>
project_from_invariant_line(const CubicWithInvolution& c, const Line& l) {
  if (!c.ne)
    throw std::logic_error("invariant-line projection needs the two-minus-signs data");
  if (apply_involution_to_line(l, c.sig.signs) != l)
    fail(errc::LineNotInvariant, "line is not stable under the involution");

  // split the span into its even and odd eigenvectors
  const auto& od = c.odd_positions;
  const auto& ev = c.even_positions;
  ScalarMat odd_coords(2, 2, Scalar(0));
  for (int r = 0; r < 2; ++r)
    for (int j = 0; j < 2; ++j) odd_coords(r, j) = l.span(r, od[j]);
  auto even_combo = kernel_basis(transpose(odd_coords));
  // a stable line splits into eigenvectors: no even part means l is the
  // pointwise fixed line, a 2-dimensional even part means l sits in the plane
  if (even_combo.empty())
    fail(errc::LineIsPointwiseFixed, "line is the pointwise fixed line");
  if (even_combo.size() == 2)
    fail(errc::LineIsPointwiseFixed,
         "line lies in the fixed plane, hence is pointwise fixed");

  ScalarMat even_coords(3, 2, Scalar(0));
  for (int j = 0; j < 3; ++j)
    for (int r = 0; r < 2; ++r) even_coords(j, r) = l.span(r, ev[j]);
  auto odd_combo = kernel_basis(even_coords);
  if (odd_combo.size() != 1)
    throw std::logic_error("invariant line failed to split into eigenvectors");

  // base point on C (plane coordinates) and direction through L
  std::vector<Scalar> base(3, Scalar(0));
  for (int j = 0; j < 3; ++j)
    base[j] = even_combo[0][0] * l.span(0, ev[j]) +
              even_combo[0][1] * l.span(1, ev[j]);
  fib_detail::normalize_first_nonzero(base);
  std::vector<Scalar> dir(2, Scalar(0));
  for (int j = 0; j < 2; ++j)
    dir[j] = odd_combo[0][0] * l.span(0, od[j]) +
             odd_combo[0][1] * l.span(1, od[j]);
  fib_detail::normalize_first_nonzero(dir);

  std::vector<Scalar> p1 = fib_detail::embed_plane_point(c, base);
  std::vector<Scalar> p2 = fib_detail::embed_odd_direction(c, dir[0], dir[1]);
  fib_detail::check_line_on_cubic(c.F, p1, p2, errc::LineNotOnCubic);

  // coplanar partner: divide the fiber quadratic by the factor of l
  MultiPoly fq = fib_detail::fiber_quadratic(c, base);
  if (fq.is_zero())
    fail(errc::DegenerateFibration,
         "fiber quadratic vanishes identically; the cubic contains a plane");
  MultiPoly factor(2);
  factor.add_term({1, 0}, dir[1]);
  factor.add_term({0, 1}, -dir[0]);
  auto cofactor = exact_divide(fq, factor);
  if (!cofactor)
    throw std::logic_error("line direction does not divide the fiber quadratic");
  std::vector<Scalar> pdir = {cofactor->coeff({0, 1}),
                              -(cofactor->coeff({1, 0}))};
  fib_detail::normalize_first_nonzero(pdir);
  Line partner = line_through(
      p1, fib_detail::embed_odd_direction(c, pdir[0], pdir[1]));

  // deterministic change of coordinates: the pivot is the base coordinate of
  // largest height (ties to the lowest index); the two other coordinates are
  // sheared to vanish at the base point, the pivot is scaled to 1 there
  int pivot = 0;
  {
    Int best = -1;
    for (int i = 0; i < 3; ++i) {
      if (base[i].is_zero()) continue;
      Int h = base[i].height();
      if (best < 0 || h > best) {
        best = h;
        pivot = i;
      }
    }
  }
  ScalarMat t3(3, 3, Scalar(0));
  {
    int row = 0;
    for (int i = 0; i < 3; ++i) {
      if (i == pivot) continue;
      t3(row, i) = Scalar(1);
      t3(row, pivot) = -(base[i] / base[pivot]);
      ++row;
    }
    t3(2, pivot) = base[pivot].inverse();
  }
  // z = alpha*u + beta*v vanishing on the direction, first nonzero coeff 1
  std::vector<Scalar> zc = {dir[1], -dir[0]};
  fib_detail::normalize_first_nonzero(zc);
  ScalarMat t2(2, 2, Scalar(0));
  t2(0, 0) = zc[0];
  t2(0, 1) = zc[1];
  if (zc[0].is_zero()) {
    t2(1, 0) = Scalar(1);  // z = v, companion w = u
  } else {
    t2(1, 1) = Scalar(1);  // companion w = v
  }

  ScalarMat change(5, 5, Scalar(0));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) change(ev[i], ev[j]) = t3(i, j);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) change(od[i], od[j]) = t2(i, j);
  auto inv = inverse(change);
  if (!inv) throw std::logic_error("coordinate change collapsed");
  MultiPoly moved = poly_substitute(c.F, *inv);
  // relabel positions to (x0, x1, x2, z, w)
  std::vector<int> relabel(5, -1);
  for (int i = 0; i < 3; ++i) relabel[ev[i]] = i;
  for (int i = 0; i < 2; ++i) relabel[od[i]] = 3 + i;
  MultiPoly Fc = reindex(moved, 5, relabel);

  // read off the normal form from the (x2, w) bidegree of each term
  InvariantLineFibration fib;
  fib.l = l;
  fib.partner = partner;
  fib.base_point = base;
  MultiPoly l1(5), l2(5), cross(5), q1(5), nz(5), big_g(5);
  for (const auto& [e, coeff] : Fc.terms()) {
    unsigned dx2 = e[2], dw = e[4];
    Exp r = e;
    r[2] = 0;
    r[4] = 0;
    if (dx2 == 2 && dw == 0)
      l1.add_term(std::move(r), coeff);
    else if (dx2 == 0 && dw == 2)
      l2.add_term(std::move(r), coeff);
    else if (dx2 == 1 && dw == 1)
      cross.add_term(std::move(r), coeff);
    else if (dx2 == 1 && dw == 0)
      q1.add_term(std::move(r), coeff);
    else if (dx2 == 0 && dw == 1)
      nz.add_term(std::move(r), coeff);
    else if (dx2 == 0 && dw == 0)
      big_g.add_term(std::move(r), coeff);
    else
      throw std::logic_error("projection lost the expected bidegree pattern");
  }
  std::vector<int> to3 = {0, 1, -1, 2, -1};  // (x0, x1, z) survive
  MultiPoly z3 = MultiPoly::variable(3, 2);
  fib.L1 = reindex(l1, 3, to3);
  fib.L2 = reindex(l2, 3, to3);
  fib.Q1 = Scalar(make_rat(1, 2)) * reindex(q1, 3, to3);
  fib.G = reindex(big_g, 3, to3);
  MultiPoly cross3 = reindex(cross, 3, to3);
  MultiPoly nz3 = reindex(nz, 3, to3);
  // parity checks promised by the construction
  if (fib.L1.degree_in(2) > 0 || fib.L2.degree_in(2) > 0)
    throw std::logic_error("L1/L2 acquired a z term");
  auto even_in_z = [](const MultiPoly& p) {
    for (const auto& [e, coeff] : p.terms())
      if (e[2] % 2) return false;
    return true;
  };
  if (!even_in_z(fib.Q1) || !even_in_z(fib.G))
    throw std::logic_error("Q1/G are not even in z");
  // cross = 2*A*z and nz = 2*z*N
  auto az = exact_divide(cross3, z3);
  if (cross3.is_zero()) {
    fib.A = Scalar(0);
  } else {
    if (!az || (*az).total_degree() != 0)
      throw std::logic_error("x2*w coefficient is not a scalar multiple of z");
    fib.A = Scalar(make_rat(1, 2)) * az->coeff({0, 0, 0});
  }
  if (nz3.is_zero()) {
    fib.N = MultiPoly(3);
  } else {
    auto n = exact_divide(nz3, z3);
    if (!n || n->degree_in(2) > 0)
      throw std::logic_error("w coefficient is not z times an (x0,x1)-linear form");
    fib.N = Scalar(make_rat(1, 2)) * *n;
  }

  fib.M_l = FormMat(3, 3, MultiPoly::zero(3));
  fib.M_l(0, 0) = fib.L1;
  fib.M_l(0, 1) = MultiPoly::constant(3, fib.A) * z3;
  fib.M_l(1, 0) = fib.M_l(0, 1);
  fib.M_l(1, 1) = fib.L2;
  fib.M_l(0, 2) = fib.Q1;
  fib.M_l(2, 0) = fib.Q1;
  fib.M_l(1, 2) = z3 * fib.N;
  fib.M_l(2, 1) = fib.M_l(1, 2);
  fib.M_l(2, 2) = fib.G;
  fib.disc_l = det_bareiss(fib.M_l);
  if (!even_in_z(fib.disc_l))
    throw std::logic_error("discriminant is not even in z");
  // restriction to z = 0 must reproduce the block determinant
  MultiPoly z0 = fib.disc_l.coeff_of_power(2, 0);
  MultiPoly block = fib.L2 * (fib.L1 * fib.G - fib.Q1 * fib.Q1);
  if (z0 != block.coeff_of_power(2, 0))
    throw std::logic_error("z = 0 restriction lost the block identity");
  fib.fixed_points_form = reindex(z0, 2, {0, 1, -1});

  GeneralityReport rep;
  rep.a_nonzero = !fib.A.is_zero();
  if (!fib.disc_l.is_zero()) {
    IdealBasis dj;
    for (unsigned v = 0; v < 3; ++v)
      dj.generators.push_back(partial_derivative(fib.disc_l, v));
    rep.disc_smooth = is_projectively_empty(dj);
  }
  {
    IdealBasis minors;
    for (int i0 = 0; i0 < 3; ++i0)
      for (int j0 = 0; j0 < 3; ++j0) {
        // 2x2 minor complementary to row i0, col j0
        int r[2], s[2], ri = 0, si = 0;
        for (int k = 0; k < 3; ++k) {
          if (k != i0) r[ri++] = k;
          if (k != j0) s[si++] = k;
        }
        MultiPoly m = fib.M_l(r[0], s[0]) * fib.M_l(r[1], s[1]) -
                      fib.M_l(r[0], s[1]) * fib.M_l(r[1], s[0]);
        if (!m.is_zero()) minors.generators.push_back(m);
      }
    rep.corank2_locus_empty =
        !minors.generators.empty() && is_projectively_empty(minors);
  }
  if (!fib.fixed_points_form.is_zero() &&
      fib.fixed_points_form.total_degree() == 5)
    rep.fixed_points_distinct = is_squarefree_binary(fib.fixed_points_form);
  return {std::move(fib), rep};
}

// True when l and l2 bound the same fiber of the fixed-line projection:
// same foot on the plane cubic and the fiber quadratic divisible by both
// line directions (so the plane spanned with L meets X in L, l and l2).
inline bool coplanar_pair_check(const CubicWithInvolution& c, const Line& l,
                                const Line& l2) {
  if (!c.ne) throw std::logic_error("coplanarity needs the two-minus-signs data");
  auto foot = [&](const Line& ln)
      -> std::optional<std::pair<std::vector<Scalar>, std::vector<Scalar>>> {
    const auto& od = c.odd_positions;
    const auto& ev = c.even_positions;
    ScalarMat odd_coords(2, 2, Scalar(0));
    for (int r = 0; r < 2; ++r)
      for (int j = 0; j < 2; ++j) odd_coords(r, j) = ln.span(r, od[j]);
    auto even_combo = kernel_basis(transpose(odd_coords));
    if (even_combo.size() != 1) return std::nullopt;
    ScalarMat even_coords(3, 2, Scalar(0));
    for (int j = 0; j < 3; ++j)
      for (int r = 0; r < 2; ++r) even_coords(j, r) = ln.span(r, ev[j]);
    auto odd_combo = kernel_basis(even_coords);
    if (odd_combo.size() != 1) return std::nullopt;
    std::vector<Scalar> base(3, Scalar(0)), dir(2, Scalar(0));
    for (int j = 0; j < 3; ++j)
      base[j] = even_combo[0][0] * ln.span(0, ev[j]) +
                even_combo[0][1] * ln.span(1, ev[j]);
    for (int j = 0; j < 2; ++j)
      dir[j] = odd_combo[0][0] * ln.span(0, od[j]) +
               odd_combo[0][1] * ln.span(1, od[j]);
    fib_detail::normalize_first_nonzero(base);
    fib_detail::normalize_first_nonzero(dir);
    return std::make_pair(base, dir);
  };
  auto fa = foot(l);
  auto fb = foot(l2);
  if (!fa || !fb) return false;
  if (fa->first != fb->first) return false;
  if (!c.ne->g.evaluate(fa->first).is_zero()) return false;
  MultiPoly fq = fib_detail::fiber_quadratic(c, fa->first);
  if (fq.is_zero()) return false;
  auto divides = [&](const std::vector<Scalar>& dir) {
    MultiPoly factor(2);
    factor.add_term({1, 0}, dir[1]);
    factor.add_term({0, 1}, -dir[0]);
    return exact_divide(fq, factor).has_value();
  };
  return divides(fa->second) && divides(fb->second);
}

// Best-effort search for an invariant line passing every generality check:
// scans rational points of the plane cubic by ascending height, builds the
// two lines over each, and returns the first line whose report is all-true.
struct LineSearchResult {
  std::vector<Scalar> point;  // plane coordinates of the foot
  Line l;
  InvariantLineFibration fib;
  GeneralityReport report;
};

inline std::optional<LineSearchResult> search_general_invariant_line(
    const CubicWithInvolution& c, long max_height) {
  if (!c.ne) throw std::logic_error("search needs the two-minus-signs data");
  for (long h = 1; h <= max_height; ++h) {
    for (long a0 = -h; a0 <= h; ++a0)
      for (long a1 = -h; a1 <= h; ++a1)
        for (long a2 = -h; a2 <= h; ++a2) {
          long m = std::max({std::abs(a0), std::abs(a1), std::abs(a2)});
          if (m != h) continue;  // already seen at a smaller height
          // normalize: first nonzero positive, gcd 1
          long lead = a0 ? a0 : a1 ? a1 : a2;
          if (lead <= 0) continue;
          long g = std::gcd(std::gcd(std::abs(a0), std::abs(a1)),
                            std::abs(a2));
          if (g != 1) continue;
          std::vector<Scalar> pt = {Scalar(a0), Scalar(a1), Scalar(a2)};
          if (!c.ne->g.evaluate(pt).is_zero()) continue;
          InvariantLinePair pair;
          try {
            pair = invariant_lines_over(c, pt);
          } catch (const domain_error&) {
            continue;  // tower cap or degenerate fiber: skip this point
          }
          for (const Line* cand : {&pair.l, &pair.partner}) {
            try {
              auto [fib, rep] = project_from_invariant_line(c, *cand);
              if (rep.disc_smooth && rep.corank2_locus_empty &&
                  rep.fixed_points_distinct && rep.a_nonzero) {
                return LineSearchResult{pt, *cand, std::move(fib), rep};
              }
            } catch (const domain_error&) {
              continue;
            }
          }
        }
  }
  return std::nullopt;
}

}  // namespace cubinv
