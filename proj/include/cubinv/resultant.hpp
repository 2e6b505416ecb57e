#pragma once

#include <vector>

#include "cubinv/error.hpp"
#include "cubinv/matrix.hpp"
#include "cubinv/poly.hpp"

namespace cubinv {

// Sylvester matrix of p and q with respect to one variable; entries are
// polynomials in the remaining variables. Rows of p-coefficients come first,
// which pins the sign convention of the resultant below.
inline FormMat sylvester_matrix(const MultiPoly& p, const MultiPoly& q,
                                unsigned var) {
  int dp = p.degree_in(var), dq = q.degree_in(var);
  if (dp < 1 || dq < 1)
    throw std::logic_error("sylvester matrix needs positive degrees");
  unsigned n = unsigned(dp + dq);
  FormMat m(n, n, MultiPoly::zero(p.arity()));
  for (int r = 0; r < dq; ++r)
    for (int k = 0; k <= dp; ++k)
      m(r, r + k) = p.coeff_of_power(var, unsigned(dp - k));
  for (int r = 0; r < dp; ++r)
    for (int k = 0; k <= dq; ++k)
      m(dq + r, r + k) = q.coeff_of_power(var, unsigned(dq - k));
  return m;
}

// Resultant of p and q with respect to var, eliminating it. When var appears
// in only one input the classical convention applies (the other input raised
// to the relevant degree); it must appear in at least one.
inline MultiPoly resultant_wrt(const MultiPoly& p, const MultiPoly& q,
                               unsigned var) {
  if (var >= p.arity() || p.arity() != q.arity())
    throw std::logic_error("resultant variable out of range");
  if (p.is_zero() || q.is_zero()) {
    if (p.degree_in(var) < 1 && q.degree_in(var) < 1)
      fail(errc::VarAbsent, "variable appears in neither input");
    return MultiPoly::zero(p.arity());
  }
  int dp = p.degree_in(var), dq = q.degree_in(var);
  if (dp < 1 && dq < 1)
    fail(errc::VarAbsent, "variable appears in neither input");
  if (dq < 1) return q.pow(unsigned(dp));
  if (dp < 1) return p.pow(unsigned(dq));
  MultiPoly res = det_bareiss(sylvester_matrix(p, q, var));
  if (res.degree_in(var) > 0)
    throw std::logic_error("resultant failed to eliminate the variable");
  return res;
}

// Dense univariate coefficient vector of a binary form: entry k is the
// coefficient of x0^(d-k) * x1^k, i.e. the dehomogenization at x0 = 1.
inline std::vector<Scalar> binary_coeffs(const MultiPoly& f, unsigned d) {
  if (f.arity() != 2) throw std::logic_error("binary form expected");
  std::vector<Scalar> c(d + 1, Scalar(0));
  for (const auto& [e, coeff] : f.terms()) {
    if (e[0] + e[1] != d) throw std::logic_error("degree mismatch in binary form");
    c[e[1]] = coeff;
  }
  return c;
}

namespace univ_detail {

inline void strip(std::vector<Scalar>& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

inline std::vector<Scalar> rem(std::vector<Scalar> a,
                               const std::vector<Scalar>& b) {
  // remainder of a by b (b nonzero, stripped)
  Scalar lead_inv = b.back().inverse();
  while (a.size() >= b.size()) {
    Scalar f = a.back() * lead_inv;
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    a.pop_back();
    strip(a);
    if (a.empty()) break;
  }
  return a;
}

}  // namespace univ_detail

// Monic gcd of two univariate polynomials over the scalar field (Euclid).
inline std::vector<Scalar> poly_gcd_univ(std::vector<Scalar> a,
                                         std::vector<Scalar> b) {
  univ_detail::strip(a);
  univ_detail::strip(b);
  while (!b.empty()) {
    std::vector<Scalar> r = univ_detail::rem(std::move(a), b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Scalar inv = a.back().inverse();
    for (Scalar& c : a) c *= inv;
  }
  return a;
}

// A binary form is squarefree iff it has no repeated projective root: no
// repeated factor of x0 (root at [0:1] of the dehomogenization's missing
// degree), and the dehomogenized polynomial is coprime to its derivative.
inline bool is_squarefree_binary(const MultiPoly& f) {
  if (f.arity() != 2) throw std::logic_error("binary form expected");
  if (f.is_zero()) fail(errc::ZeroForm, "zero form has no root structure");
  if (!f.is_homogeneous())
    fail(errc::NonHomogeneousInput, "squarefree test expects a binary form");
  unsigned d = unsigned(f.total_degree());
  if (d == 0) return true;
  // multiplicity of x0 as a factor is d - deg_{x1}(f)
  if (int(d) - f.degree_in(1) >= 2) return false;
  std::vector<Scalar> a = binary_coeffs(f, d);
  std::vector<Scalar> da(a.size() - 1, Scalar(0));
  for (std::size_t k = 1; k < a.size(); ++k)
    da[k - 1] = Scalar(long(k)) * a[k];
  std::vector<Scalar> g = poly_gcd_univ(std::move(a), std::move(da));
  return g.size() <= 1;
}

}  // namespace cubinv
