#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubinv/error.hpp"
#include "cubinv/tower.hpp"

namespace cubinv {

// Exponent vector of a monomial; index = variable. All exponent vectors in
// one polynomial share the arity.
using Exp = std::vector<unsigned>;

inline unsigned exp_deg(const Exp& e) {
  unsigned d = 0;
  for (unsigned k : e) d += k;
  return d;
}

// Graded reverse lexicographic order with x0 > x1 > ... : higher total degree
// wins; on equal degree the exponents are compared from the last variable
// backwards and the *smaller* trailing exponent wins.
inline bool grevlex_less(const Exp& a, const Exp& b) {
  unsigned da = exp_deg(a), db = exp_deg(b);
  if (da != db) return da < db;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return false;
}

// Graded lexicographic order, used as the independent second order when
// checking order-invariance of ideal membership.
inline bool grlex_less(const Exp& a, const Exp& b) {
  unsigned da = exp_deg(a), db = exp_deg(b);
  if (da != db) return da < db;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

struct GrevlexGreater {
  bool operator()(const Exp& a, const Exp& b) const {
    return grevlex_less(b, a);
  }
};

// Sparse multivariate polynomial with Scalar coefficients. Terms are kept in
// descending grevlex order, so begin() is the leading term.
class MultiPoly {
 public:
  using TermMap = std::map<Exp, Scalar, GrevlexGreater>;

  explicit MultiPoly(unsigned arity = 0) : arity_(arity) {}

  static MultiPoly zero(unsigned arity) { return MultiPoly(arity); }

  static MultiPoly constant(unsigned arity, const Scalar& c) {
    MultiPoly p(arity);
    p.add_term(Exp(arity, 0), c);
    return p;
  }

  static MultiPoly monomial(unsigned arity, Exp e, const Scalar& c) {
    if (e.size() != arity)
      throw std::logic_error("monomial exponent arity mismatch");
    MultiPoly p(arity);
    p.add_term(std::move(e), c);
    return p;
  }

  static MultiPoly variable(unsigned arity, unsigned v) {
    if (v >= arity) throw std::logic_error("variable index out of range");
    Exp e(arity, 0);
    e[v] = 1;
    return monomial(arity, std::move(e), Scalar(1));
  }

  unsigned arity() const { return arity_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  void add_term(Exp e, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(std::move(e), c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  // Total degree; -1 for the zero polynomial.
  int total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, int(exp_deg(e)));
    return d;
  }

  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    unsigned d = exp_deg(terms_.begin()->first);
    for (const auto& [e, c] : terms_)
      if (exp_deg(e) != d) return false;
    return true;
  }

  int degree_in(unsigned var) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, int(e[var]));
    return d;
  }

  const std::pair<const Exp, Scalar>& leading_term() const {
    if (terms_.empty()) throw std::logic_error("zero polynomial has no leading term");
    return *terms_.begin();
  }

  Scalar coeff(const Exp& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  // Coefficient of var^k, as a polynomial in the remaining variables (the
  // var slot of every exponent is zeroed, arity unchanged).
  MultiPoly coeff_of_power(unsigned var, unsigned k) const {
    MultiPoly out(arity_);
    for (const auto& [e, c] : terms_) {
      if (e[var] != k) continue;
      Exp r = e;
      r[var] = 0;
      out.add_term(std::move(r), c);
    }
    return out;
  }

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
    check_arity(a, b);
    MultiPoly out = a;
    for (const auto& [e, c] : b.terms_) out.add_term(e, c);
    return out;
  }

  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
    check_arity(a, b);
    MultiPoly out = a;
    for (const auto& [e, c] : b.terms_) out.add_term(e, -c);
    return out;
  }

  MultiPoly operator-() const {
    MultiPoly out(arity_);
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
  }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    check_arity(a, b);
    MultiPoly out(a.arity_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        Exp e = ea;
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
        out.add_term(std::move(e), ca * cb);
      }
    }
    return out;
  }

  friend MultiPoly operator*(const Scalar& s, const MultiPoly& p) {
    MultiPoly out(p.arity_);
    if (s.is_zero()) return out;
    for (const auto& [e, c] : p.terms_) out.add_term(e, s * c);
    return out;
  }

  MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
  MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    if (a.arity_ != b.arity_) return false;
    if (a.terms_.size() != b.terms_.size()) return false;
    auto ia = a.terms_.begin();
    auto ib = b.terms_.begin();
    for (; ia != a.terms_.end(); ++ia, ++ib) {
      if (ia->first != ib->first || !(ia->second == ib->second)) return false;
    }
    return true;
  }
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) {
    return !(a == b);
  }

  MultiPoly pow(unsigned k) const {
    MultiPoly out = constant(arity_, Scalar(1));
    for (unsigned i = 0; i < k; ++i) out *= *this;
    return out;
  }

  Scalar evaluate(const std::vector<Scalar>& pt) const {
    if (pt.size() != arity_) throw std::logic_error("evaluation point arity mismatch");
    Scalar acc(0);
    for (const auto& [e, c] : terms_) {
      Scalar t = c;
      for (unsigned i = 0; i < arity_; ++i)
        if (e[i]) t *= pt[i].pow(e[i]);
      acc += t;
    }
    return acc;
  }

  Int height() const {
    Int h = 0;
    for (const auto& [e, c] : terms_) {
      Int hc = c.height();
      if (hc > h) h = hc;
    }
    return h;
  }

  // Canonical text form: terms in descending grevlex order, "x0^2*x1" style
  // monomials, rational coefficients split on sign, tower coefficients in
  // parentheses. parse_poly accepts exactly this shape for rational input.
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      std::string mono = monomial_str(e);
      bool neg = false;
      std::string coeff;
      if (c.is_rational()) {
        Rat r = c.rat_value();
        neg = sgn(r) < 0;
        Rat a = abs(r);
        if (a == 1 && !mono.empty())
          coeff = "";
        else
          coeff = rat_str(a);
      } else {
        coeff = c.str();
      }
      if (first) {
        if (neg) out += "-";
        first = false;
      } else {
        out += neg ? " - " : " + ";
      }
      if (!coeff.empty()) {
        out += coeff;
        if (!mono.empty()) out += "*";
      }
      if (!mono.empty()) out += mono;
      if (coeff.empty() && mono.empty()) out += "1";
    }
    return out;
  }

 private:
  static std::string monomial_str(const Exp& e) {
    std::string out;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      if (!out.empty()) out += "*";
      out += "x" + std::to_string(i);
      if (e[i] > 1) out += "^" + std::to_string(e[i]);
    }
    return out;
  }

  static void check_arity(const MultiPoly& a, const MultiPoly& b) {
    if (a.arity_ != b.arity_)
      throw std::logic_error("polynomial arity mismatch");
  }

  unsigned arity_;
  TermMap terms_;
};

inline MultiPoly partial_derivative(const MultiPoly& p, unsigned var) {
  if (var >= p.arity()) throw std::logic_error("derivative variable out of range");
  MultiPoly out(p.arity());
  for (const auto& [e, c] : p.terms()) {
    if (!e[var]) continue;
    Exp r = e;
    r[var] -= 1;
    out.add_term(std::move(r), Scalar(long(e[var])) * c);
  }
  return out;
}

// Substitutes x_i := images[i]; all images share one arity, which becomes the
// arity of the result. Images need not be linear.
inline MultiPoly compose(const MultiPoly& p,
                         const std::vector<MultiPoly>& images) {
  if (images.size() != p.arity())
    throw std::logic_error("compose needs one image per variable");
  unsigned m = images.empty() ? 0 : images[0].arity();
  for (const auto& im : images)
    if (im.arity() != m) throw std::logic_error("compose images disagree on arity");
  // cache powers of each image as needed
  std::vector<std::vector<MultiPoly>> pows(p.arity());
  auto power = [&](unsigned i, unsigned k) -> const MultiPoly& {
    auto& cache = pows[i];
    if (cache.empty()) cache.push_back(MultiPoly::constant(m, Scalar(1)));
    while (cache.size() <= k) cache.push_back(cache.back() * images[i]);
    return cache[k];
  };
  MultiPoly out(m);
  for (const auto& [e, c] : p.terms()) {
    MultiPoly term = MultiPoly::constant(m, c);
    for (unsigned i = 0; i < p.arity(); ++i)
      if (e[i]) term *= power(i, e[i]);
    out += term;
  }
  return out;
}

// Substitutes x_i := sum_j rows[i][j] * y_j; rectangular maps are allowed
// (restriction to a subspace, embedding into more variables). The
// square/invertible wrapper lives with the matrix code.
inline MultiPoly substitute_linear(const MultiPoly& p,
                                   const std::vector<std::vector<Scalar>>& rows) {
  if (rows.size() != p.arity())
    throw std::logic_error("substitution needs one row per variable");
  unsigned m = rows.empty() ? 0 : unsigned(rows[0].size());
  std::vector<MultiPoly> images;
  images.reserve(rows.size());
  for (const auto& row : rows) {
    if (row.size() != m) throw std::logic_error("substitution rows disagree on length");
    MultiPoly im(m);
    for (unsigned j = 0; j < m; ++j) {
      if (row[j].is_zero()) continue;
      Exp e(m, 0);
      e[j] = 1;
      im.add_term(std::move(e), row[j]);
    }
    images.push_back(std::move(im));
  }
  return compose(p, images);
}

// Renames variables: var_map[i] is the new index of old variable i, or -1
// when the variable is required to be absent from p.
inline MultiPoly reindex(const MultiPoly& p, unsigned new_arity,
                         const std::vector<int>& var_map) {
  if (var_map.size() != p.arity())
    throw std::logic_error("reindex map arity mismatch");
  MultiPoly out(new_arity);
  for (const auto& [e, c] : p.terms()) {
    Exp r(new_arity, 0);
    for (unsigned i = 0; i < p.arity(); ++i) {
      if (!e[i]) continue;
      if (var_map[i] < 0 || unsigned(var_map[i]) >= new_arity)
        throw std::logic_error("reindex hit a forbidden variable");
      r[var_map[i]] += e[i];
    }
    out.add_term(std::move(r), c);
  }
  return out;
}

// Exact division: returns p/d when d divides p, nullopt otherwise.
inline std::optional<MultiPoly> exact_divide(const MultiPoly& p,
                                             const MultiPoly& d) {
  if (d.is_zero()) throw std::logic_error("division by the zero polynomial");
  MultiPoly q(p.arity());
  MultiPoly r = p;
  const auto& [de, dc] = d.leading_term();
  while (!r.is_zero()) {
    const auto& [re, rc] = r.leading_term();
    Exp qe(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) {
      if (re[i] < de[i]) return std::nullopt;
      qe[i] = re[i] - de[i];
    }
    Scalar qc = rc / dc;
    MultiPoly t = MultiPoly::monomial(p.arity(), std::move(qe), qc);
    q += t;
    r -= t * d;
  }
  return q;
}

// Scales a polynomial with rational coordinates to an integral, content-free
// representative whose leading coefficient has positive first coordinate.
// Keeps Groebner intermediates from growing fractions.
inline MultiPoly primitive_part(const MultiPoly& p) {
  if (p.is_zero()) return p;
  Int den_lcm = 1;
  for (const auto& [e, c] : p.terms())
    for (const Rat& x : c.coords())
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(),
              x.get_den().get_mpz_t());
  Int num_gcd = 0;
  for (const auto& [e, c] : p.terms())
    for (const Rat& x : c.coords()) {
      Int scaled = x.get_num() * (den_lcm / x.get_den());
      mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
    }
  Rat factor = make_rat(den_lcm, num_gcd);
  // fix the sign via the leading coefficient's first nonzero coordinate
  const Scalar& lc = p.leading_term().second;
  for (const Rat& x : lc.coords()) {
    int s = sgn(x);
    if (s == 0) continue;
    if (s * sgn(factor) < 0) factor = -factor;
    break;
  }
  return Scalar(factor) * p;
}

inline MultiPoly monic(const MultiPoly& p) {
  if (p.is_zero()) return p;
  return p.leading_term().second.inverse() * p;
}

// Euler's identity holds for homogeneous p: sum x_i d p/d x_i = deg * p.
// Cheap full-consistency check used by tests and a few internal asserts.
inline MultiPoly euler_combination(const MultiPoly& p) {
  MultiPoly acc(p.arity());
  for (unsigned i = 0; i < p.arity(); ++i)
    acc += MultiPoly::variable(p.arity(), i) * partial_derivative(p, i);
  return acc;
}

}  // namespace cubinv
