#pragma once

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include "cubinv/error.hpp"
#include "cubinv/matrix.hpp"
#include "cubinv/poly.hpp"

namespace cubinv {

// The primary order is grevlex everywhere; grlex exists so order-independent
// facts (ideal membership, projective emptiness) can be double-checked under
// a genuinely different order.
enum class MonOrder { Grevlex, Grlex };

struct IdealBasis {
  std::vector<MultiPoly> generators;
  MonOrder order = MonOrder::Grevlex;
};

namespace gb_detail {

struct LessGrevlex {
  bool operator()(const Exp& a, const Exp& b) const { return grevlex_less(a, b); }
};
struct LessGrlex {
  bool operator()(const Exp& a, const Exp& b) const { return grlex_less(a, b); }
};

using Term = std::pair<Exp, Scalar>;

inline bool exp_divides(const Exp& a, const Exp& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline Exp exp_lcm(const Exp& a, const Exp& b) {
  Exp out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
  return out;
}

inline Exp exp_sub(const Exp& a, const Exp& b) {
  Exp out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

inline Exp exp_add(const Exp& a, const Exp& b) {
  Exp out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

// Term list sorted descending under Less; front() is the leading term.
template <class Less>
struct OPoly {
  std::vector<Term> t;
  bool empty() const { return t.empty(); }
  const Term& lead() const { return t.front(); }
};

template <class Less>
OPoly<Less> to_ordered(const MultiPoly& p) {
  OPoly<Less> o;
  o.t.assign(p.terms().begin(), p.terms().end());
  std::sort(o.t.begin(), o.t.end(),
            [](const Term& x, const Term& y) { return Less()(y.first, x.first); });
  return o;
}

template <class Less>
MultiPoly to_poly(unsigned arity, const OPoly<Less>& o) {
  MultiPoly p(arity);
  for (const auto& [e, c] : o.t) p.add_term(e, c);
  return p;
}

// out = p - c * x^shift * g, both inputs sorted, result sorted.
template <class Less>
OPoly<Less> subtract_multiple(const OPoly<Less>& p, const Scalar& c,
                              const Exp& shift, const OPoly<Less>& g) {
  OPoly<Less> out;
  out.t.reserve(p.t.size() + g.t.size());
  std::size_t i = 0, j = 0;
  while (i < p.t.size() || j < g.t.size()) {
    if (j == g.t.size()) {
      out.t.push_back(p.t[i++]);
      continue;
    }
    Exp ge = exp_add(g.t[j].first, shift);
    if (i == p.t.size()) {
      Scalar v = -(c * g.t[j].second);
      if (!v.is_zero()) out.t.emplace_back(std::move(ge), std::move(v));
      ++j;
      continue;
    }
    if (p.t[i].first == ge) {
      Scalar v = p.t[i].second - c * g.t[j].second;
      if (!v.is_zero()) out.t.emplace_back(std::move(ge), std::move(v));
      ++i;
      ++j;
    } else if (Less()(ge, p.t[i].first)) {
      out.t.push_back(p.t[i++]);
    } else {
      Scalar v = -(c * g.t[j].second);
      if (!v.is_zero()) out.t.emplace_back(std::move(ge), std::move(v));
      ++j;
    }
  }
  return out;
}

// Full normal form: every term of the result is irreducible modulo the
// leading terms of the basis. The reducer is the first basis element whose
// leading term divides, which keeps reduction deterministic.
template <class Less>
OPoly<Less> nf_impl(OPoly<Less> p, const std::vector<OPoly<Less>>& basis) {
  OPoly<Less> rem;
  std::size_t start = 0;
  while (start < p.t.size()) {
    bool reduced = false;
    for (const auto& g : basis) {
      if (g.empty()) continue;
      if (exp_divides(g.lead().first, p.t[start].first)) {
        Exp shift = exp_sub(p.t[start].first, g.lead().first);
        Scalar c = p.t[start].second / g.lead().second;
        OPoly<Less> tail;
        tail.t.assign(p.t.begin() + start, p.t.end());
        p = subtract_multiple(tail, c, shift, g);
        start = 0;
        reduced = true;
        break;
      }
    }
    if (!reduced) {
      rem.t.push_back(p.t[start]);
      ++start;
    }
  }
  return rem;
}

// Rescales to integral content-free coordinates (sign fixed by the leading
// coefficient); cheap guard against coefficient blowup mid-run.
inline void make_primitive(std::vector<Term>& t) {
  if (t.empty()) return;
  Int den_lcm = 1;
  for (const auto& [e, c] : t)
    for (const Rat& x : c.coords())
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.get_den().get_mpz_t());
  Int num_gcd = 0;
  for (const auto& [e, c] : t)
    for (const Rat& x : c.coords()) {
      Int scaled = x.get_num() * (den_lcm / x.get_den());
      mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
    }
  Rat factor = make_rat(den_lcm, num_gcd);
  for (const Rat& x : t.front().second.coords()) {
    int s = sgn(x);
    if (s == 0) continue;
    if (s * sgn(factor) < 0) factor = -factor;
    break;
  }
  Scalar f(factor);
  for (auto& [e, c] : t) c *= f;
}

template <class Less>
std::vector<OPoly<Less>> buchberger_impl(std::vector<OPoly<Less>> g) {
  struct Pair {
    Exp lcm;
    std::size_t i, j;
  };
  auto pair_less = [](const Pair& a, const Pair& b) {
    if (a.lcm != b.lcm) return Less()(a.lcm, b.lcm);
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  };
  std::set<Pair, decltype(pair_less)> pending(pair_less);
  std::set<std::pair<std::size_t, std::size_t>> pending_idx;

  auto push_pairs = [&](std::size_t k) {
    for (std::size_t i = 0; i < k; ++i) {
      pending.insert({exp_lcm(g[i].lead().first, g[k].lead().first), i, k});
      pending_idx.insert({i, k});
    }
  };
  for (std::size_t k = 1; k < g.size(); ++k) push_pairs(k);

  while (!pending.empty()) {
    Pair p = *pending.begin();
    pending.erase(pending.begin());
    pending_idx.erase({p.i, p.j});
    const Exp& li = g[p.i].lead().first;
    const Exp& lj = g[p.j].lead().first;
    // coprime leading monomials: S-polynomial reduces to zero
    if (exp_add(li, lj) == p.lcm) continue;
    // chain criterion: a third element divides the lcm and both side pairs
    // are already settled
    bool skip = false;
    for (std::size_t k = 0; k < g.size() && !skip; ++k) {
      if (k == p.i || k == p.j) continue;
      if (!exp_divides(g[k].lead().first, p.lcm)) continue;
      auto a = std::minmax(p.i, k);
      auto b = std::minmax(p.j, k);
      if (!pending_idx.count({a.first, a.second}) &&
          !pending_idx.count({b.first, b.second}))
        skip = true;
    }
    if (skip) continue;

    // S-polynomial via two cancel-the-lead subtractions from zero
    OPoly<Less> s = subtract_multiple(OPoly<Less>{}, -(g[p.i].lead().second.inverse()),
                                      exp_sub(p.lcm, li), g[p.i]);
    s = subtract_multiple(s, g[p.j].lead().second.inverse(),
                          exp_sub(p.lcm, lj), g[p.j]);
    OPoly<Less> r = nf_impl(std::move(s), g);
    if (r.empty()) continue;
    make_primitive(r.t);
    g.push_back(std::move(r));
    push_pairs(g.size() - 1);
  }

  // minimalize: drop elements whose lead is divisible by another lead
  std::vector<bool> keep(g.size(), true);
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = 0; j < g.size() && keep[i]; ++j) {
      if (i == j || !keep[j]) continue;
      const Exp& li = g[i].lead().first;
      const Exp& lj = g[j].lead().first;
      if (exp_divides(lj, li) && (lj != li || j < i)) keep[i] = false;
    }
  }
  std::vector<OPoly<Less>> minimal;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (keep[i]) minimal.push_back(std::move(g[i]));

  // tail-reduce each element against the others, then normalize monic
  std::vector<OPoly<Less>> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<OPoly<Less>> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    OPoly<Less> r = nf_impl(minimal[i], others);
    if (r.empty()) continue;
    Scalar inv = r.lead().second.inverse();
    for (auto& [e, c] : r.t) c *= inv;
    reduced.push_back(std::move(r));
  }
  std::sort(reduced.begin(), reduced.end(),
            [](const OPoly<Less>& a, const OPoly<Less>& b) {
              return Less()(b.lead().first, a.lead().first);
            });
  return reduced;
}

template <class Less>
IdealBasis run_buchberger(const IdealBasis& b, MonOrder order) {
  unsigned arity = 0;
  std::vector<OPoly<Less>> gens;
  for (const MultiPoly& p : b.generators) {
    if (p.is_zero()) continue;
    if (arity == 0) arity = p.arity();
    if (p.arity() != arity)
      throw std::logic_error("ideal generators disagree on arity");
    OPoly<Less> o = to_ordered<Less>(primitive_part(p));
    gens.push_back(std::move(o));
  }
  IdealBasis out;
  out.order = order;
  if (gens.empty()) return out;
  auto gb = buchberger_impl(std::move(gens));
  for (const auto& o : gb) out.generators.push_back(to_poly<Less>(arity, o));
  return out;
}

template <class Less>
MultiPoly run_nf(const MultiPoly& p, const IdealBasis& gb) {
  std::vector<OPoly<Less>> basis;
  for (const MultiPoly& q : gb.generators)
    if (!q.is_zero()) basis.push_back(to_ordered<Less>(q));
  return to_poly<Less>(p.arity(), nf_impl(to_ordered<Less>(p), basis));
}

}  // namespace gb_detail

// Reduced Groebner basis of the ideal, deterministic for a fixed input:
// normal selection strategy on S-pairs, first-divisor reducers, monic output
// sorted by descending leading term.
inline IdealBasis groebner_basis(const IdealBasis& b) {
  if (b.order == MonOrder::Grevlex)
    return gb_detail::run_buchberger<gb_detail::LessGrevlex>(b, b.order);
  return gb_detail::run_buchberger<gb_detail::LessGrlex>(b, b.order);
}

// Normal form of p modulo a basis that is already Groebner under its order.
inline MultiPoly normal_form(const MultiPoly& p, const IdealBasis& gb) {
  if (gb.order == MonOrder::Grevlex)
    return gb_detail::run_nf<gb_detail::LessGrevlex>(p, gb);
  return gb_detail::run_nf<gb_detail::LessGrlex>(p, gb);
}

inline MultiPoly spolynomial(const MultiPoly& f, const MultiPoly& g,
                             MonOrder order) {
  using namespace gb_detail;
  auto run = [&](auto less_tag) {
    using Less = decltype(less_tag);
    OPoly<Less> of = to_ordered<Less>(f);
    OPoly<Less> og = to_ordered<Less>(g);
    Exp l = exp_lcm(of.lead().first, og.lead().first);
    OPoly<Less> s =
        subtract_multiple(OPoly<Less>{}, -(of.lead().second.inverse()),
                          exp_sub(l, of.lead().first), of);
    s = subtract_multiple(s, og.lead().second.inverse(),
                          exp_sub(l, og.lead().first), og);
    return to_poly<Less>(f.arity(), s);
  };
  if (order == MonOrder::Grevlex) return run(LessGrevlex{});
  return run(LessGrlex{});
}

inline Exp leading_exp(const MultiPoly& p, MonOrder order) {
  using namespace gb_detail;
  if (order == MonOrder::Grevlex) return p.leading_term().first;
  return to_ordered<LessGrlex>(p).lead().first;
}

// Decides whether homogeneous generators cut out the empty set in projective
// space, by the pure-power criterion: the ideal contains a power of every
// variable iff the leading terms of a Groebner basis include a pure power of
// each variable (or a constant, meaning the whole ring).
inline bool is_projectively_empty(const IdealBasis& b) {
  unsigned arity = 0;
  for (const MultiPoly& p : b.generators) {
    if (p.is_zero()) continue;
    if (!p.is_homogeneous())
      fail(errc::NonHomogeneousInput,
           "projective emptiness needs homogeneous generators");
    arity = p.arity();
  }
  if (arity == 0) return false;  // zero ideal
  IdealBasis gb = groebner_basis(b);
  if (gb.generators.empty()) return false;
  std::vector<bool> covered(arity, false);
  for (const MultiPoly& g : gb.generators) {
    Exp lt = leading_exp(g, gb.order);
    unsigned nonzero = 0, var = 0;
    for (unsigned v = 0; v < arity; ++v) {
      if (lt[v]) {
        ++nonzero;
        var = v;
      }
    }
    if (nonzero == 0) return true;  // constant in the ideal
    if (nonzero == 1) covered[var] = true;
  }
  for (bool c : covered)
    if (!c) return false;
  return true;
}

}  // namespace cubinv
