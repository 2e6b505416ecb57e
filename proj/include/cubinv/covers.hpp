#pragma once
// Double-cover genus arithmetic and the abelian-variety bookkeeping built on
// it: Riemann-Hurwitz, the Klein four-group tower of quotients of the
// discriminant double cover, Prym dimensions with their polarization types,
// and the two decomposition reports that tie the cover arithmetic back to
// the fibration data.
//
// Everything here is small exact integer arithmetic. The module never
// constructs an abelian variety; dimension and type vectors are recomputed
// from genus counts, while isogeny kernel orders are recorded constants and
// the reports label them as such.

#include <optional>
#include <string>
#include <vector>

#include "cubinv/error.hpp"
#include "cubinv/fibration.hpp"

namespace cubinv {

// A double cover of a smooth curve, described by the base genus and the
// number of branch points (always even for a double cover).
struct DoubleCoverSpec {
  int base_genus = 0;
  int branch_count = 0;
  bool etale = true;  // branch_count == 0
};

inline DoubleCoverSpec double_cover(int base_genus, int branch_count) {
  if (base_genus < 0)
    fail(errc::NegativeGenus, "base curve has negative genus");
  if (branch_count < 0)
    fail(errc::InconsistentRamification, "branch count cannot be negative");
  if (branch_count % 2)
    fail(errc::OddBranchCount,
         "a double cover branches over an even number of points");
  return {base_genus, branch_count, branch_count == 0};
}

// Genus of the total space: 2g~ - 2 = 2(2g - 2) + b.
inline int rh_genus(const DoubleCoverSpec& spec) {
  double_cover(spec.base_genus, spec.branch_count);  // revalidate
  int doubled = 2 * (2 * spec.base_genus - 2) + spec.branch_count;
  int g = doubled / 2 + 1;
  if (g < 0)
    fail(errc::NegativeGenus,
         "cover genus would be negative; no connected such cover exists");
  return g;
}

// Dual of a polarization type (d1,...,dg): (dg/dg, dg/d_{g-1}, ..., dg/d1).
inline std::vector<int> dual_type(const std::vector<int>& type) {
  if (type.empty()) return {};
  int top = type.back();
  std::vector<int> out;
  out.reserve(type.size());
  for (auto it = type.rbegin(); it != type.rend(); ++it) {
    if (*it <= 0 || top % *it)
      throw std::logic_error("polarization type is not a divisibility chain");
    out.push_back(top / *it);
  }
  return out;
}

// Dimension and polarization type of the Prym variety of a double cover.
struct PrymReport {
  int cover_genus = 0;
  int prym_dim = 0;
  std::vector<int> polarization;
  std::vector<int> dual_polarization;
};

inline PrymReport prym_report(const DoubleCoverSpec& spec) {
  PrymReport rep;
  rep.cover_genus = rh_genus(spec);
  rep.prym_dim = rep.cover_genus - spec.base_genus;
  int g = spec.base_genus;
  if (spec.branch_count == 0) {
    // etale: the principal polarization restricts to twice a principal one
    rep.polarization.assign(g - 1, 2);
  } else if (g == 0) {
    // rational base: the Prym is the whole Jacobian of the cover, and the
    // decomposition it enters doubles the principal polarization on it
    rep.polarization.assign(spec.branch_count / 2 - 1, 2);
  } else {
    // induced type for a cover with 2r branch points: r-1 ones, then g twos
    int r = spec.branch_count / 2;
    rep.polarization.assign(r - 1, 1);
    rep.polarization.insert(rep.polarization.end(), g, 2);
  }
  rep.dual_polarization = dual_type(rep.polarization);
  return rep;
}

// Fixed-point counts for the Klein four-group acting on the double cover
// of the discriminant quintic: iota is the sheet swap, tau the involution
// induced from the ambient one, tau.iota their composite. The a_* count
// fixed points on the top curve; the b_* count branch points of the three
// middle quotients over the common bottom curve.
struct TowerRamification {
  int a_tau = 4;
  int a_tau_iota = 8;
  int a_iota = 0;
  int b_tau = 4;
  int b_tau_iota = 2;
  int b_iota = 6;
};

// Genera of the five curves in the quotient tower.
struct KleinTower {
  int top = 0;            // the double cover itself
  int quot_tau = 0;       // top / tau
  int quot_tau_iota = 0;  // top / tau.iota
  int quot_iota = 0;      // top / iota, the discriminant curve
  int bottom = 0;         // top / (whole group)
  TowerRamification ram;
};

// Checks the genus arithmetic of an assembled tower on each of the six
// double-cover edges.
inline void validate_tower(const KleinTower& t) {
  auto edge = [](int g_up, int g_down, int branch, const char* what) {
    if (g_up < 0 || g_down < 0)
      fail(errc::NegativeGenus, "tower contains a negative genus");
    if (branch < 0 || branch % 2)
      fail(errc::InconsistentRamification,
           std::string("branch count on the ") + what +
               " edge must be an even nonnegative integer");
    if (2 * g_up - 2 != 2 * (2 * g_down - 2) + branch)
      fail(errc::InconsistentRamification,
           std::string("genus arithmetic fails on the ") + what + " edge");
  };
  edge(t.top, t.quot_tau, t.ram.a_tau, "tau");
  edge(t.top, t.quot_tau_iota, t.ram.a_tau_iota, "tau.iota");
  edge(t.top, t.quot_iota, t.ram.a_iota, "iota");
  edge(t.quot_tau, t.bottom, t.ram.b_tau, "tau quotient");
  edge(t.quot_tau_iota, t.bottom, t.ram.b_tau_iota, "tau.iota quotient");
  edge(t.quot_iota, t.bottom, t.ram.b_iota, "iota quotient");
}

// Solves the tower downward from the top genus: each quotient genus comes
// from 2g_top - 2 = 2(2g - 2) + a, the bottom from the analogous relation
// on each middle edge; the three middle routes must land on the same
// bottom genus.
inline KleinTower klein_tower(int top_genus,
                              const TowerRamification& ram = {}) {
  if (top_genus < 0) fail(errc::NegativeGenus, "top curve has negative genus");
  auto down = [](int g_up, int branch, const char* what) {
    if (branch < 0 || branch % 2)
      fail(errc::InconsistentRamification,
           std::string("branch count on the ") + what +
               " edge must be an even nonnegative integer");
    int num = 2 * g_up + 2 - branch;
    if (num < 0 || num % 4)
      fail(errc::InconsistentRamification,
           std::string("no integral quotient genus on the ") + what + " edge");
    return num / 4;
  };
  KleinTower t;
  t.top = top_genus;
  t.ram = ram;
  t.quot_tau = down(top_genus, ram.a_tau, "tau");
  t.quot_tau_iota = down(top_genus, ram.a_tau_iota, "tau.iota");
  t.quot_iota = down(top_genus, ram.a_iota, "iota");
  int via_tau = down(t.quot_tau, ram.b_tau, "tau quotient");
  int via_tau_iota = down(t.quot_tau_iota, ram.b_tau_iota, "tau.iota quotient");
  int via_iota = down(t.quot_iota, ram.b_iota, "iota quotient");
  if (via_tau != via_tau_iota || via_tau != via_iota)
    fail(errc::InconsistentRamification,
         "the three quotients disagree on the bottom genus");
  t.bottom = via_tau;
  validate_tower(t);
  return t;
}

// One abelian-variety factor in a decomposition: a display label plus the
// numbers this artifact actually recomputes.
struct IsogenyFactor {
  std::string label;
  int dim = 0;
  std::vector<int> polarization;
};

// Bookkeeping record for an order-16 isogeny decomposing the intermediate
// Jacobian under the involution. kernel_order is a recorded constant, not
// a computation; dims and types come from cover arithmetic.
struct IsogenyReport {
  std::string source;
  std::string target = "JX";
  int kernel_order = 16;
  IsogenyFactor invariant_factor;
  IsogenyFactor antiinvariant_factor;
  std::optional<int> conic_rank;  // only set by the fixed-line route
};

// Decomposition read off the fixed-line projection: the invariant part is
// the quotient of the Jacobian of the double cover of the plane cubic C by
// the pulled-back J(C) (so it carries the dual of the Prym type), and the
// anti-invariant part is the Jacobian of the double cover of the conic.
inline IsogenyReport fixed_line_decomposition_report(
    const FixedLineFibration& f) {
  if (!f.transversal)
    fail(errc::NotTransverse,
         "decomposition needs a transversal branch divisor");
  int b = int(f.branch_form.total_degree());
  int d = int(f.cubic_part.total_degree());
  int genus_c = (d - 1) * (d - 2) / 2;  // smooth plane curve of degree d
  PrymReport over_cubic = prym_report(double_cover(genus_c, b));
  PrymReport over_conic = prym_report(double_cover(0, b));
  IsogenyReport rep;
  rep.source = "(J(C~)/J(C)) x J(Q~)";
  rep.invariant_factor = {"J(C~)/J(C)", over_cubic.prym_dim,
                          dual_type(over_cubic.polarization)};
  rep.antiinvariant_factor = {"J(Q~)", over_conic.prym_dim,
                              over_conic.polarization};
  rep.conic_rank = f.conic_rank;
  return rep;
}

// Decomposition read off the invariant-line tower: both parts are Pryms of
// middle quotients over the bottom curve.
inline IsogenyReport invariant_line_decomposition_report(const KleinTower& t) {
  validate_tower(t);
  PrymReport inv = prym_report(double_cover(t.bottom, t.ram.b_tau));
  PrymReport anti = prym_report(double_cover(t.bottom, t.ram.b_tau_iota));
  IsogenyReport rep;
  rep.source = "P(D_tau, D_bar) x P(D_tau.iota, D_bar)";
  rep.invariant_factor = {"P(D_tau, D_bar)", inv.prym_dim, inv.polarization};
  rep.antiinvariant_factor = {"P(D_tau.iota, D_bar)", anti.prym_dim,
                              anti.polarization};
  return rep;
}

}  // namespace cubinv
