// Searches the standing example for a general invariant line, then prints
// the residual-conic data the projection extracts along it and the
// genus tower behind the quotient bookkeeping.

#include <iostream>

#include "cubinv/covers.hpp"
#include "cubinv/fibration.hpp"
#include "cubinv/parse.hpp"

using namespace cubinv;

int main() {
  MultiPoly f =
      parse_poly("x0^3 + x1^3 + x2^3 + x0*x3^2 + x1*x4^2 + 2*x2*x3*x4", 5, true)
          .poly;
  CubicWithInvolution c = classify_involution(f, {0, 0, 0, 1, 1});

  auto hit = search_general_invariant_line(c, 3);
  if (!hit) {
    std::cout << "no general line up to height 3\n";
    return 1;
  }
  std::cout << "foot of the line  (";
  for (std::size_t i = 0; i < hit->point.size(); ++i)
    std::cout << (i ? " : " : "") << rat_str(hit->point[i].rat_value());
  std::cout << ")\n";
  for (const MultiPoly& form : line_forms(hit->l))
    std::cout << "  cut by " << poly_str(form) << "\n";

  const InvariantLineFibration& fib = hit->fib;
  std::cout << "\nL1 " << poly_str(fib.L1) << "\nL2 " << poly_str(fib.L2)
            << "\nQ1 " << poly_str(fib.Q1) << "\nG  " << poly_str(fib.G)
            << "\n";
  std::cout << "fixed points   " << poly_str(fib.fixed_points_form) << "\n";
  std::cout << "disc smooth    " << (hit->report.disc_smooth ? "yes" : "no")
            << "\n";
  std::cout << "partner check  "
            << (coplanar_pair_check(c, fib.l, fib.partner) ? "passes" : "fails")
            << "\n\n";

  KleinTower t = klein_tower(rh_genus(double_cover(6, 0)));
  std::cout << "tower genera " << t.top << " -> (" << t.quot_tau << ", "
            << t.quot_tau_iota << ", " << t.quot_iota << ") -> " << t.bottom
            << "\n";
  IsogenyReport rep = invariant_line_decomposition_report(t);
  std::cout << rep.invariant_factor.label << ": dim "
            << rep.invariant_factor.dim << ", polarization (";
  for (std::size_t i = 0; i < rep.invariant_factor.polarization.size(); ++i)
    std::cout << (i ? "," : "") << rep.invariant_factor.polarization[i];
  std::cout << ")\n";
  return 0;
}
