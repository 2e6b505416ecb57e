#include <catch2/catch_amalgamated.hpp>

#include "cubinv/covers.hpp"
#include "support/generators.hpp"

using namespace cubinv;

namespace {

CubicWithInvolution classify2(const MultiPoly& f) {
  return classify_involution(f, {0, 0, 0, 1, 1});
}

template <class Fn>
void expect_error(errc code, Fn&& fn) {
  try {
    fn();
    FAIL("expected a domain error");
  } catch (const domain_error& e) {
    CHECK(e.code() == code);
  }
}

}  // namespace

TEST_CASE("double cover genus follows the doubling formula") {
  CHECK(rh_genus(double_cover(1, 6)) == 4);
  CHECK(rh_genus(double_cover(6, 0)) == 11);
  CHECK(rh_genus(double_cover(0, 6)) == 2);
  CHECK(rh_genus(double_cover(0, 2)) == 0);
  CHECK(rh_genus(double_cover(2, 2)) == 4);

  // the defining identity, exactly, across a grid of valid specs
  for (int g = 0; g <= 7; ++g)
    for (int b = 0; b <= 12; b += 2) {
      if (g == 0 && b == 0) continue;
      int cover = rh_genus(double_cover(g, b));
      CHECK(2 * cover - 2 == 2 * (2 * g - 2) + b);
      CHECK(double_cover(g, b).etale == (b == 0));
    }
}

TEST_CASE("invalid double covers are rejected") {
  expect_error(errc::OddBranchCount, [] { double_cover(1, 5); });
  expect_error(errc::NegativeGenus, [] { double_cover(-1, 4); });
  expect_error(errc::InconsistentRamification, [] { double_cover(1, -2); });
  // an etale double cover of the line is disconnected
  expect_error(errc::NegativeGenus, [] { rh_genus(double_cover(0, 0)); });
}

TEST_CASE("polarization types dualize by reversing into the top divisor") {
  CHECK(dual_type({1, 1, 2}) == std::vector<int>{1, 2, 2});
  CHECK(dual_type({1, 2, 2}) == std::vector<int>{1, 1, 2});
  CHECK(dual_type({2, 2}) == std::vector<int>{1, 1});
  CHECK(dual_type({}) == std::vector<int>{});
  // involutive on every type with leading divisor 1
  for (int ones = 1; ones <= 4; ++ones)
    for (int twos = 0; twos <= 4; ++twos) {
      std::vector<int> type(ones, 1);
      type.insert(type.end(), twos, 2);
      CHECK(dual_type(dual_type(type)) == type);
    }
  CHECK_THROWS_AS(dual_type({2, 3}), std::logic_error);
}

TEST_CASE("prym reports reproduce the three pipeline covers") {
  PrymReport a = prym_report(double_cover(1, 6));
  CHECK(a.cover_genus == 4);
  CHECK(a.prym_dim == 3);
  CHECK(a.polarization == std::vector<int>{1, 1, 2});
  CHECK(a.dual_polarization == std::vector<int>{1, 2, 2});

  PrymReport b = prym_report(double_cover(2, 4));
  CHECK(b.cover_genus == 5);
  CHECK(b.prym_dim == 3);
  CHECK(b.polarization == std::vector<int>{1, 2, 2});
  CHECK(b.dual_polarization == std::vector<int>{1, 1, 2});

  PrymReport c = prym_report(double_cover(0, 6));
  CHECK(c.cover_genus == 2);
  CHECK(c.prym_dim == 2);
  CHECK(c.polarization == std::vector<int>{2, 2});

  // etale cover: restriction type, one 2 per base dimension minus one
  PrymReport d = prym_report(double_cover(3, 0));
  CHECK(d.cover_genus == 5);
  CHECK(d.prym_dim == 2);
  CHECK(d.polarization == std::vector<int>{2, 2});
}

TEST_CASE("prym dimension equals base genus minus one plus half the branching") {
  for (int g = 0; g <= 6; ++g)
    for (int b = 2; b <= 10; b += 2) {
      PrymReport rep = prym_report(double_cover(g, b));
      CHECK(rep.prym_dim == g - 1 + b / 2);
      CHECK(int(rep.polarization.size()) == rep.prym_dim);
    }
  for (int g = 1; g <= 6; ++g)
    CHECK(prym_report(double_cover(g, 0)).prym_dim == g - 1);
}

TEST_CASE("the quotient tower solves down to the recorded genera") {
  KleinTower t = klein_tower(11);
  CHECK(t.top == 11);
  CHECK(t.quot_tau == 5);
  CHECK(t.quot_tau_iota == 4);
  CHECK(t.quot_iota == 6);
  CHECK(t.bottom == 2);

  // the top genus is itself cover arithmetic: an etale double cover of the
  // discriminant quintic, a smooth plane curve of genus (5-1)(5-2)/2
  CHECK(rh_genus(double_cover(6, 0)) == t.top);

  // a fully etale tower halves 2g-2 twice
  TowerRamification none{0, 0, 0, 0, 0, 0};
  KleinTower e = klein_tower(5, none);
  CHECK(e.quot_tau == 3);
  CHECK(e.quot_tau_iota == 3);
  CHECK(e.quot_iota == 3);
  CHECK(e.bottom == 2);
}

TEST_CASE("inconsistent ramification data is rejected") {
  // from genus 3 the second etale halving of 2g-2 = 4 is not integral
  TowerRamification none{0, 0, 0, 0, 0, 0};
  expect_error(errc::InconsistentRamification, [&] { klein_tower(3, none); });

  TowerRamification odd_b;
  odd_b.b_tau = 5;
  expect_error(errc::InconsistentRamification, [&] { klein_tower(11, odd_b); });

  TowerRamification bad_a;
  bad_a.a_tau = 2;  // (2*11 + 2 - 2)/4 is not an integer
  expect_error(errc::InconsistentRamification, [&] { klein_tower(11, bad_a); });

  TowerRamification negative;
  negative.a_iota = -2;
  expect_error(errc::InconsistentRamification,
               [&] { klein_tower(11, negative); });

  // mismatched bottom genera: raise b_iota so the iota route lands lower
  TowerRamification skew;
  skew.b_iota = 10;
  expect_error(errc::InconsistentRamification, [&] { klein_tower(11, skew); });

  expect_error(errc::NegativeGenus, [] { klein_tower(-1); });
}

TEST_CASE("tower validation accepts computed towers and rejects perturbed ones") {
  KleinTower t = klein_tower(11);
  validate_tower(t);  // must not throw

  KleinTower wrong = t;
  wrong.quot_tau = 4;
  expect_error(errc::InconsistentRamification, [&] { validate_tower(wrong); });

  KleinTower wrong_bottom = t;
  wrong_bottom.bottom = 3;
  expect_error(errc::InconsistentRamification,
               [&] { validate_tower(wrong_bottom); });
}

TEST_CASE("fixed-line decomposition derives its dimensions from the covers") {
  auto fib = project_from_fixed_line(classify2(gen::f2_cubic()));
  IsogenyReport rep = fixed_line_decomposition_report(fib);
  CHECK(rep.kernel_order == 16);
  CHECK(rep.target == "JX");
  CHECK(rep.invariant_factor.dim == 3);
  CHECK(rep.invariant_factor.polarization == std::vector<int>{1, 2, 2});
  CHECK(rep.antiinvariant_factor.dim == 2);
  CHECK(rep.antiinvariant_factor.polarization == std::vector<int>{2, 2});
  REQUIRE(rep.conic_rank.has_value());
  CHECK(*rep.conic_rank == 3);
  // invariant and anti-invariant dims fill out the five-dimensional JX
  CHECK(rep.invariant_factor.dim + rep.antiinvariant_factor.dim == 5);

  // the rank-2 conic of the first example changes nothing numeric
  auto fib1 = project_from_fixed_line(classify2(gen::f1_cubic()));
  IsogenyReport rep1 = fixed_line_decomposition_report(fib1);
  CHECK(rep1.invariant_factor.dim == 3);
  CHECK(rep1.invariant_factor.polarization == std::vector<int>{1, 2, 2});
  CHECK(rep1.antiinvariant_factor.dim == 2);
  CHECK(rep1.antiinvariant_factor.polarization == std::vector<int>{2, 2});
  REQUIRE(rep1.conic_rank.has_value());
  CHECK(*rep1.conic_rank == 2);

  FixedLineFibration bad = fib;
  bad.transversal = false;
  expect_error(errc::NotTransverse,
               [&] { fixed_line_decomposition_report(bad); });
}

TEST_CASE("invariant-line decomposition agrees with the fixed-line one") {
  KleinTower t = klein_tower(11);
  IsogenyReport line_rep = invariant_line_decomposition_report(t);
  CHECK(line_rep.kernel_order == 16);
  CHECK(line_rep.invariant_factor.dim == 3);
  CHECK(line_rep.invariant_factor.polarization == std::vector<int>{1, 2, 2});
  CHECK(line_rep.antiinvariant_factor.dim == 2);
  CHECK(line_rep.antiinvariant_factor.polarization == std::vector<int>{2, 2});
  CHECK_FALSE(line_rep.conic_rank.has_value());

  // the two decompositions of JX must agree on the invariant factor, and
  // the types they carry are dual to each other's Prym input types
  auto fib = project_from_fixed_line(classify2(gen::f2_cubic()));
  IsogenyReport fixed_rep = fixed_line_decomposition_report(fib);
  CHECK(line_rep.invariant_factor.dim == fixed_rep.invariant_factor.dim);
  CHECK(line_rep.invariant_factor.polarization ==
        fixed_rep.invariant_factor.polarization);
  CHECK(dual_type(line_rep.invariant_factor.polarization) ==
        prym_report(double_cover(1, 6)).polarization);

  KleinTower wrong = t;
  wrong.quot_tau_iota = 5;
  expect_error(errc::InconsistentRamification,
               [&] { invariant_line_decomposition_report(wrong); });
}
