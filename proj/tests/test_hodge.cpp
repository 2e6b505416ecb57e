#include <catch2/catch_amalgamated.hpp>

#include "cubinv/jacobian_ring.hpp"
#include "cubinv/reconstruct.hpp"
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

int choose4(int n) { return n * (n - 1) * (n - 2) * (n - 3) / 24; }

const std::vector<int> kHilbert = {1, 5, 10, 10, 5, 1};

void check_hilbert_row(const MultiPoly& F, const InvolutionSignature& tau) {
  for (int i = 0; i <= 5; ++i) {
    JacobianSlice s = jacobian_slice(F, i, tau);
    CHECK(s.quotient_dim == kHilbert[unsigned(i)]);
    CHECK(int(s.monomial_basis.size()) == choose4(i + 4));
    CHECK(s.quotient_dim ==
          int(s.monomial_basis.size() - s.jacobian_subspace.size()));
    CHECK(s.eigen_dims.first + s.eigen_dims.second == s.quotient_dim);
  }
}

}  // namespace

TEST_CASE("slice dimensions follow the complete intersection series") {
  CubicWithInvolution c2 = classify2(gen::f2_cubic());
  check_hilbert_row(c2.F, c2.sig);
  CubicWithInvolution c1 = classify2(gen::f1_cubic());
  check_hilbert_row(c1.F, c1.sig);
}

TEST_CASE("eigen splits of the standing example") {
  CubicWithInvolution c = classify2(gen::f2_cubic());
  JacobianSlice s1 = jacobian_slice(c.F, 1, c.sig);
  CHECK(s1.quotient_dim == 5);
  CHECK(s1.eigen_dims == std::pair<int, int>{3, 2});
  CHECK(s1.jacobian_subspace.empty());

  JacobianSlice s2 = jacobian_slice(c.F, 2, c.sig);
  CHECK(s2.quotient_dim == 10);
  CHECK(s2.eigen_dims == std::pair<int, int>{6, 4});

  JacobianSlice s5 = jacobian_slice(c.F, 5, c.sig);
  CHECK(s5.quotient_dim == 1);
  CHECK(s5.eigen_dims == std::pair<int, int>{1, 0});
}

TEST_CASE("tangent space split is three plus two") {
  CubicWithInvolution c1 = classify2(gen::f1_cubic());
  CHECK(hodge_split(c1.F, c1.sig) == std::pair<int, int>{3, 2});
  CubicWithInvolution c2 = classify2(gen::f2_cubic());
  CHECK(hodge_split(c2.F, c2.sig) == std::pair<int, int>{3, 2});

  // one minus sign: the split is reported without the (3, 2) constraint
  std::mt19937_64 rng(7);
  MultiPoly f = gen::random_smooth_one_minus_cubic(rng);
  InvolutionSignature one = make_signature({0, 0, 0, 0, 1});
  CHECK(hodge_split(f, one) == std::pair<int, int>{4, 1});
}

TEST_CASE("smoothness and invariance gate the ring computations") {
  MultiPoly cone(5);
  cone.add_term({3, 0, 0, 0, 0}, Scalar(1));
  InvolutionSignature tau = make_signature({0, 0, 0, 1, 1});
  expect_error(errc::NotSmooth, [&] { jacobian_slice(cone, 1, tau); });
  expect_error(errc::NotSmooth, [&] { macaulay_pairing_check(cone, tau); });

  MultiPoly fermat5(5);
  for (unsigned v = 0; v < 5; ++v) {
    Exp e(5, 0);
    e[v] = 3;
    fermat5.add_term(std::move(e), Scalar(1));
  }
  expect_error(errc::NotInvariant, [&] { jacobian_slice(fermat5, 2, tau); });

  CHECK_THROWS_AS(jacobian_slice(gen::f2_cubic(), 6, tau), std::logic_error);
}

TEST_CASE("Macaulay pairing is nondegenerate and split-respecting") {
  CubicWithInvolution c2 = classify2(gen::f2_cubic());
  CHECK(macaulay_pairing_check(c2.F, c2.sig));
  CubicWithInvolution c1 = classify2(gen::f1_cubic());
  CHECK(macaulay_pairing_check(c1.F, c1.sig));

  // duality transports the split: invariant dims agree in degrees 1 and 4
  JacobianSlice s4 = jacobian_slice(c2.F, 4, c2.sig);
  CHECK(s4.eigen_dims == std::pair<int, int>{3, 2});
}

TEST_CASE("codifferential kernel on the two normal forms") {
  TorelliReport r2 = torelli_codifferential(classify2(gen::f2_cubic()));
  CHECK(r2.sym2_dim == 6);
  CHECK(r2.r2_inv_dim == 6);
  CHECK(r2.codifferential_kernel_dim == 0);
  CHECK(r2.in_M0);
  CHECK(r2.common_zero_check);

  // l3 = 0 leaves the common zero of l1 = x0+x1 and l2 = x0+x2 at
  // (1 : -1 : -1), and with it a one-dimensional kernel
  TorelliReport r1 = torelli_codifferential(classify2(gen::f1_cubic()));
  CHECK(r1.sym2_dim == 6);
  CHECK(r1.r2_inv_dim == 6);
  CHECK(r1.codifferential_kernel_dim == 1);
  CHECK_FALSE(r1.in_M0);
  CHECK(r1.common_zero_check);
}

TEST_CASE("random members of the open locus have trivial kernel") {
  std::mt19937_64 rng(20260501);
  int done = 0;
  while (done < 10) {
    MultiPoly f = gen::random_smooth_invariant_cubic(rng);
    CubicWithInvolution c = classify2(f);
    ScalarMat coef(3, 3, Scalar(0));
    const MultiPoly* forms[3] = {&c.ne->l1, &c.ne->l2, &c.ne->l3};
    for (unsigned r = 0; r < 3; ++r)
      for (unsigned v = 0; v < 3; ++v) {
        Exp e(3, 0);
        e[v] = 1;
        coef(r, v) = forms[r]->coeff(e);
      }
    if (rank(coef) != 3) continue;  // not in the open locus
    TorelliReport rep = torelli_codifferential(c);
    CHECK(rep.codifferential_kernel_dim == 0);
    CHECK(rep.in_M0);
    CHECK(rep.common_zero_check);
    CHECK(rep.sym2_dim == 6);
    CHECK(rep.r2_inv_dim == 6);
    ++done;
  }
}

TEST_CASE("vanishing third form forces a one-dimensional kernel") {
  std::mt19937_64 rng(31415);
  std::vector<int> e012 = {0, 1, 2};
  int done = 0;
  for (int t = 0; t < 300 && done < 5; ++t) {
    MultiPoly l1 = gen::rnd_ternary_linear(rng, 3);
    MultiPoly l2 = gen::rnd_ternary_linear(rng, 3);
    MultiPoly g = gen::rnd_ternary_cubic(rng, 3);
    if (l1.is_zero() || l2.is_zero() || g.is_zero()) continue;
    if (scale_factor(l1, l2).has_value()) continue;  // need distinct lines
    MultiPoly x3 = MultiPoly::variable(5, 3), x4 = MultiPoly::variable(5, 4);
    MultiPoly F = reindex(l1, 5, e012) * x3 * x3 +
                  reindex(l2, 5, e012) * x4 * x4 + reindex(g, 5, e012);
    if (!is_smooth_cubic_threefold(F)) continue;
    TorelliReport rep = torelli_codifferential(classify2(F));
    CHECK(rep.codifferential_kernel_dim == 1);
    CHECK_FALSE(rep.in_M0);
    CHECK(rep.common_zero_check);
    ++done;
  }
  CHECK(done == 5);
}

TEST_CASE("hilbert row and pairing hold for random smooth cubics") {
  std::mt19937_64 rng(8128);
  for (int t = 0; t < 3; ++t) {
    MultiPoly f = gen::random_smooth_invariant_cubic(rng);
    CubicWithInvolution c = classify2(f);
    check_hilbert_row(c.F, c.sig);
    CHECK(hodge_split(c.F, c.sig) == std::pair<int, int>{3, 2});
    CHECK(macaulay_pairing_check(c.F, c.sig));
  }
}
