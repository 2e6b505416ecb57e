#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "cubinv/matrix.hpp"

using namespace cubinv;

namespace {

ScalarMat rnd_mat(std::size_t r, std::size_t c, std::mt19937_64& rng,
                  int lo = -5, int hi = 5) {
  std::uniform_int_distribution<int> d(lo, hi);
  ScalarMat m(r, c, Scalar(0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = Scalar(d(rng));
  return m;
}

}  // namespace

TEST_CASE("kernel of the identity is trivial") {
  CHECK(kernel_basis(scalar_identity(4)).empty());
}

TEST_CASE("kernel of the all-ones 2x2 matrix is spanned by (1,-1)") {
  ScalarMat m(2, 2, Scalar(1));
  auto k = kernel_basis(m);
  REQUIRE(k.size() == 1);
  CHECK(k[0][0] == Scalar(1));
  CHECK(k[0][1] == Scalar(-1));
}

TEST_CASE("rank plus kernel dimension equals column count") {
  std::mt19937_64 rng(314);
  for (int i = 0; i < 25; ++i) {
    std::size_t r = 1 + (i % 6), c = 1 + ((i * 7) % 8);
    ScalarMat m = rnd_mat(r, c, rng);
    CHECK(rank(m) + kernel_basis(m).size() == c);
  }
}

TEST_CASE("planted rank is recovered on a 6x10 product") {
  std::mt19937_64 rng(2718);
  ScalarMat b(6, 4, Scalar(0)), c(4, 10, Scalar(0));
  // keep resampling until both factors have full rank 4
  do {
    b = rnd_mat(6, 4, rng);
  } while (rank(b) != 4);
  do {
    c = rnd_mat(4, 10, rng);
  } while (rank(c) != 4);
  ScalarMat m = mat_mul(b, c);
  CHECK(rank(m) == 4);
  auto k = kernel_basis(m);
  CHECK(k.size() == 6);
  for (const auto& v : k) {
    std::vector<Scalar> image = mat_vec(m, v);
    for (const Scalar& x : image) CHECK(x.is_zero());
  }
}

TEST_CASE("kernel vectors annihilate and are normalized") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 10; ++i) {
    ScalarMat m = rnd_mat(3, 6, rng);
    for (const auto& v : kernel_basis(m)) {
      for (const Scalar& x : mat_vec(m, v)) CHECK(x.is_zero());
      for (const Scalar& x : v) {
        if (x.is_zero()) continue;
        CHECK(x == Scalar(1));
        break;
      }
    }
  }
}

TEST_CASE("inverse round-trips and singular matrices are detected") {
  std::mt19937_64 rng(555);
  for (int i = 0; i < 10; ++i) {
    ScalarMat m = rnd_mat(4, 4, rng);
    auto inv = inverse(m);
    if (rank(m) < 4) {
      CHECK_FALSE(inv.has_value());
      continue;
    }
    REQUIRE(inv.has_value());
    CHECK(mat_mul(m, *inv) == scalar_identity(4));
    CHECK(mat_mul(*inv, m) == scalar_identity(4));
  }
}

TEST_CASE("scalar determinant matches cofactor expansion on 3x3") {
  ScalarMat m(3, 3, Scalar(0));
  long vals[3][3] = {{2, 1, 0}, {-1, 3, 4}, {5, 0, 1}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = Scalar(vals[i][j]);
  // det = 2*(3-0) - 1*(-1-20) + 0 = 27
  CHECK(det(m) == Scalar(27));
  ScalarMat sing(2, 2, Scalar(1));
  CHECK(det(sing) == Scalar(0));
}

TEST_CASE("Bareiss determinant agrees with scalar determinant on constants") {
  std::mt19937_64 rng(808);
  for (int i = 0; i < 10; ++i) {
    std::size_t n = 2 + (i % 3);
    ScalarMat sm = rnd_mat(n, n, rng);
    FormMat fm(n, n, MultiPoly(1));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        fm(r, c) = MultiPoly::constant(1, sm(r, c));
    MultiPoly d = det_bareiss(fm);
    Scalar expect = det(sm);
    if (expect.is_zero())
      CHECK(d.is_zero());
    else
      CHECK(d == MultiPoly::constant(1, expect));
  }
}

TEST_CASE("Bareiss determinant on a polynomial matrix") {
  // [[x0, x1], [x1, x0]] has determinant x0^2 - x1^2
  FormMat m(2, 2, MultiPoly(2));
  m(0, 0) = MultiPoly::variable(2, 0);
  m(0, 1) = MultiPoly::variable(2, 1);
  m(1, 0) = MultiPoly::variable(2, 1);
  m(1, 1) = MultiPoly::variable(2, 0);
  MultiPoly d = det_bareiss(m);
  MultiPoly expect(2);
  expect.add_term({2, 0}, Scalar(1));
  expect.add_term({0, 2}, Scalar(-1));
  CHECK(d == expect);

  // block with a zero pivot forces a row swap
  FormMat z(2, 2, MultiPoly(2));
  z(0, 1) = MultiPoly::variable(2, 0);
  z(1, 0) = MultiPoly::variable(2, 1);
  CHECK(det_bareiss(z) == -(MultiPoly::variable(2, 0) * MultiPoly::variable(2, 1)));
}

TEST_CASE("poly_substitute rejects singular changes and round-trips") {
  MultiPoly p(3);
  p.add_term({1, 1, 0}, Scalar(2));
  p.add_term({0, 0, 2}, Scalar(-1));

  ScalarMat sing(3, 3, Scalar(1));
  CHECK_THROWS_AS(poly_substitute(p, sing), domain_error);
  try {
    poly_substitute(p, sing);
  } catch (const domain_error& e) {
    CHECK(e.code() == errc::SingularChange);
  }

  std::mt19937_64 rng(161);
  for (int i = 0; i < 10; ++i) {
    ScalarMat m = rnd_mat(3, 3, rng);
    if (rank(m) < 3) continue;
    MultiPoly q = poly_substitute(p, m);
    MultiPoly back = poly_substitute(q, *inverse(m));
    CHECK(back == p);
  }
}
