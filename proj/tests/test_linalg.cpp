#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "precy/sparse.hpp"

using namespace precy;

namespace {

SparseVec vec(const Ring& ring, std::initializer_list<long> entries) {
  SparseVec v;
  int i = 0;
  for (long e : entries) {
    if (e != 0) v.emplace(i, Scalar::of(ring, e));
    i++;
  }
  return v;
}

SparseMatrix mat(const Ring& ring, int rows, int cols, std::initializer_list<long> entries) {
  SparseMatrix m(ring, rows, cols);
  int i = 0;
  for (long e : entries) {
    if (e != 0) m.add(i / cols, i % cols, Scalar::of(ring, e));
    i++;
  }
  return m;
}

// y^T A as a row vector
SparseVec left_apply(const SparseVec& y, const SparseMatrix& a) {
  SparseVec z;
  for (const auto& [r, c] : y) axpy(z, c, a.row(r));
  return z;
}

}  // namespace

TEST_CASE("solve: 2x2 over F2 by back-substitution") {
  Ring F2 = Ring::mod(2);
  auto m = mat(F2, 2, 2, {1, 1, 0, 1});
  auto res = m.solve(vec(F2, {1, 0}));
  REQUIRE(res.feasible());
  REQUIRE(*res.x == vec(F2, {1, 0}));
}

TEST_CASE("solve: zero system has the zero solution") {
  Ring Q = Ring::rationals();
  SparseMatrix m(Q, 3, 3);
  auto res = m.solve(SparseVec{});
  REQUIRE(res.feasible());
  REQUIRE(res.x->empty());
}

TEST_CASE("solve: infeasible system yields a verifying certificate") {
  Ring F2 = Ring::mod(2);
  auto m = mat(F2, 2, 1, {1, 1});
  auto res = m.solve(vec(F2, {0, 1}));
  REQUIRE(!res.feasible());
  REQUIRE(res.certificate.has_value());
  const SparseVec& y = *res.certificate;
  REQUIRE(y == vec(F2, {1, 1}));
  REQUIRE(left_apply(y, m).empty());            // y . M = 0
  REQUIRE(!dot(F2, y, vec(F2, {0, 1})).is_zero());  // y . b != 0
}

TEST_CASE("solve: random systems verify exactly") {
  std::mt19937_64 rng(12345);
  for (const Ring& ring : {Ring::rationals(), Ring::mod(7), Ring::mod(2)}) {
    for (int trial = 0; trial < 40; trial++) {
      int rows = 1 + static_cast<int>(rng() % 8);
      int cols = 1 + static_cast<int>(rng() % 8);
      SparseMatrix m(ring, rows, cols);
      for (int r = 0; r < rows; r++)
        for (int c = 0; c < cols; c++)
          if (rng() % 3 == 0) m.add(r, c, Scalar::of(ring, static_cast<long>(rng() % 7) - 3));
      SparseVec b;
      for (int r = 0; r < rows; r++)
        if (rng() % 2 == 0) {
          Scalar s = Scalar::of(ring, static_cast<long>(rng() % 7) - 3);
          if (!s.is_zero()) b.emplace(r, s);
        }
      auto res = m.solve(b);
      if (res.feasible()) {
        SparseVec check = m.apply(*res.x);
        REQUIRE(check == b);
      } else {
        const SparseVec& y = *res.certificate;
        REQUIRE(left_apply(y, m).empty());
        REQUIRE(!dot(ring, y, b).is_zero());
      }
    }
  }
}

TEST_CASE("kernel basis vectors are in the kernel and independent") {
  std::mt19937_64 rng(777);
  Ring Q = Ring::rationals();
  for (int trial = 0; trial < 20; trial++) {
    int rows = 1 + static_cast<int>(rng() % 6);
    int cols = 1 + static_cast<int>(rng() % 6);
    SparseMatrix m(Q, rows, cols);
    for (int r = 0; r < rows; r++)
      for (int c = 0; c < cols; c++)
        if (rng() % 3 == 0) m.add(r, c, Scalar::of(Q, static_cast<long>(rng() % 5) - 2));
    auto basis = m.kernel_basis();
    REQUIRE(static_cast<int>(basis.size()) == cols - m.rank());
    SpanReducer span(Q);
    for (const auto& v : basis) {
      REQUIRE(m.apply(v).empty());
      REQUIRE(span.insert(v));
    }
  }
}

TEST_CASE("homology: acyclic and zero-differential complexes") {
  Ring Q = Ring::rationals();
  // d_in = 0 (from rank 0), d_out = identity on rank 1: acyclic
  SparseMatrix d_in(Q, 1, 0);
  auto d_out = mat(Q, 1, 1, {1});
  auto h = homology(d_in, d_out);
  REQUIRE(h.betti == 0);
  REQUIRE(h.representatives.empty());

  // both maps zero on rank 2
  SparseMatrix z_in(Q, 2, 0), z_out(Q, 0, 2);
  auto h2 = homology(z_in, z_out);
  REQUIRE(h2.betti == 2);
  REQUIRE(h2.representatives.size() == 2);
  REQUIRE(h2.rank_kernel == 2);
  REQUIRE(h2.rank_image_in == 0);
}

TEST_CASE("homology: betti is presentation-invariant, representatives are cycles") {
  Ring Q = Ring::rationals();
  // C_in = Q^2 -> C = Q^4 -> C_out = Q^2, maps chosen with d_out d_in = 0
  auto d_in = mat(Q, 4, 2, {1, 0, 0, 1, 1, 1, 0, 0});
  auto d_out = mat(Q, 2, 4, {1, 1, -1, 0, 0, 0, 0, 0});
  auto h = homology(d_in, d_out);
  REQUIRE(h.rank_kernel == 3);
  REQUIRE(h.rank_image_in == 2);
  REQUIRE(h.betti == 1);
  for (const auto& rep : h.representatives) REQUIRE(d_out.apply(rep).empty());

  // permute the middle basis: betti must agree
  auto p_in = mat(Q, 4, 2, {0, 1, 1, 1, 1, 0, 0, 0});   // rows 1,2,0,3 of d_in
  auto p_out = mat(Q, 2, 4, {1, -1, 1, 0, 0, 0, 0, 0});  // columns permuted the same way
  auto hp = homology(p_in, p_out);
  REQUIRE(hp.betti == h.betti);
}

TEST_CASE("homology: non-composable pair is rejected") {
  Ring Q = Ring::rationals();
  auto d_in = mat(Q, 2, 1, {1, 0});
  auto d_out = mat(Q, 1, 2, {1, 0});
  REQUIRE_THROWS_AS(homology(d_in, d_out), Malformed);
}

TEST_CASE("matrix dump uses canonical scalar text") {
  Ring Q = Ring::rationals();
  SparseMatrix m(Q, 2, 2);
  m.add(0, 1, Scalar::of(Q, mpq_class(1, 2)));
  m.add(1, 0, Scalar::of(Q, -3));
  REQUIRE(m.dump() == "0 1 1/2\n1 0 -3\n");
}
