#include <catch2/catch_amalgamated.hpp>

#include "precy/loop.hpp"

using namespace precy;

TEST_CASE("monomial products and the unit") {
  LoopAlgebra H(2, 8, Ring::rationals());
  Scalar one = Scalar::of(H.ring, 1);
  auto t2 = AlgebraElement::monomial(H, 2, one);
  auto t3 = AlgebraElement::monomial(H, 3, one);
  REQUIRE(mul(t2, t3) == AlgebraElement::monomial(H, 5, one));

  auto x = AlgebraElement::monomial(H, 4, Scalar::of(H.ring, 7));
  REQUIRE(mul(AlgebraElement::unit(H), x) == x);
  REQUIRE(mul(x, AlgebraElement::unit(H)) == x);
}

TEST_CASE("truncation overflow is loud, never silent") {
  LoopAlgebra H(2, 4, Ring::rationals());
  Scalar one = Scalar::of(H.ring, 1);
  auto t3 = AlgebraElement::monomial(H, 3, one);
  auto t2 = AlgebraElement::monomial(H, 2, one);
  REQUIRE_THROWS_AS(mul(t3, t2), TruncationOverflow);
  REQUIRE(!try_mul(t3, t2).has_value());
  REQUIRE(try_mul(t2, t2).has_value());
}

TEST_CASE("degrees") {
  Ring Q = Ring::rationals();
  LoopAlgebra H2(2, 8, Q);
  REQUIRE(AlgebraElement::monomial(H2, 3, Scalar::of(Q, 1)).degree() == 3);
  REQUIRE(AlgebraElement::unit(H2).degree() == 0);
  LoopAlgebra H4(4, 8, Q);
  REQUIRE(AlgebraElement::monomial(H4, 2, Scalar::of(Q, 1)).degree() == 6);

  auto mixed = AlgebraElement::monomial(H2, 1, Scalar::of(Q, 1)) + AlgebraElement::unit(H2);
  REQUIRE_THROWS_AS(mixed.degree(), Malformed);
  REQUIRE_THROWS_AS(AlgebraElement(H2).degree(), Malformed);
}

TEST_CASE("product degree is additive; multiplication commutes and associates") {
  Ring Q = Ring::rationals();
  LoopAlgebra H(3, 12, Q);
  for (int a = 0; a <= 4; a++) {
    for (int b = 0; b <= 4; b++) {
      auto xa = AlgebraElement::monomial(H, a, Scalar::of(Q, a + 1));
      auto xb = AlgebraElement::monomial(H, b, Scalar::of(Q, b + 2));
      auto p = mul(xa, xb);
      REQUIRE(p.degree() == xa.degree() + xb.degree());
      REQUIRE(p == mul(xb, xa));
      for (int c = 0; c <= 4; c++) {
        auto xc = AlgebraElement::monomial(H, c, Scalar::of(Q, 5));
        REQUIRE(mul(mul(xa, xb), xc) == mul(xa, mul(xb, xc)));
      }
    }
  }
}

TEST_CASE("mixed contexts are rejected") {
  Ring Q = Ring::rationals();
  LoopAlgebra H1(2, 8, Q), H2(3, 8, Q);
  auto a = AlgebraElement::unit(H1);
  auto b = AlgebraElement::unit(H2);
  REQUIRE_THROWS_AS(mul(a, b), RingMismatch);
}

TEST_CASE("safe truncation bound") {
  REQUIRE(LoopAlgebra::required_truncation(2, 6) == 15);
  LoopAlgebra H(2, LoopAlgebra::required_truncation(2, 6), Ring::rationals());
  REQUIRE(H.D == 15);
}
