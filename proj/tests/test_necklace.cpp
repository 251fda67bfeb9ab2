#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "precy/necklace.hpp"

using namespace precy;

namespace {

Scalar one(const LoopAlgebra& ctx) { return Scalar::of(ctx.ring, 1); }

/* a small pool of isotypic elements of mixed sector count, homological
   degree and eigenvalue parity; the two-output one is fixed by rotation
   (period 1 orbit), which is the hardest case for the product */
std::vector<HigherCochain> jacobi_pool(const LoopAlgebra& ctx) {
  std::vector<HigherCochain> pool;
  pool.push_back(mu_cochain(ctx));

  HigherCochain e1(ctx, 1, -2);
  e1.add_entry({{0, 0}}, {0}, one(ctx));
  e1.add_entry({{1, 0}}, {1}, Scalar::of(ctx.ring, 2));
  pool.push_back(e1);

  HigherCochain st(ctx, 2, -4);
  st.add_entry({{1}, {1}}, {0, 0}, one(ctx));
  pool.push_back(st);

  HigherCochain f1(ctx, 2, 0);
  f1.add_entry({{1}, {}}, {1, 1}, one(ctx));
  pool.push_back(f1.symmetrize());

  HigherCochain g1(ctx, 3, -1);
  g1.add_entry({{0}, {}, {}}, {0, 0, 0}, one(ctx));
  pool.push_back(g1.symmetrize());

  return pool;
}

}  // namespace

TEST_CASE("the product is associative at the bottom") {
  for (const Ring& ring : {Ring::rationals(), Ring::mod(2), Ring::mod(5)}) {
    for (int n : {2, 3}) {
      LoopAlgebra ctx(n, 10, ring);
      HigherCochain mu = mu_cochain(ctx);
      REQUIRE(star(mu, mu).is_zero());
    }
  }
}

TEST_CASE("product grading") {
  LoopAlgebra ctx(2, 8, Ring::rationals());
  auto pool = jacobi_pool(ctx);
  const auto& f = pool[3];  // l = 2, degree 0
  const auto& g = pool[4];  // l = 3, degree -1
  auto p = star(f, g);
  REQUIRE(p.ell() == f.ell() + g.ell() - 1);
  REQUIRE(p.hdeg() == f.hdeg() + g.hdeg() + 1);
  // the convolution degree is additive; the differential drops it by one
  REQUIRE(p.eps() == f.eps() + g.eps());
  REQUIRE(differential(f).eps() == f.eps() - 1);
}

TEST_CASE("single-output insertion against a hand count") {
  // f(x, y) = x y on degree-1 arguments, g(x, y) = x y weighted so its
  // value lands in degree 1; the eigenvalue of g is even, so both
  // insertions come with sign +1 and
  //   (f * g)(x, y, z) = f(g(x, y), z) + f(x, g(y, z))
  LoopAlgebra ctx(2, 8, Ring::rationals());
  HigherCochain f(ctx, 1, -2);
  f.add_entry({{1, 1}}, {2}, one(ctx));
  HigherCochain g(ctx, 1, -1);
  g.add_entry({{0, 0}}, {1}, one(ctx));
  REQUIRE(g.eps() % 2 == 0);

  HigherCochain expect(ctx, 1, -2);
  expect.add_entry({{0, 0, 1}}, {2}, one(ctx));
  expect.add_entry({{1, 0, 0}}, {2}, one(ctx));
  REQUIRE(star(f, g) == expect);
}

TEST_CASE("bracket antisymmetry") {
  LoopAlgebra ctx(2, 8, Ring::rationals());
  auto pool = jacobi_pool(ctx);
  for (const auto& a : pool) {
    for (const auto& b : pool) {
      auto lhs = bracket(a, b);
      auto rhs = bracket(b, a);
      if ((a.eps() & b.eps() & 1) != 0)
        REQUIRE(lhs == rhs);
      else
        REQUIRE(lhs == -rhs);
    }
  }
  // even eigenvalue brackets with itself to zero
  REQUIRE(pool[4].eps() % 2 == 0);
  REQUIRE(bracket(pool[4], pool[4]).is_zero());
}

TEST_CASE("graded Jacobi identity on the isotypic pool") {
  LoopAlgebra ctx(2, 8, Ring::rationals());
  auto pool = jacobi_pool(ctx);
  for (const auto& c : pool) REQUIRE(c.isotypic_check());
  for (const auto& a : pool) {
    for (const auto& b : pool) {
      for (const auto& c : pool) {
        auto t1 = bracket(bracket(a, b), c);
        auto t2 = bracket(a, bracket(b, c));
        auto t3 = bracket(b, bracket(a, c));
        auto residual = (a.eps() & b.eps() & 1) ? t1 - t2 - t3 : t1 - t2 + t3;
        REQUIRE(residual.is_zero());
      }
    }
  }
}

TEST_CASE("the differential is a bracket derivation") {
  LoopAlgebra ctx(2, 8, Ring::rationals());
  auto pool = jacobi_pool(ctx);
  for (const auto& a : pool) {
    for (const auto& b : pool) {
      auto lhs = differential(bracket(a, b));
      auto rhs = bracket(differential(a), b);
      auto second = bracket(a, differential(b));
      rhs += (a.eps() & 1) ? -second : second;
      REQUIRE(lhs == rhs);
    }
  }
}

TEST_CASE("the product preserves the isotypic subspace") {
  LoopAlgebra ctx(2, 8, Ring::rationals());
  auto pool = jacobi_pool(ctx);
  for (const auto& a : pool)
    for (const auto& b : pool) REQUIRE(star(a, b).isotypic_check());
}

TEST_CASE("entry weight is additive under the product") {
  // weight = inputs + outputs - 2; gluing joins the necklaces through one
  // output and one input, removing a leg from each side
  LoopAlgebra ctx(2, 8, Ring::rationals());
  HigherCochain f(ctx, 2, -2);  // two inputs, two outputs: weight 2
  f.add_entry({{0}, {1}}, {0, 1}, one(ctx));
  f.add_entry({{1}, {0}}, {1, 0}, one(ctx));
  HigherCochain g(ctx, 1, -2);  // two inputs, one output: weight 1
  g.add_entry({{0, 0}}, {0}, one(ctx));
  g.add_entry({{1, 0}}, {1}, one(ctx));
  auto p = star(f, g);
  REQUIRE(!p.is_zero());
  for (const auto& [in, outs] : p.entries()) REQUIRE(entry_weight(in, p.ell()) == 3);
  auto q = star(g, f);
  REQUIRE(!q.is_zero());
  for (const auto& [in, outs] : q.entries()) REQUIRE(entry_weight(in, q.ell()) == 3);
}

TEST_CASE("truncation window of a product") {
  LoopAlgebra ctx(2, 6, Ring::rationals());
  // g raises degree by 2, so f's entries are only trustworthy up to
  // exponent total D - 2 after the gluing
  HigherCochain f(ctx, 1, 1);
  f.add_entry({{0}}, {2}, one(ctx));
  HigherCochain g(ctx, 1, 1);
  g.add_entry({{0}}, {2}, one(ctx));
  REQUIRE(star(f, g).cap() == 2);

  HigherCochain h(ctx, 1, 3);
  h.add_entry({{0}}, {4}, one(ctx));
  REQUIRE_THROWS_AS(star(h, h), WindowExceeded);
}

TEST_CASE("two multi-output factors need 1/l in the field") {
  LoopAlgebra ctx(2, 8, Ring::mod(2));
  HigherCochain f(ctx, 2, -2);
  f.add_entry({{0}, {0}}, {0, 0}, one(ctx));
  HigherCochain g(ctx, 3, -1);
  g.add_entry({{0}, {}, {}}, {0, 0, 0}, one(ctx));
  // result has l = 4 outputs and char 2 divides 4
  REQUIRE_THROWS_AS(star(f, g), FieldUnsupported);
  // a single-output factor never projects, so it stays available
  HigherCochain s(ctx, 1, -2);
  s.add_entry({{0, 0}}, {0}, one(ctx));
  REQUIRE(star(s, g).ell() == 3);
}

TEST_CASE("convolution elements reject degenerate components") {
  LoopAlgebra ctx(2, 8, Ring::rationals());
  ConvolutionElement m(ctx);

  HigherCochain copairing(ctx, 2, 1);
  copairing.add_entry({{}, {}}, {1, 0}, one(ctx));
  REQUIRE_THROWS_AS(m.add_part(copairing), Malformed);

  HigherCochain unary(ctx, 1, -1);
  unary.add_entry({{0}}, {0}, one(ctx));
  REQUIRE_THROWS_AS(m.add_part(unary), Malformed);

  m.add_part(mu_cochain(ctx));
  REQUIRE(!m.is_zero());
}

TEST_CASE("the multiplication is a Maurer-Cartan element") {
  for (int n : {2, 3}) {
    LoopAlgebra ctx(n, 8, Ring::rationals());
    ConvolutionElement m(ctx);
    m.add_part(mu_cochain(ctx));
    REQUIRE(mc_defect(m).is_zero());
    REQUIRE(differential(m).is_zero());
  }
}

TEST_CASE("projection to a weight and level box") {
  LoopAlgebra ctx(2, 8, Ring::rationals());
  ConvolutionElement m(ctx);
  m.add_part(mu_cochain(ctx));  // weight 1, level 0
  HigherCochain e3(ctx, 2, -2);  // weight 2, level 1
  e3.add_entry({{0, 0}, {}}, {0, 0}, one(ctx));
  m.add_part(e3);

  auto low = m.project(1, 1, 0, 0);
  auto high = m.project(2, 2, 1, 1);
  REQUIRE(low + high == m);
  REQUIRE(low.project(1, 1, 0, 0) == low);
  REQUIRE(high.parts().size() == 1);
  REQUIRE(m.project(5, 9, 0, 9).is_zero());
  REQUIRE(m.min_cap() == ctx.D);
}
