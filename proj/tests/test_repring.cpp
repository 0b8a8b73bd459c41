#include "doctest.h"
#include "gtml/repring.hpp"

#include "gtml/markov.hpp"

using namespace gtml;

namespace {

ZwParams half_params() {
  RatComplex h(Rat(1, 2));
  return make_params(h, h, h, h);
}

ZwParams conj_params() {
  return make_params(RatComplex(Rat(1, 2), Rat(1)), RatComplex(Rat(1, 2), Rat(-1)),
                     RatComplex(Rat(1, 2)), RatComplex(Rat(1, 2)));
}

RingElement monomial(std::vector<long> idx, Rat c = Rat(1)) {
  std::sort(idx.rbegin(), idx.rend());
  RingElement e;
  e.add(idx, c);
  return e;
}

}  // namespace

TEST_CASE("character elements") {
  // 1x1 determinant
  CHECK(character_element(Signature({5})) == monomial({5}));

  // chi_{(1,0)} = phi_1 phi_0 - phi_2 phi_{-1}
  RingElement chi10 = character_element(Signature({1, 0}));
  RingElement expect = monomial({1, 0});
  expect += monomial({2, -1}, Rat(-1));
  CHECK(chi10 == expect);

  // det[phi_{-i+j}] for nu = (0,0,0): 6 signed monomials before cancellation
  RingElement chi000 = character_element(Signature({0, 0, 0}));
  CHECK(chi000.terms.count(Monomial{0, 0, 0}) == 1);
  CHECK(chi000.homogeneous(3));
  // its value reproduces itself through the expansion round trip below
}

TEST_CASE("apply_D on a single indeterminate") {
  // D phi_0 = (9/4) phi_1 + (9/4) phi_{-1} - (1/2) phi_0 at the half params
  ZwParams p = half_params();
  RingElement out = apply_D(p, monomial({0}));
  RingElement expect = monomial({1}, Rat(9, 4));
  expect += monomial({-1}, Rat(9, 4));
  expect += monomial({0}, Rat(-1, 2));
  CHECK(out == expect);
}

TEST_CASE("apply_D matches the N=1 generator row") {
  for (const ZwParams& p : {half_params(), conj_params()}) {
    for (long n = -5; n <= 5; ++n) {
      RingElement out = apply_D(p, monomial({n}));
      RingElement expect = monomial({n + 1}, jump_rate(p, {n + 1}, 1, -1));
      expect += monomial({n - 1}, jump_rate(p, {n - 1}, 1, +1));
      expect += monomial({n}, -(jump_rate(p, {n}, 1, +1) + jump_rate(p, {n}, 1, -1)));
      CHECK(out == expect);
    }
  }
}

TEST_CASE("apply_D is linear") {
  ZwParams p = conj_params();
  RingElement x = character_element(Signature({1, 0}));
  RingElement y = character_element(Signature({2, -1}));
  RingElement ax = x;
  ax *= Rat(3, 7);
  RingElement by = y;
  by *= Rat(-2, 5);
  RingElement combo = ax;
  combo += by;

  RingElement lhs = apply_D(p, combo);
  RingElement rx = apply_D(p, x);
  rx *= Rat(3, 7);
  RingElement ry = apply_D(p, y);
  ry *= Rat(-2, 5);
  rx += ry;
  CHECK(lhs == rx);
}

TEST_CASE("window widening does not change the result") {
  ZwParams p = half_params();
  RingElement x = character_element(Signature({1, 0}));
  RingElement narrow = apply_D(p, x);
  RingElement wide = apply_D(p, x, IndexWindow{-6, 7});
  CHECK(narrow == wide);
}

TEST_CASE("apply_D rejects inputs outside the character span") {
  ZwParams p = half_params();
  // phi_0^2 expands into an infinite character series, so the telescoping
  // assertion must fail at the window cap
  CHECK_THROWS_AS(apply_D(p, monomial({0, 0})), std::runtime_error);
}

TEST_CASE("expansion round trip on characters") {
  for (const Signature& nu :
       {Signature({0}), Signature({3}), Signature({1, 0}), Signature({2, -1}),
        Signature({0, 0}), Signature({2, 1, 0}), Signature({1, 0, -1})}) {
    CharacterExpansion e = expand_in_characters(character_element(nu), nu.level());
    REQUIRE(e.coeff.size() == 1);
    CHECK(e.coeff.at(nu) == 1);
  }
}

TEST_CASE("expansion reconstructs linear combinations") {
  RingElement x = character_element(Signature({1, 0}));
  x *= Rat(2, 3);
  RingElement y = character_element(Signature({1, 1}));
  y *= Rat(-5);
  x += y;
  CharacterExpansion e = expand_in_characters(x, 2);
  CHECK(e.coeff.at(Signature({1, 0})) == Rat(2, 3));
  CHECK(e.coeff.at(Signature({1, 1})) == Rat(-5));
  CHECK(reconstruct(e) == x);
}

TEST_CASE("expansion of the zero element is empty") {
  CHECK(expand_in_characters(RingElement{}, 2).coeff.empty());
}

TEST_CASE("expansion detects non-members by their diverging correction chain") {
  // phi_1 phi_0 = chi_{(1,0)} + chi_{(2,-1)} + chi_{(3,-2)} + ... never
  // terminates, so it lies outside the algebraic span
  CHECK_THROWS_AS(expand_in_characters(monomial({1, 0}), 2), std::runtime_error);
  CHECK_THROWS_AS(expand_in_characters(monomial({0, 0}), 2), std::runtime_error);
}

TEST_CASE("expansion rejects inhomogeneous input") {
  RingElement x = monomial({1, 0});
  x += monomial({2});
  CHECK_THROWS_AS(expand_in_characters(x, 2), std::invalid_argument);
}

TEST_CASE("D maps characters into the character span") {
  ZwParams p = half_params();
  RingElement image = apply_D(p, character_element(Signature({1, 0})));
  CharacterExpansion e = expand_in_characters(image, 2);
  CHECK(!e.coeff.empty());
  CHECK(reconstruct(e) == image);
}

TEST_CASE("generator consistency at N=1") {
  for (const ZwParams& p : {half_params(), conj_params()})
    for (long n = -5; n <= 5; ++n) {
      auto rep = verify_generator_consistency(p, Signature({n}));
      CHECK(rep.pass);
    }
}

TEST_CASE("generator consistency at N=2") {
  for (const ZwParams& p : {half_params(), conj_params()}) {
    for (long a = -2; a <= 2; ++a)
      for (long b = -2; b <= a; ++b) {
        auto rep = verify_generator_consistency(p, Signature({a, b}));
        CHECK(rep.pass);
      }
  }
}

TEST_CASE("generator consistency support at nu = (1,0)") {
  auto rep = verify_generator_consistency(half_params(), Signature({1, 0}));
  REQUIRE(rep.pass);
  // support: the four valid moves plus the diagonal
  CHECK(rep.rhs.size() == 5);
  CHECK(rep.rhs.count(Signature({2, 0})) == 1);
  CHECK(rep.rhs.count(Signature({1, 1})) == 1);
  CHECK(rep.rhs.count(Signature({0, 0})) == 1);
  CHECK(rep.rhs.count(Signature({1, -1})) == 1);
  CHECK(rep.rhs.count(Signature({1, 0})) == 1);
}

TEST_CASE("generator consistency support at nu = (0,0)") {
  auto rep = verify_generator_consistency(half_params(), Signature({0, 0}));
  REQUIRE(rep.pass);
  // collision moves are absent on both sides
  CHECK(rep.rhs.size() == 3);
  CHECK(rep.rhs.count(Signature({1, 0})) == 1);
  CHECK(rep.rhs.count(Signature({0, -1})) == 1);
  CHECK(rep.rhs.count(Signature({0, 0})) == 1);
}

TEST_CASE("generator consistency at N=3") {
  auto rep = verify_generator_consistency(half_params(), Signature({1, 0, -1}));
  CHECK(rep.pass);
}
