#include "doctest.h"
#include "gtml/zw.hpp"

#include <cmath>

using namespace gtml;

namespace {

ZwParams half_params() {
  RatComplex h(Rat(1, 2));
  return make_params(h, h, h, h);
}

ZwParams conj_params() {
  // z = 1/2 + i, z' = conj, w = w' = 1/2
  return make_params(RatComplex(Rat(1, 2), Rat(1)), RatComplex(Rat(1, 2), Rat(-1)),
                     RatComplex(Rat(1, 2)), RatComplex(Rat(1, 2)));
}

}  // namespace

TEST_CASE("admissibility examples") {
  RatComplex h(Rat(1, 2));
  CHECK(is_admissible(h, h, h, h).ok);

  auto bad = is_admissible(RatComplex(Rat(1)), h, h, h);
  CHECK(!bad.ok);
  CHECK(bad.reason.find("integer") != std::string::npos);

  // conjugate z-pair with real w-pair in (-1,0)
  auto conj = is_admissible(RatComplex(Rat(1, 2), Rat(1)), RatComplex(Rat(1, 2), Rat(-1)),
                            RatComplex(Rat(-1, 4)), RatComplex(Rat(-1, 4)));
  CHECK(conj.ok);

  // members in different unit intervals
  auto split = is_admissible(RatComplex(Rat(1, 2)), RatComplex(Rat(3, 2)), h, h);
  CHECK(!split.ok);
  CHECK(split.reason.find("unit interval") != std::string::npos);

  // sum condition: z+z'+w+w' = -1 exactly is rejected
  RatComplex q(Rat(-1, 4));
  auto sum = is_admissible(q, q, q, q);
  CHECK(!sum.ok);
  CHECK(sum.reason.find("-1") != std::string::npos);

  // mismatched imaginary parts
  auto mism = is_admissible(RatComplex(Rat(1, 2), Rat(1)), RatComplex(Rat(1, 2), Rat(-2)),
                            h, h);
  CHECK(!mism.ok);
}

TEST_CASE("shifted products are positive exact rationals") {
  ZwParams p = conj_params();
  for (long k = -20; k <= 20; ++k) {
    CHECK(p.z.shifted_product(k) > 0);
    CHECK(p.w.shifted_product(k) > 0);
  }
  // conjugate pair: (1/2 + i + 1)(1/2 - i + 1) = 9/4 + 1
  CHECK(p.z.shifted_product(1) == Rat(13, 4));
}

TEST_CASE("point configuration round trip") {
  CHECK(to_point_configuration(Signature({0, 0})) == std::vector<long>({1, 0}));
  CHECK(to_point_configuration(Signature({1, 0})) == std::vector<long>({2, 0}));
  CHECK(to_point_configuration(Signature({2, 1, 0})) == std::vector<long>({4, 2, 0}));
  CHECK(signature_from_points({4, 2, 0}) == Signature({2, 1, 0}));
  for (const auto& nu : {Signature({3, 1, -2}), Signature({0, 0, 0, 0})})
    CHECK(signature_from_points(to_point_configuration(nu)) == nu);
}

TEST_CASE("weight ratio examples") {
  ZwParams p = half_params();
  // N=1: M(1)/M(0) = (z z')/((w+1)(w'+1)) = 1/9
  CHECK(weight_ratio(p, Signature({0}), 1, +1) == Rat(1, 9));
  CHECK(weight_ratio(p, Signature({0}), 1, -1) == Rat(1, 9));
  // collision move gives exact zero
  CHECK(weight_ratio(p, Signature({0, 0}), 2, +1) == Rat(0));
  CHECK(weight_ratio(p, Signature({0, 0}), 1, -1) == Rat(0));
  // malformed moves throw
  CHECK_THROWS_AS(weight_ratio(p, Signature({0}), 2, +1), std::invalid_argument);
  CHECK_THROWS_AS(weight_ratio(p, Signature({0}), 1, 2), std::invalid_argument);
}

TEST_CASE("weight ratios are positive on valid moves") {
  for (const ZwParams& p : {half_params(), conj_params()}) {
    Signature nu({3, 1, -2});
    for (int k = 1; k <= 3; ++k)
      for (int dir : {+1, -1}) {
        Rat r = weight_ratio(p, nu, k, dir);
        CHECK(r > 0);  // all moves of this nu are collision free
      }
  }
}

TEST_CASE("bilateral detailed-balance recurrence, N=1") {
  // M(n+1)/M(n) = (z-n)(z'-n) / ((w+n+1)(w'+n+1)) for n in [-6, 6]
  for (const ZwParams& p : {half_params(), conj_params()}) {
    for (long n = -6; n <= 6; ++n) {
      Rat expect = p.z.shifted_product(-n) / p.w.shifted_product(n + 1);
      CHECK(weight_ratio(p, Signature({n}), 1, +1) == expect);
    }
  }
}

TEST_CASE("symmetric parameters give a symmetric N=1 weight chain") {
  // z = w, z' = w': the exact product of down-ratios from (n) to (-n) is 1
  ZwParams p = half_params();
  for (long n = 1; n <= 8; ++n) {
    Rat prod = 1;
    for (long m = n; m > -n; --m) prod *= weight_ratio(p, Signature({m}), 1, -1);
    CHECK(prod == 1);
  }
}

TEST_CASE("zw measure at N=1") {
  ZwParams p = half_params();
  FiniteMeasure m = zw_measure(p, 1, 1e-6);
  CHECK(m.residual < 1e-6);
  double total = 0;
  for (const auto& [sig, v] : m.mass) {
    CHECK(v >= 0);
    total += v;
  }
  CHECK(std::abs(total - 1.0) < 1e-12);
  double m0 = m.mass.at(Signature({0}));
  CHECK(std::abs(m.mass.at(Signature({1})) / m0 - 1.0 / 9.0) < 1e-12);
  CHECK(std::abs(m.mass.at(Signature({-1})) / m0 - 1.0 / 9.0) < 1e-12);
  // symmetry of the whole support under n -> -n
  for (const auto& [sig, v] : m.mass) {
    Signature neg({-sig.parts[0]});
    CHECK(m.mass.at(neg) == v);
  }
  // cross-check against the closed normalization constant; accuracy is
  // limited by the truncated tail, so roughly eps
  CHECK(m.normalization_consistency < 1e-6);
}

TEST_CASE("zw measure residual bound is conservative (larger-box oracle)") {
  for (const ZwParams& p : {half_params(), conj_params()}) {
    FiniteMeasure small = zw_measure(p, 1, 1e-4);
    FiniteMeasure big = zw_measure_box(p, 1, 4 * small.box);
    double outside = 0;
    for (const auto& [sig, v] : big.mass)
      if (std::abs(sig.parts[0]) > small.box) outside += v;
    CHECK(outside <= small.residual);
  }
}

TEST_CASE("zw measure at N=2 normalizes and matches the Gamma constant") {
  for (const ZwParams& p : {half_params(), conj_params()}) {
    FiniteMeasure m = zw_measure(p, 2, 1e-5);
    double total = 0;
    for (const auto& [sig, v] : m.mass) total += v;
    // retained mass is 1 minus the dropped slack, which is inside residual
    CHECK(total <= 1.0 + 1e-12);
    CHECK(total + m.residual >= 1.0 - 1e-12);
    CHECK(m.residual < 1e-5);
    CHECK(m.normalization_consistency < 1e-5);
  }
}

TEST_CASE("dougall residual at the half parameters") {
  DougallReport rep = dougall_check(half_params(), 500);
  CHECK(rep.residual <= 1e-8);
  CHECK(rep.tail_estimate < 1e-8);
}

TEST_CASE("dougall residual for a conjugate pair") {
  // z = 1/2 + i, w = w' = 1/4
  ZwParams p = make_params(RatComplex(Rat(1, 2), Rat(1)), RatComplex(Rat(1, 2), Rat(-1)),
                           RatComplex(Rat(1, 4)), RatComplex(Rat(1, 4)));
  DougallReport rep = dougall_check(p, 1000);
  CHECK(rep.residual <= 1e-6);
}

TEST_CASE("coherency at N=2 and N=3") {
  for (const ZwParams& p : {half_params(), conj_params()}) {
    CoherencyReport rep = verify_coherency(p, 2, 1e-6);
    CHECK(rep.pass);
    CHECK(rep.tv <= 1e-5);
  }
  CoherencyReport rep3 = verify_coherency(half_params(), 3, 1e-5);
  CHECK(rep3.tv <= 1e-4);
}

TEST_CASE("coherency residual shrinks as eps shrinks") {
  ZwParams p = half_params();
  CoherencyReport coarse = verify_coherency(p, 2, 1e-3);
  CoherencyReport fine = verify_coherency(p, 2, 1e-6);
  CHECK(fine.tv <= coarse.tv + 1e-12);
}

TEST_CASE("inadmissible parameters are rejected") {
  CHECK_THROWS_AS(make_params(RatComplex(Rat(2)), RatComplex(Rat(1, 2)),
                              RatComplex(Rat(1, 2)), RatComplex(Rat(1, 2))),
                  std::invalid_argument);
  CHECK_THROWS_AS(zw_measure(half_params(), 0, 1e-3), std::invalid_argument);
  CHECK_THROWS_AS(zw_measure(half_params(), 1, 0.0), std::invalid_argument);
}
