#include "doctest.h"
#include "gtml/markov.hpp"

#include <cmath>

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

double tv(const std::map<Signature, double>& a, const std::map<Signature, double>& b) {
  double acc = 0;
  for (const auto& [k, v] : a) {
    auto it = b.find(k);
    acc += std::abs(v - (it == b.end() ? 0.0 : it->second));
  }
  for (const auto& [k, v] : b)
    if (!a.count(k)) acc += std::abs(v);
  return 0.5 * acc;
}

}  // namespace

TEST_CASE("vandermonde examples") {
  CHECK(vandermonde({1, 0}) == 1);
  CHECK(vandermonde({4, 2, 0}) == 16);
  CHECK(vandermonde({7}) == 1);
}

TEST_CASE("jump rate examples") {
  ZwParams p = half_params();
  // N=1, n=0: both rates 1/4
  CHECK(jump_rate(p, {0}, 1, +1) == Rat(1, 4));
  CHECK(jump_rate(p, {0}, 1, -1) == Rat(1, 4));
  // N=2, n=(1,0): upward move of the second coordinate collides
  CHECK(jump_rate(p, {1, 0}, 2, +1) == Rat(0));
  // N=2, n=(2,0), second coordinate up to (2,1): V-ratio 1/2, (3/2)^2, so 9/8
  CHECK(jump_rate(p, {2, 0}, 2, +1) == Rat(9, 8));
}

TEST_CASE("rates lists only valid moves with positive rates") {
  for (const ZwParams& p : {half_params(), conj_params()}) {
    auto list = rates(p, {3, 1, 0});
    for (const auto& e : list) {
      CHECK(e.rate > 0);
      CHECK(is_point_state(e.to));
    }
    // moves: 1 up/down, 2 up/down(collides), 3 up(collides)/down -> 4 entries
    CHECK(list.size() == 4);
  }
}

TEST_CASE("generator matrix structure") {
  ZwParams p = half_params();
  GeneratorMatrix q1 = generator_matrix(p, 1, 2);
  CHECK(q1.size() == 5);  // states -2..2, tridiagonal
  for (std::size_t i = 0; i < q1.size(); ++i) CHECK(q1.rows[i].size() <= 2);

  GeneratorMatrix q2 = generator_matrix(p, 2, 3);
  CHECK(q2.size() == 21);  // C(7,2)

  // interior rows sum to exactly zero
  for (std::size_t i = 0; i < q2.size(); ++i) {
    Rat row_sum = q2.diagonal[i];
    for (const auto& [j, r] : q2.rows[i]) row_sum += r;
    if (q2.interior[i])
      CHECK(row_sum == 0);
    else
      CHECK(row_sum < 0);
  }
}

TEST_CASE("detailed balance on sampled moves") {
  for (const ZwParams& p : {half_params(), conj_params()}) {
    for (int N : {1, 2, 3}) {
      auto moves = sample_balance_moves(N, 5, 50, 20240901 + N);
      auto rep = verify_detailed_balance(p, N, moves);
      CHECK(rep.checked == 50);
      CHECK(rep.pass);
    }
  }
}

TEST_CASE("detailed balance hand example") {
  // N=1 pair (0,1): M'(0) rate(0->1) vs M'(1) rate(1->0):
  // 1 * 1/4 == 1/9 * 9/4
  ZwParams p = half_params();
  Rat ratio = weight_ratio(p, Signature({0}), 1, +1);
  CHECK(ratio == Rat(1, 9));
  CHECK(jump_rate(p, {0}, 1, +1) == Rat(1, 4));
  CHECK(jump_rate(p, {1}, 1, -1) == Rat(9, 4));
  CHECK(Rat(1) * jump_rate(p, {0}, 1, +1) == ratio * jump_rate(p, {1}, 1, -1));
}

TEST_CASE("simulation basics") {
  ZwParams p = half_params();
  Trajectory t0 = simulate(p, {0}, 0.0, 7);
  CHECK(t0.events.empty());
  CHECK(occupation_measure(t0).at(Signature({0})) == 1.0);

  Trajectory a = simulate(p, {0}, 50.0, 12345);
  Trajectory b = simulate(p, {0}, 50.0, 12345);
  REQUIRE(a.events.size() == b.events.size());
  for (std::size_t i = 0; i < a.events.size(); ++i) {
    CHECK(a.events[i].first == b.events[i].first);  // bit-identical replay
    CHECK(a.events[i].second == b.events[i].second);
  }
  Trajectory c = simulate(p, {0}, 50.0, 54321);
  CHECK(a.events != c.events);

  // times strictly increasing; consecutive states differ by one unit move
  const PointState* prev = &a.initial;
  double tprev = 0;
  for (const auto& [time, state] : a.events) {
    CHECK(time > tprev);
    long diff = 0;
    for (std::size_t i = 0; i < state.size(); ++i) diff += std::abs(state[i] - (*prev)[i]);
    CHECK(diff == 1);
    tprev = time;
    prev = &state;
  }
}

TEST_CASE("long-run occupation approaches the stationary measure") {
  ZwParams p = half_params();
  Trajectory t = simulate(p, {0}, 1e18, 99991, 100000);
  auto occ = occupation_measure(t);
  FiniteMeasure m = zw_measure(p, 1, 1e-8);
  CHECK(tv(occ, m.mass) <= 0.05);
}

TEST_CASE("uniformization at t=0 and small t") {
  ZwParams p = half_params();
  GeneratorMatrix Q = generator_matrix(p, 1, 6);
  std::vector<double> v(Q.size(), 0.0);
  v[Q.index.at(PointState{0})] = 1.0;

  auto r0 = semigroup_apply(Q, 0.0, v);
  CHECK(r0 == v);

  // first-order agreement at small t: e^{tQ^T}v = v + t Q^T v + O(t^2)
  double t = 1e-3;
  auto rt = semigroup_apply(Q, t, v);
  std::vector<double> first(v);
  for (std::size_t i = 0; i < Q.size(); ++i) {
    if (v[i] == 0.0) continue;
    first[i] += t * to_double(Q.diagonal[i]) * v[i];
    for (const auto& [j, r] : Q.rows[i]) first[j] += t * to_double(r) * v[i];
  }
  double err = 0;
  for (std::size_t i = 0; i < v.size(); ++i) err += std::abs(rt[i] - first[i]);
  CHECK(err < 1e-5);
}

TEST_CASE("uniformization keeps probability vectors substochastic") {
  ZwParams p = conj_params();
  GeneratorMatrix Q = generator_matrix(p, 2, 5);
  std::vector<double> v(Q.size(), 0.0);
  v[Q.index.at(PointState{1, 0})] = 1.0;
  double defect = 0;
  auto r = semigroup_apply(Q, 0.7, v, &defect);
  double total = 0;
  for (double x : r) {
    CHECK(x >= -1e-15);
    total += x;
  }
  CHECK(total <= 1.0 + 1e-12);
  CHECK(std::abs((1.0 - total) - defect) < 1e-12);
}

TEST_CASE("truncated stationary measure is nearly invariant") {
  for (const ZwParams& p : {half_params(), conj_params()}) {
    for (int N : {1, 2}) {
      GeneratorMatrix Q = generator_matrix(p, N, 8);
      FiniteMeasure m = zw_measure_box(p, N, 8);
      std::vector<double> v(Q.size(), 0.0);
      for (std::size_t i = 0; i < Q.size(); ++i)
        v[i] = m.mass.at(signature_from_points(Q.states[i]));
      double defect = 0;
      auto r = semigroup_apply(Q, 1.0, v, &defect);
      double acc = 0;
      for (std::size_t i = 0; i < v.size(); ++i) acc += std::abs(r[i] - v[i]);
      CHECK(0.5 * acc <= defect + 1e-6);
    }
  }
}

TEST_CASE("generator-level intertwining is exact") {
  for (const ZwParams& p : {half_params(), conj_params()}) {
    auto rep2 = verify_intertwining(p, 2, 4);
    CHECK(rep2.pass);
    CHECK(rep2.interior_states > 0);
    auto rep3 = verify_intertwining(p, 3, 3);
    CHECK(rep3.pass);
    CHECK(rep3.interior_states > 0);
  }
}

TEST_CASE("intertwining annihilates constants") {
  // both sides applied to f = 1 vanish: row sums of Q are zero and link rows
  // are stochastic
  ZwParams p = half_params();
  GeneratorMatrix Q = generator_matrix(p, 2, 4);
  for (std::size_t i = 0; i < Q.size(); ++i) {
    if (!Q.interior[i]) continue;
    Rat s = Q.diagonal[i];
    for (const auto& [j, r] : Q.rows[i]) s += r;
    CHECK(s == 0);
    CHECK(link_one_step(signature_from_points(Q.states[i])).sum() == 1);
  }
}
