#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "gtml/links.hpp"
#include "gtml/zw.hpp"

namespace gtml {

// Element of Omega_N: strictly decreasing integer tuple.
using PointState = std::vector<long>;

bool is_point_state(const PointState& n);

// V(n) = prod_{i<j} (n_i - n_j); positive for a valid state.
Int vandermonde(const PointState& n);

// Rate of the move n -> n + direction * e_k (k is 1-based); exact 0 when the
// move collides. Up moves carry (V(n+e_k)/V(n)) (z+N-1-n_k)(z'+N-1-n_k), down
// moves (V(n-e_k)/V(n)) (w+n_k)(w'+n_k).
Rat jump_rate(const ZwParams& p, const PointState& n, int k, int direction);

struct RateEntry {
  PointState to;
  int coord = 0;      // 1-based
  int direction = 0;  // +1 or -1
  Rat rate;
};

// All moves with nonzero rate out of n.
std::vector<RateEntry> rates(const ZwParams& p, const PointState& n);

struct GeneratorMatrix {
  int level = 0;
  long box = 0;  // coordinates confined to [-box, box]
  std::vector<PointState> states;  // ascending lexicographic
  std::map<PointState, int> index;
  // off-diagonal entries to in-box targets
  std::vector<std::vector<std::pair<int, Rat>>> rows;
  std::vector<Rat> diagonal;   // -(sum of all rates, including out-of-box)
  std::vector<bool> interior;  // every move stays inside the box

  std::size_t size() const { return states.size(); }
};

GeneratorMatrix generator_matrix(const ZwParams& p, int N, long L);

struct Trajectory {
  PointState initial;
  std::vector<std::pair<double, PointState>> events;  // (jump time, new state)
  double total_time = 0;
  std::uint64_t seed = 0;
};

// Event-driven jump chain: exponential holding times, next state proportional
// to the exact rates (converted to double at the sampler boundary only).
// Deterministic for a fixed seed.
Trajectory simulate(const ZwParams& p, const PointState& start, double horizon,
                    std::uint64_t seed, std::uint64_t max_jumps = UINT64_MAX);

// Time-weighted occupation frequencies of a trajectory, keyed by signature.
std::map<Signature, double> occupation_measure(const Trajectory& t);

// e^{t Q^T} v by uniformization; Poisson series truncated with remainder
// below 1e-12. The substochastic boundary leakage (input mass minus output
// mass) is reported through mass_defect.
std::vector<double> semigroup_apply(const GeneratorMatrix& Q, double t,
                                    const std::vector<double>& v,
                                    double* mass_defect = nullptr);

struct BalanceMove {
  Signature nu;
  int coord = 0;
  int direction = 0;
};

// Valid (collision-free) moves drawn uniformly from the box, reproducibly.
std::vector<BalanceMove> sample_balance_moves(int N, long L, int count,
                                              std::uint64_t seed);

struct BalanceReport {
  int checked = 0;
  int failures = 0;
  bool pass = false;
};

// Exact reversibility check M'(nu) rate(nu->mu) = M'(mu) rate(mu->nu) through
// the Gamma-free ratio recurrences.
BalanceReport verify_detailed_balance(const ZwParams& p, int N,
                                      const std::vector<BalanceMove>& moves);

struct IntertwineReport {
  int level = 0;
  long box = 0;
  int interior_states = 0;
  bool pass = false;
  std::vector<Signature> failures;
};

// Generator-level intertwining: (Q_N Lambda)(nu,.) = (Lambda Q_{N-1})(nu,.)
// as exact finitely supported rows, for every interior nu of the box.
IntertwineReport verify_intertwining(const ZwParams& p, int N, long L);

}  // namespace gtml
