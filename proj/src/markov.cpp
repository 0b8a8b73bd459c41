#include "gtml/markov.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gtml {

bool is_point_state(const PointState& n) {
  for (std::size_t i = 1; i < n.size(); ++i)
    if (n[i - 1] <= n[i]) return false;
  return true;
}

Int vandermonde(const PointState& n) {
  Int out = 1;
  for (std::size_t i = 0; i < n.size(); ++i)
    for (std::size_t j = i + 1; j < n.size(); ++j) out *= Int(n[i] - n[j]);
  return out;
}

Rat jump_rate(const ZwParams& p, const PointState& n, int k, int direction) {
  int N = static_cast<int>(n.size());
  if (k < 1 || k > N) throw std::invalid_argument("jump_rate: coordinate out of range");
  if (direction != 1 && direction != -1)
    throw std::invalid_argument("jump_rate: direction must be +1 or -1");
  if (!is_point_state(n)) throw std::invalid_argument("jump_rate: not strictly decreasing");
  long nk = n[k - 1];
  long target = nk + direction;
  Rat vr = 1;
  for (int j = 0; j < N; ++j) {
    if (j == k - 1) continue;
    if (n[j] == target) return Rat(0);  // collision: Vandermonde vanishes
    vr *= Rat(target - n[j]) / Rat(nk - n[j]);
  }
  if (direction == 1) return vr * p.z.shifted_product(N - 1 - nk);
  return vr * p.w.shifted_product(nk);
}

std::vector<RateEntry> rates(const ZwParams& p, const PointState& n) {
  int N = static_cast<int>(n.size());
  std::vector<RateEntry> out;
  for (int k = 1; k <= N; ++k)
    for (int dir : {+1, -1}) {
      Rat r = jump_rate(p, n, k, dir);
      if (r == 0) continue;
      RateEntry e;
      e.to = n;
      e.to[k - 1] += dir;
      e.coord = k;
      e.direction = dir;
      e.rate = std::move(r);
      out.push_back(std::move(e));
    }
  return out;
}

GeneratorMatrix generator_matrix(const ZwParams& p, int N, long L) {
  if (N < 1) throw std::invalid_argument("generator_matrix: N >= 1 required");
  if (L < N - 1) throw std::invalid_argument("generator_matrix: box holds no state");
  GeneratorMatrix Q;
  Q.level = N;
  Q.box = L;
  // enumerate strictly increasing tuples and reverse each
  std::vector<long> asc(N);
  auto rec = [&](auto&& self, int i, long lo) -> void {
    if (i == N) {
      Q.states.emplace_back(asc.rbegin(), asc.rend());
      return;
    }
    for (long v = lo; v <= L - (N - 1 - i); ++v) {
      asc[i] = v;
      self(self, i + 1, v + 1);
    }
  };
  rec(rec, 0, -L);
  std::sort(Q.states.begin(), Q.states.end());
  for (std::size_t i = 0; i < Q.states.size(); ++i) Q.index[Q.states[i]] = static_cast<int>(i);

  Q.rows.resize(Q.states.size());
  Q.diagonal.resize(Q.states.size());
  Q.interior.resize(Q.states.size());
  for (std::size_t i = 0; i < Q.states.size(); ++i) {
    Rat total = 0;
    bool inside = true;
    for (const auto& e : rates(p, Q.states[i])) {
      total += e.rate;
      auto it = Q.index.find(e.to);
      if (it == Q.index.end())
        inside = false;
      else
        Q.rows[i].emplace_back(it->second, e.rate);
    }
    Q.diagonal[i] = -total;
    Q.interior[i] = inside;
  }
  return Q;
}

Trajectory simulate(const ZwParams& p, const PointState& start, double horizon,
                    std::uint64_t seed, std::uint64_t max_jumps) {
  if (!is_point_state(start)) throw std::invalid_argument("simulate: invalid start state");
  if (horizon < 0) throw std::invalid_argument("simulate: negative horizon");
  Trajectory traj;
  traj.initial = start;
  traj.seed = seed;
  SplitMix64 rng(seed);
  PointState cur = start;
  double t = 0;
  std::uint64_t jumps = 0;
  while (jumps < max_jumps) {
    auto moves = rates(p, cur);
    double total = 0;
    std::vector<double> w(moves.size());
    for (std::size_t i = 0; i < moves.size(); ++i) {
      w[i] = to_double(moves[i].rate);
      total += w[i];
    }
    if (!(total > 0)) throw std::runtime_error("simulate: zero total rate");
    t += -std::log(rng.uniform()) / total;
    if (t > horizon) break;
    double pick = rng.uniform() * total;
    std::size_t sel = 0;
    for (; sel + 1 < moves.size(); ++sel) {
      if (pick < w[sel]) break;
      pick -= w[sel];
    }
    cur = moves[sel].to;
    traj.events.emplace_back(t, cur);
    ++jumps;
  }
  traj.total_time = std::min(horizon, t);
  if (jumps == max_jumps) traj.total_time = t;
  return traj;
}

std::map<Signature, double> occupation_measure(const Trajectory& t) {
  std::map<Signature, double> occ;
  if (t.total_time <= 0) {
    occ[signature_from_points(t.initial)] = 1.0;
    return occ;
  }
  double prev = 0;
  const PointState* cur = &t.initial;
  for (const auto& [time, state] : t.events) {
    occ[signature_from_points(*cur)] += time - prev;
    prev = time;
    cur = &state;
  }
  if (t.total_time > prev) occ[signature_from_points(*cur)] += t.total_time - prev;
  for (auto& [sig, v] : occ) v /= t.total_time;
  return occ;
}

std::vector<double> semigroup_apply(const GeneratorMatrix& Q, double t,
                                    const std::vector<double>& v,
                                    double* mass_defect) {
  if (t < 0) throw std::invalid_argument("semigroup_apply: negative time");
  if (v.size() != Q.size()) throw std::invalid_argument("semigroup_apply: size mismatch");
  double vin = 0;
  for (double x : v) vin += x;

  double lambda = 0;
  for (const Rat& d : Q.diagonal) lambda = std::max(lambda, std::abs(to_double(d)));
  double mu = lambda * t;
  std::vector<double> result(v.size(), 0.0);
  if (mu == 0) {
    result = v;
    if (mass_defect) *mass_defect = 0;
    return result;
  }

  // Poisson weights around the mode, cut where they fall below 1e-19; the
  // neglected tail is far below the 1e-12 target.
  long k0 = static_cast<long>(std::floor(mu));
  double logw0 = k0 * std::log(mu) - mu - std::lgamma(static_cast<double>(k0) + 1.0);
  double w0 = std::exp(logw0);
  std::vector<double> weights;
  long kmax = k0;
  {
    double w = w0;
    std::vector<double> fwd{w};
    long k = k0;
    while (w > 1e-19) {
      ++k;
      w *= mu / static_cast<double>(k);
      fwd.push_back(w);
    }
    kmax = k;
    weights.assign(kmax + 1, 0.0);
    for (long i = k0; i <= kmax; ++i) weights[i] = fwd[i - k0];
    w = w0;
    for (long i = k0 - 1; i >= 0; --i) {
      w *= static_cast<double>(i + 1) / mu;
      weights[i] = w;
      if (w < 1e-19) break;
    }
  }
  double wsum = 0;
  for (double w : weights) wsum += w;
  if (wsum < 1.0 - 1e-12)
    throw std::runtime_error("semigroup_apply: Poisson truncation too aggressive");

  // double copies of the sparse rows
  std::vector<std::vector<std::pair<int, double>>> rowsd(Q.size());
  std::vector<double> diagd(Q.size());
  for (std::size_t i = 0; i < Q.size(); ++i) {
    diagd[i] = to_double(Q.diagonal[i]);
    rowsd[i].reserve(Q.rows[i].size());
    for (const auto& [j, r] : Q.rows[i]) rowsd[i].emplace_back(j, to_double(r));
  }

  std::vector<double> x = v, y(v.size());
  for (long k = 0; k <= kmax; ++k) {
    if (weights[k] > 0)
      for (std::size_t i = 0; i < x.size(); ++i) result[i] += weights[k] * x[i];
    if (k == kmax) break;
    // y = x + (Q^T x) / lambda
    std::fill(y.begin(), y.end(), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0.0) continue;
      y[i] += x[i] * (1.0 + diagd[i] / lambda);
      for (const auto& [j, r] : rowsd[i]) y[j] += x[i] * (r / lambda);
    }
    x.swap(y);
  }

  if (mass_defect) {
    double vout = 0;
    for (double s : result) vout += s;
    *mass_defect = vin - vout;
  }
  return result;
}

std::vector<BalanceMove> sample_balance_moves(int N, long L, int count,
                                              std::uint64_t seed) {
  if (N < 1 || L < N) throw std::invalid_argument("sample_balance_moves: bad box");
  SplitMix64 rng(seed);
  auto draw_value = [&]() {
    return static_cast<long>(rng.next() % (2 * L + 1)) - L;
  };
  std::vector<BalanceMove> out;
  while (static_cast<int>(out.size()) < count) {
    std::vector<long> vals(N);
    for (auto& v : vals) v = draw_value();
    std::sort(vals.rbegin(), vals.rend());
    if (!is_point_state(vals)) continue;
    int k = static_cast<int>(rng.next() % N) + 1;
    int dir = (rng.next() & 1) ? +1 : -1;
    PointState target = vals;
    target[k - 1] += dir;
    if (!is_point_state(target)) continue;  // collision: resample
    BalanceMove mv;
    mv.nu = signature_from_points(vals);
    mv.coord = k;
    mv.direction = dir;
    out.push_back(std::move(mv));
  }
  return out;
}

BalanceReport verify_detailed_balance(const ZwParams& p, int N,
                                      const std::vector<BalanceMove>& moves) {
  BalanceReport rep;
  for (const auto& mv : moves) {
    if (mv.nu.level() != N)
      throw std::invalid_argument("verify_detailed_balance: level mismatch");
    PointState n = to_point_configuration(mv.nu);
    PointState m = n;
    m[mv.coord - 1] += mv.direction;
    if (!is_point_state(m))
      throw std::invalid_argument("verify_detailed_balance: invalid move");
    Rat forward = jump_rate(p, n, mv.coord, mv.direction);
    Rat backward = jump_rate(p, m, mv.coord, -mv.direction);
    // M'(m)/M'(n) * backward == forward, all exact
    Rat ratio = weight_ratio(p, mv.nu, mv.coord, mv.direction);
    ++rep.checked;
    if (ratio * backward != forward) ++rep.failures;
  }
  rep.pass = rep.failures == 0;
  return rep;
}

namespace {

// exact one-step link row of the signature attached to a point state
std::map<Signature, Rat> link_row(const PointState& n) {
  return link_one_step(signature_from_points(n)).entries;
}

void add_scaled(std::map<Signature, Rat>& acc, const std::map<Signature, Rat>& row,
                const Rat& c) {
  for (const auto& [sig, v] : row) acc[sig] += c * v;
}

void prune_zeros(std::map<Signature, Rat>& m) {
  for (auto it = m.begin(); it != m.end();)
    it = (it->second == 0) ? m.erase(it) : std::next(it);
}

}  // namespace

IntertwineReport verify_intertwining(const ZwParams& p, int N, long L) {
  if (N < 2) throw std::invalid_argument("verify_intertwining: N >= 2 required");
  GeneratorMatrix Q = generator_matrix(p, N, L);
  IntertwineReport rep;
  rep.level = N;
  rep.box = L;
  for (std::size_t i = 0; i < Q.size(); ++i) {
    if (!Q.interior[i]) continue;
    ++rep.interior_states;
    const PointState& n = Q.states[i];
    Signature nu = signature_from_points(n);

    // (Q_N Lambda)(nu, .) with the full untruncated row of Q_N
    std::map<Signature, Rat> lhs;
    Rat total = 0;
    for (const auto& e : rates(p, n)) {
      add_scaled(lhs, link_row(e.to), e.rate);
      total += e.rate;
    }
    add_scaled(lhs, link_row(n), -total);

    // (Lambda Q_{N-1})(nu, .)
    std::map<Signature, Rat> rhs;
    for (const auto& [mu, c] : link_row(n)) {
      PointState m = to_point_configuration(mu);
      Rat mtotal = 0;
      for (const auto& e : rates(p, m)) {
        rhs[signature_from_points(e.to)] += c * e.rate;
        mtotal += e.rate;
      }
      rhs[mu] += -c * mtotal;
    }

    prune_zeros(lhs);
    prune_zeros(rhs);
    if (lhs != rhs) rep.failures.push_back(nu);
  }
  rep.pass = rep.failures.empty();
  return rep;
}

}  // namespace gtml
