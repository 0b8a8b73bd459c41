#include "gtml/zw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gtml {

ZwPair ZwPair::real(const Rat& a, const Rat& b) {
  std::string reason;
  auto p = classify(RatComplex(a), RatComplex(b), &reason);
  if (!p) throw std::invalid_argument("ZwPair::real: " + reason);
  return *p;
}

ZwPair ZwPair::conjugate(const Rat& re, const Rat& im) {
  std::string reason;
  auto p = classify(RatComplex(re, im), RatComplex(re, -im), &reason);
  if (!p) throw std::invalid_argument("ZwPair::conjugate: " + reason);
  return *p;
}

std::optional<ZwPair> ZwPair::classify(const RatComplex& a, const RatComplex& b,
                                       std::string* reason) {
  ZwPair out;
  if (!a.is_real() || !b.is_real()) {
    if (a.is_real() || b.is_real() || !(b == a.conj())) {
      if (reason) *reason = "non-real members must form a conjugate pair";
      return std::nullopt;
    }
    out.kind_ = Kind::conjugate_pair;
    out.a_ = a.re;
    out.b_ = a.im;
    return out;
  }
  if (is_integer(a.re) || is_integer(b.re)) {
    if (reason) *reason = "real member is an integer";
    return std::nullopt;
  }
  if (floor_long(a.re) != floor_long(b.re)) {
    if (reason) *reason = "real members lie in different open unit intervals";
    return std::nullopt;
  }
  out.kind_ = Kind::real_pair;
  out.a_ = a.re;
  out.b_ = b.re;
  return out;
}

Rat ZwPair::shifted_product(long k) const {
  if (kind_ == Kind::real_pair) return (a_ + k) * (b_ + k);
  return (a_ + k) * (a_ + k) + b_ * b_;
}

Rat ZwPair::sum_real() const {
  if (kind_ == Kind::real_pair) return a_ + b_;
  return 2 * a_;
}

RatComplex ZwPair::first() const {
  if (kind_ == Kind::real_pair) return RatComplex(a_);
  return RatComplex(a_, b_);
}

RatComplex ZwPair::second() const {
  if (kind_ == Kind::real_pair) return RatComplex(b_);
  return RatComplex(a_, -b_);
}

Admissibility is_admissible(const RatComplex& z, const RatComplex& z2,
                            const RatComplex& w, const RatComplex& w2) {
  std::string reason;
  auto zp = ZwPair::classify(z, z2, &reason);
  if (!zp) return {false, "(z,z') not in Z: " + reason};
  auto wp = ZwPair::classify(w, w2, &reason);
  if (!wp) return {false, "(w,w') not in Z: " + reason};
  if (!(zp->sum_real() + wp->sum_real() > -1))
    return {false, "Re(z+z'+w+w') <= -1"};
  return {true, ""};
}

ZwParams make_params(const RatComplex& z, const RatComplex& z2,
                     const RatComplex& w, const RatComplex& w2) {
  auto adm = is_admissible(z, z2, w, w2);
  if (!adm.ok) throw std::invalid_argument("inadmissible parameters: " + adm.reason);
  std::string ignored;
  return ZwParams{*ZwPair::classify(z, z2, &ignored), *ZwPair::classify(w, w2, &ignored)};
}

std::vector<long> to_point_configuration(const Signature& nu) {
  int n = nu.level();
  std::vector<long> out(n);
  for (int i = 0; i < n; ++i) out[i] = nu.parts[i] + n - (i + 1);
  return out;
}

Signature signature_from_points(const std::vector<long>& n) {
  int N = static_cast<int>(n.size());
  std::vector<long> parts(N);
  for (int i = 0; i < N; ++i) parts[i] = n[i] - N + (i + 1);
  return Signature(std::move(parts));
}

Rat weight_ratio(const ZwParams& p, const Signature& nu, int k, int direction) {
  int N = nu.level();
  if (k < 1 || k > N) throw std::invalid_argument("weight_ratio: coordinate out of range");
  if (direction != 1 && direction != -1)
    throw std::invalid_argument("weight_ratio: direction must be +1 or -1");
  std::vector<long> n = to_point_configuration(nu);
  long nk = n[k - 1];
  long target = nk + direction;
  for (int j = 0; j < N; ++j)
    if (j != k - 1 && n[j] == target) return Rat(0);  // collision: Dim factor vanishes
  Rat vr = 1;
  for (int j = 0; j < N; ++j)
    if (j != k - 1) vr *= Rat(target - n[j]) / Rat(nk - n[j]);
  if (direction == 1)
    return vr * vr * p.z.shifted_product(N - 1 - nk) / p.w.shifted_product(nk + 1);
  return vr * vr * p.w.shifted_product(nk) / p.z.shifted_product(N - nk);
}

namespace {

// Univariate log-weight table: h(m) = g(m)/g(0), where g(m) collects the four
// Gamma factors attached to one point coordinate. The one-step ratios of h
// are exact rationals; only their logarithms are stored.
struct MeasureGrid {
  int N = 0;
  long L = 0;
  std::vector<double> logh;        // index m + L
  std::vector<double> maxlogh_le;  // prefix max over [-L .. m]
  double ref_logh = 0;             // sum_i logh(ref_i), ref = (N-1, ..., 0)
  double logVref = 0;

  double at(long m) const { return logh[m + L]; }
  double prefix_max(long m) const { return maxlogh_le[m + L]; }
};

MeasureGrid build_grid(const ZwParams& p, int N, long L) {
  MeasureGrid g;
  g.N = N;
  g.L = L;
  g.logh.assign(2 * L + 1, 0.0);
  for (long m = 1; m <= L; ++m) {
    Rat step = p.z.shifted_product(N - m) / p.w.shifted_product(m);
    g.logh[m + L] = g.logh[m - 1 + L] + std::log(to_double(step));
  }
  for (long m = -1; m >= -L; --m) {
    Rat step = p.w.shifted_product(m + 1) / p.z.shifted_product(N - m - 1);
    g.logh[m + L] = g.logh[m + 1 + L] + std::log(to_double(step));
  }
  g.maxlogh_le.assign(2 * L + 1, 0.0);
  double run = -std::numeric_limits<double>::infinity();
  for (long m = -L; m <= L; ++m) {
    run = std::max(run, g.at(m));
    g.maxlogh_le[m + L] = run;
  }
  for (int i = 0; i < N; ++i) g.ref_logh += g.at(i);
  for (int i = 1; i <= N; ++i)
    for (int j = i + 1; j <= N; ++j) g.logVref += std::log(static_cast<double>(j - i));
  return g;
}

struct EnumStats {
  double total = 0;
  double shell = 0;    // weight on states touching |n_i| = L, plus pruned slack
  double skipped = 0;  // bound on the weight of pruned subtrees
  std::size_t visited = 0;
};

double binom_count(long range, int r) {
  if (range < r) return 0.0;
  double out = 1.0;
  for (int i = 0; i < r; ++i) out *= static_cast<double>(range - i) / (i + 1);
  return out;
}

// Enumerates strictly decreasing N-tuples in [-L, L]. Subtrees whose
// log-weight upper bound falls below log_skip are pruned with their count
// charged to the skipped/shell slack.
template <class Visit>
void enumerate_states(const MeasureGrid& g, double log_skip, EnumStats& stats,
                      Visit&& visit) {
  const int N = g.N;
  const long L = g.L;
  const double log2L = std::log(static_cast<double>(2 * L + 1));
  std::vector<long> coords(N);

  auto rec = [&](auto&& self, int d, long max_allowed, double logV, double loghsum,
                 bool shell) -> void {
    if (d == N) {
      double logrho = 2.0 * (logV - g.logVref) + loghsum - g.ref_logh;
      ++stats.visited;
      double rho = std::exp(logrho);
      stats.total += rho;
      if (shell) stats.shell += rho;
      visit(coords, rho);
      return;
    }
    int r = N - d;
    long lo = -L + (r - 1);
    if (max_allowed < lo) return;
    // pairs not yet fixed (fixed-remaining and remaining-remaining), each
    // difference bounded by 2L+1
    int rem_pairs = N * (N - 1) / 2 - d * (d - 1) / 2;
    double bound = 2.0 * (logV + rem_pairs * log2L - g.logVref) + loghsum +
                   r * g.prefix_max(max_allowed) - g.ref_logh;
    if (bound < log_skip) {
      double slack = binom_count(max_allowed - lo + r, r) * std::exp(bound);
      stats.skipped += slack;
      stats.shell += slack;
      return;
    }
    for (long v = max_allowed; v >= lo; --v) {
      coords[d] = v;
      double logV2 = logV;
      for (int i = 0; i < d; ++i) logV2 += std::log(static_cast<double>(coords[i] - v));
      self(self, d + 1, v - 1, logV2, loghsum + g.at(v), shell || v == L || v == -L);
    }
  };
  rec(rec, 0, L, 0.0, 0.0, false);
}

double log_mprime_ref(const ZwParams& p, int N) {
  // M'(0^N) via floating-point Gamma; positive by admissibility.
  Cplx z = p.z.first().to_cplx(), z2 = p.z.second().to_cplx();
  Cplx w = p.w.first().to_cplx(), w2 = p.w.second().to_cplx();
  double acc = 0;
  for (int i = 1; i <= N; ++i) {
    acc -= log_abs_gamma(z + static_cast<double>(i));
    acc -= log_abs_gamma(z2 + static_cast<double>(i));
    acc -= log_abs_gamma(w + static_cast<double>(N + 1 - i));
    acc -= log_abs_gamma(w2 + static_cast<double>(N + 1 - i));
  }
  return acc;
}

double log_c_const(const ZwParams& p, int N) {
  Cplx z = p.z.first().to_cplx(), z2 = p.z.second().to_cplx();
  Cplx w = p.w.first().to_cplx(), w2 = p.w.second().to_cplx();
  double sigma = to_double(p.sigma());
  double acc = 0;
  for (int i = 1; i <= N; ++i) {
    acc += log_abs_gamma(Cplx(sigma + i, 0.0));
    acc -= log_abs_gamma(z + w + static_cast<double>(i));
    acc -= log_abs_gamma(z + w2 + static_cast<double>(i));
    acc -= log_abs_gamma(z2 + w + static_cast<double>(i));
    acc -= log_abs_gamma(z2 + w2 + static_cast<double>(i));
    acc -= log_abs_gamma(Cplx(static_cast<double>(i), 0.0));
  }
  return acc;
}

FiniteMeasure assemble_measure(const ZwParams& p, int N, long L, double drop_budget,
                               double tail_bound) {
  MeasureGrid g = build_grid(p, N, L);
  EnumStats stats;
  enumerate_states(g, std::log(1e-300), stats, [](const std::vector<long>&, double) {});
  double keep_rho =
      drop_budget * stats.total / static_cast<double>(std::max<std::size_t>(stats.visited, 1));

  FiniteMeasure out;
  out.level = N;
  out.box = L;
  double dropped = 0;
  EnumStats stats2;
  enumerate_states(g, std::log(1e-300), stats2,
                   [&](const std::vector<long>& n, double rho) {
                     if (rho >= keep_rho)
                       out.mass[signature_from_points(n)] = rho;
                     else
                       dropped += rho;
                   });
  for (auto& [sig, m] : out.mass) m /= stats.total;
  out.residual = tail_bound + dropped / stats.total;
  out.normalization_consistency =
      std::abs(std::exp(std::log(stats.total) + log_mprime_ref(p, N) - log_c_const(p, N)) -
               1.0);
  return out;
}

}  // namespace

FiniteMeasure zw_measure(const ZwParams& p, int N, double eps) {
  if (N < 1) throw std::invalid_argument("zw_measure: N >= 1 required");
  if (!(eps > 0)) throw std::invalid_argument("zw_measure: eps must be positive");
  double decay = to_double(p.sigma()) + 2.0;  // per-coordinate power-law exponent
  const long Lmax = 1 << 13;
  long L = std::max<long>(16, N);
  double tail_bound = 0;
  for (;;) {
    MeasureGrid g = build_grid(p, N, L);
    EnumStats stats;
    double box_states = binom_count(2 * L + 1, N);
    double log_skip = std::log(eps * 1e-6 / box_states);
    enumerate_states(g, log_skip, stats, [](const std::vector<long>&, double) {});
    double shell_frac = stats.shell / stats.total;
    tail_bound = 4.0 * shell_frac * static_cast<double>(L) / (decay - 1.0) +
                 stats.skipped / stats.total;
    // leave room for the dropped-state slack so that the total residual stays
    // below eps
    if (tail_bound < 0.9 * eps || L >= Lmax) break;
    L *= 2;
  }
  if (!(tail_bound < 0.9 * eps))
    throw std::runtime_error("zw_measure: tail bound did not reach eps at box limit");
  return assemble_measure(p, N, L, eps * 0.1, tail_bound);
}

FiniteMeasure zw_measure_box(const ZwParams& p, int N, long L) {
  if (N < 1 || L < N) throw std::invalid_argument("zw_measure_box: box too small");
  double decay = to_double(p.sigma()) + 2.0;
  MeasureGrid g = build_grid(p, N, L);
  EnumStats stats;
  enumerate_states(g, std::log(1e-300), stats, [](const std::vector<long>&, double) {});
  double tail_bound =
      4.0 * (stats.shell / stats.total) * static_cast<double>(L) / (decay - 1.0);
  return assemble_measure(p, N, L, 0.0, tail_bound);
}

DougallReport dougall_check(const ZwParams& p, long n_cut) {
  if (n_cut < 1) throw std::invalid_argument("dougall_check: n_cut >= 1 required");
  Cplx z = p.z.first().to_cplx(), z2 = p.z.second().to_cplx();
  Cplx w = p.w.first().to_cplx(), w2 = p.w.second().to_cplx();
  auto term = [&](long n) {
    double d = static_cast<double>(n);
    return std::exp(-log_abs_gamma(z - d + 1.0) - log_abs_gamma(z2 - d + 1.0) -
                    log_abs_gamma(w + d + 1.0) - log_abs_gamma(w2 + d + 1.0));
  };
  DougallReport rep;
  rep.cut = n_cut;
  double lhs = term(0);
  for (long n = 1; n <= n_cut; ++n) lhs += term(n) + term(-n);
  double sigma = to_double(p.sigma());
  double logrhs = log_abs_gamma(Cplx(sigma + 1.0, 0.0)) - log_abs_gamma(z + w + 1.0) -
                  log_abs_gamma(z + w2 + 1.0) - log_abs_gamma(z2 + w + 1.0) -
                  log_abs_gamma(z2 + w2 + 1.0);
  rep.lhs = lhs;
  rep.rhs = std::exp(logrhs);
  rep.residual = std::abs(rep.lhs - rep.rhs) / std::abs(rep.rhs);
  rep.tail_estimate =
      (term(n_cut) + term(-n_cut)) * static_cast<double>(n_cut) / (sigma + 1.0) / rep.rhs;
  return rep;
}

namespace {

// Children of a level-N state in point coordinates: m_i in [n_{i+1}, n_i - 1].
template <class Visit>
void visit_children(const std::vector<long>& n, Visit&& visit) {
  int N = static_cast<int>(n.size());
  std::vector<long> m(N - 1);
  auto rec = [&](auto&& self, int i) -> void {
    if (i == N - 1) {
      visit(m);
      return;
    }
    for (long v = n[i + 1]; v <= n[i] - 1; ++v) {
      m[i] = v;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
}

double vandermonde_d(const std::vector<long>& n) {
  double out = 1.0;
  for (std::size_t i = 0; i < n.size(); ++i)
    for (std::size_t j = i + 1; j < n.size(); ++j)
      out *= static_cast<double>(n[i] - n[j]);
  return out;
}

}  // namespace

CoherencyReport verify_coherency(const ZwParams& p, int N, double eps) {
  if (N < 2) throw std::invalid_argument("verify_coherency: N >= 2 required");
  FiniteMeasure hi = zw_measure(p, N, eps);
  FiniteMeasure lo = zw_measure(p, N - 1, eps);

  double factN1 = 1.0;
  for (int i = 2; i < N; ++i) factN1 *= i;  // (N-1)!

  CoherencyReport rep;
  rep.level = N;
  rep.eps = eps;
  rep.residual_hi = hi.residual;
  rep.residual_lo = lo.residual;

  double cutoff = eps * 0.1 / static_cast<double>(std::max<std::size_t>(hi.mass.size(), 1));
  std::map<Signature, double> pushed;
  for (const auto& [nu, m] : hi.mass) {
    if (m < cutoff) {
      rep.push_skipped += m;
      continue;
    }
    std::vector<long> n = to_point_configuration(nu);
    double vn = vandermonde_d(n);
    visit_children(n, [&](const std::vector<long>& child) {
      pushed[signature_from_points(child)] += m * vandermonde_d(child) * factN1 / vn;
    });
  }

  double acc = 0;
  auto it = pushed.begin();
  auto jt = lo.mass.begin();
  while (it != pushed.end() || jt != lo.mass.end()) {
    if (jt == lo.mass.end() || (it != pushed.end() && it->first < jt->first)) {
      acc += std::abs(it->second);
      ++it;
    } else if (it == pushed.end() || jt->first < it->first) {
      acc += std::abs(jt->second);
      ++jt;
    } else {
      acc += std::abs(it->second - jt->second);
      ++it;
      ++jt;
    }
  }
  rep.tv = 0.5 * acc;
  rep.pass = rep.tv <= 10.0 * eps;
  return rep;
}

}  // namespace gtml
