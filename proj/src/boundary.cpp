#include "gtml/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gtml {

namespace {

void check_list(const std::vector<Rat>& xs, const char* name) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] < 0)
      throw std::invalid_argument(std::string("OmegaPoint: negative entry in ") + name);
    if (i > 0 && xs[i - 1] < xs[i])
      throw std::invalid_argument(std::string("OmegaPoint: ") + name +
                                  " not weakly decreasing");
  }
}

Rat list_sum(const std::vector<Rat>& xs) {
  Rat s = 0;
  for (const Rat& x : xs) s += x;
  return s;
}

}  // namespace

void OmegaPoint::validate() const {
  check_list(alpha_plus, "alpha+");
  check_list(alpha_minus, "alpha-");
  check_list(beta_plus, "beta+");
  check_list(beta_minus, "beta-");
  if (gamma_plus < 0 || gamma_minus < 0)
    throw std::invalid_argument("OmegaPoint: negative gamma");
  Rat b1p = beta_plus.empty() ? Rat(0) : beta_plus.front();
  Rat b1m = beta_minus.empty() ? Rat(0) : beta_minus.front();
  if (b1p + b1m > 1)
    throw std::invalid_argument("OmegaPoint: beta_1^+ + beta_1^- > 1");
}

Rat OmegaPoint::delta_plus() const {
  return gamma_plus + list_sum(alpha_plus) + list_sum(beta_plus);
}

Rat OmegaPoint::delta_minus() const {
  return gamma_minus + list_sum(alpha_minus) + list_sum(beta_minus);
}

Cplx phi_value(Cplx u, const OmegaPoint& omega) {
  if (u == Cplx(0.0, 0.0)) throw std::domain_error("phi_value: u = 0");
  Cplx um1 = u - 1.0;
  Cplx vm1 = 1.0 / u - 1.0;
  Cplx out = std::exp(to_double(omega.gamma_plus) * um1 + to_double(omega.gamma_minus) * vm1);
  for (const Rat& b : omega.beta_plus) out *= 1.0 + to_double(b) * um1;
  for (const Rat& b : omega.beta_minus) out *= 1.0 + to_double(b) * vm1;
  for (const Rat& a : omega.alpha_plus) {
    Cplx den = 1.0 - to_double(a) * um1;
    if (std::abs(den) < 1e-14) throw std::domain_error("phi_value: pole at u");
    out /= den;
  }
  for (const Rat& a : omega.alpha_minus) {
    Cplx den = 1.0 - to_double(a) * vm1;
    if (std::abs(den) < 1e-14) throw std::domain_error("phi_value: pole at u");
    out /= den;
  }
  return out;
}

double LaurentCoeffs::num(long n) const {
  auto it = numeric.find(n);
  return it == numeric.end() ? 0.0 : it->second;
}

namespace {

using ExactSeries = std::map<long, Rat>;
using NumSeries = std::map<long, double>;

template <class Series>
Series convolve(const Series& a, const Series& b) {
  Series out;
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b) out[i + j] += x * y;
  return out;
}

// truncated exponential series e^{g(u^s - 1)}, s = +1 or -1; the dropped l1
// tail is accumulated into tail.
NumSeries exp_series(double g, int sign, double& tail) {
  NumSeries out;
  double term = std::exp(-g);
  long m = 0;
  while (true) {
    out[sign * m] = term;
    ++m;
    term *= g / static_cast<double>(m);
    if (term < 1e-22 && static_cast<double>(m) > g) break;
  }
  double ratio = g / static_cast<double>(m + 1);
  tail += term / std::max(1e-3, 1.0 - ratio);
  return out;
}

LaurentCoeffs laurent_series_method(const OmegaPoint& omega, long nmin, long nmax) {
  LaurentCoeffs out;
  out.nmin = nmin;
  out.nmax = nmax;
  bool exact = omega.polynomial();
  out.method = exact ? "exact" : "numeric";

  if (exact) {
    ExactSeries acc{{0, Rat(1)}};
    for (const Rat& b : omega.beta_plus)
      acc = convolve(acc, ExactSeries{{0, 1 - b}, {1, b}});
    for (const Rat& b : omega.beta_minus)
      acc = convolve(acc, ExactSeries{{0, 1 - b}, {-1, b}});
    for (const auto& [n, c] : acc) {
      if (c == 0) continue;
      if (n >= nmin && n <= nmax) {
        out.exact[n] = c;
        out.numeric[n] = to_double(c);
      }
    }
    out.tail_bound = 0;
    return out;
  }

  // alpha-free with gamma: double convolution with certified factorial tails;
  // each factor has l1 norm 1, so per-factor tails add up.
  double tail = 0;
  NumSeries acc{{0, 1.0}};
  for (const Rat& b : omega.beta_plus)
    acc = convolve(acc, NumSeries{{0, to_double(1 - b)}, {1, to_double(b)}});
  for (const Rat& b : omega.beta_minus)
    acc = convolve(acc, NumSeries{{0, to_double(1 - b)}, {-1, to_double(b)}});
  if (omega.gamma_plus > 0)
    acc = convolve(acc, exp_series(to_double(omega.gamma_plus), +1, tail));
  if (omega.gamma_minus > 0)
    acc = convolve(acc, exp_series(to_double(omega.gamma_minus), -1, tail));
  for (const auto& [n, c] : acc)
    if (n >= nmin && n <= nmax) out.numeric[n] = c;
  out.tail_bound = tail;
  return out;
}

LaurentCoeffs laurent_fourier_method(const OmegaPoint& omega, long nmin, long nmax,
                                     int log2_samples) {
  LaurentCoeffs out;
  out.nmin = nmin;
  out.nmax = nmax;
  out.method = "numeric";
  out.fallback = true;

  auto invert = [&](long samples) {
    std::vector<Cplx> values(samples);
    for (long s = 0; s < samples; ++s) {
      double theta = 2.0 * M_PI * static_cast<double>(s) / static_cast<double>(samples);
      values[s] = phi_value(Cplx(std::cos(theta), std::sin(theta)), omega);
    }
    std::vector<double> coeffs(nmax - nmin + 1);
    parallel_for(coeffs.size(), [&](std::size_t idx) {
      long n = nmin + static_cast<long>(idx);
      Cplx acc(0.0, 0.0);
      for (long s = 0; s < samples; ++s) {
        double theta = -2.0 * M_PI * static_cast<double>(n) * static_cast<double>(s) /
                       static_cast<double>(samples);
        acc += values[s] * Cplx(std::cos(theta), std::sin(theta));
      }
      coeffs[idx] = acc.real() / static_cast<double>(samples);
    });
    return coeffs;
  };

  long S = 1L << log2_samples;
  auto base = invert(S);
  auto refined = invert(2 * S);  // aliasing estimate by sample doubling
  double alias = 0;
  for (std::size_t i = 0; i < base.size(); ++i)
    alias = std::max(alias, std::abs(base[i] - refined[i]));
  for (std::size_t i = 0; i < refined.size(); ++i)
    out.numeric[nmin + static_cast<long>(i)] = refined[i];
  out.tail_bound = 10.0 * alias + 1e-14;
  return out;
}

}  // namespace

LaurentCoeffs laurent_coeffs(const OmegaPoint& omega, long nmin, long nmax,
                             int log2_samples) {
  if (nmin > nmax) throw std::invalid_argument("laurent_coeffs: empty window");
  omega.validate();
  if (omega.alpha_free()) return laurent_series_method(omega, nmin, nmax);
  return laurent_fourier_method(omega, nmin, nmax, log2_samples);
}

LaurentCoeffs laurent_coeffs_fourier(const OmegaPoint& omega, long nmin, long nmax,
                                     int log2_samples) {
  if (nmin > nmax) throw std::invalid_argument("laurent_coeffs_fourier: empty window");
  omega.validate();
  LaurentCoeffs out = laurent_fourier_method(omega, nmin, nmax, log2_samples);
  out.fallback = !omega.alpha_free();
  return out;
}

Rat det_exact(std::vector<std::vector<Rat>> m) {
  const std::size_t n = m.size();
  if (n == 0) return Rat(1);
  // clear denominators row by row
  Rat scale = 1;
  std::vector<std::vector<Int>> a(n, std::vector<Int>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw std::invalid_argument("det_exact: not square");
    Int l = 1;
    for (const Rat& x : m[i]) {
      Int den = x.get_den();
      Int g;
      mpz_gcd(g.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
      Int q;
      mpz_divexact(q.get_mpz_t(), l.get_mpz_t(), g.get_mpz_t());
      l = q * den;
    }
    scale *= Rat(l);
    for (std::size_t j = 0; j < n; ++j) {
      Rat scaled = m[i][j] * Rat(l);
      a[i][j] = scaled.get_num();  // denominator is 1 after scaling
    }
  }

  // Bareiss fraction-free elimination
  int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return Rat(0);
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a[k][k];
  }
  Rat det(a[n - 1][n - 1]);
  if (sign < 0) det = -det;
  return det / scale;
}

double det_numeric(std::vector<std::vector<double>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1.0;
  double det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(m[i][k]) > std::abs(m[piv][k])) piv = i;
    if (m[piv][k] == 0.0) return 0.0;
    if (piv != k) {
      std::swap(m[piv], m[k]);
      det = -det;
    }
    det *= m[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      double f = m[i][k] / m[k][k];
      for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return det;
}

namespace {

// support box of the polynomial case: row i of the phi matrix vanishes unless
// -B^- <= nu_i - i + N and nu_i - i + 1 <= B^+ (1-based i)
std::vector<Signature> polynomial_support(const OmegaPoint& omega, int N) {
  long bp = static_cast<long>(omega.beta_plus.size());
  long bm = static_cast<long>(omega.beta_minus.size());
  std::vector<Signature> out;
  std::vector<long> cur(N);
  auto rec = [&](auto&& self, int i, long hi) -> void {
    if (i == N) {
      out.push_back(Signature(cur));
      return;
    }
    long top = std::min(hi, bp + i);  // nu_{i+1} <= B^+ + i
    long bot = (i + 1) - N - bm;      // nu_{i+1} >= (i+1) - N - B^-
    for (long v = bot; v <= top; ++v) {
      cur[i] = v;
      self(self, i + 1, v);
    }
  };
  rec(rec, 0, bp);
  return out;
}

}  // namespace

StochasticRow link_infinity(const OmegaPoint& omega, int N,
                            const std::vector<Signature>& truncation) {
  omega.validate();
  if (N < 1) throw std::invalid_argument("link_infinity: N >= 1 required");
  long lo = 0, hi = 0;
  for (const auto& nu : truncation) {
    if (nu.level() != N) throw std::invalid_argument("link_infinity: level mismatch");
    lo = std::min(lo, nu.parts[N - 1] - N + 1);
    hi = std::max(hi, nu.parts[0] + N - 1);
  }
  StochasticRow row;
  row.complete = false;
  if (omega.polynomial()) {
    LaurentCoeffs phi = laurent_coeffs(omega, lo, hi);
    for (const auto& nu : truncation) {
      std::vector<std::vector<Rat>> m(N, std::vector<Rat>(N, Rat(0)));
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
          long idx = nu.parts[i] - (i + 1) + (j + 1);
          auto it = phi.exact.find(idx);
          if (it != phi.exact.end()) m[i][j] = it->second;
        }
      Rat mass = Rat(weyl_dimension(nu)) * det_exact(std::move(m));
      if (mass < 0)
        throw std::runtime_error("link_infinity: negative exact mass at " + nu.str());
      if (mass != 0) row.entries[nu] = mass;
    }
    return row;
  }
  LaurentCoeffs phi = laurent_coeffs(omega, lo, hi);
  for (const auto& nu : truncation) {
    std::vector<std::vector<double>> m(N, std::vector<double>(N, 0.0));
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) m[i][j] = phi.num(nu.parts[i] - (i + 1) + (j + 1));
    double mass = to_double(Rat(weyl_dimension(nu))) * det_numeric(std::move(m));
    if (mass < -1e-9)
      throw std::runtime_error("link_infinity: negative mass at " + nu.str());
    if (mass > 0) row.entries[nu] = Rat(mass);
  }
  return row;
}

StochasticRow link_infinity_adaptive(const OmegaPoint& omega, int N, double eps) {
  omega.validate();
  if (N < 1) throw std::invalid_argument("link_infinity_adaptive: N >= 1 required");
  if (omega.polynomial()) {
    StochasticRow row = link_infinity(omega, N, polynomial_support(omega, N));
    row.complete = true;
    return row;
  }
  if (!(eps > 0))
    throw std::invalid_argument("link_infinity_adaptive: eps must be positive");
  long B = 4;
  const long Bmax = 1 << 12;
  for (;;) {
    std::vector<Signature> box;  // all signatures with parts in [-B, B]
    std::vector<long> cur(N);
    auto rec = [&](auto&& self, int i, long hi) -> void {
      if (i == N) {
        box.push_back(Signature(cur));
        return;
      }
      for (long v = -B; v <= hi; ++v) {
        cur[i] = v;
        self(self, i + 1, v);
      }
    };
    rec(rec, 0, B);
    StochasticRow row = link_infinity(omega, N, box);
    double total = 0;
    for (const auto& [nu, mass] : row.entries) total += to_double(mass);
    if (1.0 - total < eps) return row;
    if (B >= Bmax)
      throw std::runtime_error("link_infinity_adaptive: residual did not reach eps");
    B *= 2;
  }
}

Cplx extreme_character(const OmegaPoint& omega, const std::vector<Cplx>& eigenvalues) {
  omega.validate();
  Cplx out(1.0, 0.0);
  for (const Cplx& u : eigenvalues) {
    if (std::abs(std::abs(u) - 1.0) > 1e-9)
      throw std::invalid_argument("extreme_character: eigenvalue off the unit circle");
    out *= phi_value(u, omega);
  }
  return out;
}

}  // namespace gtml
