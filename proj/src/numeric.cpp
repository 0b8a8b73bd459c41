#include "gtml/numeric.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace gtml {

Rat parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("parse_rational: empty string");
  mpq_class q;
  if (q.set_str(s, 10) != 0)
    throw std::invalid_argument("parse_rational: cannot parse '" + s + "'");
  if (q.get_den() == 0)
    throw std::invalid_argument("parse_rational: zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

std::string rat_str(const Rat& q) { return q.get_str(); }

bool is_integer(const Rat& q) { return q.get_den() == 1; }

long floor_long(const Rat& q) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  if (!f.fits_slong_p()) throw std::overflow_error("floor_long: out of range");
  return f.get_si();
}

long round_long(const Rat& q) {
  // nearest integer, half away from zero
  Rat twice = 2 * q;
  long fl = floor_long(q);
  Rat frac = q - fl;
  if (frac * 2 >= 1) return fl + 1;
  return fl;
}

double to_double(const Rat& q) { return q.get_d(); }

std::string rat_complex_str(const RatComplex& v) {
  if (v.is_real()) return rat_str(v.re);
  return rat_str(v.re) + "," + rat_str(v.im);
}

RatComplex parse_rat_complex(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos) return RatComplex(parse_rational(s));
  return RatComplex(parse_rational(s.substr(0, comma)),
                    parse_rational(s.substr(comma + 1)));
}

namespace {

// Lanczos g=7, standard 9-coefficient set.
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,       -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};

Cplx log_gamma_core(Cplx z) {
  // valid for Re z >= 1/2
  z -= 1.0;
  Cplx x = kLanczos[0];
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  Cplx t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * M_PI) + (z + 0.5) * std::log(t) - t + std::log(x);
}

}  // namespace

Cplx log_gamma(Cplx z) {
  if (z.real() < 0.5) {
    // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
    return std::log(M_PI) - std::log(std::sin(M_PI * z)) - log_gamma_core(1.0 - z);
  }
  return log_gamma_core(z);
}

Cplx gamma_fn(Cplx z) { return std::exp(log_gamma(z)); }

double log_abs_gamma(Cplx z) {
  if (z.imag() == 0.0 && z.real() < 0.5) {
    double x = z.real();
    if (x == std::floor(x)) throw std::domain_error("log_abs_gamma: pole");
    // |Gamma(x)| = pi / (|sin(pi x)| |Gamma(1-x)|)
    return std::log(M_PI) - std::log(std::abs(std::sin(M_PI * x))) -
           log_gamma_core(Cplx(1.0 - x, 0.0)).real();
  }
  return log_gamma(z).real();
}

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() {
  // 53-bit mantissa, shifted into (0,1)
  return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  SplitMix64 mix(master ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
  return mix.next();
}

int thread_count() {
  if (const char* env = std::getenv("GTML_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f) {
  int workers = thread_count();
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::size_t chunk = (n + workers - 1) / workers;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    std::size_t lo = w * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&f, lo, hi] {
      for (std::size_t i = lo; i < hi; ++i) f(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace gtml
