#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace gtml {

using Int = mpz_class;
using Rat = mpq_class;
using Cplx = std::complex<double>;

// Parses "p", "-p" or "p/q"; throws std::invalid_argument on garbage or q=0.
Rat parse_rational(const std::string& s);

// "p" or "p/q", canonical form.
std::string rat_str(const Rat& q);

bool is_integer(const Rat& q);
long floor_long(const Rat& q);
long round_long(const Rat& q);  // nearest, half away from zero

double to_double(const Rat& q);

// Exact rational complex number (used for parameter candidates and reporting).
struct RatComplex {
  Rat re, im;

  RatComplex() = default;
  RatComplex(Rat r) : re(std::move(r)) {}
  RatComplex(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

  bool is_real() const { return im == 0; }
  RatComplex conj() const { return {re, -im}; }
  Cplx to_cplx() const { return {to_double(re), to_double(im)}; }
  bool operator==(const RatComplex&) const = default;
};

std::string rat_complex_str(const RatComplex& v);
// Parses "re" or "re,im" with rational components.
RatComplex parse_rat_complex(const std::string& s);

// Complex log-gamma, principal branch. Lanczos approximation with g=7 and the
// standard 9-coefficient set; reflection formula for Re z < 1/2. Relative
// accuracy ~1e-13 away from the poles.
Cplx log_gamma(Cplx z);
Cplx gamma_fn(Cplx z);
// log|Gamma(z)| (finite everywhere except the poles).
double log_abs_gamma(Cplx z);

// SplitMix64: tiny counter-style generator. Streams for distinct seeds are
// independent, so per-trajectory seeding from a master seed is reproducible
// under any scheduling of trajectories.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next();
  double uniform();  // in (0,1)
};

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

// GTML_THREADS caps worker threads (default: hardware concurrency).
int thread_count();
// Runs f(i) for i in [0,n). Results must be written to disjoint slots; the
// output is then identical for every thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f);

}  // namespace gtml
