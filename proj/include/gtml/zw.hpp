#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gtml/signature.hpp"

namespace gtml {

// Member of the set Z: either two reals inside the same open unit interval
// (neither an integer) or a conjugate pair off the real axis. In both cases
// (zeta + k)(zeta' + k) is a positive rational for every integer k.
class ZwPair {
 public:
  enum class Kind { real_pair, conjugate_pair };

  static ZwPair real(const Rat& a, const Rat& b);
  static ZwPair conjugate(const Rat& re, const Rat& im);
  // Classifies a candidate pair; nullopt with reason when not in Z.
  static std::optional<ZwPair> classify(const RatComplex& a, const RatComplex& b,
                                        std::string* reason);

  Kind kind() const { return kind_; }
  // (zeta + k)(zeta' + k), exact and strictly positive.
  Rat shifted_product(long k) const;
  Rat sum_real() const;  // Re(zeta + zeta')
  RatComplex first() const;
  RatComplex second() const;

 private:
  ZwPair() = default;
  Kind kind_;
  Rat a_, b_;  // real pair: members; conjugate pair: re, im
};

// Admissible quadruple (z, z', w, w').
struct ZwParams {
  ZwPair z, w;

  Rat sigma() const { return z.sum_real() + w.sum_real(); }  // Re(z+z'+w+w')
};

struct Admissibility {
  bool ok;
  std::string reason;  // first violated clause when not admissible
};

Admissibility is_admissible(const RatComplex& z, const RatComplex& z2,
                            const RatComplex& w, const RatComplex& w2);

// Builds parameters, throwing std::invalid_argument with the admissibility
// reason on rejection.
ZwParams make_params(const RatComplex& z, const RatComplex& z2,
                     const RatComplex& w, const RatComplex& w2);

// n_i = nu_i + N - i: strictly decreasing point configuration.
std::vector<long> to_point_configuration(const Signature& nu);
Signature signature_from_points(const std::vector<long>& n);

// M'(nu +- e_k) / M'(nu) as an exact rational, computed without Gamma
// evaluations. k is 1-based; direction is +1 or -1. A move that collides
// (vanishing Vandermonde) gives exact 0; a malformed k or direction throws.
Rat weight_ratio(const ZwParams& p, const Signature& nu, int k, int direction);

struct FiniteMeasure {
  int level = 0;
  std::map<Signature, double> mass;  // normalized over the retained support
  double residual = 0;               // certified tail bound + dropped-state slack
  long box = 0;                      // realized half-width in n-coordinates
  std::string mode = "numeric";
  // |sum(M') / C - 1| with floating-point Gamma; diagnostic only.
  double normalization_consistency = 0;
};

// M_{zw|N} truncated to an adaptively grown coordinate box with certified
// tail below eps.
FiniteMeasure zw_measure(const ZwParams& p, int N, double eps);

// Same measure on the fixed box [-L, L] (all states kept, residual from the
// integral tail bound at that radius).
FiniteMeasure zw_measure_box(const ZwParams& p, int N, long L);

struct DougallReport {
  long cut = 0;
  double lhs = 0, rhs = 0;
  double residual = 0;       // |lhs - rhs| / |rhs|
  double tail_estimate = 0;  // decay-based estimate of the truncated tail
};

DougallReport dougall_check(const ZwParams& p, long n_cut);

struct CoherencyReport {
  int level = 0;
  double eps = 0;
  double tv = 0;  // total variation between the pushed and the direct measure
  bool pass = false;
  double residual_hi = 0, residual_lo = 0;  // measure residuals at N, N-1
  double push_skipped = 0;                  // mass not pushed (below cutoff)
};

// Pushes M_N through Lambda^N_{N-1} and compares with M_{N-1} in total
// variation; pass iff TV <= 10*eps.
CoherencyReport verify_coherency(const ZwParams& p, int N, double eps);

}  // namespace gtml
