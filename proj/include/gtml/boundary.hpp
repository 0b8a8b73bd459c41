#pragma once

#include <map>
#include <string>
#include <vector>

#include "gtml/links.hpp"

namespace gtml {

// Finitely supported boundary point. Gamma is stored directly, so
// delta = gamma + sum(alpha) + sum(beta) holds by construction.
struct OmegaPoint {
  std::vector<Rat> alpha_plus, alpha_minus, beta_plus, beta_minus;
  Rat gamma_plus = 0, gamma_minus = 0;

  // checks monotonicity, nonnegativity and beta_1^+ + beta_1^- <= 1
  void validate() const;

  Rat delta_plus() const;
  Rat delta_minus() const;
  bool alpha_free() const { return alpha_plus.empty() && alpha_minus.empty(); }
  // Phi is a Laurent polynomial iff there are no alpha and no gamma parameters
  bool polynomial() const { return alpha_free() && gamma_plus == 0 && gamma_minus == 0; }
};

// Phi(u; omega); poles sit on (0,1) and (1,+inf) away from the unit circle.
Cplx phi_value(Cplx u, const OmegaPoint& omega);

struct LaurentCoeffs {
  long nmin = 0, nmax = 0;
  std::map<long, Rat> exact;       // populated by the exact method only
  std::map<long, double> numeric;  // always populated
  std::string method;              // "exact" | "numeric"
  double tail_bound = 0;           // certified for method (a); estimated for (b)
  bool fallback = false;           // alpha present forced the Fourier method

  double num(long n) const;
};

// Coefficients of Phi(u;omega) = sum_n phi_n(omega) u^n on the window
// [nmin, nmax]. Alpha-free points go through per-factor series convolution
// (exact rationals when gamma = 0, certified factorial tail otherwise);
// general points fall back to unit-circle sampling at 2^log2_samples points
// followed by discrete Fourier inversion.
LaurentCoeffs laurent_coeffs(const OmegaPoint& omega, long nmin, long nmax,
                             int log2_samples = 14);

// Fourier-inversion route, selectable directly (the alpha-free series method
// and this one must agree; see the module invariants).
LaurentCoeffs laurent_coeffs_fourier(const OmegaPoint& omega, long nmin, long nmax,
                                     int log2_samples = 14);

// Lambda^infty_N(omega, nu) = Dim_N(nu) det[phi_{nu_i - i + j}] over an
// explicit truncation set. Exact (complete row) for polynomial omega.
StochasticRow link_infinity(const OmegaPoint& omega, int N,
                            const std::vector<Signature>& truncation);

// Adaptive variant: the support box grows until the residual mass drops
// below eps (polynomial omega yields the exact complete row immediately).
StochasticRow link_infinity_adaptive(const OmegaPoint& omega, int N, double eps);

// chi_omega evaluated at finitely many unit-modulus eigenvalues.
Cplx extreme_character(const OmegaPoint& omega, const std::vector<Cplx>& eigenvalues);

// Determinant by fraction-free (Bareiss) elimination after clearing row
// denominators.
Rat det_exact(std::vector<std::vector<Rat>> m);
// Determinant by Gaussian elimination with partial pivoting.
double det_numeric(std::vector<std::vector<double>> m);

}  // namespace gtml
