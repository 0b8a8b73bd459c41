#pragma once

#include <map>
#include <vector>

#include "gtml/signature.hpp"

namespace gtml {

// One row of a stochastic link, conditioned on `source`. Entries are exact
// rationals; `complete` marks rows whose entries sum to exactly 1 (truncated
// rows carry complete = false).
struct StochasticRow {
  Signature source;
  std::map<Signature, Rat> entries;
  bool complete = true;

  Rat sum() const;
};

// Lambda^N_{N-1}(nu, .): mass Dim_{N-1}(lambda)/Dim_N(nu) on each lambda
// interlacing nu. For N = 1 the row puts mass 1 on the level-0 vertex.
StochasticRow link_one_step(const Signature& nu);

// Lambda^N_K(nu, .) by the closed formula
// Dim_K(kappa) Dim_{K,N}(kappa,nu) / Dim_N(nu); equals the iterated one-step
// product. Requires 1 <= K < N.
StochasticRow link_multi(const Signature& nu, int K);

// F_kappa(nu) = Dim_{K,N}(kappa,nu) / Dim_N(nu), 1 <= K <= N.
Rat relative_dimension(const Signature& kappa, const Signature& nu);

// H*(t; nu) = prod_j (t+j)/(t+j-nu_j). Poles at t = nu_j - j.
Rat h_star(const Rat& t, const Signature& nu);

struct Thm3ASample {
  Rat t;
  bool skipped = false;  // sample point hit a pole of either side
  Rat lhs, rhs;
  bool equal = false;
};

struct Thm3AReport {
  Signature nu;
  std::vector<Thm3ASample> samples;
  bool pass = true;  // every non-skipped point agreed exactly
};

// Checks H*(t;nu) = sum_k F_k(nu) (t+1)...(t+N)/((t+1-k)...(t+N-k)) at the
// given sample points, in exact arithmetic.
Thm3AReport verify_theorem_3A(const Signature& nu, const std::vector<Rat>& points);

}  // namespace gtml
