#include "gtml/links.hpp"

#include <stdexcept>

namespace gtml {

Rat StochasticRow::sum() const {
  Rat s = 0;
  for (const auto& [sig, p] : entries) s += p;
  return s;
}

StochasticRow link_one_step(const Signature& nu) {
  int n = nu.level();
  if (n < 1) throw std::invalid_argument("link_one_step: level-0 vertex");
  StochasticRow row;
  row.source = nu;
  if (n == 1) {
    row.entries[Signature()] = 1;
    return row;
  }
  Rat dim_nu(weyl_dimension(nu));
  for (const auto& lam : enumerate_down(nu))
    row.entries[lam] = Rat(weyl_dimension(lam)) / dim_nu;
  return row;
}

StochasticRow link_multi(const Signature& nu, int K) {
  int n = nu.level();
  if (!(1 <= K && K < n))
    throw std::invalid_argument("link_multi: need 1 <= K < N");
  StochasticRow row;
  row.source = nu;
  Rat dim_nu(weyl_dimension(nu));
  for (const auto& [kappa, cnt] : paths_to_level(nu, K))
    row.entries[kappa] = Rat(weyl_dimension(kappa) * cnt) / dim_nu;
  return row;
}

Rat relative_dimension(const Signature& kappa, const Signature& nu) {
  int K = kappa.level(), N = nu.level();
  if (!(1 <= K && K <= N))
    throw std::invalid_argument("relative_dimension: need 1 <= K <= N");
  return Rat(count_paths(kappa, nu)) / Rat(weyl_dimension(nu));
}

Rat h_star(const Rat& t, const Signature& nu) {
  int n = nu.level();
  Rat out = 1;
  for (int j = 1; j <= n; ++j) {
    Rat den = t + j - nu.parts[j - 1];
    if (den == 0)
      throw std::domain_error("h_star: pole at j=" + std::to_string(j) +
                              " (t = nu_j - j)");
    out *= (t + j) / den;
  }
  return out;
}

Thm3AReport verify_theorem_3A(const Signature& nu, const std::vector<Rat>& points) {
  int n = nu.level();
  if (n < 1) throw std::invalid_argument("verify_theorem_3A: level-0 vertex");
  Thm3AReport report;
  report.nu = nu;

  // F_k(nu) vanishes outside nu_N <= k <= nu_1.
  std::map<Signature, Int> level1 = paths_to_level(nu, 1);
  Rat dim_nu(weyl_dimension(nu));

  for (const Rat& t : points) {
    Thm3ASample sample;
    sample.t = t;
    bool pole = false;
    for (int j = 1; j <= n && !pole; ++j) {
      if (t + j - nu.parts[j - 1] == 0) pole = true;  // lhs pole
      for (const auto& [kappa, cnt] : level1)
        if (t + j - kappa.parts[0] == 0) pole = true;  // rhs pole
    }
    if (pole) {
      sample.skipped = true;
      report.samples.push_back(sample);
      continue;
    }
    sample.lhs = h_star(t, nu);
    Rat rhs = 0;
    for (const auto& [kappa, cnt] : level1) {
      long k = kappa.parts[0];
      Rat term = Rat(cnt) / dim_nu;
      for (int j = 1; j <= n; ++j) term *= (t + j) / (t + j - k);
      rhs += term;
    }
    sample.rhs = rhs;
    sample.equal = (sample.lhs == sample.rhs);
    if (!sample.equal) report.pass = false;
    report.samples.push_back(sample);
  }
  return report;
}

}  // namespace gtml
