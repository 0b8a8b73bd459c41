#pragma once

#include <map>
#include <string>
#include <vector>

#include "gtml/links.hpp"

namespace gtml {

struct YoungDiagram {
  std::vector<long> rows;  // weakly decreasing, positive; empty list = empty diagram

  YoungDiagram() = default;
  explicit YoungDiagram(std::vector<long> r);

  long size() const;
  int nrows() const { return static_cast<int>(rows.size()); }
  bool contains(const YoungDiagram& mu) const;
  std::string str() const;

  auto operator<=>(const YoungDiagram&) const = default;
};

// "2,1"; "empty" (or "") gives the empty diagram.
YoungDiagram parse_young(const std::string& s);

// Number of standard Young tableaux of shape la, by add-a-box path counting.
Int dim_young(const YoungDiagram& la);

// Number of standard tableaux of the skew shape la/mu; mu must be contained
// in la.
Int skew_dim(const YoungDiagram& la, const YoungDiagram& mu);

// Young-graph link dim(mu) dim(la/mu) / dim(la) for |la| > |mu|; 0 when mu is
// not contained in la.
Rat young_link(const YoungDiagram& la, const YoungDiagram& mu);

// l(l-1)...(l-m+1) dim(la/mu) / dim(la), the falling-factorial-weighted
// relative dimension.
Rat relative_dim_young(const YoungDiagram& la, const YoungDiagram& mu);

// GT link between zero-padded diagrams: the entry of Lambda^{N'}_N at
// ((la, N'), (mu, N)).
Rat gt_plus_link(const YoungDiagram& la, int n_prime, const YoungDiagram& mu, int n);

// Boundary point of the Young bouquet; held for I/O completeness.
struct ThomaConePoint {
  std::vector<Rat> alpha, beta;
  Rat delta = 0;

  void validate() const;  // weak decrease, nonnegativity, sum(alpha+beta) <= delta
};

struct YbLimitReport {
  YoungDiagram la, mu;
  Rat ratio;  // r / r' in (0,1)
  std::vector<std::pair<int, int>> realized;  // (N, N') along the schedule
  std::vector<Rat> values;
  std::vector<double> diffs;     // successive absolute differences
  double richardson = 0;         // one O(1/N) extrapolation step, diagnostic
  Rat last;
  bool converged = false;
  double tol = 0;
};

// Degeneration limit: gt_plus_link along N' = round(N / ratio); converged
// when the last two values differ by less than tol.
YbLimitReport yb_link_limit(const YoungDiagram& la, const YoungDiagram& mu,
                            const Rat& ratio, const std::vector<int>& schedule,
                            double tol = 1e-2);

// Binomial-mixture hypothesis for the limiting link; diagnostic cross-check
// only, never used as ground truth.
Rat yb_link_binomial_hypothesis(const YoungDiagram& la, const YoungDiagram& mu,
                                const Rat& ratio);

struct YbCompatCase {
  YoungDiagram la, mu;
  double lhs = 0, rhs = 0, residual = 0;
};

struct YbCompatReport {
  std::vector<YbCompatCase> cases;
  double max_residual = 0;
  bool pass = false;
};

// Composition identity of the limiting links with ratios r'' > r' > r,
// intermediate diagrams truncated by size.
YbCompatReport yb_compatibility_check(const Rat& r2, const Rat& r1, const Rat& r0,
                                      const std::vector<YoungDiagram>& diagrams,
                                      long size_cutoff, const std::vector<int>& schedule,
                                      double tol);

// All diagrams contained in la with at most size_cutoff boxes.
std::vector<YoungDiagram> subdiagrams(const YoungDiagram& la, long size_cutoff);

}  // namespace gtml
