#pragma once

#include <map>
#include <string>
#include <vector>

#include "gtml/numeric.hpp"

namespace gtml {

// Weakly decreasing integer tuple; vertex of the Gelfand-Tsetlin graph at the
// level given by its length. The empty tuple is the virtual level-0 vertex.
struct Signature {
  std::vector<long> parts;

  Signature() = default;
  explicit Signature(std::vector<long> p);

  static Signature constant(int n, long c);

  int level() const { return static_cast<int>(parts.size()); }
  bool empty() const { return parts.empty(); }
  std::string str() const;  // "(2,1,0)"; "()" for the empty signature

  auto operator<=>(const Signature&) const = default;
};

// "2,1,0"; "empty" (or the empty string) gives the level-0 vertex.
Signature parse_signature(const std::string& s);

// lower interlaces upper: nu_i >= lambda_i >= nu_{i+1}. Lengths must be
// (N-1, N); the empty lower row is accepted against N = 1 only.
bool interlaces(const Signature& lower, const Signature& upper);

// Chain of pairwise interlacing signatures of consecutive lengths K..N.
struct GTScheme {
  std::vector<Signature> rows;

  explicit GTScheme(std::vector<Signature> r);
  int bottom_level() const { return rows.front().level(); }
  int top_level() const { return rows.back().level(); }
};

// Number of triangular GT schemes with top row nu (= dimension of the
// corresponding irreducible character). Exact; the empty signature gives 1.
Int weyl_dimension(const Signature& nu);

// All lambda interlacing nu from below, in ascending lexicographic order.
// For level 1 the only element is the empty signature.
std::vector<Signature> enumerate_down(const Signature& nu);

// Path counts from nu down to every reachable vertex of level K (0 <= K <= N).
std::map<Signature, Int> paths_to_level(const Signature& nu, int K);

// Number of monotone interlacing chains from kappa (level K) to nu (level N).
// K = N gives 1 iff kappa = nu; K > N is an error.
Int count_paths(const Signature& kappa, const Signature& nu);

}  // namespace gtml
