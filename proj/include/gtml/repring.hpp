#pragma once

#include <map>
#include <optional>
#include <vector>

#include "gtml/signature.hpp"
#include "gtml/zw.hpp"

namespace gtml {

// Monomial in the indeterminates phi_n: index multiset, sorted descending.
using Monomial = std::vector<long>;

// Finite element of the polynomial subspace of the representation ring.
// Coefficients stay rational: for admissible parameters every operator
// coefficient is a conjugate-invariant product, hence real rational.
struct RingElement {
  std::map<Monomial, Rat> terms;  // zero coefficients pruned

  int degree() const;
  bool homogeneous(int n) const;
  void add(const Monomial& m, const Rat& c);
  RingElement& operator+=(const RingElement& o);
  RingElement& operator-=(const RingElement& o);
  RingElement& operator*=(const Rat& c);
  bool operator==(const RingElement&) const = default;
};

// chi_nu = det[phi_{nu_i - i + j}], fully expanded (N! signed monomials
// before cancellation).
RingElement character_element(const Signature& nu);

struct IndexWindow {
  long lo = 0, hi = 0;
};

// Applies D = sum A_nn d^2/dphi_n^2 + 2 sum_{n1>n2} A_{n1n2} d/dphi_{n1}
// d/dphi_{n2} + sum B_n d/dphi_n term by term. The p-series inside each A
// coefficient is generated into the window; the telescoping claim is checked
// by requiring the outermost window layer to stay empty, widening up to 8
// indices beyond the input span before giving up. Throws std::runtime_error
// (carrying the surviving monomials) for inputs outside the character span.
RingElement apply_D(const ZwParams& p, const RingElement& x,
                    std::optional<IndexWindow> window = std::nullopt);

struct CharacterExpansion {
  int level = 0;
  std::map<Signature, Rat> coeff;
};

// Iterated leading-term elimination in the dominance-compatible (lex on
// descending index tuples) order. Inputs outside the span of the chi_nu make
// the remainder spread grow without bound; this is detected and reported as
// std::runtime_error.
CharacterExpansion expand_in_characters(const RingElement& x, int N);

// Reconstructs sum coeff_nu chi_nu (test and verification helper).
RingElement reconstruct(const CharacterExpansion& e);

struct GenConsistencyReport {
  Signature nu;
  bool pass = false;
  std::map<Signature, Rat> lhs, rhs;
};

// D chi_nu = sum_mu Q(mu,nu) (Dim mu / Dim nu) chi_mu with Q the jump-rate
// matrix; both sides exact.
GenConsistencyReport verify_generator_consistency(const ZwParams& p, const Signature& nu);

}  // namespace gtml
