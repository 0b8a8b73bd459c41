#include "gtml/repring.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "gtml/markov.hpp"

namespace gtml {

int RingElement::degree() const {
  std::size_t d = 0;
  for (const auto& [m, c] : terms) d = std::max(d, m.size());
  return static_cast<int>(d);
}

bool RingElement::homogeneous(int n) const {
  for (const auto& [m, c] : terms)
    if (static_cast<int>(m.size()) != n) return false;
  return true;
}

void RingElement::add(const Monomial& m, const Rat& c) {
  if (c == 0) return;
  auto it = terms.find(m);
  if (it == terms.end()) {
    terms.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second == 0) terms.erase(it);
}

RingElement& RingElement::operator+=(const RingElement& o) {
  for (const auto& [m, c] : o.terms) add(m, c);
  return *this;
}

RingElement& RingElement::operator-=(const RingElement& o) {
  for (const auto& [m, c] : o.terms) add(m, -c);
  return *this;
}

RingElement& RingElement::operator*=(const Rat& c) {
  if (c == 0) {
    terms.clear();
    return *this;
  }
  for (auto& [m, v] : terms) v *= c;
  return *this;
}

namespace {

Monomial mono_remove(Monomial m, long a) {
  auto it = std::find(m.begin(), m.end(), a);
  m.erase(it);
  return m;
}

Monomial mono_insert(Monomial m, long a) {
  auto it = std::lower_bound(m.begin(), m.end(), a, std::greater<long>());
  m.insert(it, a);
  return m;
}

std::string mono_str(const Monomial& m) {
  std::ostringstream os;
  os << "phi[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) os << ",";
    os << m[i];
  }
  os << "]";
  return os.str();
}

int permutation_sign(const std::vector<int>& perm) {
  int inversions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

}  // namespace

RingElement character_element(const Signature& nu) {
  int n = nu.level();
  RingElement out;
  if (n == 0) {
    out.add(Monomial{}, Rat(1));
    return out;
  }
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  do {
    Monomial m;
    m.reserve(n);
    for (int i = 0; i < n; ++i)
      m.push_back(nu.parts[i] - (i + 1) + (perm[i] + 1));
    std::sort(m.rbegin(), m.rend());
    out.add(m, Rat(permutation_sign(perm)));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

namespace {

struct DistinctIndex {
  long value;
  int count;
};

std::vector<DistinctIndex> distinct_indices(const Monomial& m) {
  std::vector<DistinctIndex> out;
  for (long v : m) {
    if (!out.empty() && out.back().value == v)
      ++out.back().count;
    else
      out.push_back({v, 1});
  }
  return out;
}

// One application of D with the p-series filtered to pairs inside [lo, hi].
RingElement apply_once(const ZwParams& p, const RingElement& x, long lo, long hi) {
  RingElement out;
  auto in_window = [&](long a) { return lo <= a && a <= hi; };

  for (const auto& [m, c] : x.terms) {
    auto groups = distinct_indices(m);

    // first order: B_n per distinct index
    for (const auto& g : groups) {
      Rat factor = c * g.count;
      Monomial base = mono_remove(m, g.value);
      long n = g.value;
      if (in_window(n + 1))
        out.add(mono_insert(base, n + 1), factor * p.w.shifted_product(n + 1));
      if (in_window(n - 1))
        out.add(mono_insert(base, n - 1), factor * p.z.shifted_product(1 - n));
      out.add(m, -factor * (p.z.shifted_product(-n) + p.w.shifted_product(n)));
    }

    // second order: A_{n1 n2} over unordered derivative pairs
    auto apply_A = [&](long n1, long n2, const Rat& factor, const Monomial& base) {
      auto emit = [&](long a, long b, long coeff) {
        if (coeff == 0 || !in_window(a) || !in_window(b)) return;
        out.add(mono_insert(mono_insert(base, a), b), factor * coeff);
      };
      long span = hi - lo;
      for (long q = 0; q <= span; ++q) {
        bool alive = false;
        // (n1 - n2 + 2q + 1)(phi_{n1+q+1} phi_{n2-q} + phi_{n1+q} phi_{n2-q-1})
        if (in_window(n1 + q + 1) && in_window(n2 - q)) {
          emit(n1 + q + 1, n2 - q, n1 - n2 + 2 * q + 1);
          alive = true;
        }
        if (in_window(n1 + q) && in_window(n2 - q - 1)) {
          emit(n1 + q, n2 - q - 1, n1 - n2 + 2 * q + 1);
          alive = true;
        }
        // -2(n1 - n2 + 2q) phi_{n1+q} phi_{n2-q}, q >= 1
        if (q >= 1 && in_window(n1 + q) && in_window(n2 - q)) {
          emit(n1 + q, n2 - q, -2 * (n1 - n2 + 2 * q));
          alive = true;
        }
        if (!alive && q > 0) break;
      }
      emit(n1, n2, -(n1 - n2));
    };

    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
      // repeated index: A_{nn} d^2/dphi_n^2
      if (groups[gi].count >= 2) {
        long a = groups[gi].value;
        Rat factor = c * (groups[gi].count * (groups[gi].count - 1));
        apply_A(a, a, factor, mono_remove(mono_remove(m, a), a));
      }
      // distinct pairs n1 > n2 (groups are sorted descending)
      for (std::size_t gj = gi + 1; gj < groups.size(); ++gj) {
        long n1 = groups[gi].value, n2 = groups[gj].value;
        Rat factor = c * (2 * groups[gi].count * groups[gj].count);
        apply_A(n1, n2, factor, mono_remove(mono_remove(m, n1), n2));
      }
    }
  }
  return out;
}

}  // namespace

RingElement apply_D(const ZwParams& p, const RingElement& x,
                    std::optional<IndexWindow> window) {
  if (x.terms.empty()) return RingElement{};
  if (x.degree() > 4)
    throw std::invalid_argument("apply_D: degree above the supported desk-scale bound");
  long base_lo = x.terms.begin()->first.back(), base_hi = x.terms.begin()->first.front();
  for (const auto& [m, c] : x.terms) {
    if (m.empty()) continue;
    base_lo = std::min(base_lo, m.back());
    base_hi = std::max(base_hi, m.front());
  }
  long lo = base_lo - 2, hi = base_hi + 2;
  if (window) {
    lo = std::min(window->lo, lo);
    hi = std::max(window->hi, hi);
  }
  const long cap_lo = base_lo - 8, cap_hi = base_hi + 8;

  for (;;) {
    RingElement out = apply_once(p, x, lo, hi);
    // telescoping check: the outermost window layer must be clean
    std::vector<Monomial> rim;
    for (const auto& [m, c] : out.terms)
      if (!m.empty() && (m.front() >= hi || m.back() <= lo)) rim.push_back(m);
    if (rim.empty()) return out;
    if (lo <= cap_lo && hi >= cap_hi) {
      std::string msg = "apply_D: cancellation failed outside the window cap;"
                        " surviving monomials:";
      for (std::size_t i = 0; i < rim.size() && i < 8; ++i) msg += " " + mono_str(rim[i]);
      throw std::runtime_error(msg);
    }
    lo = std::max(cap_lo, lo - 2);
    hi = std::min(cap_hi, hi + 2);
  }
}

CharacterExpansion expand_in_characters(const RingElement& x, int N) {
  CharacterExpansion out;
  out.level = N;
  if (x.terms.empty()) return out;
  if (!x.homogeneous(N))
    throw std::invalid_argument("expand_in_characters: not homogeneous of the given degree");

  long spread_cap = x.terms.begin()->first.front() - x.terms.begin()->first.back();
  for (const auto& [m, c] : x.terms)
    spread_cap = std::max(spread_cap, m.front() - m.back());
  spread_cap += 32;

  RingElement rem = x;
  while (!rem.terms.empty()) {
    // lex-smallest monomial is the dominance-minimal one; it is the leading
    // monomial of exactly one character
    const auto& [m, c] = *rem.terms.begin();
    if (m.front() - m.back() > spread_cap) {
      std::string msg = "expand_in_characters: remainder not in the character span"
                        " (diverging correction chain at " + mono_str(m) + ")";
      throw std::runtime_error(msg);
    }
    Signature nu(m);  // descending index tuple is a valid signature
    Rat coeff = c;
    out.coeff[nu] = coeff;
    RingElement chi = character_element(nu);
    chi *= coeff;
    rem -= chi;
  }
  return out;
}

RingElement reconstruct(const CharacterExpansion& e) {
  RingElement out;
  for (const auto& [nu, c] : e.coeff) {
    RingElement chi = character_element(nu);
    chi *= c;
    out += chi;
  }
  return out;
}

GenConsistencyReport verify_generator_consistency(const ZwParams& p, const Signature& nu) {
  GenConsistencyReport rep;
  rep.nu = nu;
  int N = nu.level();
  if (N < 1) throw std::invalid_argument("verify_generator_consistency: level-0 vertex");

  RingElement lhs_elem = apply_D(p, character_element(nu));
  rep.lhs = expand_in_characters(lhs_elem, N).coeff;

  PointState n = to_point_configuration(nu);
  Rat dim_nu(weyl_dimension(nu));
  Rat total = 0;
  for (int k = 1; k <= N; ++k)
    for (int dir : {+1, -1}) {
      Rat out_rate = jump_rate(p, n, k, dir);
      if (out_rate == 0) continue;
      total += out_rate;
      PointState m = n;
      m[k - 1] += dir;
      Signature mu = signature_from_points(m);
      Rat in_rate = jump_rate(p, m, k, -dir);  // Q(mu, nu)
      rep.rhs[mu] = in_rate * Rat(weyl_dimension(mu)) / dim_nu;
    }
  rep.rhs[nu] = -total;
  for (auto it = rep.rhs.begin(); it != rep.rhs.end();)
    it = (it->second == 0) ? rep.rhs.erase(it) : std::next(it);

  rep.pass = (rep.lhs == rep.rhs);
  return rep;
}

}  // namespace gtml
