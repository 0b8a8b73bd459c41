#include "gtml/signature.hpp"

#include <sstream>
#include <stdexcept>

namespace gtml {

Signature::Signature(std::vector<long> p) : parts(std::move(p)) {
  for (std::size_t i = 1; i < parts.size(); ++i)
    if (parts[i - 1] < parts[i])
      throw std::invalid_argument("Signature: parts not weakly decreasing: " + str());
}

Signature Signature::constant(int n, long c) {
  return Signature(std::vector<long>(n, c));
}

std::string Signature::str() const {
  std::string out = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(parts[i]);
  }
  return out + ")";
}

Signature parse_signature(const std::string& s) {
  if (s.empty() || s == "empty") return Signature();
  std::vector<long> parts;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t pos = 0;
    long v = std::stol(tok, &pos);
    if (pos != tok.size())
      throw std::invalid_argument("parse_signature: bad part '" + tok + "'");
    parts.push_back(v);
  }
  return Signature(std::move(parts));
}

bool interlaces(const Signature& lower, const Signature& upper) {
  int n = upper.level();
  if (n < 1 || lower.level() != n - 1)
    throw std::invalid_argument("interlaces: lengths must be (N-1, N), got " +
                                lower.str() + " vs " + upper.str());
  for (int i = 0; i + 1 < n; ++i) {
    if (!(upper.parts[i] >= lower.parts[i] && lower.parts[i] >= upper.parts[i + 1]))
      return false;
  }
  return true;
}

GTScheme::GTScheme(std::vector<Signature> r) : rows(std::move(r)) {
  if (rows.empty()) throw std::invalid_argument("GTScheme: no rows");
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    if (rows[i + 1].level() != rows[i].level() + 1)
      throw std::invalid_argument("GTScheme: row lengths not consecutive");
    if (!interlaces(rows[i], rows[i + 1]))
      throw std::invalid_argument("GTScheme: rows " + rows[i].str() + " and " +
                                  rows[i + 1].str() + " do not interlace");
  }
}

Int weyl_dimension(const Signature& nu) {
  int n = nu.level();
  Int num = 1, den = 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      num *= Int(nu.parts[i] - nu.parts[j] + j - i);
      den *= Int(j - i);
    }
  Int out;
  mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return out;
}

std::vector<Signature> enumerate_down(const Signature& nu) {
  int n = nu.level();
  if (n < 1) throw std::invalid_argument("enumerate_down: level-0 vertex has no lower level");
  if (n == 1) return {Signature()};
  // lambda_i ranges over [nu_{i+1}, nu_i] independently; weak decrease is
  // automatic. Ascending lexicographic output.
  std::vector<Signature> out;
  std::vector<long> cur(n - 1);
  for (int i = 0; i < n - 1; ++i) cur[i] = nu.parts[i + 1];
  while (true) {
    out.push_back(Signature(cur));
    int i = n - 2;
    while (i >= 0 && cur[i] == nu.parts[i]) {
      cur[i] = nu.parts[i + 1];
      --i;
    }
    if (i < 0) break;
    ++cur[i];
  }
  return out;
}

namespace {

// Necessary condition for a path from sigma (level j) down to kappa (level K):
// sigma_i >= kappa_i and kappa_i >= sigma_{i + j - K} whenever defined.
bool reachable_down(const Signature& sigma, const Signature& kappa) {
  int j = sigma.level(), k = kappa.level();
  if (k == 0) return true;
  int gap = j - k;
  for (int i = 0; i < k; ++i) {
    if (sigma.parts[i] < kappa.parts[i]) return false;
    if (i + gap < j && kappa.parts[i] < sigma.parts[i + gap]) return false;
  }
  return true;
}

}  // namespace

std::map<Signature, Int> paths_to_level(const Signature& nu, int K) {
  int n = nu.level();
  if (K > n) throw std::invalid_argument("paths_to_level: K > N");
  if (K < 0) throw std::invalid_argument("paths_to_level: negative level");
  std::map<Signature, Int> cur;
  cur[nu] = 1;
  for (int level = n; level > std::max(K, 1); --level) {
    std::map<Signature, Int> next;
    for (const auto& [sigma, cnt] : cur)
      for (const auto& lam : enumerate_down(sigma)) next[lam] += cnt;
    cur = std::move(next);
  }
  if (K == 0 && n >= 1) {
    Int total = 0;
    for (const auto& [sig, cnt] : cur) total += cnt;
    std::map<Signature, Int> res;
    res[Signature()] = total;
    return res;
  }
  return cur;
}

Int count_paths(const Signature& kappa, const Signature& nu) {
  int K = kappa.level(), N = nu.level();
  if (K > N) throw std::invalid_argument("count_paths: K > N");
  if (K == N) return kappa == nu ? 1 : 0;
  std::map<Signature, Int> cur;
  cur[nu] = 1;
  for (int level = N; level > std::max(K, 1); --level) {
    std::map<Signature, Int> next;
    for (const auto& [sigma, cnt] : cur)
      for (const auto& lam : enumerate_down(sigma))
        if (reachable_down(lam, kappa)) next[lam] += cnt;
    cur = std::move(next);
  }
  if (K == 0) {
    Int total = 0;
    for (const auto& [sig, cnt] : cur) total += cnt;
    return total;
  }
  auto it = cur.find(kappa);
  return it == cur.end() ? Int(0) : it->second;
}

}  // namespace gtml
