#include "gtml/bouquet.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace gtml {

YoungDiagram::YoungDiagram(std::vector<long> r) : rows(std::move(r)) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] <= 0) throw std::invalid_argument("YoungDiagram: nonpositive row");
    if (i > 0 && rows[i - 1] < rows[i])
      throw std::invalid_argument("YoungDiagram: rows not weakly decreasing");
  }
}

long YoungDiagram::size() const {
  long s = 0;
  for (long r : rows) s += r;
  return s;
}

bool YoungDiagram::contains(const YoungDiagram& mu) const {
  if (mu.rows.size() > rows.size()) return false;
  for (std::size_t i = 0; i < mu.rows.size(); ++i)
    if (mu.rows[i] > rows[i]) return false;
  return true;
}

std::string YoungDiagram::str() const {
  std::string out = "(";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(rows[i]);
  }
  return out + ")";
}

YoungDiagram parse_young(const std::string& s) {
  if (s.empty() || s == "empty") return YoungDiagram();
  std::vector<long> rows;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) rows.push_back(std::stol(tok));
  return YoungDiagram(std::move(rows));
}

namespace {

// shapes obtained from sigma by adding one box, staying inside la
void add_box_within(const YoungDiagram& sigma, const YoungDiagram& la,
                    const std::function<void(YoungDiagram)>& visit) {
  int k = sigma.nrows();
  for (int i = 0; i <= k; ++i) {
    long cur = i < k ? sigma.rows[i] : 0;
    long above = i == 0 ? LONG_MAX : sigma.rows[i - 1];
    if (cur + 1 > above) continue;
    long cap = i < la.nrows() ? la.rows[i] : 0;
    if (cur + 1 > cap) continue;
    std::vector<long> next = sigma.rows;
    if (i < k)
      ++next[i];
    else
      next.push_back(1);
    visit(YoungDiagram(std::move(next)));
  }
}

Int skew_paths(const YoungDiagram& from, const YoungDiagram& to,
               std::map<YoungDiagram, Int>& memo) {
  if (from == to) return 1;
  auto it = memo.find(from);
  if (it != memo.end()) return it->second;
  Int total = 0;
  add_box_within(from, to, [&](YoungDiagram next) { total += skew_paths(next, to, memo); });
  memo[from] = total;
  return total;
}

}  // namespace

Int dim_young(const YoungDiagram& la) {
  std::map<YoungDiagram, Int> memo;
  return skew_paths(YoungDiagram(), la, memo);
}

Int skew_dim(const YoungDiagram& la, const YoungDiagram& mu) {
  if (!la.contains(mu)) throw std::invalid_argument("skew_dim: mu not contained in la");
  std::map<YoungDiagram, Int> memo;
  return skew_paths(mu, la, memo);
}

Rat young_link(const YoungDiagram& la, const YoungDiagram& mu) {
  if (la.size() <= mu.size()) throw std::invalid_argument("young_link: need |la| > |mu|");
  if (!la.contains(mu)) return Rat(0);
  return Rat(dim_young(mu) * skew_dim(la, mu)) / Rat(dim_young(la));
}

Rat relative_dim_young(const YoungDiagram& la, const YoungDiagram& mu) {
  long l = la.size(), m = mu.size();
  if (l < m) throw std::invalid_argument("relative_dim_young: need |la| >= |mu|");
  if (!la.contains(mu)) return Rat(0);
  Rat falling = 1;
  for (long i = 0; i < m; ++i) falling *= Rat(l - i);
  return falling * Rat(skew_dim(la, mu)) / Rat(dim_young(la));
}

namespace {

Signature pad_to_signature(const YoungDiagram& d, int n) {
  std::vector<long> parts(d.rows.begin(), d.rows.end());
  parts.resize(n, 0);
  return Signature(std::move(parts));
}

}  // namespace

Rat gt_plus_link(const YoungDiagram& la, int n_prime, const YoungDiagram& mu, int n) {
  if (la.nrows() > n_prime)
    throw std::invalid_argument("gt_plus_link: la has more than N' rows");
  if (mu.nrows() > n) throw std::invalid_argument("gt_plus_link: mu has more than N rows");
  if (n_prime <= n) throw std::invalid_argument("gt_plus_link: need N' > N");
  Signature top = pad_to_signature(la, n_prime);
  Signature bottom = pad_to_signature(mu, n);
  return Rat(weyl_dimension(bottom) * count_paths(bottom, top)) / Rat(weyl_dimension(top));
}

void ThomaConePoint::validate() const {
  Rat s = 0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] < 0) throw std::invalid_argument("ThomaConePoint: negative alpha");
    if (i > 0 && alpha[i - 1] < alpha[i])
      throw std::invalid_argument("ThomaConePoint: alpha not weakly decreasing");
    s += alpha[i];
  }
  for (std::size_t i = 0; i < beta.size(); ++i) {
    if (beta[i] < 0) throw std::invalid_argument("ThomaConePoint: negative beta");
    if (i > 0 && beta[i - 1] < beta[i])
      throw std::invalid_argument("ThomaConePoint: beta not weakly decreasing");
    s += beta[i];
  }
  if (s > delta) throw std::invalid_argument("ThomaConePoint: sum(alpha+beta) > delta");
}

YbLimitReport yb_link_limit(const YoungDiagram& la, const YoungDiagram& mu,
                            const Rat& ratio, const std::vector<int>& schedule,
                            double tol) {
  if (!(ratio > 0 && ratio < 1))
    throw std::invalid_argument("yb_link_limit: ratio must lie in (0,1)");
  if (schedule.empty()) throw std::invalid_argument("yb_link_limit: empty schedule");
  YbLimitReport rep;
  rep.la = la;
  rep.mu = mu;
  rep.ratio = ratio;
  rep.tol = tol;
  for (int n : schedule) {
    long n_prime = round_long(Rat(n) / ratio);
    if (n_prime <= n) throw std::invalid_argument("yb_link_limit: schedule entry too small");
    rep.realized.emplace_back(n, static_cast<int>(n_prime));
    rep.values.push_back(gt_plus_link(la, static_cast<int>(n_prime), mu, n));
  }
  for (std::size_t i = 1; i < rep.values.size(); ++i)
    rep.diffs.push_back(std::abs(to_double(rep.values[i] - rep.values[i - 1])));
  rep.last = rep.values.back();
  if (rep.values.size() >= 2) {
    // assume error ~ c/N: x* = (N2 x2 - N1 x1) / (N2 - N1)
    double n1 = rep.realized[rep.realized.size() - 2].first;
    double n2 = rep.realized.back().first;
    double x1 = to_double(rep.values[rep.values.size() - 2]);
    double x2 = to_double(rep.values.back());
    rep.richardson = (n2 * x2 - n1 * x1) / (n2 - n1);
    rep.converged = rep.diffs.back() < tol;
  } else {
    rep.richardson = to_double(rep.last);
    rep.converged = false;
  }
  return rep;
}

Rat yb_link_binomial_hypothesis(const YoungDiagram& la, const YoungDiagram& mu,
                                const Rat& ratio) {
  if (!la.contains(mu)) return Rat(0);
  long l = la.size(), m = mu.size();
  Rat binom = 1;
  for (long i = 0; i < m; ++i) binom *= Rat(l - i) / Rat(i + 1);
  Rat q = ratio;
  Rat qm = 1, qr = 1;
  for (long i = 0; i < m; ++i) qm *= q;
  for (long i = 0; i < l - m; ++i) qr *= (1 - q);
  return binom * qm * qr * Rat(dim_young(mu) * skew_dim(la, mu)) / Rat(dim_young(la));
}

std::vector<YoungDiagram> subdiagrams(const YoungDiagram& la, long size_cutoff) {
  std::vector<YoungDiagram> out;
  std::vector<long> cur;
  auto rec = [&](auto&& self, int i, long cap, long used) -> void {
    out.push_back(cur.empty() ? YoungDiagram() : YoungDiagram(cur));
    if (i >= la.nrows()) return;
    long top = std::min(cap, la.rows[i]);
    for (long v = 1; v <= top; ++v) {
      if (used + v > size_cutoff) break;
      cur.push_back(v);
      self(self, i + 1, v, used + v);
      cur.pop_back();
    }
  };
  rec(rec, 0, la.nrows() ? la.rows[0] : 0, 0);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

YbCompatReport yb_compatibility_check(const Rat& r2, const Rat& r1, const Rat& r0,
                                      const std::vector<YoungDiagram>& diagrams,
                                      long size_cutoff, const std::vector<int>& schedule,
                                      double tol) {
  if (!(r2 > r1 && r1 > r0 && r0 > 0))
    throw std::invalid_argument("yb_compatibility_check: need r'' > r' > r > 0");
  auto limit = [&](const YoungDiagram& a, const YoungDiagram& b, const Rat& hi,
                   const Rat& lo) {
    if (!a.contains(b)) return 0.0;
    return to_double(yb_link_limit(a, b, lo / hi, schedule).last);
  };

  YbCompatReport rep;
  for (const auto& la : diagrams)
    for (const auto& mu : diagrams) {
      if (!la.contains(mu)) continue;
      double lhs = 0;
      for (const auto& kappa : subdiagrams(la, size_cutoff))
        if (kappa.contains(mu)) lhs += limit(la, kappa, r2, r1) * limit(kappa, mu, r1, r0);
      double rhs = limit(la, mu, r2, r0);
      YbCompatCase c;
      c.la = la;
      c.mu = mu;
      c.lhs = lhs;
      c.rhs = rhs;
      c.residual = std::abs(lhs - rhs);
      rep.max_residual = std::max(rep.max_residual, c.residual);
      rep.cases.push_back(std::move(c));
    }
  rep.pass = rep.max_residual <= tol;
  return rep;
}

}  // namespace gtml
