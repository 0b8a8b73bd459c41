#include "gtml/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "gtml/boundary.hpp"
#include "gtml/bouquet.hpp"
#include "gtml/links.hpp"
#include "gtml/markov.hpp"
#include "gtml/suites.hpp"
#include "gtml/zw.hpp"

namespace gtml::cli {

namespace {

using nlohmann::ordered_json;

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// resolved key -> value map: config file first, explicit flags override
struct Options {
  std::map<std::string, std::string> values;

  bool has(const std::string& k) const { return values.count(k) > 0; }
  const std::string& get(const std::string& k) const {
    auto it = values.find(k);
    if (it == values.end())
      throw std::invalid_argument("missing required option --" + k);
    return it->second;
  }
  std::string get_or(const std::string& k, const std::string& d) const {
    auto it = values.find(k);
    return it == values.end() ? d : it->second;
  }
};

struct SubSpec {
  CLI::App* app = nullptr;
  std::map<std::string, std::string> storage;

  void add(const std::vector<std::string>& keys) {
    for (const auto& k : keys) {
      storage[k];  // stable node for the binding
      app->add_option("--" + k, storage[k]);
    }
  }

  Options resolve() const {
    Options opt;
    if (app->count("--config")) {
      std::ifstream in(storage.at("config"));
      if (!in) throw std::invalid_argument("cannot open config file");
      nlohmann::json cfg = nlohmann::json::parse(in);
      if (!cfg.is_object()) throw std::invalid_argument("config file must hold an object");
      for (const auto& [k, v] : cfg.items())
        opt.values[k] = v.is_string() ? v.get<std::string>() : v.dump();
    }
    for (const auto& [k, v] : storage)
      if (app->count("--" + k)) opt.values[k] = v;
    return opt;
  }
};

std::vector<Rat> parse_rat_list(const std::string& s) {
  std::vector<Rat> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(parse_rational(tok));
  return out;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
  return out;
}

// --z re[,im]; a non-real z with omitted --z2 implies the conjugate
ZwParams resolve_params(const Options& opt, bool defaults) {
  RatComplex z(Rat(1, 2)), z2(Rat(1, 2)), w(Rat(1, 2)), w2(Rat(1, 2));
  if (!defaults) {
    z = parse_rat_complex(opt.get("z"));
    w = parse_rat_complex(opt.get("w"));
    z2 = opt.has("z2") ? parse_rat_complex(opt.get("z2")) : (z.is_real() ? z : z.conj());
    w2 = opt.has("w2") ? parse_rat_complex(opt.get("w2")) : (w.is_real() ? w : w.conj());
  } else {
    if (opt.has("z")) z = parse_rat_complex(opt.get("z"));
    if (opt.has("w")) w = parse_rat_complex(opt.get("w"));
    z2 = opt.has("z2") ? parse_rat_complex(opt.get("z2")) : (z.is_real() ? z : z.conj());
    w2 = opt.has("w2") ? parse_rat_complex(opt.get("w2")) : (w.is_real() ? w : w.conj());
  }
  auto adm = is_admissible(z, z2, w, w2);
  if (!adm.ok) throw std::invalid_argument("inadmissible parameters: " + adm.reason);
  return make_params(z, z2, w, w2);
}

void flatten(const ordered_json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items())
      flatten(v, prefix.empty() ? k : prefix + "." + k, os);
    return;
  }
  if (j.is_string())
    os << prefix << "," << j.get<std::string>() << "\n";
  else
    os << prefix << "," << j.dump() << "\n";
}

void emit(const ordered_json& j, const Options& opt, std::ostream& out) {
  std::string format = opt.get_or("format", "json");
  std::string text;
  if (format == "json") {
    text = j.dump(2) + "\n";
  } else if (format == "csv") {
    std::ostringstream os;
    flatten(j, "", os);
    text = os.str();
  } else {
    throw std::invalid_argument("unknown output format '" + format + "'");
  }
  if (opt.has("out")) {
    std::ofstream f(opt.get("out"), std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output file");
    f << text;
  } else {
    out << text;
  }
}

void emit_text(const std::string& text, const Options& opt, std::ostream& out) {
  if (opt.has("out")) {
    std::ofstream f(opt.get("out"), std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output file");
    f << text;
  } else {
    out << text;
  }
}

int cmd_dim(const Options& opt, std::ostream& out) {
  Signature nu = parse_signature(opt.get("signature"));
  ordered_json j;
  j["dim"] = weyl_dimension(nu).get_str();
  emit(j, opt, out);
  return 0;
}

int cmd_paths(const Options& opt, std::ostream& out) {
  Signature from = parse_signature(opt.get("from"));
  Signature to = parse_signature(opt.get("to"));
  ordered_json j;
  j["paths"] = count_paths(from, to).get_str();
  emit(j, opt, out);
  return 0;
}

int cmd_link(const Options& opt, std::ostream& out) {
  Signature nu = parse_signature(opt.get("signature"));
  int to_level = std::stoi(opt.get("to-level"));
  StochasticRow row;
  if (to_level == nu.level() - 1)
    row = link_one_step(nu);
  else
    row = link_multi(nu, to_level);
  ordered_json j;
  for (const auto& [sig, p] : row.entries) j[sig.str()] = rat_str(p);
  emit(j, opt, out);
  return 0;
}

int cmd_reldim(const Options& opt, std::ostream& out) {
  Signature from = parse_signature(opt.get("from"));
  Signature to = parse_signature(opt.get("to"));
  ordered_json j;
  j["reldim"] = rat_str(relative_dimension(from, to));
  emit(j, opt, out);
  return 0;
}

int cmd_zw(const Options& opt, std::ostream& out) {
  ZwParams p = resolve_params(opt, false);
  int n = std::stoi(opt.get("N"));
  double eps = std::stod(opt.get_or("eps", "1e-8"));
  FiniteMeasure m = zw_measure(p, n, eps);
  ordered_json j;
  j["level"] = m.level;
  j["box"] = std::to_string(m.box);
  j["mode"] = m.mode;
  j["residual"] = fmt_double(m.residual);
  j["normalization_consistency"] = fmt_double(m.normalization_consistency);
  ordered_json masses;
  for (const auto& [sig, v] : m.mass) masses[sig.str()] = fmt_double(v);
  j["masses"] = std::move(masses);
  emit(j, opt, out);
  return 0;
}

int cmd_simulate(const Options& opt, std::ostream& out) {
  ZwParams p = resolve_params(opt, false);
  int n = std::stoi(opt.get_or("N", "1"));
  Signature start = opt.has("start") ? parse_signature(opt.get("start"))
                                     : Signature::constant(n, 0);
  if (start.level() != n) throw std::invalid_argument("simulate: start level mismatch");
  double horizon = std::stod(opt.get_or("horizon", "1e18"));
  std::uint64_t seed = std::stoull(opt.get("seed"));
  std::uint64_t max_jumps = std::stoull(opt.get_or("max-jumps", "18446744073709551615"));
  Trajectory t = simulate(p, to_point_configuration(start), horizon, seed, max_jumps);
  std::ostringstream os;
  os << "time,state\n";
  auto state_str = [](const PointState& pt) {
    Signature sig = signature_from_points(pt);
    std::string s = sig.str();
    return s.substr(1, s.size() - 2);  // strip parentheses for the CSV field
  };
  os << fmt_double(0.0) << ",\"" << state_str(t.initial) << "\"\n";
  for (const auto& [time, state] : t.events)
    os << fmt_double(time) << ",\"" << state_str(state) << "\"\n";
  emit_text(os.str(), opt, out);
  return 0;
}

OmegaPoint omega_from(const Options& opt) {
  OmegaPoint om;
  om.alpha_plus = parse_rat_list(opt.get_or("alpha-plus", ""));
  om.alpha_minus = parse_rat_list(opt.get_or("alpha-minus", ""));
  om.beta_plus = parse_rat_list(opt.get_or("beta-plus", ""));
  om.beta_minus = parse_rat_list(opt.get_or("beta-minus", ""));
  om.gamma_plus = parse_rational(opt.get_or("gamma-plus", "0"));
  om.gamma_minus = parse_rational(opt.get_or("gamma-minus", "0"));
  om.validate();
  return om;
}

int cmd_boundary(const Options& opt, std::ostream& out) {
  OmegaPoint om = omega_from(opt);
  ordered_json j;
  if (opt.get_or("coeffs", "") == "true") {
    std::string window = opt.get("window");
    auto colon = window.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("window must be lo:hi");
    long lo = std::stol(window.substr(0, colon));
    long hi = std::stol(window.substr(colon + 1));
    int log2s = std::stoi(opt.get_or("samples", "14"));
    LaurentCoeffs lc = laurent_coeffs(om, lo, hi, log2s);
    j["method"] = lc.method;
    j["fallback"] = lc.fallback;
    j["tail_bound"] = fmt_double(lc.tail_bound);
    ordered_json coeffs;
    if (lc.method == "exact")
      for (const auto& [idx, c] : lc.exact) coeffs[std::to_string(idx)] = rat_str(c);
    else
      for (const auto& [idx, c] : lc.numeric) coeffs[std::to_string(idx)] = fmt_double(c);
    j["coeffs"] = std::move(coeffs);
  } else {
    int n = std::stoi(opt.get("N"));
    double eps = std::stod(opt.get_or("eps", "1e-9"));
    StochasticRow row = link_infinity_adaptive(om, n, eps);
    j["level"] = n;
    j["complete"] = row.complete;
    double total = 0;
    ordered_json masses;
    for (const auto& [sig, mass] : row.entries) {
      masses[sig.str()] = row.complete ? rat_str(mass) : fmt_double(to_double(mass));
      total += to_double(mass);
    }
    j["residual"] = fmt_double(row.complete ? 0.0 : 1.0 - total);
    j["masses"] = std::move(masses);
  }
  emit(j, opt, out);
  return 0;
}

int cmd_bouquet(const Options& opt, std::ostream& out) {
  YoungDiagram la = parse_young(opt.get("lambda"));
  YoungDiagram mu = parse_young(opt.get_or("mu", "empty"));
  Rat ratio = parse_rational(opt.get("ratio"));
  std::vector<int> schedule = parse_int_list(opt.get_or("schedule", "5,10,20,40"));
  double tol = std::stod(opt.get_or("tol", "1e-2"));
  auto rep = yb_link_limit(la, mu, ratio, schedule, tol);
  ordered_json j;
  j["lambda"] = la.str();
  j["mu"] = mu.str();
  j["ratio"] = rat_str(ratio);
  ordered_json seq = ordered_json::array();
  for (std::size_t i = 0; i < rep.values.size(); ++i) {
    ordered_json e;
    e["N"] = rep.realized[i].first;
    e["Nprime"] = rep.realized[i].second;
    e["value"] = rat_str(rep.values[i]);
    seq.push_back(std::move(e));
  }
  j["sequence"] = std::move(seq);
  j["last"] = rat_str(rep.last);
  j["richardson"] = fmt_double(rep.richardson);
  j["converged"] = rep.converged;
  if (opt.get_or("hypothesis", "") == "true")
    j["binomial_hypothesis"] = rat_str(yb_link_binomial_hypothesis(la, mu, ratio));
  emit(j, opt, out);
  return rep.converged ? 0 : 1;
}

int cmd_verify(const Options& opt, const std::string& suite, std::ostream& out,
               std::ostream& err) {
  SuiteConfig cfg;
  if (opt.has("z")) cfg.z = parse_rat_complex(opt.get("z"));
  cfg.z2 = opt.has("z2") ? parse_rat_complex(opt.get("z2"))
                         : (cfg.z.is_real() ? cfg.z : cfg.z.conj());
  if (opt.has("w")) cfg.w = parse_rat_complex(opt.get("w"));
  cfg.w2 = opt.has("w2") ? parse_rat_complex(opt.get("w2"))
                         : (cfg.w.is_real() ? cfg.w : cfg.w.conj());
  if (opt.has("N")) cfg.level = std::stoi(opt.get("N"));
  if (opt.has("box")) cfg.box = std::stol(opt.get("box"));
  if (opt.has("eps")) cfg.eps = std::stod(opt.get("eps"));
  if (opt.has("cut")) cfg.cut = std::stol(opt.get("cut"));
  if (opt.has("seed")) cfg.seed = std::stoull(opt.get("seed"));
  if (opt.has("max-level")) cfg.max_level = std::stoi(opt.get("max-level"));

  VerificationReport rep = verify_suite(suite, cfg);

  std::string format = opt.get_or("format", "json");
  if (format == "csv") {
    std::ostringstream os;
    os << "id,pass,exact,residual,expected,got\n";
    for (const auto& c : rep.cases)
      os << c.id << "," << (c.pass ? 1 : 0) << "," << (c.exact ? 1 : 0) << ","
         << fmt_double(c.residual) << "," << c.expected << "," << c.got << "\n";
    emit_text(os.str(), opt, out);
  } else {
    ordered_json j;
    j["suite"] = rep.suite;
    j["pass"] = rep.pass;
    ordered_json cases = ordered_json::array();
    for (const auto& c : rep.cases) {
      ordered_json e;
      e["id"] = c.id;
      e["inputs"] = c.inputs;
      e["expected"] = c.expected;
      e["got"] = c.got;
      e["exact"] = c.exact;
      e["residual"] = fmt_double(c.residual);
      e["pass"] = c.pass;
      cases.push_back(std::move(e));
    }
    j["cases"] = std::move(cases);
    emit(j, opt, out);
  }
  err << "suite " << rep.suite << ": " << (rep.pass ? "PASS" : "FAIL") << " ("
      << rep.cases.size() << " cases, " << fmt_double(rep.wall_ms) << " ms)\n";
  return rep.pass ? 0 : 1;
}

const std::vector<std::string> kCommon = {"config", "out", "format"};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact Gelfand-Tsetlin combinatorics, zw-measures and Markov generators"};
  app.require_subcommand(0, 1);

  std::map<std::string, SubSpec> subs;
  auto make_sub = [&](const std::string& name, const std::string& desc,
                      const std::vector<std::string>& keys) {
    SubSpec& spec = subs[name];
    spec.app = app.add_subcommand(name, desc);
    spec.add(kCommon);
    spec.add(keys);
    return spec.app;
  };

  make_sub("dim", "Weyl dimension of a signature", {"signature"});
  make_sub("paths", "number of interlacing chains between two vertices", {"from", "to"});
  make_sub("link", "stochastic link row of a signature", {"signature", "to-level"});
  make_sub("reldim", "relative dimension F_kappa(nu)", {"from", "to"});
  make_sub("zw", "truncated zw-measure", {"z", "z2", "w", "w2", "N", "eps"});
  make_sub("simulate", "jump-process trajectory (CSV)",
           {"z", "z2", "w", "w2", "N", "start", "horizon", "seed", "max-jumps"});
  make_sub("boundary", "boundary link row or Laurent coefficients",
           {"N", "alpha-plus", "alpha-minus", "beta-plus", "beta-minus", "gamma-plus",
            "gamma-minus", "eps", "coeffs", "window", "samples"});
  make_sub("bouquet", "degeneration limit of GT+ links",
           {"lambda", "mu", "ratio", "schedule", "tol", "hypothesis"});
  std::string suite;
  CLI::App* verify = make_sub("verify", "run a verification suite",
                              {"z", "z2", "w", "w2", "N", "box", "eps", "cut", "seed",
                               "max-level"});
  verify->add_option("suite", suite, "one of the verification suites")->required();

  std::vector<const char*> argv;
  argv.push_back("gtml");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    for (auto& [name, spec] : subs) {
      if (!spec.app->parsed()) continue;
      Options opt = spec.resolve();
      if (name == "dim") return cmd_dim(opt, out);
      if (name == "paths") return cmd_paths(opt, out);
      if (name == "link") return cmd_link(opt, out);
      if (name == "reldim") return cmd_reldim(opt, out);
      if (name == "zw") return cmd_zw(opt, out);
      if (name == "simulate") return cmd_simulate(opt, out);
      if (name == "boundary") return cmd_boundary(opt, out);
      if (name == "bouquet") return cmd_bouquet(opt, out);
      if (name == "verify") return cmd_verify(opt, suite, out, err);
    }
    err << app.help();
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace gtml::cli
