#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "ktmatroid/ktmatroid.hpp"
#include "selftest.hpp"

namespace {

using ktm::io::Json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitDomain = 2;

constexpr int kLocalizationMaxN = 10;
constexpr int kOracleMaxN = 16;

struct Config {
  std::string command;
  std::string matroid;
  std::string matroid_file;
  std::optional<int> m;
  std::string flip = "lex";
  std::uint64_t seed = 7;
  std::string output = "json";
  std::optional<int> max_n;
  std::string cases;
  bool oracle = false;
};

struct Failure {
  int code;
  std::string kind;
  std::string message;
};

std::string read_all(std::istream& in) {
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string read_file(const std::string& path) {
  if (path == "-") return read_all(std::cin);
  std::ifstream f(path);
  if (!f) throw ktm::DomainError("cannot open " + path);
  return read_all(f);
}

ktm::Matroid load_matroid(const Config& cfg) {
  if (cfg.matroid.empty() == cfg.matroid_file.empty())
    throw ktm::DomainError("give exactly one of --matroid or --matroid-file");
  const std::string text = cfg.matroid.empty() ? read_file(cfg.matroid_file) : cfg.matroid;
  auto M = ktm::io::matroid_from_json(Json::parse(text));
  const auto v = ktm::validate(M);
  if (!v) throw ktm::InvalidMatroidError(v.describe());
  return M;
}

void guard(const ktm::Matroid& M, const Config& cfg, int default_max) {
  const int limit = cfg.max_n.value_or(default_max);
  if (M.n() > limit)
    throw ktm::SizeGuardError("n=" + std::to_string(M.n()) + " exceeds the size guard of " + std::to_string(limit) +
                              " (override with --max-n)");
}

ktm::IntegrateOptions options(const Config& cfg, std::size_t n) {
  ktm::IntegrateOptions o;
  if (cfg.flip == "random") o.order = ktm::FlipOrder::random(n, cfg.seed);
  if (const char* t = std::getenv("KTM_THREADS")) {
    const int v = std::atoi(t);
    if (v > 0) o.threads = static_cast<unsigned>(v);
  }
  return o;
}

/// Runs the command; returns the exit code and fills `out` (json) / `text`.
int dispatch(const Config& cfg, Json& out, std::string& text) {
  const std::string& c = cfg.command;
  if (c == "selftest") {
    const auto items = ktm::selftest::run();
    Json checks = Json::array();
    int failed = 0;
    std::ostringstream os;
    for (const auto& it : items) {
      Json j{{"name", it.name}, {"ok", it.ok}};
      if (!it.ok) {
        j["detail"] = it.detail;
        ++failed;
      }
      checks.push_back(std::move(j));
      os << (it.ok ? "PASS " : "FAIL ") << it.name << (it.ok ? "" : ": " + it.detail) << '\n';
    }
    out = Json{{"selftest", {{"passed", static_cast<int>(items.size()) - failed}, {"failed", failed}, {"checks", checks}}}};
    text = os.str();
    return failed ? kExitFailure : kExitOk;
  }
  if (c == "verify") {
    if (cfg.cases.empty()) throw ktm::DomainError("verify needs --cases FILE");
    const auto file = Json::parse(read_file(cfg.cases));
    ktm::IntegrateOptions o;
    if (const char* t = std::getenv("KTM_THREADS"); t && std::atoi(t) > 0) o.threads = static_cast<unsigned>(std::atoi(t));
    const auto outcomes = ktm::run_cases(file, o);
    Json results = Json::array();
    int failed = 0;
    std::ostringstream os;
    for (const auto& oc : outcomes) {
      Json j{{"name", oc.name}, {"check", oc.check}, {"ok", oc.ok()}};
      if (!oc.error.empty()) j["error"] = oc.error;
      Json witnesses = Json::array();
      for (const auto& r : oc.results)
        if (!r.ok) {
          Json w{{"name", r.name}};
          if (r.witness) w["witness"] = {{"where", r.witness->where}, {"lhs", r.witness->lhs}, {"rhs", r.witness->rhs}};
          witnesses.push_back(std::move(w));
        }
      if (!witnesses.empty()) j["failures"] = std::move(witnesses);
      if (!oc.ok()) ++failed;
      os << (oc.ok() ? "PASS " : "FAIL ") << oc.name;
      if (!oc.error.empty()) os << ": " << oc.error;
      for (const auto& r : oc.results)
        if (!r.ok) os << ": " << r.describe();
      os << '\n';
      results.push_back(std::move(j));
    }
    out = Json{{"results", results},
               {"passed", static_cast<int>(outcomes.size()) - failed},
               {"failed", failed}};
    text = os.str();
    return failed ? kExitFailure : kExitOk;
  }

  const auto M = load_matroid(cfg);
  const auto n = static_cast<std::size_t>(M.n());
  const auto opts = options(cfg, n);
  if (c == "tutte") {
    guard(M, cfg, kLocalizationMaxN);
    const auto t = ktm::tutte(M, opts);
    out = Json{{"tutte", ktm::io::bivariate_json(t, "z", "w")}};
    text = ktm::to_string(t, "z", "w");
  } else if (c == "rankgen") {
    guard(M, cfg, cfg.oracle ? kOracleMaxN : kLocalizationMaxN);
    const auto r = cfg.oracle ? ktm::rank_gen_oracle(M, cfg.max_n.value_or(kOracleMaxN)) : ktm::F(M, 1, opts);
    out = Json{{"rankgen", ktm::io::bivariate_json(r)}};
    text = ktm::to_string(r);
  } else if (c == "hpoly" || c == "gpoly") {
    guard(M, cfg, kLocalizationMaxN);
    const auto h = c == "hpoly" ? ktm::h_poly(M, opts) : ktm::g_poly(M, opts);
    out = Json{{c == "hpoly" ? "h" : "g", ktm::io::unipoly_json(h)}};
    text = h.to_string();
  } else if (c == "f") {
    guard(M, cfg, kLocalizationMaxN);
    const int m = cfg.m.value_or(1);
    const auto f = ktm::F(M, m, opts);
    out = Json{{"m", m}, {"f", ktm::io::bivariate_json(f)}};
    text = ktm::to_string(f);
  } else if (c == "ft") {
    guard(M, cfg, kLocalizationMaxN);
    const int m = cfg.m.value_or(1);
    const auto f = ktm::F_T(M, m, opts);
    out = Json{{"m", m}, {"ft", ktm::io::laurent_bivariate_json(f)}};
    text = ktm::to_string(f);
  } else if (c == "yclass") {
    guard(M, cfg, kLocalizationMaxN);
    const auto y = ktm::y_poly(M);
    out = Json{{"yclass", ktm::io::class_json(y)}};
    std::ostringstream os;
    for (ktm::Subset I : y.fixed_points()) os << ktm::subset::to_string(I) << ": " << y.poly(I).to_string() << '\n';
    text = os.str();
  } else if (c == "pushforward") {
    guard(M, cfg, kLocalizationMaxN);
    const int m = cfg.m.value_or(1);
    const auto p = ktm::pushforward_to_PxP(ktm::F(M, m, opts), M.n());
    out = Json{{"m", m}, {"pushforward", ktm::io::bivariate_json(p, "a", "b")}};
    text = ktm::to_string(p, "a", "b");
  } else if (c == "ehrhart") {
    guard(M, cfg, kLocalizationMaxN);
    const int m = cfg.m.value_or(1);
    if (m < 0) throw ktm::DomainError("lattice point counts need m >= 0");
    const auto a = ktm::F(M, m, opts).coeff(0, 0).value_or(0);
    const auto b = ktm::ehrhart_count(M, m, cfg.max_n.value_or(kOracleMaxN));
    out = Json{{"ehrhart", {{"m", m}, {"count", ktm::io::bigint_json(a)}, {"oracle", ktm::io::bigint_json(b)}}}};
    text = a.str() + (a == b ? "" : " (oracle " + b.str() + ")");
    if (a != b) return kExitFailure;
  } else {
    throw ktm::DomainError("unknown command " + c);
  }
  return kExitOk;
}

int report_error(const Config& cfg, const Failure& f) {
  if (cfg.output == "json")
    std::cout << Json{{"error", {{"kind", f.kind}, {"message", f.message}}}}.dump() << '\n';
  else
    std::cerr << "error: " << f.message << '\n';
  return f.code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact matroid invariants by torus-equivariant localization on Grassmannians"};
  app.require_subcommand(1);
  Config cfg;

  struct CommandInfo {
    const char* name;
    const char* help;
    bool needs_matroid;
    bool takes_m;
  };
  const CommandInfo commands[] = {
      {"tutte", "Tutte polynomial t_M(z, w)", true, false},
      {"rankgen", "rank generating function r_M(u, v)", true, false},
      {"hpoly", "h_M(s) of a loop-free, coloop-free matroid", true, false},
      {"gpoly", "g_M(s) = (-1)^c h_M(-s)", true, false},
      {"f", "F^m_M(u, v)", true, true},
      {"ft", "equivariant F^{m,T}_M(u, v)", true, true},
      {"yclass", "the class y(M) at every torus fixed point", true, false},
      {"pushforward", "F^m_M(alpha - 1, beta - 1) mod alpha^n, beta^n (keys in a, b)", true, true},
      {"ehrhart", "lattice points of m Poly(M), by localization and by enumeration", true, true},
      {"verify", "run a JSON case file of identity checks", false, false},
      {"selftest", "run the built-in fixtures", false, false},
  };
  for (const auto& s : commands) {
    auto* sc = app.add_subcommand(s.name, s.help);
    sc->callback([&cfg, name = std::string(s.name)] { cfg.command = name; });
    sc->add_option("--output", cfg.output, "json or text")->check(CLI::IsMember({"json", "text"}));
    if (s.needs_matroid) {
      sc->add_option("--matroid", cfg.matroid, "matroid JSON or constructor shorthand");
      sc->add_option("--matroid-file", cfg.matroid_file, "file holding the matroid JSON ('-' for stdin)");
      sc->add_option("--flip", cfg.flip, "flip order: lex or random")->check(CLI::IsMember({"lex", "random"}));
      sc->add_option("--seed", cfg.seed, "seed for --flip random");
      sc->add_option("--max-n", cfg.max_n, "override the ground set size guard");
    }
    if (s.takes_m) sc->add_option("-m,--twist", cfg.m, "twist m (default 1)");
    if (std::string(s.name) == "rankgen") sc->add_flag("--oracle", cfg.oracle, "brute force over all subsets");
    if (std::string(s.name) == "verify") sc->add_option("--cases", cfg.cases, "case file")->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    if (cfg.output == "json") return report_error(cfg, {kExitDomain, "usage", e.what()});
    app.exit(e);
    return kExitDomain;
  }

  try {
    Json out;
    std::string text;
    const int code = dispatch(cfg, out, text);
    if (cfg.output == "json")
      std::cout << out.dump() << '\n';
    else
      std::cout << text << (text.empty() || text.back() == '\n' ? "" : "\n");
    return code;
  } catch (const Json::parse_error& e) {
    return report_error(cfg, {kExitDomain, "parse", e.what()});
  } catch (const ktm::InvalidMatroidError& e) {
    return report_error(cfg, {kExitDomain, "invalid_matroid", e.what()});
  } catch (const ktm::SizeGuardError& e) {
    return report_error(cfg, {kExitDomain, "size_guard", e.what()});
  } catch (const ktm::DomainError& e) {
    return report_error(cfg, {kExitDomain, "domain", e.what()});
  } catch (const ktm::DimensionError& e) {
    return report_error(cfg, {kExitDomain, "dimension", e.what()});
  } catch (const ktm::PoleError& e) {
    return report_error(cfg, {kExitDomain, "pole", e.what()});
  } catch (const ktm::InternalConsistencyError& e) {
    return report_error(cfg, {kExitFailure, "internal", e.what()});
  } catch (const Json::exception& e) {
    return report_error(cfg, {kExitDomain, "parse", e.what()});
  } catch (const std::exception& e) {
    return report_error(cfg, {kExitFailure, "internal", e.what()});
  }
}
