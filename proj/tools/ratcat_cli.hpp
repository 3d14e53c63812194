#pragma once

// ratcat command line: compute, verify, tree, subsets.
//
// Exit codes: 0 success, 1 a verification check failed, 2 usage error.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ratcat/algebra.hpp"
#include "ratcat/catalan.hpp"
#include "ratcat/format.hpp"
#include "ratcat/sequences.hpp"
#include "ratcat/solvers.hpp"
#include "ratcat/subsets.hpp"
#include "ratcat/treeviz.hpp"

namespace ratcat::cli {

struct UsageError : std::runtime_error {
  UsageError(const std::string& flag, const std::string& what) : std::runtime_error(flag + ": " + what) {}
};

struct JobConfig {
  int M = 0;
  int N = 0;
  std::string u;
  std::string x;
  std::string y;
  std::string kind = "P";
  std::string format = "text";
  bool catalan = false;
  bool with_a = false;
  std::optional<int> qmax;
  // tree
  bool compact = false;
  bool hm = false;
  std::string output;
  // subsets
  int max_area = 8;
  // verify
  std::vector<int> grid;
  bool oracle = false;
  bool symmetry = false;
  bool denominators = false;
  bool bullets = false;
  std::string identity;
  int jobs = 1;
};

inline Grid make_grid(int M, int N, const char* flag = "-M/-N") {
  if (M < 1 || N < 1) throw UsageError(flag, "M and N must be positive");
  return Grid(M, N);
}

inline BinaryWord word_arg(const Grid& g, const std::string& text) {
  if (text.empty()) throw UsageError("--u", "a word is required");
  try {
    return BinaryWord::parse(g, text);
  } catch (const std::invalid_argument& e) {
    throw UsageError("--u", e.what());
  }
}

inline MarkerWord marker_arg(const std::string& text, const char* flag) {
  try {
    return MarkerWord::parse(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(flag, e.what());
  }
}

/// Truncation order: --qmax, then RATCAT_QMAX, then M+N+6.
inline int resolve_qmax(const JobConfig& c, const Grid& g) {
  if (c.qmax) {
    if (*c.qmax < 0) throw UsageError("--qmax", "must be nonnegative");
    return *c.qmax;
  }
  if (const char* env = std::getenv("RATCAT_QMAX"); env && *env) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(env, &used);
      if (used != std::string(env).size() || v < 0) throw std::invalid_argument(env);
      return v;
    } catch (const std::exception&) {
      throw UsageError("RATCAT_QMAX", std::string("not a nonnegative integer: ") + env);
    }
  }
  return g.length() + 6;
}

inline std::string expansion_csv(const LaurentPoly& p) {
  std::ostringstream os;
  os << "q,t,a,coefficient\n";
  for (const auto& [e, c] : p.terms()) os << e.q << ',' << e.t << ',' << e.a << ',' << c << '\n';
  return os.str();
}

inline void emit_series(const SeriesSum& s, const JobConfig& c, const Grid& g, std::ostream& out) {
  if (c.format == "text") {
    out << to_text(s) << '\n';
  } else if (c.format == "latex") {
    out << to_latex(s) << '\n';
  } else if (c.format == "json") {
    json j = to_json(s);
    j["reduced"] = to_json(reduce(s.to_rational()));
    out << j.dump(2) << '\n';
  } else if (c.format == "csv") {
    out << expansion_csv(expand(s.to_rational(), resolve_qmax(c, g)));
  } else {
    throw UsageError("--format", "format '" + c.format + "' is not available for --kind " + c.kind);
  }
}

inline int cmd_compute(JobConfig c, std::ostream& out) {
  if (c.catalan) c.kind = "catalan";
  const Grid g = make_grid(c.M, c.N);
  Solver solver(g);
  if (c.kind == "catalan") {
    const CatalanResult r = catalan_series(solver);
    if (c.format == "text") {
      out << to_text(r.polynomial_form) << '\n';
    } else if (c.format == "latex") {
      out << to_latex(r) << '\n';
    } else if (c.format == "json") {
      out << to_json(r).dump(2) << '\n';
    } else if (c.format == "csv") {
      out << expansion_csv(r.polynomial_form);
    } else {
      throw UsageError("--format", "format '" + c.format + "' is not available for --catalan");
    }
    return 0;
  }
  if (c.kind == "knot") {
    const int d = g.d();
    const KnotSeries k = colored_knot_series(g.m(), g.n(), d, c.with_a);
    if (c.format == "csv") {
      out << expansion_csv(k.expand(resolve_qmax(c, g)));
    } else if (c.format == "json") {
      out << json{{"r_part", to_json(k.r_part)}, {"t_shifts", k.t_shifts}}.dump(2) << '\n';
    } else if (c.format == "text" || c.format == "latex") {
      const bool tex = c.format == "latex";
      std::string pre;
      for (int s : k.t_shifts) {
        LaurentPoly f = LaurentPoly(1) - LaurentPoly::monomial(1, 1, s, 0);
        pre += tex ? "\\frac{1}{" + to_latex(f) + "}" : "1/(" + to_text(f) + ")*";
      }
      out << pre << (tex ? to_latex(k.r_part) : "(" + to_text(k.r_part) + ")") << '\n';
    } else {
      throw UsageError("--format", "format '" + c.format + "' is not available for --kind knot");
    }
    return 0;
  }
  if (c.format == "dot") {
    if (c.kind == "P") {
      out << to_dot(decision_trace(word_arg(g, c.u)), false);
    } else if (c.kind == "R") {
      out << to_dot_hm(marker_arg(c.x, "--x"), marker_arg(c.y, "--y"), c.with_a);
    } else {
      throw UsageError("--format", "dot output is available for --kind P and R only");
    }
    return 0;
  }
  if (c.kind == "P" || c.kind == "Phat") {
    const BinaryWord u = word_arg(g, c.u);
    emit_series(c.kind == "P" ? solver.positive_P(u) : solver.positive_Phat(u), c, g, out);
  } else if (c.kind == "Q" || c.kind == "Qhat") {
    MarkerPair p;
    if (!c.u.empty()) {
      const BinaryWord u = word_arg(g, c.u);
      if (!is_admissible(u)) throw UsageError("--u", "word " + u.str() + " is not admissible");
      p = to_markers(u);
    } else {
      p = {marker_arg(c.x, "--x"), marker_arg(c.y, "--y")};
    }
    emit_series(c.kind == "Q" ? solver.positive_Q(p.v, p.w) : solver.positive_Qhat(p.v, p.w), c, g, out);
  } else if (c.kind == "R") {
    const MarkerWord x = marker_arg(c.x, "--x");
    const MarkerWord y = marker_arg(c.y, "--y");
    try {
      emit_series(solver.positive_R(x, y, c.with_a), c, g, out);
    } catch (const std::invalid_argument& e) {
      throw UsageError("--x/--y", e.what());
    }
  } else {
    throw UsageError("--kind", "unknown kind '" + c.kind + "'");
  }
  return 0;
}

inline int cmd_tree(const JobConfig& c, std::ostream& out) {
  std::string dot;
  if (c.hm) {
    dot = to_dot_hm(marker_arg(c.x, "--x"), marker_arg(c.y, "--y"), c.with_a);
  } else {
    const Grid g = make_grid(c.M, c.N);
    const BinaryWord u = word_arg(g, c.u);
    if (!is_admissible(u)) throw UsageError("--u", "word " + u.str() + " is not admissible");
    dot = to_dot(decision_trace(u), c.compact);
  }
  if (c.output.empty() || c.output == "-") {
    out << dot;
    return 0;
  }
  std::ofstream f(c.output);
  if (!f || !(f << dot)) throw UsageError("--output", "cannot write " + c.output);
  return 0;
}

inline int cmd_subsets(const JobConfig& c, std::ostream& out) {
  const Grid g = make_grid(c.M, c.N);
  const BinaryWord u = word_arg(g, c.u);
  if (c.max_area < 0) throw UsageError("--max-area", "must be nonnegative");
  const auto subsets = enumerate(u, c.max_area);
  if (c.format == "csv") {
    out << subsets_csv(subsets);
  } else if (c.format == "json") {
    json arr = json::array();
    for (const auto& s : subsets) {
      arr.push_back({{"gaps", s.gaps()},
                     {"area", area(s)},
                     {"codinv", codinv(s)},
                     {"dinv", dinv(s)},
                     {"area_prime", area_prime(s)},
                     {"codinv_prime", codinv_prime(s)},
                     {"cogenerators", cogenerators(s)}});
    }
    out << arr.dump(2) << '\n';
  } else if (c.format == "text") {
    for (const auto& s : subsets) out << s.gaps_string() << '\n';
  } else {
    throw UsageError("--format", "subsets supports text, csv and json");
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify

struct CheckResult {
  std::string check;
  std::string word;
  bool pass = true;
  std::optional<json> counterexample;
};

/// Runs `test` on every admissible word of the grid, split across `jobs`
/// threads, each with its own Solver.  Returns the smallest failing word.
inline CheckResult check_all_words(const std::string& name, const Grid& g, int jobs,
                                   const std::function<std::optional<json>(Solver&, const BinaryWord&)>& test) {
  std::vector<BinaryWord> words;
  for (const auto& u : all_words(g)) {
    if (is_admissible(u)) words.push_back(u);
  }
  std::vector<std::optional<json>> failures(words.size());
  auto worker = [&](int id) {
    Solver solver(g);
    for (std::size_t i = id; i < words.size(); i += jobs) failures[i] = test(solver, words[i]);
  };
  std::vector<std::thread> pool;
  for (int id = 1; id < jobs; ++id) pool.emplace_back(worker, id);
  worker(0);
  for (auto& t : pool) t.join();

  CheckResult r{name, "*", true, std::nullopt};
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (failures[i]) {
      r.pass = false;
      r.word = words[i].str();
      r.counterexample = failures[i];
      break;
    }
  }
  return r;
}

inline int cmd_verify(const JobConfig& c, std::ostream& out) {
  if (c.grid.size() != 2) throw UsageError("--grid", "expects two integers M N");
  const Grid g = make_grid(c.grid[0], c.grid[1], "--grid");
  if (c.jobs < 1) throw UsageError("--jobs", "must be at least 1");
  if (!c.identity.empty() && c.identity != "q-vs-p") {
    throw UsageError("--identity", "unknown identity '" + c.identity + "' (known: q-vs-p)");
  }
  const bool all = !c.oracle && !c.symmetry && !c.denominators && !c.bullets && c.identity.empty();
  const int qmax = resolve_qmax(c, g);
  const BinaryWord zeros = BinaryWord::zeros(g);
  std::vector<CheckResult> results;

  if (all || c.oracle) {
    const std::pair<const char*, SeriesKind> kinds[] = {
        {"oracle-P", SeriesKind::P}, {"oracle-Phat", SeriesKind::Phat},
        {"oracle-Q", SeriesKind::Q}, {"oracle-Qhat", SeriesKind::Qhat}};
    for (const auto& [name, kind] : kinds) {
      results.push_back(check_all_words(name, g, c.jobs, [&](Solver& s, const BinaryWord& u) -> std::optional<json> {
        RationalSeries got;
        if (kind == SeriesKind::P) got = s.solve_P(u);
        if (kind == SeriesKind::Phat) got = s.solve_Phat(u);
        const MarkerPair p = to_markers(u);
        if (kind == SeriesKind::Q) got = s.solve_Q(p.v, p.w);
        if (kind == SeriesKind::Qhat) got = s.solve_Qhat(p.v, p.w);
        const LaurentPoly lhs = expand(got, qmax);
        const LaurentPoly rhs = truncated_series(u, kind, qmax);
        if (lhs == rhs) return std::nullopt;
        return json{{"recursion", to_text(lhs)}, {"oracle", to_text(rhs)}, {"qmax", qmax}};
      }));
    }
  }
  if (all || c.bullets) {
    results.push_back(check_all_words("bullets", g, c.jobs, [](Solver& s, const BinaryWord& u) -> std::optional<json> {
      const MarkerPair p = to_markers(u);
      const MarkerWord x = phi(p.v);
      const MarkerWord y = phi(p.w);
      const RationalSeries r0 = s.solve_R(x, y, false);
      const RationalSeries r = s.solve_R(x, y, true);
      const RationalSeries q = s.solve_Q(p.v, p.w);
      const RationalSeries qh = s.solve_Qhat(p.v, p.w);
      if (r0.equals(q) && r.equals(qh)) return std::nullopt;
      return json{{"v", p.v.str()}, {"w", p.w.str()}, {"R", to_text(r)}, {"Qhat", to_text(qh)}};
    }));
  }
  if (all || c.symmetry) {
    const CatalanResult r = catalan_series(g.M(), g.N());
    CheckResult cr{"symmetry", zeros.str(), r.symmetric, std::nullopt};
    if (!r.symmetric) cr.counterexample = json{{"polynomial_form", to_text(r.polynomial_form)}};
    results.push_back(cr);
  }
  if (all || c.identity == "q-vs-p") {
    Solver s(g);
    const RationalSeries q = s.solve_Q(MarkerWord(std::string(g.M(), '0')), MarkerWord(std::string(g.N(), '0')));
    const RationalSeries p = s.solve_P(zeros).invert_t().shifted(-g.length(), 0);
    CheckResult cr{"identity-q-vs-p", zeros.str(), q.equals(p), std::nullopt};
    if (!cr.pass) cr.counterexample = json{{"Q", to_text(q)}, {"P", to_text(p)}};
    results.push_back(cr);
  }
  if (all || c.denominators) {
    Solver s(g);
    const RationalSeries p = reduce(s.solve_P(zeros));
    const CatalanResult cat = catalan_series(s);
    const bool ok = p.denominator() == std::vector<int>(g.d(), 1) &&
                    cat.series.denominator() == std::vector<int>(g.d() - 1, 1);
    CheckResult cr{"denominators", zeros.str(), ok, std::nullopt};
    if (!ok) cr.counterexample = json{{"P", to_text(p)}, {"c", to_text(cat.series)}};
    results.push_back(cr);
  }

  json report = json::array();
  bool pass = true;
  for (const auto& r : results) {
    json e = {{"check", r.check}, {"grid", {g.M(), g.N()}}, {"word", r.word}, {"status", r.pass ? "pass" : "fail"}};
    if (r.counterexample) e["counterexample"] = *r.counterexample;
    report.push_back(e);
    pass = pass && r.pass;
  }
  out << report.dump(2) << '\n';
  return pass ? 0 : 1;
}

// ---------------------------------------------------------------------------

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rational q,t-Catalan series by recursion, with brute-force cross-checks", "ratcat"};
  app.require_subcommand(1);
  JobConfig c;

  auto grid_opts = [&](CLI::App* sub) {
    sub->add_option("-M", c.M, "first grid parameter")->required();
    sub->add_option("-N", c.N, "second grid parameter")->required();
  };

  CLI::App* compute = app.add_subcommand("compute", "compute a series");
  compute->add_option("-M", c.M, "first grid parameter");
  compute->add_option("-N", c.N, "second grid parameter");
  compute->add_option("--u", c.u, "binary word, literal or run-length (0^8 1^2)");
  compute->add_option("--x", c.x, "first marker word (R, or Q with --kind Q)");
  compute->add_option("--y", c.y, "second marker word");
  compute->add_option("--kind", c.kind, "series kind")
      ->check(CLI::IsMember({"P", "Phat", "Q", "Qhat", "R", "catalan", "knot"}));
  compute->add_option("--format", c.format, "output format")
      ->check(CLI::IsMember({"text", "latex", "json", "dot", "csv"}));
  compute->add_flag("--catalan", c.catalan, "compute (1-q)^{d-1} c_{M,N}");
  compute->add_flag("--with-a", c.with_a, "keep the variable a (R, knot)");
  compute->add_option("--qmax", c.qmax, "truncation for csv output");

  CLI::App* verify = app.add_subcommand("verify", "cross-check the recursions");
  verify->add_option("--grid", c.grid, "M N")->expected(2)->required();
  verify->add_flag("--oracle", c.oracle, "compare P, Phat, Q, Qhat against subset enumeration");
  verify->add_option("--qmax", c.qmax, "oracle truncation (default M+N+6 or RATCAT_QMAX)");
  verify->add_flag("--symmetry", c.symmetry, "q,t-symmetry of (1-q)^{d-1} c_{M,N}");
  verify->add_option("--identity", c.identity, "named identity (q-vs-p)");
  verify->add_flag("--denominators", c.denominators, "reduced denominators of P_{0^{M+N}} and c_{M,N}");
  verify->add_flag("--bullets", c.bullets, "R(phi v, phi w) against Q and Qhat");
  verify->add_option("--jobs", c.jobs, "worker threads");

  CLI::App* tree = app.add_subcommand("tree", "decision trace as DOT");
  tree->add_option("-M", c.M, "first grid parameter");
  tree->add_option("-N", c.N, "second grid parameter");
  tree->add_option("--u", c.u, "root word");
  tree->add_flag("--compact", c.compact, "collapse single-terminal branches");
  tree->add_flag("--hm", c.hm, "R-recursion tree from --x, --y");
  tree->add_option("--x", c.x, "first word over {0,x}");
  tree->add_option("--y", c.y, "second word over {0,x}");
  tree->add_flag("--with-a", c.with_a, "weights t^k + a on the fourth relation");
  tree->add_option("-o,--output", c.output, "output file (default stdout)");

  CLI::App* subsets = app.add_subcommand("subsets", "enumerate invariant subsets");
  grid_opts(subsets);
  subsets->add_option("--u", c.u, "word fixing the subset on [0, M+N)")->required();
  subsets->add_option("--max-area", c.max_area, "largest area listed");
  subsets->add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (compute->parsed()) {
      if (c.M == 0 && c.N == 0 && c.kind == "R") {
        c.M = std::max(1, static_cast<int>(c.x.size()));
        c.N = std::max(1, static_cast<int>(c.y.size()));
      }
      return cmd_compute(c, out);
    }
    if (verify->parsed()) return cmd_verify(c, out);
    if (tree->parsed()) return cmd_tree(c, out);
    return cmd_subsets(c, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace ratcat::cli
