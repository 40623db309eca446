// Command-line front end: check, normalize, synthesize, simulate, bisim and
// verify over a spec file.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "shmlenf/bisim.hpp"
#include "shmlenf/error.hpp"
#include "shmlenf/generators.hpp"
#include "shmlenf/harness.hpp"
#include "shmlenf/model_check.hpp"
#include "shmlenf/normalizer.hpp"
#include "shmlenf/runtime.hpp"
#include "shmlenf/spec_file.hpp"
#include "shmlenf/synthesizer.hpp"

using namespace shmlenf;

namespace {

enum Exit { Ok = 0, Failed = 1, Usage = 2, Inconclusive = 3 };

/// A parse error tied to the file it came from.
struct SourceError {
  std::string path;
  std::string text;
  ParseError error;
};

struct Context {
  std::string spec_path;
  std::size_t bound = 1024;
  std::uint64_t seed = 0;
  std::optional<SpecFile> spec_;

  const SpecFile &spec() {
    if (!spec_) {
      if (spec_path.empty())
        throw Error("this command needs --spec FILE");
      std::string text = read_file(spec_path);
      try {
        spec_ = parse_spec(text);
      } catch (const ParseError &e) {
        throw SourceError{spec_path, text, e};
      }
    }
    return *spec_;
  }

  Domain domain() {
    if (spec_path.empty())
      return Domain({"i", "j"}, {"req", "ans", "cls"});
    return spec().domain;
  }

  /// A spec formula or a literal.
  Formula formula(const std::string &name) {
    Domain d = domain();
    if (!spec_path.empty() && spec().formulas.count(name))
      return spec().formula(name);
    try {
      return parse_formula(name, &d);
    } catch (const ParseError &e) {
      throw SourceError{"<formula>", name, e};
    }
  }

  /// A spec process, a file holding an LTS (`init` line) or a term, or a
  /// literal term.
  Subject system(const std::string &name) {
    if (!spec_path.empty() && spec().processes.count(name))
      return subject_of(name, reachable(spec().process(name), bound));
    Domain d = domain();
    if (!std::filesystem::exists(name)) {
      try {
        return subject_of(name, reachable(parse_process(name, &d), bound));
      } catch (const ParseError &e) {
        throw SourceError{"<process>", name, e};
      }
    }
    std::string text = read_file(name);
    try {
      if (text.find("init") != std::string::npos)
        return subject_of(name, parse_lts(text, &d));
      return subject_of(name, reachable(parse_process(text, &d), bound));
    } catch (const ParseError &e) {
      throw SourceError{name, text, e};
    }
  }

  /// A spec enforcer, the compiled enforcer of a spec formula, or a literal.
  Transducer enforcer(const std::string &name) {
    Domain d = domain();
    if (!spec_path.empty()) {
      if (spec().enforcers.count(name))
        return spec().enforcer(name);
      if (spec().formulas.count(name))
        return compile(spec().formula(name), d);
    }
    try {
      return parse_transducer(name, &d);
    } catch (const ParseError &e) {
      throw SourceError{"<enforcer>", name, e};
    }
  }
};

std::string join(const std::vector<std::string> &xs, const std::string &sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i)
    out += (i ? sep : "") + xs[i];
  return out;
}

void dump_stages(const NormalizationTrace &t) {
  if (t.already_normal) {
    std::cout << "# already in normal form\n";
    return;
  }
  std::cout << "# prepared\n" << t.prepared.to_string() << "\n"
            << "# stage 1: unfold\n" << t.unfolded.to_string() << "\n"
            << "# stage 2: equations\n" << t.equations.dump()
            << "# stage 3: align\n" << t.aligned.dump()
            << "# stage 4: minterms\n" << t.minterms.dump()
            << "# stage 5: powerset\n" << t.unified.dump()
            << "# stage 6: rebuild\n";
}

int cmd_check(Context &cx, const std::string &fname, const std::string &pname,
              std::size_t depth) {
  Formula f = cx.formula(fname);
  Subject p = cx.system(pname);
  if (satisfies(p.lts, p.state, f)) {
    std::cout << "SAT " << pname << " satisfies " << fname << "\n";
    return Ok;
  }
  std::cout << "UNSAT " << pname << " violates " << fname;
  if (is_shml(f))
    if (auto t = violating_trace(p.lts, p.state, f, depth))
      std::cout << " along " << trace_to_string(*t);
  std::cout << "\n";
  return Failed;
}

int cmd_normalize(Context &cx, const std::string &fname, bool stages) {
  Domain d = cx.domain();
  auto t = normalize_traced(cx.formula(fname), d);
  if (stages)
    dump_stages(t);
  std::cout << t.result.to_string() << "\n";
  return Ok;
}

int cmd_synthesize(Context &cx, const std::string &fname, bool no_optimize,
                   bool stages) {
  Domain d = cx.domain();
  auto t = normalize_traced(cx.formula(fname), d);
  if (stages) {
    dump_stages(t);
    std::cout << t.result.to_string() << "\n# enforcer\n";
  }
  Transducer e = synthesize(t.result, d);
  if (!no_optimize)
    e = optimize(e);
  std::cout << e.to_string() << "\n";
  return Ok;
}

int cmd_simulate(Context &cx, const std::string &ename,
                 const std::string &pname, std::size_t steps,
                 const std::string &policy_text) {
  Transducer e = cx.enforcer(ename);
  Subject p = cx.system(pname);
  Policy policy = Policy::parse(policy_text == "random"
                                    ? "random:" + std::to_string(cx.seed)
                                    : policy_text);
  for (const auto &st : simulate(e, p.lts, p.state, steps, policy))
    std::cout << rule_name(st.rule) << " " << st.label.to_string() << "  "
              << config_to_string(st.config, p.lts) << "\n";
  return Ok;
}

LTS with_enforcer(Context &cx, const Subject &p, const std::string &ename) {
  if (ename.empty())
    return p.lts;
  return composite_lts(cx.enforcer(ename), p.lts, p.state, cx.bound).lts;
}

int cmd_bisim(Context &cx, const std::string &left, const std::string &right,
              const std::string &left_enf, const std::string &right_enf) {
  Subject l = cx.system(left), r = cx.system(right);
  LTS a = with_enforcer(cx, l, left_enf), b = with_enforcer(cx, r, right_enf);
  std::size_t sa = left_enf.empty() ? l.state : a.initial();
  std::size_t sb = right_enf.empty() ? r.state : b.initial();
  auto res = bisim(a, sa, b, sb);
  if (res.bisimilar) {
    std::cout << "bisimilar\n";
    return Ok;
  }
  std::cout << "not bisimilar: witness " << join(res.witness, ".") << " ("
            << res.explanation << ")\n";
  return Failed;
}

int cmd_verify(Context &cx, const std::string &property,
               const std::string &corpus, std::size_t depth) {
  static const std::vector<std::string> known{"soundness", "transparency",
                                              "nvtt", "violation-sem"};
  std::vector<std::string> props;
  if (property == "all")
    props = known;
  else if (std::find(known.begin(), known.end(), property) != known.end())
    props = {property};
  else
    throw Error("unknown property '" + property + "'");

  Domain d = cx.domain();
  struct Pair {
    std::string fname;
    Formula f;
    std::string pname;
    Process p;
  };
  std::vector<Pair> pairs;
  if (corpus.rfind("random:", 0) == 0) {
    std::string rest = corpus.substr(7);
    std::size_t colon = rest.find(':');
    std::size_t n = std::stoul(rest.substr(0, colon));
    std::uint64_t seed =
        colon == std::string::npos ? cx.seed : std::stoull(rest.substr(colon + 1));
    for (auto &c : random_corpus(d, n, seed))
      pairs.push_back({c.name + ".f", c.formula, c.name + ".p", c.process});
  } else {
    std::string text = read_file(corpus);
    SpecFile s;
    try {
      s = parse_spec(text);
    } catch (const ParseError &e) {
      throw SourceError{corpus, text, e};
    }
    d = s.domain;
    for (const auto &[fn, f] : s.formulas)
      for (const auto &[pn, p] : s.processes)
        pairs.push_back({fn, f, pn, p});
  }

  Bounds b{cx.bound, depth};
  std::size_t pass = 0, fail = 0, inconclusive = 0, skipped = 0;
  for (const auto &pr : pairs) {
    Classification c = classify(pr.f, d);
    if (!c.shml || !c.closed || !c.guarded) {
      std::cout << "skip " << pr.fname << " (not closed guarded sHML)\n";
      ++skipped;
      continue;
    }
    Subject s;
    Transducer e = Transducer::id();
    try {
      s = subject_of(pr.pname, reachable(pr.p, b.states));
      e = compile(pr.f, d);
    } catch (const BoundExceeded &ex) {
      std::cout << "all " << pr.fname << "@" << pr.pname << " inconclusive ("
                << ex.what() << ")\n";
      ++inconclusive;
      continue;
    }
    for (const auto &prop : props) {
      Verdict v;
      if (prop == "soundness")
        v = check_soundness(e, pr.f, s, d, b);
      else if (prop == "transparency")
        v = check_transparency(e, pr.f, s, b);
      else if (prop == "nvtt")
        v = check_nvtt(e, pr.f, s, b);
      else
        v = check_violation_semantics(pr.f, s, d, b);
      v.subject = pr.fname + "@" + pr.pname;
      std::cout << v.to_string() << "\n";
      switch (v.outcome) {
      case Outcome::Pass: ++pass; break;
      case Outcome::Fail: ++fail; break;
      case Outcome::Inconclusive: ++inconclusive; break;
      }
    }
  }
  std::cout << "summary pass=" << pass << " fail=" << fail
            << " inconclusive=" << inconclusive << " skipped=" << skipped
            << " depth=" << depth << "\n";
  if (fail)
    return Failed;
  return inconclusive ? Inconclusive : Ok;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Compile sHML formulas into suppression enforcers and check "
               "them"};
  app.require_subcommand(1);
  app.fallthrough();
  Context cx;
  app.add_option("--spec", cx.spec_path, "Spec file with domain and definitions");
  app.add_option("--domain-bound", cx.bound,
                 "State bound for processes and monitored systems")
      ->capture_default_str();
  app.add_option("--seed", cx.seed, "Default seed for random policies and corpora")
      ->capture_default_str();

  int code = Ok;
  std::size_t check_depth = 6;
  std::string fname, pname;
  auto *check = app.add_subcommand("check", "Model-check a formula on a process");
  check->add_option("formula", fname)->required();
  check->add_option("process", pname)->required();
  check->add_option("--depth", check_depth, "Depth for the violating-trace witness");
  check->callback([&] { code = cmd_check(cx, fname, pname, check_depth); });

  bool stages = false, no_optimize = false;
  auto *norm = app.add_subcommand("normalize", "Print the normal form of a formula");
  norm->add_option("formula", fname)->required();
  norm->add_flag("--dump-stages", stages, "Print the intermediate stages");
  norm->callback([&] { code = cmd_normalize(cx, fname, stages); });

  auto *synth = app.add_subcommand("synthesize", "Print the enforcer of a formula");
  synth->add_option("formula", fname)->required();
  synth->add_flag("--no-optimize", no_optimize, "Keep redundant rec binders");
  synth->add_flag("--dump-stages", stages, "Print the normalization stages");
  synth->callback([&] { code = cmd_synthesize(cx, fname, no_optimize, stages); });

  std::string ename, policy = "first";
  std::size_t steps = 10;
  auto *sim = app.add_subcommand("simulate", "Run an enforcer over a process");
  sim->add_option("--enforcer", ename,
                  "Enforcer name, formula name (compiled) or literal")
      ->required();
  sim->add_option("--process", pname, "Process name or file")->required();
  sim->add_option("--steps", steps)->capture_default_str();
  sim->add_option("--policy", policy, "first, random[:SEED] or script:l1,l2")
      ->capture_default_str();
  sim->callback([&] { code = cmd_simulate(cx, ename, pname, steps, policy); });

  std::string left, right, left_enf, right_enf;
  auto *bis = app.add_subcommand("bisim", "Strong bisimilarity of two systems");
  bis->add_option("--left", left, "Process name or file")->required();
  bis->add_option("--right", right, "Process name or file")->required();
  bis->add_option("--left-enforcer", left_enf, "Enforce the left system first");
  bis->add_option("--right-enforcer", right_enf, "Enforce the right system first");
  bis->callback([&] { code = cmd_bisim(cx, left, right, left_enf, right_enf); });

  std::string property = "all", corpus;
  std::size_t depth = 6;
  auto *ver = app.add_subcommand("verify", "Check enforcement properties on a corpus");
  ver->add_option("--property", property,
                  "soundness, transparency, nvtt, violation-sem or all")
      ->capture_default_str();
  ver->add_option("--corpus", corpus, "Spec file or random:N[:SEED]")->required();
  ver->add_option("--depth", depth, "Trace depth")->capture_default_str();
  ver->callback([&] { code = cmd_verify(cx, property, corpus, depth); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e) == 0 ? Ok : Usage;
  } catch (const SourceError &e) {
    std::cerr << "error: " << e.path << ":"
              << line_column(e.text, e.error.position()) << ": "
              << e.error.message() << "\n";
    return Usage;
  } catch (const BoundExceeded &e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return Inconclusive;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return Usage;
  }
  return code;
}
