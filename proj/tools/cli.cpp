#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "flounder/engine.hpp"
#include "flounder/enumerate.hpp"
#include "flounder/fixpoint.hpp"
#include "flounder/groundness.hpp"
#include "flounder/parser.hpp"
#include "flounder/printer.hpp"
#include "flounder/properties.hpp"
#include "flounder/transform.hpp"

namespace flounder::cli {

using nlohmann::json;

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  json j = json::parse(in);
  if (!j.is_object()) throw std::runtime_error("config must be a JSON object");
  Config c;
  for (auto& [key, value] : j.items()) {
    if (key == "solve_depth") c.solve_depth = value.get<std::uint32_t>();
    else if (key == "enumerate_depth") c.enumerate_depth = value.get<std::uint32_t>();
    else if (key == "base_depth") c.base_depth = value.get<std::uint32_t>();
    else if (key == "answers") c.answers = value.get<std::uint64_t>();
    else if (key == "extraneous") c.extraneous = value.get<std::uint32_t>();
    else if (key == "int_lo") c.int_lo = value.get<long long>();
    else if (key == "int_hi") c.int_hi = value.get<long long>();
    else if (key == "rule") c.rule = value.get<std::string>();
    else if (key == "seed") c.seed = value.get<std::uint64_t>();
    else if (key == "format") c.format = value.get<std::string>();
    else throw std::runtime_error("unknown config key '" + key + "'");
  }
  return c;
}

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Names variables A, B, ... in order of first occurrence.
std::string pretty_atom(const Atom& a) {
  Term c = canonical_variant(a);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < c.var_limit(); ++i) {
    std::string n(1, static_cast<char>('A' + i % 26));
    if (i >= 26) n += std::to_string(i / 26);
    names.push_back(n);
  }
  return print_term(c, names);
}

Atom single_atom(const Goal& g) {
  if (g.body.size() != 1 || !g.body[0].is_atom())
    throw UsageError("expected a single atom as the goal");
  return g.body[0].atom;
}

ComputationRule parse_rule(const std::string& name, std::uint64_t seed) {
  if (name == "left") return ComputationRule::leftmost();
  if (name == "right") return ComputationRule::rightmost();
  if (name == "random") return ComputationRule::random(seed);
  throw UsageError("unknown rule '" + name + "' (left, right, random)");
}

SymbolId resolve_predicate(const Program& p, const std::string& spec) {
  std::string name = spec;
  std::optional<std::uint32_t> arity;
  if (auto slash = spec.rfind('/'); slash != std::string::npos) {
    name = spec.substr(0, slash);
    arity = static_cast<std::uint32_t>(std::stoul(spec.substr(slash + 1)));
  }
  std::vector<SymbolId> found;
  for (SymbolId s : p.predicates())
    if (symbol(s).name == name && (!arity || symbol(s).arity == *arity)) found.push_back(s);
  if (found.empty()) throw UsageError("no predicate " + spec + " in the program");
  if (found.size() > 1) throw UsageError("predicate " + spec + " is ambiguous; give name/arity");
  return found.front();
}

class Driver {
 public:
  Driver(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  Config config;
  bool records = false;
  ParseOptions parse_options;

  Program load(const std::string& path) const { return load_program(path, parse_options); }

  EnumerateOptions enumerate_options() const {
    EnumerateOptions o;
    o.max_depth = config.enumerate_depth;
    o.max_answers = config.answers;
    o.ints = {config.int_lo, config.int_hi};
    return o;
  }

  int run(const std::string& file, const std::string& goal_text) {
    Program p = load(file);
    Goal goal = parse_goal(goal_text);
    SolveOptions o;
    o.rule = parse_rule(config.rule, config.seed);
    o.depth_bound = config.solve_depth;
    o.answer_limit = config.answers;
    o.ints = {config.int_lo, config.int_hi};
    o.record_derivations = false;
    Engine engine(p, o);
    std::size_t successes = 0, flounders = 0, errors = 0, cut = 0;
    engine.solve(goal, [&](const Outcome& r) {
      switch (r.kind) {
        case OutcomeKind::kSuccess: ++successes; break;
        case OutcomeKind::kFloundered: ++flounders; break;
        case OutcomeKind::kError: ++errors; break;
        case OutcomeKind::kDepthExceeded: ++cut; return true;
        case OutcomeKind::kFiniteFailure: break;
      }
      emit_outcome(goal, r);
      return true;
    });
    if (!records) {
      out_ << "% " << successes << " success(es), " << flounders << " floundered";
      if (errors) out_ << ", " << errors << " error(s)";
      if (cut) out_ << ", " << cut << " branch(es) cut at depth " << config.solve_depth;
      out_ << "\n";
    }
    if (successes) return kExitOk;
    if (flounders) return kExitFloundered;
    return kExitNoAnswer;
  }

  int transform(const std::string& file, bool f, bool source_order) {
    Program p = load(file);
    FOptions fo;
    fo.recursive_first = !source_order;
    out_ << print_program(f ? f_transform(p, fo) : sf_transform(p));
    return kExitOk;
  }

  int flounder(const std::string& file, const std::string& goal_text) {
    Program p = load(file);
    Goal parsed = parse_goal(goal_text);
    Atom goal = single_atom(parsed);
    FlounderReport r = flounder_query(p, goal, enumerate_options());
    if (records) {
      json j{{"goal", print_term(goal, parsed.var_names)},
             {"flounders", r.flounders},
             {"depth", r.summary.deepest},
             {"answers", r.answers.size()}};
      j["witnesses"] = json::array();
      for (const Atom& w : r.witnesses) j["witnesses"].push_back(pretty_atom(w));
      out_ << j.dump() << "\n";
    } else if (!r.flounders) {
      if (r.summary.truncated)
        out_ << "no floundering found to depth " << r.summary.deepest << "\n";
      else
        out_ << "no floundering: every proof has size at most " << r.summary.deepest << "\n";
    } else {
      out_ << "flounders: " << r.witnesses.size() << " maximally general witness(es)\n";
      for (const Atom& w : r.witnesses) out_ << "  " << pretty_atom(w) << "\n";
    }
    return r.flounders ? kExitFloundered : kExitOk;
  }

  int enumerate_cmd(const std::string& file, const std::string& goal_text, bool sf, bool f) {
    Program p = load(file);
    if (sf) p = sf_transform(p);
    if (f) p = f_transform(p);
    Goal parsed = parse_goal(goal_text);
    Atom goal = single_atom(parsed);
    std::string goal_str = print_term(goal, parsed.var_names);
    EnumerationSummary s = enumerate(p, goal, enumerate_options(), [&](const AnswerReport& a) {
      if (records) {
        json j{{"goal", goal_str},
               {"raw", print_term(a.raw)},
               {"decoded", pretty_atom(a.decoded)},
               {"kind", answer_kind_name(a.kind)},
               {"depth", a.depth}};
        out_ << j.dump() << "\n";
      } else {
        out_ << "[" << a.depth << "] " << print_term(a.raw) << "    % "
             << answer_kind_name(a.kind) << ": " << pretty_atom(a.decoded) << "\n";
      }
      return true;
    });
    if (!records) {
      out_ << "% " << s.answers << " answer(s) to depth " << s.deepest;
      if (s.truncated) out_ << ", deeper proofs exist";
      out_ << "\n";
    }
    return s.answers ? kExitOk : kExitNoAnswer;
  }

  struct FixpointArgs {
    bool flagged = false;
    bool decode = false;
    bool verify = false;
    bool lists = false;
    std::vector<std::string> constants;
  };

  int fixpoint(const std::string& file, const FixpointArgs& a) {
    Program p = load(file);
    BaseConfig bc;
    bc.shape = a.lists ? UniverseShape::kLists : UniverseShape::kHerbrand;
    bc.depth = config.base_depth;
    bc.extraneous = config.extraneous;
    for (const auto& c : a.constants) bc.constants.push_back(parse_term(c));
    if (a.verify) {
      BoundedBase base = BoundedBase::build(p, bc);
      Prop7Options po;
      po.solve_depth = config.solve_depth;
      Prop7Report r = verify_prop7(p, base, po);
      out_ << "base: " << r.base << "\n";
      out_ << "SS(SF(P)): " << r.lhs_size << " atoms; EFS(P) u SS(P): " << r.rhs_size
           << " atoms; " << r.candidates << " candidates checked\n";
      for (const Atom& x : r.only_lhs) out_ << "  only in SS(SF(P)): " << print_term(x) << "\n";
      for (const Atom& x : r.only_rhs) out_ << "  only in EFS(P) u SS(P): " << print_term(x) << "\n";
      out_ << (r.holds ? "equal" : "NOT equal") << "\n";
      return r.holds ? kExitOk : kExitNoAnswer;
    }
    Program sf = p.has_delays() ? sf_transform(p) : p;
    BoundedBase base = BoundedBase::build(sf, bc);
    LfpResult r = lfp_tfp(sf, base);
    out_ << "% base: " << base.describe() << "; " << r.iterations << " iteration(s), "
         << r.value.atoms.size() << " atom(s), " << r.value.flagged.size() << " flagged\n";
    if (a.decode) {
      for (const Atom& x : efs_extract(r.value)) out_ << pretty_atom(x) << "\n";
    } else {
      out_ << format_interpretation(r.value, a.flagged);
    }
    return kExitOk;
  }

  int ground(const std::string& file) {
    Program p = load(file);
    if (p.has_delays()) {
      err_ << "note: analysing SF(P) since the program has delay declarations\n";
      p = sf_transform(p);
    }
    GroundnessResult r = abstract_lfp(p);
    for (SymbolId s : r.order) out_ << format_dependency(s, r.of(s)) << "\n";
    return kExitOk;
  }

  int checkmodel(const std::string& file, const std::string& pred, const std::string& formula) {
    Program p = load(file);
    if (p.has_delays()) p = f_transform(p);
    SymbolId s = resolve_predicate(p, pred);
    PropFormula phi = PropFormula::parse(formula);
    ModelCheckResult r = check_model(p, s, phi, enumerate_options());
    if (records) {
      json j{{"predicate", symbol(s).name},
             {"formula", phi.to_string()},
             {"holds", r.holds},
             {"answers_checked", r.answers_checked},
             {"depth", r.summary.deepest}};
      if (r.counterexample) {
        j["counterexample"] = {{"raw", print_term(r.counterexample->raw)},
                               {"decoded", pretty_atom(r.counterexample->decoded)},
                               {"depth", r.counterexample->depth}};
      }
      out_ << j.dump() << "\n";
    } else if (r.holds) {
      out_ << "holds to depth " << r.summary.deepest << " (" << r.answers_checked
           << " answer(s) checked; consistent to this depth only)\n";
    } else {
      const AnswerReport& c = *r.counterexample;
      out_ << "counterexample at depth " << c.depth << ": " << print_term(c.raw) << "\n"
           << "  decoded: " << pretty_atom(c.decoded) << "\n";
    }
    return r.holds ? kExitOk : kExitNoAnswer;
  }

 private:
  void emit_outcome(const Goal& goal, const Outcome& r) {
    std::string bindings = print_bindings(r.answer, goal.var_names);
    if (records) {
      json j{{"outcome", outcome_name(r.kind)}, {"length", r.length}};
      json b = json::object();
      for (VarId v = 0; v < goal.var_names.size(); ++v) {
        const auto& n = goal.var_names[v];
        if (n.empty() || n[0] == '_') continue;
        if (const Term* t = r.answer.lookup(v)) b[n] = print_term(*t, goal.var_names);
      }
      j["bindings"] = b;
      if (!r.residual.empty()) {
        j["residual"] = json::array();
        for (const Atom& x : r.residual) j["residual"].push_back(print_term(x, goal.var_names));
      }
      if (!r.message.empty()) j["message"] = r.message;
      out_ << j.dump() << "\n";
      return;
    }
    switch (r.kind) {
      case OutcomeKind::kSuccess:
        out_ << (bindings.empty() ? "true" : bindings) << "\n";
        break;
      case OutcomeKind::kFloundered: {
        out_ << "floundered: " << (bindings.empty() ? "true" : bindings) << "\n  delayed: ";
        for (std::size_t i = 0; i < r.residual.size(); ++i)
          out_ << (i ? ", " : "") << print_term(r.residual[i], goal.var_names);
        out_ << "\n";
        break;
      }
      case OutcomeKind::kFiniteFailure: out_ << "no\n"; break;
      case OutcomeKind::kError: out_ << "error: " << r.message << "\n"; break;
      case OutcomeKind::kDepthExceeded: break;
    }
  }

  std::ostream& out_;
  std::ostream& err_;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Driver d(out, err);
  CLI::App app{"Delay-declaration floundering analysis", "flounder-lab"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<std::uint32_t> depth, base_depth, extraneous;
  std::optional<std::uint64_t> answers, seed;
  std::optional<std::string> rule, format, ints;
  app.add_option("--depth", depth, "depth bound (solve: 64, enumerate: 12)");
  app.add_option("--base-depth", base_depth, "term depth of the bounded base (3)");
  app.add_option("--extraneous,-m", extraneous, "number of 'VAR'(k) constants in the base (8)");
  app.add_option("--answers", answers, "stop after this many answers (0 = all)");
  app.add_option("--rule", rule, "computation rule: left, right, random");
  app.add_option("--seed", seed, "seed for --rule random");
  app.add_option("--format", format, "output format: text, records");
  app.add_option("--ints", ints, "integer range for plus/leq, e.g. 0..16");
  app.add_flag("--allow-encoding-definitions", d.parse_options.allow_encoding_definitions,
               "accept programs defining evar/1, enonground/1 or using 'VAR'");

  std::string file, goal, pred, formula;
  bool sf = false, f = false, source_order = false;
  Driver::FixpointArgs fx;

  auto* run = app.add_subcommand("run", "solve a goal under SLDF resolution");
  run->add_option("file", file)->required();
  run->add_option("goal", goal)->required();

  auto* transform = app.add_subcommand("transform", "print SF(P) or F(P)");
  auto* sf_flag = transform->add_flag("--sf", sf, "print SF(P)");
  transform->add_flag("--f", f, "print F(P)")->excludes(sf_flag);
  transform->add_flag("--source-order", source_order, "keep body order in _f clauses");
  transform->add_option("file", file)->required();

  auto* flounder = app.add_subcommand("flounder", "search for floundering instances of a goal");
  flounder->add_option("file", file)->required();
  flounder->add_option("goal", goal)->required();

  bool esf = false, ef = false;
  auto* enumerate = app.add_subcommand("enumerate", "fair enumeration on a delay-free program");
  auto* esf_flag = enumerate->add_flag("--sf", esf, "transform with SF() first");
  enumerate->add_flag("--f", ef, "transform with F() first")->excludes(esf_flag);
  enumerate->add_option("file", file)->required();
  enumerate->add_option("goal", goal)->required();

  auto* fixpoint = app.add_subcommand("fixpoint", "flagged least fixpoint of SF(P) on a bounded base");
  fixpoint->add_flag("--flagged", fx.flagged, "list flagged atoms only");
  fixpoint->add_flag("--decode", fx.decode, "list the decoded flounder set");
  fixpoint->add_flag("--verify-prop7", fx.verify, "check SS(SF(P)) = EFS(P) u SS(P)");
  fixpoint->add_flag("--lists", fx.lists, "use a list-shaped universe");
  fixpoint->add_option("--constants", fx.constants, "element constants for --lists")->delimiter(',');
  fixpoint->add_option("file", file)->required();

  auto* ground = app.add_subcommand("ground", "Boolean groundness dependencies");
  ground->add_option("file", file)->required();

  auto* checkmodel = app.add_subcommand("checkmodel", "check a type formula on enumerated answers");
  checkmodel->add_option("file", file)->required();
  checkmodel->add_option("predicate", pred, "name or name/arity")->required();
  checkmodel->add_option("formula", formula, "e.g. \"X1 in il & X2 in v\"")->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (const char* path = std::getenv("FLOUNDER_LAB_CONFIG"); path && *path)
      d.config = load_config(path);
    Config& c = d.config;
    bool solving = run->parsed();
    if (depth) (solving ? c.solve_depth : c.enumerate_depth) = *depth;
    if (base_depth) c.base_depth = *base_depth;
    if (extraneous) c.extraneous = *extraneous;
    if (answers) c.answers = *answers;
    if (rule) c.rule = *rule;
    if (seed) c.seed = *seed;
    if (format) c.format = *format;
    if (ints) {
      auto dots = ints->find("..");
      if (dots == std::string::npos) throw UsageError("--ints expects LO..HI");
      c.int_lo = std::stoll(ints->substr(0, dots));
      c.int_hi = std::stoll(ints->substr(dots + 2));
    }
    if (c.format != "text" && c.format != "records")
      throw UsageError("unknown format '" + c.format + "' (text, records)");
    if (c.solve_depth == 0 || c.enumerate_depth == 0 || c.base_depth == 0 || c.extraneous == 0)
      throw UsageError("depth bounds and --extraneous must be positive");
    if (c.int_lo > c.int_hi) throw UsageError("empty integer range");
    d.records = c.format == "records";

    if (run->parsed()) return d.run(file, goal);
    if (transform->parsed()) {
      if (!sf && !f) throw UsageError("transform needs --sf or --f");
      return d.transform(file, f, source_order);
    }
    if (flounder->parsed()) return d.flounder(file, goal);
    if (enumerate->parsed()) return d.enumerate_cmd(file, goal, esf, ef);
    if (fixpoint->parsed()) return d.fixpoint(file, fx);
    if (ground->parsed()) return d.ground(file);
    if (checkmodel->parsed()) return d.checkmodel(file, pred, formula);
  } catch (const ParseError& e) {
    err << (file.empty() ? "" : file + ":") << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace flounder::cli
