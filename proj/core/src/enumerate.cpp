#include "flounder/enumerate.hpp"

#include <algorithm>
#include <stdexcept>

#include "flounder/encoding.hpp"
#include "flounder/transform.hpp"

namespace flounder {

const char* answer_kind_name(AnswerKind k) {
  return k == AnswerKind::kFlounderEncoding ? "flounder-encoding" : "success-only";
}

EnumerationSummary enumerate(const Program& p, const Atom& goal,
                             const EnumerateOptions& options, const AnswerSink& sink) {
  if (p.has_delays()) throw std::invalid_argument("enumerate expects a delay-free program");
  Goal g = Goal::from_atom(goal);
  EnumerationSummary summary;
  for (std::uint32_t level = 0; level <= options.max_depth; ++level) {
    SolveOptions so;
    so.respect_delays = false;
    so.depth_bound = level;
    so.builtin_cost = 0;
    so.record_derivations = false;
    so.report_depth_exceeded = false;
    so.ints = options.ints;
    Engine engine(p, so);
    bool stop = false;
    SolveStats stats = engine.solve(g, [&](const Outcome& o) {
      if (o.kind != OutcomeKind::kSuccess || o.length != level) return true;
      AnswerReport r;
      r.raw = answer_atom(g, o);
      r.decoded = decode(r.raw);
      r.kind = r.raw.has_extraneous() || o.used_delay_clause ? AnswerKind::kFlounderEncoding
                                                             : AnswerKind::kSuccessOnly;
      r.depth = level;
      ++summary.answers;
      if (!sink(r) || (options.max_answers && summary.answers >= options.max_answers)) {
        stop = true;
        return false;
      }
      return true;
    });
    summary.deepest = level;
    summary.truncated = stats.truncated;
    if (stop) {
      summary.stopped = true;
      break;
    }
    if (!stats.truncated) break;
  }
  return summary;
}

std::vector<AnswerReport> enumerate_all(const Program& p, const Atom& goal,
                                        const EnumerateOptions& options) {
  std::vector<AnswerReport> out;
  enumerate(p, goal, options, [&](const AnswerReport& r) {
    out.push_back(r);
    return true;
  });
  return out;
}

std::vector<Atom> minimize_witnesses(std::vector<Atom> atoms) {
  for (Atom& a : atoms) a = canonical_variant(a);
  std::vector<Atom> out;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    bool covered = false;
    for (std::size_t j = 0; j < atoms.size() && !covered; ++j) {
      if (i == j || !is_instance(atoms[i], atoms[j])) continue;
      // Of a set of variants the first one stays.
      covered = !is_instance(atoms[j], atoms[i]) || j < i;
    }
    if (!covered) out.push_back(atoms[i]);
  }
  return out;
}

FlounderReport flounder_query_f(const Program& f_program, const Atom& goal,
                                const EnumerateOptions& options) {
  Atom fgoal = Term::compound(f_symbol(strip_suffix(goal.functor())), goal.args());
  FlounderReport report;
  std::vector<Atom> found;
  report.summary = enumerate(f_program, fgoal, options, [&](const AnswerReport& r) {
    report.answers.push_back(r);
    found.push_back(strip_atom(r.decoded));
    return true;
  });
  report.witnesses = minimize_witnesses(std::move(found));
  report.flounders = !report.witnesses.empty();
  return report;
}

FlounderReport flounder_query(const Program& p, const Atom& goal,
                              const EnumerateOptions& options) {
  Program f = f_transform(p);
  return flounder_query_f(f, goal, options);
}

}  // namespace flounder
