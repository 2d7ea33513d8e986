#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "flounder/engine.hpp"

namespace flounder {

enum class AnswerKind : std::uint8_t { kSuccessOnly, kFlounderEncoding };

const char* answer_kind_name(AnswerKind k);

struct AnswerReport {
  Atom raw;
  Atom decoded;
  AnswerKind kind = AnswerKind::kSuccessOnly;
  std::uint32_t depth = 0;  // program clauses resolved in the proof
};

struct EnumerateOptions {
  std::uint32_t max_depth = 12;
  std::uint64_t max_answers = 0;  // 0 = unlimited
  IntRange ints;
};

struct EnumerationSummary {
  std::uint64_t answers = 0;
  std::uint32_t deepest = 0;  // last level searched
  bool truncated = false;     // some branch was cut at `deepest`
  bool stopped = false;       // sink or answer limit ended the search
};

using AnswerSink = std::function<bool(const AnswerReport&)>;

// Iterative deepening over proof size for a delay-free program.  A proof of
// size n is reported exactly once, in the pass with bound n; builtins and
// disjunct choices do not count towards the size.
EnumerationSummary enumerate(const Program& p, const Atom& goal,
                             const EnumerateOptions& options, const AnswerSink& sink);
std::vector<AnswerReport> enumerate_all(const Program& p, const Atom& goal,
                                        const EnumerateOptions& options = {});

struct FlounderReport {
  bool flounders = false;
  std::vector<Atom> witnesses;  // decoded, renamed back, minimised
  std::vector<AnswerReport> answers;
  EnumerationSummary summary;
};

// Floundering instances of `goal` under P, found by running goal_f on F(P).
FlounderReport flounder_query(const Program& p, const Atom& goal,
                              const EnumerateOptions& options = {});
// Same, reusing a program already produced by f_transform.
FlounderReport flounder_query_f(const Program& f_program, const Atom& goal,
                                const EnumerateOptions& options = {});

// Drops variants and atoms that are instances of another member.
std::vector<Atom> minimize_witnesses(std::vector<Atom> atoms);

}  // namespace flounder
