#include "flounder/properties.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <functional>
#include <stdexcept>

#include "flounder/printer.hpp"

namespace flounder {

TypeSet classify(const Term& t) {
  if (!t.is_ground()) throw std::invalid_argument("classify expects a term without variables");
  TypeSet s = 0;
  if (!t.has_extraneous()) s |= kGroundType;
  if (t.is_extraneous_rooted()) s |= kVarType;
  Term spine = t;
  while (spine.is_cons()) spine = spine.arg(1);
  if (spine.is_nil()) s |= kListType;
  if (spine.is_extraneous_rooted()) s |= kIncompleteListType;
  return s;
}

std::string format_types(TypeSet s) {
  std::string out = "{";
  auto add = [&](TypeTag t, const char* name) {
    if (!(s & t)) return;
    if (out.size() > 1) out += ", ";
    out += name;
  };
  add(kListType, "l");
  add(kIncompleteListType, "il");
  add(kVarType, "v");
  add(kGroundType, "g");
  return out + "}";
}

class FormulaParser {
 public:
  using Node = PropFormula::Node;
  using Op = PropFormula::Op;

  explicit FormulaParser(std::string_view s) : s_(s) {}

  std::unique_ptr<Node> parse() {
    auto n = iff();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("formula: " + what + " at offset " + std::to_string(pos_));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(std::string_view tok) {
    skip();
    if (s_.substr(pos_, tok.size()) != tok) return false;
    // Keywords must not run into an identifier.
    if (std::isalpha(static_cast<unsigned char>(tok.back())) && pos_ + tok.size() < s_.size() &&
        std::isalnum(static_cast<unsigned char>(s_[pos_ + tok.size()])))
      return false;
    pos_ += tok.size();
    return true;
  }
  static std::unique_ptr<Node> binary(Op op, std::unique_ptr<Node> l, std::unique_ptr<Node> r) {
    auto n = std::make_unique<Node>();
    n->op = op;
    n->left = std::move(l);
    n->right = std::move(r);
    return n;
  }
  std::unique_ptr<Node> iff() {
    auto l = imp();
    while (eat("<->")) l = binary(Op::kIff, std::move(l), imp());
    return l;
  }
  std::unique_ptr<Node> imp() {
    auto l = disj();
    if (eat("->")) return binary(Op::kImplies, std::move(l), imp());
    return l;
  }
  std::unique_ptr<Node> disj() {
    auto l = conj();
    while (eat("|")) l = binary(Op::kOr, std::move(l), conj());
    return l;
  }
  std::unique_ptr<Node> conj() {
    auto l = unary();
    while (eat("&")) l = binary(Op::kAnd, std::move(l), unary());
    return l;
  }
  std::unique_ptr<Node> unary() {
    if (eat("~")) {
      auto n = std::make_unique<Node>();
      n->op = Op::kNot;
      n->left = unary();
      return n;
    }
    if (eat("(")) {
      auto n = iff();
      if (!eat(")")) fail("expected ')'");
      return n;
    }
    if (eat("true")) {
      auto n = std::make_unique<Node>();
      n->op = Op::kTrue;
      return n;
    }
    if (eat("false")) {
      auto n = std::make_unique<Node>();
      n->op = Op::kFalse;
      return n;
    }
    skip();
    if (pos_ >= s_.size() || s_[pos_] != 'X') fail("expected Xi");
    ++pos_;
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a position after X");
    int position = std::stoi(std::string(s_.substr(start, pos_ - start)));
    if (position < 1) fail("positions start at 1");
    if (!eat("in")) fail("expected 'in'");
    auto n = std::make_unique<Node>();
    n->op = Op::kIn;
    n->position = static_cast<std::uint32_t>(position - 1);
    if (eat("il")) {
      n->type = kIncompleteListType;
    } else if (eat("l")) {
      n->type = kListType;
    } else if (eat("v")) {
      n->type = kVarType;
    } else if (eat("g")) {
      n->type = kGroundType;
    } else {
      fail("expected one of l, il, v, g");
    }
    return n;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

PropFormula PropFormula::parse(std::string_view text) {
  PropFormula f;
  f.root_ = FormulaParser(text).parse();
  return f;
}

bool PropFormula::eval(const Node& n, std::span<const TypeSet> args) {
  switch (n.op) {
    case Op::kIn:
      if (n.position >= args.size()) throw std::out_of_range("formula position beyond arity");
      return (args[n.position] & n.type) != 0;
    case Op::kNot: return !eval(*n.left, args);
    case Op::kAnd: return eval(*n.left, args) && eval(*n.right, args);
    case Op::kOr: return eval(*n.left, args) || eval(*n.right, args);
    case Op::kImplies: return !eval(*n.left, args) || eval(*n.right, args);
    case Op::kIff: return eval(*n.left, args) == eval(*n.right, args);
    case Op::kTrue: return true;
    case Op::kFalse: return false;
  }
  return false;
}

bool PropFormula::evaluate(std::span<const TypeSet> args) const { return eval(*root_, args); }

std::uint32_t PropFormula::max_pos(const Node& n) {
  std::uint32_t m = n.op == Op::kIn ? n.position + 1 : 0;
  if (n.left) m = std::max(m, max_pos(*n.left));
  if (n.right) m = std::max(m, max_pos(*n.right));
  return m;
}

std::uint32_t PropFormula::max_position() const { return max_pos(*root_); }

std::string PropFormula::print(const Node& n) {
  auto bin = [&](const char* op) { return "(" + print(*n.left) + " " + op + " " + print(*n.right) + ")"; };
  switch (n.op) {
    case Op::kIn: {
      const char* t = n.type == kListType ? "l"
                      : n.type == kIncompleteListType ? "il"
                      : n.type == kVarType ? "v"
                                           : "g";
      return "X" + std::to_string(n.position + 1) + " in " + t;
    }
    case Op::kNot: return "~" + print(*n.left);
    case Op::kAnd: return bin("&");
    case Op::kOr: return bin("|");
    case Op::kImplies: return bin("->");
    case Op::kIff: return bin("<->");
    case Op::kTrue: return "true";
    case Op::kFalse: return "false";
  }
  return "?";
}

std::string PropFormula::to_string() const { return print(*root_); }

namespace {

// One representative per combination of classes a term can have.
std::vector<Term> representatives() {
  Term e = Term::extraneous(1u << 30);
  SymbolId a = intern("a", 0);
  SymbolId f = intern("f", 1);
  return {
      Term::nil(),
      Term::cons(e, Term::nil()),
      e,
      Term::cons(Term::constant(a), e),
      Term::constant(a),
      Term::compound(f, {e}),
  };
}

}  // namespace

bool satisfies(const Atom& raw, const PropFormula& f) {
  static const std::vector<Term> reps = representatives();
  static const Term ground_rep = Term::constant(intern("a", 0));
  static const Term open_rep = Term::extraneous(1u << 30);

  // A variable at the end of an argument's list spine can change every class
  // of that argument.  Anywhere else it only decides groundness, so such
  // variables are grouped by the arguments they occur in and each group is
  // either all ground or not.
  std::uint32_t n = raw.arity();
  std::vector<VarId> tails;
  for (std::uint32_t i = 0; i < n; ++i) {
    Term t = raw.arg(i);
    while (t.is_cons()) t = t.arg(1);
    if (t.is_variable() && std::find(tails.begin(), tails.end(), t.var_id()) == tails.end())
      tails.push_back(t.var_id());
  }
  std::map<std::uint64_t, std::vector<VarId>> groups;
  for (VarId v : variables_of(raw)) {
    if (std::find(tails.begin(), tails.end(), v) != tails.end()) continue;
    std::uint64_t mask = 0;
    for (std::uint32_t i = 0; i < n; ++i)
      if (occurs_in(v, raw.arg(i))) mask |= std::uint64_t{1} << (i % 64);
    groups[mask].push_back(v);
  }
  std::vector<const std::vector<VarId>*> group_list;
  for (const auto& [mask, vars] : groups) group_list.push_back(&vars);

  std::vector<std::size_t> idx(tails.size() + group_list.size(), 0);
  std::vector<TypeSet> types(n);
  for (;;) {
    Substitution s;
    for (std::size_t i = 0; i < tails.size(); ++i) s.bind(tails[i], reps[idx[i]]);
    for (std::size_t g = 0; g < group_list.size(); ++g)
      for (VarId v : *group_list[g])
        s.bind(v, idx[tails.size() + g] ? open_rep : ground_rep);
    for (std::uint32_t i = 0; i < n; ++i) types[i] = classify(apply(s, raw.arg(i)));
    if (!f.evaluate(types)) return false;
    std::size_t k = 0;
    for (; k < idx.size(); ++k) {
      std::size_t limit = k < tails.size() ? reps.size() : 2;
      if (++idx[k] < limit) break;
      idx[k] = 0;
    }
    if (k == idx.size()) return true;
  }
}

ModelCheckResult check_model(const Program& p, SymbolId pred, const PropFormula& f,
                             const EnumerateOptions& options) {
  std::uint32_t arity = symbol(pred).arity;
  if (f.max_position() > arity)
    throw std::invalid_argument("formula mentions X" + std::to_string(f.max_position()) +
                                " but the predicate has arity " + std::to_string(arity));
  std::vector<Term> args;
  for (std::uint32_t i = 0; i < arity; ++i) args.push_back(Term::variable(i));
  Atom goal = Term::compound(pred, args);
  ModelCheckResult result;
  result.summary = enumerate(p, goal, options, [&](const AnswerReport& r) {
    ++result.answers_checked;
    if (satisfies(r.raw, f)) return true;
    result.holds = false;
    result.counterexample = r;
    return false;
  });
  return result;
}

}  // namespace flounder
