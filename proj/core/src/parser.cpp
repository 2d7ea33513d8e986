#include "flounder/parser.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

namespace flounder {

ParseError::ParseError(const std::string& message, int line, int column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) +
                         ": " + message),
      line_(line),
      column_(column) {}

namespace {

enum class Tok {
  kVar,
  kName,
  kInt,
  kLParen,
  kRParen,
  kLBracket,
  kRBracket,
  kComma,
  kBar,
  kSemi,
  kNeck,  // :-
  kDot,   // infix cons
  kEnd,   // clause terminator
  kEof,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
  bool quoted = false;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_layout();
      Token t = next();
      out.push_back(t);
      if (t.kind == Tok::kEof) break;
    }
    return out;
  }

 private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }
  char get() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_layout() {
    for (;;) {
      char c = peek();
      if (c == '%') {
        while (pos_ < src_.size() && peek() != '\n') get();
      } else if (c == '/' && peek(1) == '*') {
        get();
        get();
        while (pos_ < src_.size() && !(peek() == '*' && peek(1) == '/')) get();
        if (pos_ >= src_.size()) throw ParseError("unterminated comment", line_, col_);
        get();
        get();
      } else if (c != '\0' && std::isspace(static_cast<unsigned char>(c))) {
        get();
      } else {
        return;
      }
    }
  }

  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  Token next() {
    Token t{Tok::kEof, "", line_, col_};
    if (pos_ >= src_.size()) return t;
    char c = peek();
    if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
      t.kind = Tok::kVar;
      while (ident_char(peek())) t.text.push_back(get());
      return t;
    }
    if (std::islower(static_cast<unsigned char>(c))) {
      t.kind = Tok::kName;
      while (ident_char(peek())) t.text.push_back(get());
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      t.kind = Tok::kInt;
      t.text.push_back(get());
      while (std::isdigit(static_cast<unsigned char>(peek()))) t.text.push_back(get());
      return t;
    }
    if (c == '\'') {
      get();
      t.kind = Tok::kName;
      t.quoted = true;
      for (;;) {
        if (pos_ >= src_.size()) throw ParseError("unterminated quoted atom", t.line, t.column);
        char q = get();
        if (q == '\\') {
          if (pos_ >= src_.size()) throw ParseError("bad escape", line_, col_);
          char e = get();
          t.text.push_back(e == 'n' ? '\n' : e);
        } else if (q == '\'') {
          if (peek() == '\'') {
            get();
            t.text.push_back('\'');
          } else {
            break;
          }
        } else {
          t.text.push_back(q);
        }
      }
      return t;
    }
    get();
    switch (c) {
      case '(': t.kind = Tok::kLParen; return t;
      case ')': t.kind = Tok::kRParen; return t;
      case '[': t.kind = Tok::kLBracket; return t;
      case ']': t.kind = Tok::kRBracket; return t;
      case ',': t.kind = Tok::kComma; return t;
      case '|': t.kind = Tok::kBar; return t;
      case ';': t.kind = Tok::kSemi; return t;
      case ':':
        if (peek() == '-') {
          get();
          t.kind = Tok::kNeck;
          return t;
        }
        break;
      case '.': {
        char n = peek();
        if (n == '\0' || n == '%' || std::isspace(static_cast<unsigned char>(n))) {
          t.kind = Tok::kEnd;
        } else {
          t.kind = Tok::kDot;
        }
        return t;
      }
      default:
        break;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", t.line, t.column);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

struct Scope {
  std::vector<std::string> names;
  int anonymous = 0;

  VarId lookup(const std::string& name) {
    if (name == "_") {
      names.push_back("_" + std::to_string(++anonymous));
      while (std::count(names.begin(), names.end(), names.back()) > 1)
        names.back() = "_" + std::to_string(++anonymous);
      return static_cast<VarId>(names.size() - 1);
    }
    auto it = std::find(names.begin(), names.end(), name);
    if (it != names.end()) return static_cast<VarId>(it - names.begin());
    names.push_back(name);
    return static_cast<VarId>(names.size() - 1);
  }
};

class Parser {
 public:
  Parser(std::vector<Token> toks, const ParseOptions& opts)
      : toks_(std::move(toks)), opts_(opts) {}

  Program program() {
    Program p;
    p.set_encoding_definitions(opts_.allow_encoding_definitions);
    // Items are added in source order once we know whether delays exist.
    struct Item {
      std::optional<DelayDecl> delay;
      Clause clause;
      int line = 0, column = 0;
    };
    std::vector<Item> items;
    bool any_delay = false;
    while (cur().kind != Tok::kEof) {
      Item it;
      it.line = cur().line;
      it.column = cur().column;
      if (cur().kind == Tok::kNeck) {
        it.delay = directive();
        any_delay = true;
      } else {
        it.clause = clause();
      }
      items.push_back(std::move(it));
    }
    bool infer = opts_.infer_delay_tags && !any_delay;
    for (Item& it : items) {
      if (it.delay) {
        p.add_delay(std::move(*it.delay));
        continue;
      }
      Clause& c = it.clause;
      if (infer && looks_like_delay_clause(c)) c.tag = ClauseTag::kDelay;
      SymbolId pred = c.head.functor();
      Builtin b = builtin_kind(pred);
      if ((b == Builtin::kEvar || b == Builtin::kEnonground) &&
          !opts_.allow_encoding_definitions)
        throw ParseError("definition of " + symbol(pred).name +
                             "/1 requires encoding definitions to be enabled",
                         it.line, it.column);
      if (b == Builtin::kTrue || b == Builtin::kFail)
        throw ParseError("cannot redefine " + symbol(pred).name, it.line, it.column);
      p.add_clause(std::move(c));
    }
    return p;
  }

  Goal goal() {
    Scope scope;
    Goal g;
    g.body = disjunction(scope);
    if (cur().kind == Tok::kEnd) advance();
    expect(Tok::kEof, "end of goal");
    g.var_names = std::move(scope.names);
    normalize_body(g.body);
    return g;
  }

  Term lone_term(std::vector<std::string>& names) {
    Scope scope;
    scope.names = std::move(names);
    Term t = term(scope);
    if (cur().kind == Tok::kEnd) advance();
    expect(Tok::kEof, "end of term");
    names = std::move(scope.names);
    return t;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  void advance() {
    if (pos_ + 1 < toks_.size()) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, cur().line, cur().column);
  }
  void expect(Tok k, const char* what) {
    if (cur().kind != k) fail(std::string("expected ") + what);
    advance();
  }

  static bool looks_like_delay_clause(const Clause& c) {
    if (c.body.empty()) return false;
    bool only_tests = true;
    for_each_atom(c.body, [&](const Atom& a) {
      Builtin b = builtin_kind(a.functor());
      if (b != Builtin::kEvar && b != Builtin::kEnonground) only_tests = false;
    });
    if (!only_tests) return false;
    std::vector<VarId> seen;
    for (const Term& t : c.head.args()) {
      if (!t.is_variable()) return false;
      if (std::find(seen.begin(), seen.end(), t.var_id()) != seen.end()) return false;
      seen.push_back(t.var_id());
    }
    return true;
  }

  DelayDecl directive() {
    expect(Tok::kNeck, "':-'");
    if (cur().kind != Tok::kName || cur().text != "delay")
      fail("only 'delay' directives are supported");
    advance();
    Scope scope;
    const Token head_tok = cur();
    Term head = atom(scope);
    DelayDecl d;
    d.predicate = head.functor();
    for (const Term& a : head.args()) {
      if (!a.is_variable())
        throw ParseError("delay head arguments must be variables", head_tok.line,
                         head_tok.column);
      for (const std::string& seen : d.arg_names)
        if (seen == scope.names[a.var_id()])
          throw ParseError("delay head variables must be distinct", head_tok.line,
                           head_tok.column);
      d.arg_names.push_back(scope.names[a.var_id()]);
    }
    if (cur().kind != Tok::kName || (cur().text != "if" && cur().text != "when"))
      fail("expected 'if' or 'when'");
    advance();
    d.condition.disjuncts = cond_disjunction(head, scope);
    expect(Tok::kEnd, "'.' after delay condition");
    return d;
  }

  using Dnf = std::vector<CondConjunction>;

  Dnf cond_disjunction(const Term& head, Scope& scope) {
    Dnf out = cond_conjunction(head, scope);
    while (cur().kind == Tok::kSemi) {
      advance();
      for (auto& c : cond_conjunction(head, scope))
        if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
    }
    return out;
  }

  Dnf cond_conjunction(const Term& head, Scope& scope) {
    Dnf acc = cond_primary(head, scope);
    while (cur().kind == Tok::kComma) {
      advance();
      Dnf rhs = cond_primary(head, scope);
      Dnf prod;
      for (const auto& l : acc)
        for (const auto& r : rhs) {
          CondConjunction c = l;
          for (const CondLiteral& lit : r)
            if (std::find(c.begin(), c.end(), lit) == c.end()) c.push_back(lit);
          if (std::find(prod.begin(), prod.end(), c) == prod.end()) prod.push_back(c);
        }
      acc = std::move(prod);
    }
    return acc;
  }

  Dnf cond_primary(const Term& head, Scope& scope) {
    if (cur().kind == Tok::kLParen) {
      advance();
      Dnf d = cond_disjunction(head, scope);
      expect(Tok::kRParen, "')'");
      return d;
    }
    if (cur().kind != Tok::kName || (cur().text != "var" && cur().text != "nonground"))
      fail("expected var(V) or nonground(V) in delay condition");
    CondTest test = cur().text == "var" ? CondTest::kVar : CondTest::kNonground;
    advance();
    expect(Tok::kLParen, "'('");
    if (cur().kind != Tok::kVar) fail("expected a head variable");
    const Token var_tok = cur();
    std::string name = cur().text;
    advance();
    expect(Tok::kRParen, "')'");
    auto it = std::find(scope.names.begin(), scope.names.end(), name);
    if (it == scope.names.end())
      throw ParseError("variable " + name + " does not occur in the delay head", var_tok.line,
                       var_tok.column);
    VarId v = static_cast<VarId>(it - scope.names.begin());
    for (std::uint32_t i = 0; i < head.arity(); ++i)
      if (head.arg(i).var_id() == v) return Dnf{{CondLiteral{test, i}}};
    fail("variable " + name + " does not occur in the delay head");
  }

  Clause clause() {
    Scope scope;
    Clause c;
    const Token head_tok = cur();
    c.head = atom(scope);
    if (cur().kind == Tok::kNeck) {
      advance();
      c.body = disjunction(scope);
    }
    expect(Tok::kEnd, "'.' at end of clause");
    c.var_names = std::move(scope.names);
    if (!opts_.allow_encoding_definitions) {
      bool bad = c.head.has_extraneous();
      for_each_atom(c.body, [&](const Atom& a) { bad = bad || a.has_extraneous(); });
      if (bad)
        throw ParseError("'VAR' is reserved for the flounder encoding", head_tok.line,
                         head_tok.column);
    }
    return c;
  }

  Conjunction disjunction(Scope& scope) {
    std::vector<Conjunction> branches;
    branches.push_back(conjunction(scope));
    while (cur().kind == Tok::kSemi) {
      advance();
      branches.push_back(conjunction(scope));
    }
    if (branches.size() == 1) return std::move(branches.front());
    Conjunction out;
    out.push_back(BodyGoal::make_disjunction(std::move(branches)));
    return out;
  }

  Conjunction conjunction(Scope& scope) {
    Conjunction out;
    for (;;) {
      if (cur().kind == Tok::kLParen) {
        advance();
        Conjunction inner = disjunction(scope);
        expect(Tok::kRParen, "')'");
        for (BodyGoal& g : inner) out.push_back(std::move(g));
      } else {
        out.push_back(BodyGoal::make_atom(atom(scope)));
      }
      if (cur().kind != Tok::kComma) break;
      advance();
    }
    return out;
  }

  Term atom(Scope& scope) {
    if (cur().kind != Tok::kName) fail("expected an atom");
    Term t = name_term(scope);
    return t;
  }

  Term name_term(Scope& scope) {
    std::string name = cur().text;
    advance();
    std::vector<Term> args;
    if (cur().kind == Tok::kLParen) {
      advance();
      args.push_back(term(scope));
      while (cur().kind == Tok::kComma) {
        advance();
        args.push_back(term(scope));
      }
      expect(Tok::kRParen, "')'");
    }
    SymbolId f = intern(name, static_cast<std::uint32_t>(args.size()));
    return Term::compound(f, args);
  }

  Term term(Scope& scope) {
    Term head = primary(scope);
    if (cur().kind == Tok::kDot) {
      advance();
      return Term::cons(head, term(scope));
    }
    return head;
  }

  Term primary(Scope& scope) {
    switch (cur().kind) {
      case Tok::kVar: {
        VarId v = scope.lookup(cur().text);
        advance();
        return Term::variable(v);
      }
      case Tok::kInt: {
        BigInt value(cur().text);
        advance();
        return Term::integer(std::move(value));
      }
      case Tok::kName:
        return name_term(scope);
      case Tok::kLBracket:
        return list(scope);
      case Tok::kLParen: {
        advance();
        Term t = term(scope);
        expect(Tok::kRParen, "')'");
        return t;
      }
      default:
        fail("expected a term");
    }
  }

  Term list(Scope& scope) {
    expect(Tok::kLBracket, "'['");
    if (cur().kind == Tok::kRBracket) {
      advance();
      return Term::nil();
    }
    std::vector<Term> items;
    items.push_back(term(scope));
    while (cur().kind == Tok::kComma) {
      advance();
      items.push_back(term(scope));
    }
    Term tail = Term::nil();
    if (cur().kind == Tok::kBar) {
      advance();
      tail = term(scope);
    }
    expect(Tok::kRBracket, "']'");
    return Term::list(items, tail);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  ParseOptions opts_;
};

}  // namespace

Program parse_program(std::string_view text, const ParseOptions& options) {
  Parser p(Lexer(text).run(), options);
  return p.program();
}

Program load_program(const std::string& path, const ParseOptions& options) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_program(ss.str(), options);
}

Goal parse_goal(std::string_view text) {
  ParseOptions opts;
  opts.allow_encoding_definitions = true;
  Parser p(Lexer(text).run(), opts);
  return p.goal();
}

Term parse_term(std::string_view text, std::vector<std::string>& names) {
  Parser p(Lexer(text).run(), ParseOptions{});
  return p.lone_term(names);
}

Term parse_term(std::string_view text) {
  std::vector<std::string> names;
  return parse_term(text, names);
}

}  // namespace flounder
