#include "parser.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "errors.hpp"

namespace pdl {
namespace {

enum class Tok {
  Id,
  Int,
  Decimal,
  Directive,  // @name
  KwSkip,
  KwIf,
  KwElse,
  KwWhile,
  KwTrue,
  KwFalse,
  KwForall,
  KwExists,
  KwIn,
  LParen,
  RParen,
  LBrace,
  RBrace,
  LBracket,
  RBracket,
  Semi,
  Colon,
  Assign,  // :=
  DotDot,  // ..
  Plus,
  Minus,
  Star,
  Slash,
  Percent,
  Lt,
  Le,
  Gt,
  Ge,
  EqEq,
  NotEq,
  AndAnd,
  OrOr,
  Bang,
  Arrow,  // ->
  Eof,
};

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

const std::map<std::string, Tok, std::less<>> kKeywords = {
    {"skip", Tok::KwSkip},     {"if", Tok::KwIf},
    {"else", Tok::KwElse},     {"while", Tok::KwWhile},
    {"true", Tok::KwTrue},     {"false", Tok::KwFalse},
    {"forall", Tok::KwForall}, {"exists", Tok::KwExists},
    {"in", Tok::KwIn},
};

[[noreturn]] void fail(ErrorKind kind, const SourceSpan& span,
                       const std::string& message) {
  std::ostringstream out;
  out << "line " << span.line << ", column " << span.column << ": " << message;
  throw Error(kind, out.str(), span);
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> tokens;
    while (true) {
      skip_trivia();
      SourceSpan span{line_, column_, 1};
      if (pos_ >= text_.size()) {
        tokens.push_back({Tok::Eof, "", span});
        return tokens;
      }
      char c = text_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        tokens.push_back(identifier(span));
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        tokens.push_back(number(span));
      } else if (c == '@') {
        tokens.push_back(directive(span));
      } else {
        tokens.push_back(symbol(span));
      }
    }
  }

 private:
  void skip_trivia() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '/' && pos_ + 1 < text_.size() &&
                 text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else {
        return;
      }
    }
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  bool at(char c) const { return pos_ < text_.size() && text_[pos_] == c; }

  Token identifier(SourceSpan span) {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_')) {
      advance();
    }
    std::string word(text_.substr(start, pos_ - start));
    span.length = word.size();
    auto it = kKeywords.find(word);
    if (it != kKeywords.end()) return {it->second, word, span};
    return {Tok::Id, word, span};
  }

  Token number(SourceSpan span) {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      advance();
    }
    bool decimal = false;
    if (at('.') && pos_ + 1 < text_.size() &&
        std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
      decimal = true;
      advance();  // '.'
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        advance();
      }
    }
    std::string word(text_.substr(start, pos_ - start));
    span.length = word.size();
    return {decimal ? Tok::Decimal : Tok::Int, word, span};
  }

  Token directive(SourceSpan span) {
    advance();  // '@'
    if (pos_ >= text_.size() ||
        !(std::isalpha(static_cast<unsigned char>(text_[pos_])) ||
          text_[pos_] == '_')) {
      fail(ErrorKind::Syntax, span, "expected directive name after '@'");
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_')) {
      advance();
    }
    std::string name(text_.substr(start, pos_ - start));
    span.length = name.size() + 1;
    return {Tok::Directive, name, span};
  }

  Token symbol(SourceSpan span) {
    char c = text_[pos_];
    advance();
    auto two = [&](char next, Tok wide, Tok narrow,
                   const char* wide_text, const char* narrow_text) -> Token {
      if (at(next)) {
        advance();
        span.length = 2;
        return {wide, wide_text, span};
      }
      return {narrow, narrow_text, span};
    };
    switch (c) {
      case '(': return {Tok::LParen, "(", span};
      case ')': return {Tok::RParen, ")", span};
      case '{': return {Tok::LBrace, "{", span};
      case '}': return {Tok::RBrace, "}", span};
      case '[': return {Tok::LBracket, "[", span};
      case ']': return {Tok::RBracket, "]", span};
      case ';': return {Tok::Semi, ";", span};
      case '+': return {Tok::Plus, "+", span};
      case '*': return {Tok::Star, "*", span};
      case '/': return {Tok::Slash, "/", span};
      case '%': return {Tok::Percent, "%", span};
      case ':': return two('=', Tok::Assign, Tok::Colon, ":=", ":");
      case '.':
        if (at('.')) {
          advance();
          span.length = 2;
          return {Tok::DotDot, "..", span};
        }
        fail(ErrorKind::Syntax, span, "unexpected '.'");
      case '-': return two('>', Tok::Arrow, Tok::Minus, "->", "-");
      case '<': return two('=', Tok::Le, Tok::Lt, "<=", "<");
      case '>': return two('=', Tok::Ge, Tok::Gt, ">=", ">");
      case '=':
        if (at('=')) {
          advance();
          span.length = 2;
          return {Tok::EqEq, "==", span};
        }
        fail(ErrorKind::Syntax, span, "unexpected '='; use '==' or ':='");
      case '!': return two('=', Tok::NotEq, Tok::Bang, "!=", "!");
      case '&':
        if (at('&')) {
          advance();
          span.length = 2;
          return {Tok::AndAnd, "&&", span};
        }
        fail(ErrorKind::Syntax, span, "unexpected '&'; use '&&'");
      case '|':
        if (at('|')) {
          advance();
          span.length = 2;
          return {Tok::OrOr, "||", span};
        }
        fail(ErrorKind::Syntax, span, "unexpected '|'; use '||'");
      default: {
        std::string msg = "unexpected character '";
        msg += c;
        msg += "'";
        fail(ErrorKind::Syntax, span, msg);
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

// Intermediate result while parsing formulas: either a plain expression or a
// formula proper (once a quantifier or '->' has appeared). Plain expressions
// stay expressions so that parenthesized boolean terms can still be compared
// with == and !=.
struct FormulaOrExpr {
  ExprPtr expr;        // set when still a plain expression
  FormulaPtr formula;  // set when a formula-only construct was used
};

// Lifts top-level logical operators into formula connectives so that
// "!(x > 0) && y == 2" parses to a conjunction node, not one opaque atom.
FormulaPtr lift(const ExprPtr& e) {
  if (const auto* u = std::get_if<Expr::Unary>(&e->node)) {
    if (u->op == UnOp::Not) return StateFormula::negation(lift(u->operand));
  }
  if (const auto* b = std::get_if<Expr::Binary>(&e->node)) {
    if (b->op == BinOp::And) return StateFormula::conj(lift(b->lhs), lift(b->rhs));
    if (b->op == BinOp::Or) return StateFormula::disj(lift(b->lhs), lift(b->rhs));
  }
  return StateFormula::atom(e);
}

FormulaPtr to_formula(const FormulaOrExpr& fe) {
  return fe.formula ? fe.formula : lift(fe.expr);
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  VerificationTask task() {
    VerificationTask t;
    std::optional<FormulaPtr> assume;
    std::optional<FormulaPtr> ensures;
    std::optional<Rational> prob;
    std::set<std::string> input_names;
    while (peek().kind == Tok::Directive) {
      Token dir = next();
      if (dir.text == "assume") {
        if (assume) fail(ErrorKind::DuplicateHeader, dir.span, "duplicate @assume");
        assume = formula();
      } else if (dir.text == "ensures") {
        if (ensures) fail(ErrorKind::DuplicateHeader, dir.span, "duplicate @ensures");
        ensures = formula();
      } else if (dir.text == "prob") {
        if (prob) fail(ErrorKind::DuplicateHeader, dir.span, "duplicate @prob");
        prob = probability();
      } else if (dir.text == "input") {
        Token name = expect(Tok::Id, "input name");
        expect(Tok::Colon, "':'");
        Token type = expect(Tok::Id, "'int' or 'bool'");
        bool is_bool;
        if (type.text == "int") {
          is_bool = false;
        } else if (type.text == "bool") {
          is_bool = true;
        } else {
          fail(ErrorKind::Syntax, type.span, "expected 'int' or 'bool'");
        }
        if (!input_names.insert(name.text).second) {
          fail(ErrorKind::DuplicateHeader, name.span,
               "duplicate @input '" + name.text + "'");
        }
        t.inputs.push_back({name.text, is_bool});
      } else {
        fail(ErrorKind::UnknownDirective, dir.span,
             "unknown directive '@" + dir.text + "'");
      }
    }
    if (!ensures) {
      fail(ErrorKind::Syntax, peek().span, "missing @ensures header");
    }
    if (!prob) {
      fail(ErrorKind::Syntax, peek().span, "missing @prob header");
    }
    t.assume = assume ? *assume : StateFormula::truth();
    t.ensures = *ensures;
    t.prob_bound = *prob;
    expect(Tok::LBrace, "'{' to open the program");
    t.body = stmtseq();
    expect(Tok::RBrace, "'}' to close the program");
    expect(Tok::Eof, "end of input");
    return t;
  }

  FormulaPtr standalone_formula() {
    FormulaPtr f = formula();
    expect(Tok::Eof, "end of input");
    return f;
  }

  ExprPtr standalone_expression() {
    ExprPtr e = expr();
    expect(Tok::Eof, "end of input");
    return e;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    if (i >= tokens_.size()) i = tokens_.size() - 1;  // Eof
    return tokens_[i];
  }

  Token next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  bool accept(Tok kind) {
    if (peek().kind == kind) {
      next();
      return true;
    }
    return false;
  }

  Token expect(Tok kind, const std::string& what) {
    if (peek().kind != kind) {
      fail(ErrorKind::Syntax, peek().span,
           "expected " + what + ", found '" + describe(peek()) + "'");
    }
    return next();
  }

  static std::string describe(const Token& t) {
    if (t.kind == Tok::Eof) return "end of input";
    if (t.kind == Tok::Directive) return "@" + t.text;
    return t.text;
  }

  // --- rationals ---

  Int integer(const Token& t) { return Int(t.text); }

  Rational probability() {
    Token first = next();
    Rational value;
    if (first.kind == Tok::Int) {
      Int num = integer(first);
      if (accept(Tok::Slash)) {
        Token den = expect(Tok::Int, "denominator");
        Int d = integer(den);
        if (d == 0) fail(ErrorKind::DivisionByZero, den.span, "zero denominator");
        value = Rational(num, d);
      } else {
        value = Rational(num);
      }
    } else if (first.kind == Tok::Decimal) {
      value = parse_rational(first.text);
    } else {
      fail(ErrorKind::Syntax, first.span, "expected a probability");
    }
    if (value < 0 || value > 1) {
      fail(ErrorKind::ProbOutOfRange, first.span,
           "probability " + to_string(value) + " is outside [0, 1]");
    }
    return value;
  }

  // --- statements ---

  StmtPtr stmtseq() {
    std::vector<StmtPtr> stmts;
    stmts.push_back(stmt());
    while (peek().kind != Tok::RBrace && peek().kind != Tok::Eof) {
      stmts.push_back(stmt());
    }
    StmtPtr out = stmts.back();
    for (std::size_t i = stmts.size() - 1; i-- > 0;) {
      out = Stmt::seq(stmts[i], out);
    }
    return out;
  }

  StmtPtr block() {
    expect(Tok::LBrace, "'{'");
    StmtPtr body = stmtseq();
    expect(Tok::RBrace, "'}'");
    return body;
  }

  StmtPtr stmt() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::KwSkip: {
        next();
        expect(Tok::Semi, "';' after skip");
        return Stmt::skip();
      }
      case Tok::Id: {
        Token name = next();
        expect(Tok::Assign, "':=' after variable name");
        ExprPtr value = expr();
        expect(Tok::Semi, "';' after assignment");
        return Stmt::assign(name.text, value);
      }
      case Tok::KwIf: {
        next();
        expect(Tok::LParen, "'(' after 'if'");
        ExprPtr guard = expr();
        expect(Tok::RParen, "')'");
        StmtPtr then_branch = block();
        expect(Tok::KwElse, "'else'");
        StmtPtr else_branch = block();
        return Stmt::if_else(guard, then_branch, else_branch);
      }
      case Tok::KwWhile: {
        next();
        expect(Tok::LParen, "'(' after 'while'");
        ExprPtr guard = expr();
        expect(Tok::RParen, "')'");
        StmtPtr body = block();
        return Stmt::while_loop(guard, body);
      }
      case Tok::LBrace: {
        StmtPtr left = block();
        expect(Tok::LBracket, "'[]' or '[p]' after braced statement");
        if (accept(Tok::RBracket)) {
          StmtPtr right = block();
          return Stmt::demonic(left, right);
        }
        Rational p = probability();
        expect(Tok::RBracket, "']'");
        StmtPtr right = block();
        return Stmt::prob(Probability(p), left, right);
      }
      default:
        fail(ErrorKind::Syntax, t.span,
             "expected a statement, found '" + describe(t) + "'");
    }
  }

  // --- expressions and formulas ---
  //
  // One precedence ladder serves both program expressions and formulas.
  // Formula mode additionally allows '->' (lowest, right-associative) and
  // quantifiers; both force the result over from expression to formula.

  ExprPtr expr() {
    FormulaOrExpr fe = or_level(false);
    return require_expr(fe);
  }

  FormulaPtr formula() {
    FormulaOrExpr fe = implication(true);
    return to_formula(fe);
  }

  ExprPtr require_expr(const FormulaOrExpr& fe) {
    if (!fe.expr) {
      fail(ErrorKind::Syntax, peek().span,
           "quantified formula is not allowed here");
    }
    return fe.expr;
  }

  FormulaOrExpr implication(bool formula_mode) {
    FormulaOrExpr lhs = or_level(formula_mode);
    if (formula_mode && accept(Tok::Arrow)) {
      FormulaOrExpr rhs = implication(true);
      return {nullptr, StateFormula::implies(to_formula(lhs), to_formula(rhs))};
    }
    return lhs;
  }

  FormulaOrExpr or_level(bool formula_mode) {
    FormulaOrExpr lhs = and_level(formula_mode);
    if (accept(Tok::OrOr)) {
      FormulaOrExpr rhs = or_level(formula_mode);
      if (lhs.expr && rhs.expr) {
        return {Expr::binary(BinOp::Or, lhs.expr, rhs.expr), nullptr};
      }
      return {nullptr, StateFormula::disj(to_formula(lhs), to_formula(rhs))};
    }
    return lhs;
  }

  FormulaOrExpr and_level(bool formula_mode) {
    FormulaOrExpr lhs = not_level(formula_mode);
    if (accept(Tok::AndAnd)) {
      FormulaOrExpr rhs = and_level(formula_mode);
      if (lhs.expr && rhs.expr) {
        return {Expr::binary(BinOp::And, lhs.expr, rhs.expr), nullptr};
      }
      return {nullptr, StateFormula::conj(to_formula(lhs), to_formula(rhs))};
    }
    return lhs;
  }

  FormulaOrExpr not_level(bool formula_mode) {
    if (accept(Tok::Bang)) {
      FormulaOrExpr operand = not_level(formula_mode);
      if (operand.expr) {
        return {Expr::unary(UnOp::Not, operand.expr), nullptr};
      }
      return {nullptr, StateFormula::negation(operand.formula)};
    }
    return quantifier_or_comparison(formula_mode);
  }

  FormulaOrExpr quantifier_or_comparison(bool formula_mode) {
    const Token& t = peek();
    if (t.kind == Tok::KwForall || t.kind == Tok::KwExists) {
      if (!formula_mode) {
        fail(ErrorKind::Syntax, t.span,
             "quantifiers are not allowed in program expressions");
      }
      bool universal = t.kind == Tok::KwForall;
      next();
      Token var = expect(Tok::Id, "quantified variable");
      expect(Tok::KwIn, "'in'");
      expect(Tok::LBracket, "'['");
      Int lo = signed_int();
      expect(Tok::DotDot, "'..'");
      Int hi = signed_int();
      expect(Tok::RBracket, "']'");
      expect(Tok::Colon, "':'");
      FormulaPtr body = to_formula(implication(true));
      FormulaPtr out = universal
                           ? StateFormula::forall(var.text, lo, hi, body)
                           : StateFormula::exists(var.text, lo, hi, body);
      return {nullptr, out};
    }
    return comparison(formula_mode);
  }

  Int signed_int() {
    bool negative = accept(Tok::Minus);
    Token t = expect(Tok::Int, "integer");
    Int v = integer(t);
    return negative ? Int(-v) : v;
  }

  FormulaOrExpr comparison(bool formula_mode) {
    ExprPtr lhs = additive(formula_mode);
    BinOp op;
    switch (peek().kind) {
      case Tok::Lt: op = BinOp::Lt; break;
      case Tok::Le: op = BinOp::Le; break;
      case Tok::Gt: op = BinOp::Gt; break;
      case Tok::Ge: op = BinOp::Ge; break;
      case Tok::EqEq: op = BinOp::Eq; break;
      case Tok::NotEq: op = BinOp::Ne; break;
      default: return {lhs, nullptr};
    }
    next();
    ExprPtr rhs = additive(formula_mode);
    return {Expr::binary(op, lhs, rhs), nullptr};
  }

  ExprPtr additive(bool formula_mode) {
    ExprPtr lhs = multiplicative(formula_mode);
    while (true) {
      if (accept(Tok::Plus)) {
        lhs = Expr::binary(BinOp::Add, lhs, multiplicative(formula_mode));
      } else if (accept(Tok::Minus)) {
        lhs = Expr::binary(BinOp::Sub, lhs, multiplicative(formula_mode));
      } else {
        return lhs;
      }
    }
  }

  ExprPtr multiplicative(bool formula_mode) {
    ExprPtr lhs = unary(formula_mode);
    while (true) {
      if (accept(Tok::Star)) {
        lhs = Expr::binary(BinOp::Mul, lhs, unary(formula_mode));
      } else if (accept(Tok::Slash)) {
        lhs = Expr::binary(BinOp::Div, lhs, unary(formula_mode));
      } else if (accept(Tok::Percent)) {
        lhs = Expr::binary(BinOp::Mod, lhs, unary(formula_mode));
      } else {
        return lhs;
      }
    }
  }

  ExprPtr unary(bool formula_mode) {
    if (accept(Tok::Minus)) {
      return Expr::unary(UnOp::Neg, unary(formula_mode));
    }
    return primary(formula_mode);
  }

  ExprPtr primary(bool formula_mode) {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Int: {
        next();
        return Expr::lit_int(integer(t));
      }
      case Tok::KwTrue:
        next();
        return Expr::lit_bool(true);
      case Tok::KwFalse:
        next();
        return Expr::lit_bool(false);
      case Tok::Id: {
        next();
        return Expr::var(t.text);
      }
      case Tok::LParen: {
        next();
        FormulaOrExpr inner = implication(formula_mode);
        expect(Tok::RParen, "')'");
        return require_expr(inner);
      }
      case Tok::Decimal:
        fail(ErrorKind::Syntax, t.span,
             "decimal literals are only allowed as probabilities");
      default:
        fail(ErrorKind::Syntax, t.span,
             "expected an expression, found '" + describe(t) + "'");
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

// --- static checks ---

void collect_quantified_names(const FormulaPtr& f, std::set<std::string>& out) {
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, StateFormula::Atom>) {
        } else if constexpr (std::is_same_v<T, StateFormula::Not>) {
          collect_quantified_names(node.body, out);
        } else if constexpr (std::is_same_v<T, StateFormula::And>) {
          collect_quantified_names(node.lhs, out);
          collect_quantified_names(node.rhs, out);
        } else {
          out.insert(node.var);
          collect_quantified_names(node.body, out);
        }
      },
      f->node);
}

void require_defined(const ExprPtr& e, const std::set<std::string>& defined,
                     const char* where) {
  for (const std::string& v : free_vars(*e)) {
    if (!defined.count(v)) {
      throw Error(ErrorKind::UnboundVariable,
                  std::string("variable '") + v + "' is read in " + where +
                      " before it is assigned");
    }
  }
}

std::set<std::string> intersect(const std::set<std::string>& a,
                                const std::set<std::string>& b) {
  std::set<std::string> out;
  for (const std::string& v : a) {
    if (b.count(v)) out.insert(v);
  }
  return out;
}

// Definite-assignment analysis: returns the variables guaranteed to hold a
// value after the statement, flagging any read of an undefined variable.
// Assignments inside a loop body do not count as definite afterwards because
// the body may run zero times.
std::set<std::string> check_defined(const StmtPtr& s,
                                    std::set<std::string> defined) {
  return std::visit(
      [&](const auto& node) -> std::set<std::string> {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Stmt::Skip>) {
          return defined;
        } else if constexpr (std::is_same_v<T, Stmt::Assign>) {
          require_defined(node.expr, defined, "the program");
          defined.insert(node.var);
          return defined;
        } else if constexpr (std::is_same_v<T, Stmt::Seq>) {
          return check_defined(node.second, check_defined(node.first, defined));
        } else if constexpr (std::is_same_v<T, Stmt::Demonic>) {
          return intersect(check_defined(node.left, defined),
                           check_defined(node.right, defined));
        } else if constexpr (std::is_same_v<T, Stmt::Prob>) {
          return intersect(check_defined(node.left, defined),
                           check_defined(node.right, defined));
        } else if constexpr (std::is_same_v<T, Stmt::If>) {
          require_defined(node.guard, defined, "an if guard");
          return intersect(check_defined(node.then_branch, defined),
                           check_defined(node.else_branch, defined));
        } else {
          require_defined(node.guard, defined, "a while guard");
          check_defined(node.body, defined);
          return defined;
        }
      },
      s->node);
}

void validate_task(const VerificationTask& t) {
  std::set<std::string> inputs;
  for (const InputDecl& d : t.inputs) inputs.insert(d.name);

  for (const std::string& v : free_vars(*t.assume)) {
    if (!inputs.count(v)) {
      throw Error(ErrorKind::UnboundVariable,
                  "@assume mentions '" + v + "', which is not an @input");
    }
  }

  std::set<std::string> at_exit = check_defined(t.body, inputs);
  for (const std::string& v : free_vars(*t.ensures)) {
    if (!at_exit.count(v)) {
      throw Error(ErrorKind::UnboundVariable,
                  "@ensures mentions '" + v +
                      "', which is neither an @input nor definitely assigned");
    }
  }

  std::set<std::string> quantified;
  collect_quantified_names(t.assume, quantified);
  collect_quantified_names(t.ensures, quantified);
  if (!quantified.empty()) {
    std::set<std::string> program_vars = free_vars(*t.body);
    program_vars.insert(inputs.begin(), inputs.end());
    for (const std::string& q : quantified) {
      if (program_vars.count(q)) {
        throw Error(ErrorKind::Syntax, "quantified variable '" + q +
                                           "' shadows a program variable");
      }
    }
  }
}

}  // namespace

VerificationTask parse_task(std::string_view text) {
  Parser parser(Lexer(text).run());
  VerificationTask t = parser.task();
  validate_task(t);
  return t;
}

FormulaPtr parse_formula(std::string_view text) {
  Parser parser(Lexer(text).run());
  return parser.standalone_formula();
}

ExprPtr parse_expression(std::string_view text) {
  Parser parser(Lexer(text).run());
  return parser.standalone_expression();
}

std::string pretty_print(const VerificationTask& task) {
  std::ostringstream out;
  for (const InputDecl& d : task.inputs) {
    out << "@input " << d.name << " : " << (d.is_bool ? "bool" : "int") << "\n";
  }
  out << "@assume " << to_string(*task.assume) << "\n";
  out << "@ensures " << to_string(*task.ensures) << "\n";
  out << "@prob " << to_string(task.prob_bound) << "\n";
  out << "{\n  " << to_string(*task.body) << "\n}\n";
  return out.str();
}

TypeEnv input_types(const VerificationTask& task) {
  TypeEnv env;
  for (const InputDecl& d : task.inputs) env[d.name] = d.is_bool;
  return env;
}

}  // namespace pdl
