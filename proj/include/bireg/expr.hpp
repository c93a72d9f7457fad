#pragma once

// Piecewise-expression language for bifunctions f(x, y).
//
//   spec    := branch (";" branch)* ";"?
//   branch  := "if" cond ":" expr | "else" ":" expr | expr
//   cond    := comparison (("and" | "or") comparison)*
//   expr    := arithmetic over x, y, literals, + - * / ^, unary -,
//              abs(), ln(), min(,), max(,)
//
// Branches are tried in source order and the first whose condition holds
// wins. The last branch must be unconditional. "and" binds tighter than
// "or"; "^" is right-associative and binds tighter than unary minus.

#include <cctype>
#include <charconv>
#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bireg/error.hpp"

namespace bireg::expr {

enum class Op { num, var_x, var_y, neg, add, sub, mul, div, pow, abs, ln, min, max };

struct Node {
  Op op = Op::num;
  double value = 0.0;
  std::unique_ptr<Node> lhs;
  std::unique_ptr<Node> rhs;
};

enum class Cmp { lt, le, eq, ge, gt };

struct Comparison {
  std::unique_ptr<Node> lhs;
  Cmp cmp = Cmp::eq;
  std::unique_ptr<Node> rhs;
};

// Disjunction of conjunctions of comparisons.
struct Condition {
  std::vector<std::vector<Comparison>> any_of;
};

struct Branch {
  std::optional<Condition> condition;
  std::unique_ptr<Node> body;
};

inline double evaluate(const Node& n, double x, double y) {
  switch (n.op) {
    case Op::num: return n.value;
    case Op::var_x: return x;
    case Op::var_y: return y;
    case Op::neg: return -evaluate(*n.lhs, x, y);
    case Op::add: return evaluate(*n.lhs, x, y) + evaluate(*n.rhs, x, y);
    case Op::sub: return evaluate(*n.lhs, x, y) - evaluate(*n.rhs, x, y);
    case Op::mul: return evaluate(*n.lhs, x, y) * evaluate(*n.rhs, x, y);
    case Op::div: return evaluate(*n.lhs, x, y) / evaluate(*n.rhs, x, y);
    case Op::pow: return std::pow(evaluate(*n.lhs, x, y), evaluate(*n.rhs, x, y));
    case Op::abs: return std::abs(evaluate(*n.lhs, x, y));
    case Op::ln: return std::log(evaluate(*n.lhs, x, y));
    case Op::min: return std::min(evaluate(*n.lhs, x, y), evaluate(*n.rhs, x, y));
    case Op::max: return std::max(evaluate(*n.lhs, x, y), evaluate(*n.rhs, x, y));
  }
  return std::nan("");
}

inline bool holds(const Comparison& c, double x, double y) {
  const double a = evaluate(*c.lhs, x, y);
  const double b = evaluate(*c.rhs, x, y);
  switch (c.cmp) {
    case Cmp::lt: return a < b;
    case Cmp::le: return a <= b;
    case Cmp::eq: return a == b;
    case Cmp::ge: return a >= b;
    case Cmp::gt: return a > b;
  }
  return false;
}

inline bool holds(const Condition& c, double x, double y) {
  for (const auto& conj : c.any_of) {
    bool all = true;
    for (const auto& cmp : conj) all = all && holds(cmp, x, y);
    if (all) return true;
  }
  return false;
}

class Program {
 public:
  explicit Program(std::vector<Branch> branches) : branches_(std::move(branches)) {}

  // Value of the first matching branch. Totality is guaranteed by the parser.
  double operator()(double x, double y) const {
    for (const auto& b : branches_)
      if (!b.condition || holds(*b.condition, x, y)) return evaluate(*b.body, x, y);
    throw EvaluationError("no branch matched", x, y);
  }

  // Index of the first branch matching at (x, y).
  std::size_t branch_at(double x, double y) const {
    for (std::size_t i = 0; i < branches_.size(); ++i)
      if (!branches_[i].condition || holds(*branches_[i].condition, x, y)) return i;
    throw EvaluationError("no branch matched", x, y);
  }

  // Body of branch i evaluated at (x, y), ignoring its condition.
  double evaluate_branch(std::size_t i, double x, double y) const { return evaluate(*branches_.at(i).body, x, y); }

  std::size_t branch_count() const noexcept { return branches_.size(); }
  bool conditional(std::size_t i) const { return branches_.at(i).condition.has_value(); }

 private:
  std::vector<Branch> branches_;
};

namespace detail {

enum class Tok { end, number, ident, plus, minus, star, slash, caret, lparen, rparen, comma, semicolon, colon, lt, le, eq, ge, gt };

struct Token {
  Tok kind = Tok::end;
  std::string_view text;
  double number = 0.0;
  std::size_t pos = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const noexcept { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    tok_ = Token{};
    tok_.pos = pos_;
    if (pos_ >= src_.size()) return;
    const char c = src_[pos_];
    auto single = [&](Tok k) {
      tok_.kind = k;
      tok_.text = src_.substr(pos_, 1);
      ++pos_;
    };
    auto pair = [&](Tok k) {
      tok_.kind = k;
      tok_.text = src_.substr(pos_, 2);
      pos_ += 2;
    };
    const char next = pos_ + 1 < src_.size() ? src_[pos_ + 1] : '\0';
    if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && std::isdigit(static_cast<unsigned char>(next)))) {
      std::size_t end = pos_;
      while (end < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[end])) || src_[end] == '.')) ++end;
      if (end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
        std::size_t e = end + 1;
        if (e < src_.size() && (src_[e] == '+' || src_[e] == '-')) ++e;
        if (e < src_.size() && std::isdigit(static_cast<unsigned char>(src_[e]))) {
          end = e;
          while (end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[end]))) ++end;
        }
      }
      const auto res = std::from_chars(src_.data() + pos_, src_.data() + end, tok_.number);
      if (res.ec != std::errc() || res.ptr != src_.data() + end) throw SyntaxError("malformed number", pos_);
      tok_.kind = Tok::number;
      tok_.text = src_.substr(pos_, end - pos_);
      pos_ = end;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_;
      while (end < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_')) ++end;
      tok_.kind = Tok::ident;
      tok_.text = src_.substr(pos_, end - pos_);
      pos_ = end;
      return;
    }
    switch (c) {
      case '+': return single(Tok::plus);
      case '-': return single(Tok::minus);
      case '*': return single(Tok::star);
      case '/': return single(Tok::slash);
      case '^': return single(Tok::caret);
      case '(': return single(Tok::lparen);
      case ')': return single(Tok::rparen);
      case ',': return single(Tok::comma);
      case ';': return single(Tok::semicolon);
      case ':': return single(Tok::colon);
      case '<': return next == '=' ? pair(Tok::le) : single(Tok::lt);
      case '>': return next == '=' ? pair(Tok::ge) : single(Tok::gt);
      case '=':
        if (next == '=') return pair(Tok::eq);
        break;
      default: break;
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  Token tok_;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) {}

  Program parse_program() {
    std::vector<Branch> branches;
    while (true) {
      branches.push_back(parse_branch());
      if (lex_.peek().kind == Tok::semicolon) {
        lex_.take();
        if (lex_.peek().kind == Tok::end) break;
        continue;
      }
      if (lex_.peek().kind != Tok::end) fail("expected ';' or end of input");
      break;
    }
    if (branches.back().condition)
      throw SyntaxError("piecewise definition is not total: the final branch must be unconditional", lex_.peek().pos);
    return Program(std::move(branches));
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, lex_.peek().pos); }

  bool at_keyword(std::string_view kw) const {
    return lex_.peek().kind == Tok::ident && lex_.peek().text == kw;
  }

  void expect(Tok k, const char* what) {
    if (lex_.peek().kind != k) fail(std::string("expected ") + what);
    lex_.take();
  }

  Branch parse_branch() {
    Branch b;
    if (at_keyword("if")) {
      lex_.take();
      b.condition = parse_condition();
      expect(Tok::colon, "':' after condition");
    } else if (at_keyword("else")) {
      lex_.take();
      expect(Tok::colon, "':' after else");
    }
    b.body = parse_expr();
    return b;
  }

  Condition parse_condition() {
    Condition c;
    c.any_of.emplace_back();
    c.any_of.back().push_back(parse_comparison());
    while (at_keyword("and") || at_keyword("or")) {
      const bool is_or = lex_.take().text == "or";
      if (is_or) c.any_of.emplace_back();
      c.any_of.back().push_back(parse_comparison());
    }
    return c;
  }

  Comparison parse_comparison() {
    Comparison c;
    c.lhs = parse_expr();
    switch (lex_.peek().kind) {
      case Tok::lt: c.cmp = Cmp::lt; break;
      case Tok::le: c.cmp = Cmp::le; break;
      case Tok::eq: c.cmp = Cmp::eq; break;
      case Tok::ge: c.cmp = Cmp::ge; break;
      case Tok::gt: c.cmp = Cmp::gt; break;
      default: fail("expected comparison operator");
    }
    lex_.take();
    c.rhs = parse_expr();
    return c;
  }

  static std::unique_ptr<Node> make(Op op, std::unique_ptr<Node> l = nullptr, std::unique_ptr<Node> r = nullptr) {
    auto n = std::make_unique<Node>();
    n->op = op;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
  }

  std::unique_ptr<Node> parse_expr() {
    auto lhs = parse_term();
    while (lex_.peek().kind == Tok::plus || lex_.peek().kind == Tok::minus) {
      const Op op = lex_.take().kind == Tok::plus ? Op::add : Op::sub;
      lhs = make(op, std::move(lhs), parse_term());
    }
    return lhs;
  }

  std::unique_ptr<Node> parse_term() {
    auto lhs = parse_unary();
    while (lex_.peek().kind == Tok::star || lex_.peek().kind == Tok::slash) {
      const Op op = lex_.take().kind == Tok::star ? Op::mul : Op::div;
      lhs = make(op, std::move(lhs), parse_unary());
    }
    return lhs;
  }

  std::unique_ptr<Node> parse_unary() {
    if (lex_.peek().kind == Tok::minus) {
      lex_.take();
      return make(Op::neg, parse_unary());
    }
    if (lex_.peek().kind == Tok::plus) {
      lex_.take();
      return parse_unary();
    }
    return parse_power();
  }

  std::unique_ptr<Node> parse_power() {
    auto base = parse_primary();
    if (lex_.peek().kind == Tok::caret) {
      lex_.take();
      return make(Op::pow, std::move(base), parse_unary());
    }
    return base;
  }

  std::unique_ptr<Node> parse_primary() {
    const Token t = lex_.peek();
    if (t.kind == Tok::number) {
      lex_.take();
      auto n = make(Op::num);
      n->value = t.number;
      return n;
    }
    if (t.kind == Tok::lparen) {
      lex_.take();
      auto inner = parse_expr();
      expect(Tok::rparen, "')'");
      return inner;
    }
    if (t.kind == Tok::ident) {
      if (t.text == "x") { lex_.take(); return make(Op::var_x); }
      if (t.text == "y") { lex_.take(); return make(Op::var_y); }
      Op op;
      int arity;
      if (t.text == "abs") { op = Op::abs; arity = 1; }
      else if (t.text == "ln") { op = Op::ln; arity = 1; }
      else if (t.text == "min") { op = Op::min; arity = 2; }
      else if (t.text == "max") { op = Op::max; arity = 2; }
      else fail("unknown identifier '" + std::string(t.text) + "'");
      lex_.take();
      expect(Tok::lparen, "'(' after function name");
      auto a = parse_expr();
      std::unique_ptr<Node> b;
      if (arity == 2) {
        expect(Tok::comma, "',' between arguments");
        b = parse_expr();
      }
      expect(Tok::rparen, "')'");
      return make(op, std::move(a), std::move(b));
    }
    fail("expected expression");
  }

  Lexer lex_;
};

}  // namespace detail

inline Program parse(std::string_view text) { return detail::Parser(text).parse_program(); }

}  // namespace bireg::expr
