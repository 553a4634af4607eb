#include "pla/logic/parser.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>

#include "pla/error.hpp"
#include "pla/util/numeric.hpp"

namespace pla {

namespace {

enum class Tok {
  Ident, Number, LParen, RParen, LBracket, RBracket, Comma, Colon, Semicolon,
  Bang, Amp, Pipe, Arrow, Eq, Neq, End
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line, column;
};

std::string describe(const Token& t) {
  if (t.kind == Tok::End) return "end of input";
  return "'" + t.text + "'";
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  auto is_ident_start = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
  auto is_ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token t{Tok::End, "", line, col};
    if (is_ident_start(c)) {
      std::size_t j = i + 1;
      while (j < src.size()) {
        if (is_ident_char(src[j])) {
          ++j;
        } else if (src[j] == '-' && j + 1 < src.size() && is_ident_start(src[j + 1])) {
          j += 2;
        } else {
          break;
        }
      }
      t.kind = Tok::Ident;
      t.text = std::string(src.substr(i, j - i));
      out.push_back(t);
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t j = i;
      while (j < src.size() && (std::isdigit(static_cast<unsigned char>(src[j])) || src[j] == '.')) ++j;
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
          j = k;
          while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
        }
      }
      t.kind = Tok::Number;
      t.text = std::string(src.substr(i, j - i));
      out.push_back(t);
      advance(j - i);
      continue;
    }
    std::size_t len = 1;
    switch (c) {
      case '(': t.kind = Tok::LParen; break;
      case ')': t.kind = Tok::RParen; break;
      case '[': t.kind = Tok::LBracket; break;
      case ']': t.kind = Tok::RBracket; break;
      case ',': t.kind = Tok::Comma; break;
      case ':': t.kind = Tok::Colon; break;
      case ';': t.kind = Tok::Semicolon; break;
      case '&': t.kind = Tok::Amp; break;
      case '|': t.kind = Tok::Pipe; break;
      case '=': t.kind = Tok::Eq; break;
      case '!':
        if (i + 1 < src.size() && src[i + 1] == '=') {
          t.kind = Tok::Neq;
          len = 2;
        } else {
          t.kind = Tok::Bang;
        }
        break;
      case '-':
        if (i + 1 < src.size() && src[i + 1] == '>') {
          t.kind = Tok::Arrow;
          len = 2;
          break;
        }
        throw ParseError("unexpected '-'", line, col);
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
    t.text = std::string(src.substr(i, len));
    out.push_back(t);
    advance(len);
  }
  out.push_back(Token{Tok::End, "", line, col});
  return out;
}

void collect_bound(const Formula& f, std::set<Variable>& out) {
  if (const auto* n = f.as<ast::Not>()) return collect_bound(*n->operand, out);
  if (const auto* b = f.as<ast::And>()) {
    collect_bound(*b->lhs, out);
    return collect_bound(*b->rhs, out);
  }
  if (const auto* b = f.as<ast::Or>()) {
    collect_bound(*b->lhs, out);
    return collect_bound(*b->rhs, out);
  }
  if (const auto* b = f.as<ast::Implies>()) {
    collect_bound(*b->lhs, out);
    return collect_bound(*b->rhs, out);
  }
  if (const auto* w = f.as<ast::WeightedMean>()) {
    collect_bound(*w->weight, out);
    collect_bound(*w->first, out);
    return collect_bound(*w->second, out);
  }
  if (const auto* g = f.as<ast::Agg>()) {
    out.insert(g->bound.begin(), g->bound.end());
    for (const auto& b : g->bodies) collect_bound(*b, out);
  }
}

void push_unique(std::vector<Variable>& v, const Variable& x) {
  if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  FormulaPtr parse() {
    auto f = parse_implies();
    if (peek().kind != Tok::End) fail("unexpected " + describe(peek()));
    return f;
  }

 private:
  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  [[noreturn]] void fail(const std::string& msg) const { fail_at(peek(), msg); }
  [[noreturn]] static void fail_at(const Token& t, const std::string& msg) {
    throw ParseError(msg, t.line, t.column);
  }
  const Token& expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(std::string("expected ") + what + ", found " + describe(peek()));
    return next();
  }
  Variable expect_var() { return expect(Tok::Ident, "variable").text; }

  FormulaPtr parse_implies() {
    auto lhs = parse_or();
    if (peek().kind == Tok::Arrow) {
      next();
      return implication(lhs, parse_implies());
    }
    return lhs;
  }
  FormulaPtr parse_or() {
    auto lhs = parse_and();
    while (peek().kind == Tok::Pipe) {
      next();
      lhs = disjunction(lhs, parse_and());
    }
    return lhs;
  }
  FormulaPtr parse_and() {
    auto lhs = parse_unary();
    while (peek().kind == Tok::Amp) {
      next();
      lhs = conjunction(lhs, parse_unary());
    }
    return lhs;
  }
  FormulaPtr parse_unary() {
    if (peek().kind == Tok::Bang) {
      next();
      return negation(parse_unary());
    }
    return parse_primary();
  }

  FormulaPtr parse_primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number: {
        next();
        auto v = parse_double(t.text);
        if (!v) fail_at(t, "malformed number '" + t.text + "'");
        if (!(*v >= 0.0 && *v <= 1.0)) fail_at(t, "constant " + t.text + " outside [0,1]");
        return constant(*v);
      }
      case Tok::LParen: {
        next();
        auto f = parse_implies();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::Ident:
        return parse_ident();
      default:
        fail("expected a formula, found " + describe(t));
    }
  }

  FormulaPtr parse_ident() {
    const Token name = next();
    const Tok k = peek().kind;
    if (k == Tok::Eq || k == Tok::Neq) {
      next();
      auto e = equals(name.text, expect_var());
      return k == Tok::Eq ? e : negation(e);
    }
    if (k == Tok::LParen && name.text == "wm") {
      next();
      auto w = parse_implies();
      expect(Tok::Semicolon, "';'");
      auto a = parse_implies();
      expect(Tok::Semicolon, "';'");
      auto b = parse_implies();
      expect(Tok::RParen, "')'");
      return weighted_mean(w, a, b);
    }
    if (k == Tok::LParen && peek(1).kind == Tok::Number && peek(2).kind == Tok::RParen &&
        peek(3).kind == Tok::LBracket) {
      next();
      const Token num = next();
      next();
      auto v = parse_double(num.text);
      if (!v) fail_at(num, "malformed number '" + num.text + "'");
      return parse_agg(name, name.text + "(" + format_double(*v) + ")");
    }
    if (k == Tok::LParen) {
      next();
      std::vector<Variable> args{expect_var()};
      while (peek().kind == Tok::Comma) {
        next();
        args.push_back(expect_var());
      }
      expect(Tok::RParen, "')' or ','");
      return atom(name.text, std::move(args));
    }
    if (k == Tok::LBracket) return parse_agg(name, name.text);
    fail("expected '(', '[', '=' or '!=' after identifier '" + name.text + "'");
  }

  struct Literal {
    Variable a, b;
    bool equal;
  };

  FormulaPtr parse_agg(const Token& name, std::string function) {
    if (function == "wm") fail_at(name, "'wm' is not an aggregation function");
    expect(Tok::LBracket, "'['");
    std::vector<FormulaPtr> bodies{parse_implies()};
    while (peek().kind == Tok::Comma) {
      next();
      bodies.push_back(parse_implies());
    }
    expect(Tok::Colon, "':' or ','");
    std::vector<Variable> bound;
    std::vector<Token> bound_tokens;
    do {
      if (!bound.empty()) next();
      bound_tokens.push_back(peek());
      const Variable v = expect_var();
      if (std::find(bound.begin(), bound.end(), v) != bound.end()) {
        fail_at(bound_tokens.back(), "variable '" + v + "' bound twice");
      }
      bound.push_back(v);
    } while (peek().kind == Tok::Comma);
    expect(Tok::Colon, "':' or ','");

    std::set<Variable> nested;
    for (const auto& b : bodies) collect_bound(*b, nested);
    for (std::size_t i = 0; i < bound.size(); ++i) {
      if (nested.count(bound[i])) {
        fail_at(bound_tokens[i], "bound variable '" + bound[i] + "' is rebound by a nested aggregation");
      }
    }

    const Token spec_start = peek();
    bool distinct = false;
    bool more = true;
    std::vector<Literal> lits;
    if (peek().kind == Tok::Ident && peek().text == "distinct" &&
        (peek(1).kind == Tok::Comma || peek(1).kind == Tok::RBracket)) {
      next();
      distinct = true;
      more = peek().kind == Tok::Comma;
      if (more) next();
    }
    while (more) {
      Literal lit;
      lit.a = expect_var();
      if (peek().kind == Tok::Eq) {
        lit.equal = true;
      } else if (peek().kind == Tok::Neq) {
        lit.equal = false;
      } else {
        fail("expected '=' or '!=', found " + describe(peek()));
      }
      next();
      lit.b = expect_var();
      lits.push_back(lit);
      more = peek().kind == Tok::Comma;
      if (more) next();
    }
    expect(Tok::RBracket, "']' or ','");
    return build(function, std::move(bodies), std::move(bound), distinct, lits, spec_start);
  }

  FormulaPtr build(const std::string& function, std::vector<FormulaPtr> bodies,
                   std::vector<Variable> bound, bool distinct, const std::vector<Literal>& lits,
                   const Token& where) {
    auto is_bound = [&](const Variable& v) {
      return std::find(bound.begin(), bound.end(), v) != bound.end();
    };
    std::vector<Variable> free;
    for (const auto& b : bodies) {
      for (const auto& v : free_variables(*b)) {
        if (!is_bound(v)) push_unique(free, v);
      }
    }
    for (const auto& l : lits) {
      if (!is_bound(l.a)) push_unique(free, l.a);
      if (!is_bound(l.b)) push_unique(free, l.b);
    }
    std::vector<Variable> order;
    if (distinct) {
      order = bound;
      for (const auto& v : free) push_unique(order, v);
    } else {
      for (const auto& l : lits) {
        push_unique(order, l.a);
        push_unique(order, l.b);
      }
      for (const auto& v : bound) push_unique(order, v);
      for (const auto& v : free) push_unique(order, v);
    }
    auto index = [&](const Variable& v) {
      return static_cast<std::size_t>(std::find(order.begin(), order.end(), v) - order.begin());
    };
    std::vector<std::size_t> parent(order.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto root = [&](std::size_t i) {
      while (parent[i] != i) i = parent[i] = parent[parent[i]];
      return i;
    };
    std::vector<std::pair<std::size_t, std::size_t>> unequal;
    if (distinct) {
      for (std::size_t i = 0; i < bound.size(); ++i) {
        for (std::size_t j = i + 1; j < order.size(); ++j) unequal.emplace_back(i, j);
      }
    }
    for (const auto& l : lits) {
      if (l.equal) {
        parent[root(index(l.a))] = root(index(l.b));
      } else {
        unequal.emplace_back(index(l.a), index(l.b));
      }
    }
    std::set<std::pair<std::size_t, std::size_t>> apart;
    for (auto [i, j] : unequal) {
      const auto a = root(i), b = root(j);
      if (a == b) {
        fail_at(where, "contradictory equality type: '" + order[i] + "' and '" + order[j] +
                           "' are both equal and unequal");
      }
      apart.emplace(std::min(a, b), std::max(a, b));
    }
    std::vector<int> ids(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      ids[i] = static_cast<int>(root(i));
      for (std::size_t j = 0; j < i; ++j) {
        const auto a = root(i), b = root(j);
        if (a != b && !apart.count({std::min(a, b), std::max(a, b)})) {
          fail_at(where, "equality type does not decide '" + order[j] + "' and '" + order[i] + "'");
        }
      }
    }
    try {
      return aggregate(function, std::move(bodies), std::move(bound),
                       EqualityType(std::move(order), std::move(ids)));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      fail_at(where, e.detail());
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

FormulaPtr parse_formula(std::string_view text) {
  return Parser(lex(text)).parse();
}

}  // namespace pla
