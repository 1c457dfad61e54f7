#include "pseudoroll/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <vector>

namespace pseudoroll {

namespace {

using Fn = std::function<double(double)>;

struct Token {
  enum Kind { Number, Ident, Op, End } kind;
  double value = 0;       // Number
  std::string name;       // Ident
  char op = 0;            // Op: one of + - * / ( )
  std::size_t column = 0; // 1-based position in the source text
};

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t col = i + 1;
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double v = 0;
      const char* begin = text.data() + i;
      const auto res = std::from_chars(begin, text.data() + text.size(), v);
      if (res.ec != std::errc())
        throw ParseError("expression: bad number at column " +
                         std::to_string(col));
      i = std::size_t(res.ptr - text.data());
      out.push_back({Token::Number, v, {}, 0, col});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() &&
             std::isalpha(static_cast<unsigned char>(text[j])))
        ++j;
      out.push_back({Token::Ident, 0, text.substr(i, j - i), 0, col});
      i = j;
      continue;
    }
    if (c == '+' || c == '-' || c == '*' || c == '/' || c == '(' || c == ')') {
      out.push_back({Token::Op, 0, {}, c, col});
      ++i;
      continue;
    }
    throw ParseError(std::string("expression: unexpected character '") + c +
                     "' at column " + std::to_string(col));
  }
  out.push_back({Token::End, 0, {}, 0, text.size() + 1});
  return out;
}

// Recursive descent over the token stream; each rule returns the compiled
// callable for its subexpression.
class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Fn parse() {
    Fn f = expr();
    if (peek().kind != Token::End)
      throw ParseError("expression: trailing input at column " +
                       std::to_string(peek().column));
    return f;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  Token take() { return tokens_[pos_++]; }

  bool accept_op(char c) {
    if (peek().kind == Token::Op && peek().op == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect_op(char c, const char* where) {
    if (!accept_op(c))
      throw ParseError(std::string("expression: expected '") + c + "' " +
                       where + " at column " + std::to_string(peek().column));
  }

  Fn expr() {
    Fn acc = term();
    while (peek().kind == Token::Op && (peek().op == '+' || peek().op == '-')) {
      const char op = take().op;
      Fn rhs = term();
      acc = op == '+'
                ? Fn([l = std::move(acc), r = std::move(rhs)](double t) {
                    return l(t) + r(t);
                  })
                : Fn([l = std::move(acc), r = std::move(rhs)](double t) {
                    return l(t) - r(t);
                  });
    }
    return acc;
  }

  Fn term() {
    Fn acc = unary();
    while (peek().kind == Token::Op && (peek().op == '*' || peek().op == '/')) {
      const char op = take().op;
      Fn rhs = unary();
      acc = op == '*'
                ? Fn([l = std::move(acc), r = std::move(rhs)](double t) {
                    return l(t) * r(t);
                  })
                : Fn([l = std::move(acc), r = std::move(rhs)](double t) {
                    return l(t) / r(t);
                  });
    }
    return acc;
  }

  Fn unary() {
    if (accept_op('-')) {
      Fn f = unary();
      return [f = std::move(f)](double t) { return -f(t); };
    }
    if (accept_op('+')) return unary();
    return primary();
  }

  Fn primary() {
    const Token tok = take();
    if (tok.kind == Token::Number)
      return [v = tok.value](double) { return v; };
    if (tok.kind == Token::Ident) {
      if (tok.name == "t") return [](double t) { return t; };
      double (*fn)(double) = nullptr;
      if (tok.name == "sin") fn = std::sin;
      else if (tok.name == "cos") fn = std::cos;
      else if (tok.name == "sinh") fn = std::sinh;
      else if (tok.name == "cosh") fn = std::cosh;
      if (fn == nullptr)
        throw ParseError("expression: unknown name '" + tok.name +
                         "' at column " + std::to_string(tok.column));
      expect_op('(', ("after " + tok.name).c_str());
      Fn arg = expr();
      expect_op(')', "to close the call");
      return [fn, arg = std::move(arg)](double t) { return fn(arg(t)); };
    }
    if (tok.kind == Token::Op && tok.op == '(') {
      Fn inner = expr();
      expect_op(')', "to close the group");
      return inner;
    }
    throw ParseError("expression: expected a value at column " +
                     std::to_string(tok.column));
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

std::function<double(double)> parse_expression(const std::string& text) {
  Parser parser(tokenize(text));
  return parser.parse();
}

}  // namespace pseudoroll
