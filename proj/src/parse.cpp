#include "padicint/parse.hpp"

#include <cctype>
#include <string>
#include <vector>

#include "padicint/error.hpp"

namespace padicint {

namespace {

enum class Tok { Int, Ident, Plus, Minus, Star, Caret, LParen, RParen, Comma, Semicolon, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int column = 1;
  std::size_t i = 0;
  auto push = [&](Tok kind, std::string text, int col) { out.push_back({kind, std::move(text), line, col}); };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '\n') {
      ++line;
      column = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++column;
      ++i;
      continue;
    }
    const int start = column;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits;
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) {
        digits += src[i++];
        ++column;
      }
      push(Tok::Int, digits, start);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string ident;
      while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) {
        ident += src[i++];
        ++column;
      }
      push(Tok::Ident, ident, start);
      continue;
    }
    Tok kind;
    switch (c) {
      case '+': kind = Tok::Plus; break;
      case '-': kind = Tok::Minus; break;
      case '*': kind = Tok::Star; break;
      case '^': kind = Tok::Caret; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case ',': kind = Tok::Comma; break;
      case ';': kind = Tok::Semicolon; break;
      default:
        throw ParseError("unexpected character '" + std::string(1, c) + "'", line, column);
    }
    push(kind, std::string(1, c), start);
    ++column;
    ++i;
  }
  out.push_back({Tok::End, "", line, column});
  return out;
}

// Parses "x<digits>" / "g<digits>" into a 1-based index, or 0.
int variable_index(const std::string& ident, char prefix) {
  if (ident.size() < 2 || ident[0] != prefix) return 0;
  for (std::size_t i = 1; i < ident.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(ident[i]))) return 0;
  }
  if (ident[1] == '0' || ident.size() > 7) return 0;
  return std::stoi(ident.substr(1));
}

class Parser {
 public:
  explicit Parser(std::string_view src) : tokens_(tokenize(src)) {}

  Polynomial polynomial_root() {
    Polynomial p = poly_sum();
    expect(Tok::End, "end of input");
    return p;
  }

  ConstructibleExpr expr_root() {
    ConstructibleExpr e = expr_sum();
    expect(Tok::End, "end of input");
    return e;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& take() { return tokens_[pos_++]; }
  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& message, const Token& at) const {
    throw ParseError(message, at.line, at.column);
  }
  const Token& expect(Tok kind, const std::string& what) {
    if (peek().kind != kind) {
      fail("expected " + what + (peek().kind == Tok::End ? " before end of input" : ", found '" + peek().text + "'"),
           peek());
    }
    return take();
  }

  long integer_literal(const Token& tok) {
    Integer v(tok.text, 10);
    if (!v.fits_slong_p()) fail("integer literal out of range", tok);
    return v.get_si();
  }

  unsigned exponent_after(const Token& caret) {
    if (peek().kind != Tok::Int) fail("expected a non-negative integer exponent after '^'", caret);
    const long e = integer_literal(take());
    if (e > 1000) fail("exponent too large", caret);
    return static_cast<unsigned>(e);
  }

  long signed_integer() {
    const bool negative = accept(Tok::Minus);
    const Token& tok = expect(Tok::Int, "an integer");
    const long v = integer_literal(tok);
    return negative ? -v : v;
  }

  // ---- polynomials ----

  Polynomial poly_sum() {
    Polynomial acc = poly_product();
    while (true) {
      if (accept(Tok::Plus)) {
        acc += poly_product();
      } else if (accept(Tok::Minus)) {
        acc = acc - poly_product();
      } else {
        return acc;
      }
    }
  }

  Polynomial poly_product() {
    Polynomial acc = poly_unary();
    while (accept(Tok::Star)) acc *= poly_unary();
    return acc;
  }

  Polynomial poly_unary() {
    if (accept(Tok::Minus)) return -poly_unary();
    Polynomial base = poly_atom();
    if (peek().kind == Tok::Caret) {
      const Token& caret = take();
      base = base.pow(exponent_after(caret));
    }
    return base;
  }

  Polynomial poly_atom() {
    const Token& tok = peek();
    if (tok.kind == Tok::Int) {
      take();
      return Polynomial(Rational(Integer(tok.text, 10)));
    }
    if (tok.kind == Tok::Ident) {
      const int index = variable_index(tok.text, 'x');
      if (index == 0) fail("unknown identifier '" + tok.text + "' in polynomial", tok);
      take();
      return Polynomial::variable(index - 1);
    }
    if (accept(Tok::LParen)) {
      Polynomial inner = poly_sum();
      expect(Tok::RParen, "')'");
      return inner;
    }
    fail(tok.kind == Tok::End ? "unexpected end of input" : "unexpected '" + tok.text + "'", tok);
  }

  // ---- integrands ----

  ConstructibleExpr expr_sum() {
    ConstructibleExpr acc = expr_product();
    while (true) {
      if (accept(Tok::Plus)) {
        acc += expr_product();
      } else if (accept(Tok::Minus)) {
        acc += -expr_product();
      } else {
        return acc;
      }
    }
  }

  ConstructibleExpr expr_product() {
    ConstructibleExpr acc = expr_unary();
    while (accept(Tok::Star)) acc *= expr_unary();
    return acc;
  }

  ConstructibleExpr expr_unary() {
    if (accept(Tok::Minus)) return -expr_unary();
    ConstructibleExpr base = expr_atom();
    if (peek().kind == Tok::Caret) {
      const Token& caret = take();
      const unsigned e = exponent_after(caret);
      ConstructibleExpr out(AqElem(1));
      for (unsigned i = 0; i < e; ++i) out *= base;
      return out;
    }
    return base;
  }

  ConstructibleExpr q_power_after_q() {
    if (peek().kind != Tok::Caret) return ConstructibleExpr::q_power(Affine{1, {}});
    const Token& caret = take();
    if (peek().kind == Tok::Int || peek().kind == Tok::Minus) {
      return ConstructibleExpr::q_power(Affine{signed_integer(), {}});
    }
    if (!accept(Tok::LParen)) fail("expected an exponent after 'q^'", caret);
    const Token& start = peek();
    ConstructibleExpr inner = expr_sum();
    expect(Tok::RParen, "')'");
    auto affine = inner.as_affine();
    if (!affine) fail("exponent of q must be linear in integer-valued atoms", start);
    return ConstructibleExpr::q_power(*affine);
  }

  ConstructibleExpr expr_atom() {
    const Token& tok = peek();
    if (tok.kind == Tok::Int) {
      take();
      return ConstructibleExpr(AqElem(Rational(Integer(tok.text, 10))));
    }
    if (tok.kind == Tok::LParen) {
      take();
      ConstructibleExpr inner = expr_sum();
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (tok.kind != Tok::Ident) {
      fail(tok.kind == Tok::End ? "unexpected end of input" : "unexpected '" + tok.text + "'", tok);
    }
    take();
    if (tok.text == "q") return q_power_after_q();
    if (tok.text == "ord") {
      expect(Tok::LParen, "'(' after ord");
      Polynomial g = poly_sum();
      expect(Tok::RParen, "')'");
      return ConstructibleExpr::atom(Symbol::ord(std::move(g)));
    }
    if (tok.text == "lin") {
      expect(Tok::LParen, "'(' after lin");
      PreparedLinear f;
      f.a = signed_integer();
      expect(Tok::Comma, "','");
      const Token& k_tok = peek();
      f.k = signed_integer();
      expect(Tok::Comma, "','");
      const Token& n_tok = peek();
      f.n = signed_integer();
      expect(Tok::Comma, "','");
      f.delta = signed_integer();
      expect(Tok::Semicolon, "';'");
      const Token& var = expect(Tok::Ident, "a Γ-variable");
      const int index = variable_index(var.text, 'g');
      if (index == 0) fail("lin(...) needs a Γ-variable g1..gm", var);
      expect(Tok::RParen, "')'");
      if (f.n < 1) fail("lin(...) needs n >= 1", n_tok);
      if (f.k < 0 || f.k >= f.n) fail("lin(...) needs 0 <= k < n", k_tok);
      return ConstructibleExpr::atom(Symbol::linear(f, index));
    }
    if (int g = variable_index(tok.text, 'g'); g != 0) return ConstructibleExpr::atom(Symbol::gamma_var(g));
    if (variable_index(tok.text, 'x') != 0) {
      fail("K-variable '" + tok.text + "' may only appear inside ord(...)", tok);
    }
    fail("unknown identifier '" + tok.text + "'", tok);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text) { return Parser(text).polynomial_root(); }

ConstructibleExpr parse_constructible(std::string_view text) { return Parser(text).expr_root(); }

}  // namespace padicint
