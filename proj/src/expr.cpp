#include "ramlab/expr.hpp"

#include <cctype>

namespace ramlab {

namespace {

class ExprParser {
 public:
  ExprParser(const RingPtr& ring, std::string_view text, SourcePos origin)
      : ring_(ring), text_(text), line_(origin.line), col_(origin.column) {}

  RationalFunction parse_all() {
    skip_space();
    if (at_end()) error(ErrorCode::SyntaxError, "empty expression");
    RationalFunction r = expr();
    skip_space();
    if (!at_end()) error(ErrorCode::SyntaxError, std::string("unexpected '") + peek() + "'");
    return r;
  }

 private:
  RationalFunction expr() {
    RationalFunction acc = term();
    for (;;) {
      skip_space();
      if (match('+'))
        acc = acc + term();
      else if (match('-'))
        acc = acc - term();
      else
        return acc;
    }
  }

  RationalFunction term() {
    RationalFunction acc = unary();
    for (;;) {
      skip_space();
      if (match('*')) {
        acc = acc * unary();
      } else if (peek() == '/') {
        SourcePos at = pos();
        advance();
        RationalFunction d = unary();
        if (d.is_zero()) error_at(at, ErrorCode::SemanticError, "division by zero");
        acc = acc / d;
      } else {
        return acc;
      }
    }
  }

  RationalFunction unary() {
    skip_space();
    if (match('-')) return -unary();
    if (match('+')) return unary();
    return power();
  }

  RationalFunction power() {
    RationalFunction base = atom();
    skip_space();
    if (!match('^')) return base;
    skip_space();
    bool neg = false;
    if (match('-'))
      neg = true;
    else if (peek() == '(') {
      // allow ^(-3)
      advance();
      skip_space();
      neg = match('-');
      long long e = integer_literal();
      skip_space();
      expect(')');
      return raise(base, neg ? -e : e);
    }
    skip_space();
    long long e = integer_literal();
    return raise(base, neg ? -e : e);
  }

  RationalFunction raise(const RationalFunction& base, long long e) {
    if (e < 0) {
      if (base.is_zero()) error(ErrorCode::SemanticError, "negative power of zero");
      RationalFunction inv(base.den(), base.num());
      return RationalFunction(inv.num().pow(-e), inv.den().pow(-e));
    }
    return RationalFunction(base.num().pow(e), base.den().pow(e));
  }

  long long integer_literal() {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) error(ErrorCode::SyntaxError, "expected integer exponent");
    long long v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (peek() - '0');
      if (v > 100000) error(ErrorCode::SemanticError, "exponent too large");
      advance();
    }
    return v;
  }

  RationalFunction atom() {
    skip_space();
    SourcePos at = pos();
    char c = peek();
    if (c == '(') {
      advance();
      RationalFunction r = expr();
      skip_space();
      expect(')');
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::int64_t p = ring_->p();
      std::int64_t v = 0;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        v = (v * 10 + (peek() - '0')) % p;
        advance();
      }
      return RationalFunction(poly_int(ring_, v));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
        name += peek();
        advance();
      }
      if (auto i = ring_->var_index(name)) return RationalFunction(poly_var(ring_, *i));
      if (ring_->field()->param_index(name))
        return RationalFunction(poly_const(ring_, Coefficient::param(ring_->field(), name)));
      error_at(at, ErrorCode::SemanticError, "undeclared variable '" + name + "'");
    }
    if (at_end()) error(ErrorCode::SyntaxError, "unexpected end of expression");
    error(ErrorCode::SyntaxError, std::string("unexpected '") + c + "'");
  }

  bool at_end() const { return i_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[i_]; }
  SourcePos pos() const { return SourcePos{line_, col_}; }
  void advance() {
    if (text_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }
  bool match(char c) {
    if (peek() != c) return false;
    advance();
    return true;
  }
  void expect(char c) {
    if (!match(c)) error(ErrorCode::SyntaxError, std::string("expected '") + c + "'");
  }
  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }
  [[noreturn]] void error(ErrorCode code, const std::string& msg) { throw ParseError(code, pos(), msg); }
  [[noreturn]] void error_at(SourcePos at, ErrorCode code, const std::string& msg) { throw ParseError(code, at, msg); }

  const RingPtr& ring_;
  std::string_view text_;
  std::size_t i_ = 0;
  int line_;
  int col_;
};

}  // namespace

RationalFunction parse_rational(const RingPtr& ring, std::string_view text, SourcePos origin) {
  return ExprParser(ring, text, origin).parse_all();
}

MultiPoly parse_poly(const RingPtr& ring, std::string_view text, SourcePos origin) {
  RationalFunction r = parse_rational(ring, text, origin);
  if (!r.den().is_constant()) throw ParseError(ErrorCode::SemanticError, origin, "expected a polynomial expression");
  return r.num().scale(r.den().constant_term().inverse());
}

Coefficient parse_coefficient(const FieldPtr& field, std::string_view text, SourcePos origin) {
  RingPtr ring = Ring::make(field, {});
  MultiPoly f = parse_poly(ring, text, origin);
  return f.constant_term();
}

}  // namespace ramlab
