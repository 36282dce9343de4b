#ifndef TUBES_PARSE_HPP
#define TUBES_PARSE_HPP

#include "tubes/rational_function.hpp"

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tubes {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

// Recursive-descent parser for + - * / ^ ( ) with integer literals, the
// imaginary unit I and identifiers [A-Za-z_][A-Za-z0-9_']*.
class ExprParser {
 public:
  ExprParser(std::string_view text, VarList vars) : text_(text), vars_(std::move(vars)) {}

  CRational run() {
    CRational r = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected character");
    return r.with_vars(vars_);
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in \"" + std::string(text_) + "\"");
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  CRational constant(const Gaussian& g) { return CRational(CPoly(vars_, g)); }

  CRational expr() {
    CRational acc = term();
    for (;;) {
      if (eat('+'))
        acc = acc + term();
      else if (eat('-'))
        acc = acc - term();
      else
        return acc;
    }
  }

  CRational term() {
    CRational acc = unary();
    for (;;) {
      if (eat('*'))
        acc = acc * unary();
      else if (eat('/'))
        acc = acc / unary();
      else
        return acc;
    }
  }

  CRational unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  CRational power() {
    CRational base = atom();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected integer exponent");
      unsigned n = static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start))));
      return base.pow(n);
    }
    return base;
  }

  CRational atom() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      CRational e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ < text_.size() && text_[pos_] == '.') fail("floating-point literal");
      return constant(Gaussian(parse_rational(text_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' || text_[pos_] == '\''))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      if (name == "I") return constant(Gaussian::i());
      auto idx = index_of(*vars_, name);
      if (!idx) {
        vars_ = union_vars(vars_, make_vars({name}));
        idx = index_of(*vars_, name);
      }
      return CRational(CPoly::variable(vars_, *idx));
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  VarList vars_;
};

}  // namespace detail

/// Parses an arithmetic expression. Variables listed in `order` come first
/// in the result's variable list, in that order.
inline CRational parse_rational_function(std::string_view text, const std::vector<std::string>& order = {}) {
  return detail::ExprParser(text, make_vars(order)).run();
}

inline CPoly parse_polynomial(std::string_view text, const std::vector<std::string>& order = {}) {
  CRational r = parse_rational_function(text, order);
  if (!r.is_polynomial()) throw ParseError("expression is not a polynomial: " + std::string(text));
  return r.num();
}

inline QPoly parse_real_polynomial(std::string_view text, const std::vector<std::string>& order = {}) {
  return to_real(parse_polynomial(text, order));
}

}  // namespace tubes

#endif
