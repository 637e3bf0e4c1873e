#include <cctype>
#include <cstdlib>
#include <string>

#include "hsurf/errors.hpp"
#include "hsurf/hfunc.hpp"

namespace hsurf {

namespace {

struct FuncEntry {
  const char* name;
  HAst::Op op;
};

constexpr FuncEntry kFunctions[] = {
    {"sin", HAst::Op::Sin},   {"cos", HAst::Op::Cos},   {"tan", HAst::Op::Tan},
    {"sinh", HAst::Op::Sinh}, {"cosh", HAst::Op::Cosh}, {"tanh", HAst::Op::Tanh},
    {"exp", HAst::Op::Exp},   {"sqrt", HAst::Op::Sqrt},
};

constexpr const char* kNonSmooth[] = {"abs", "sign", "sgn", "floor", "ceil", "round", "min", "max", "heaviside"};

class Parser {
public:
  explicit Parser(std::string_view src) : src_(src) {}

  HAst parse() {
    HAst e = expr();
    skip();
    if (pos_ < src_.size()) fail(std::string("unexpected '") + src_[pos_] + "', expected operator or end of input");
    return e;
  }

private:
  std::string_view src_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < src_.size() && src_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  HAst expr() {
    HAst lhs = term();
    while (true) {
      if (peek('+')) {
        ++pos_;
        lhs = HAst::binary(HAst::Op::Add, lhs, term());
      } else if (peek('-')) {
        ++pos_;
        lhs = HAst::binary(HAst::Op::Sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  HAst term() {
    HAst lhs = factor();
    while (true) {
      if (peek('*')) {
        ++pos_;
        lhs = HAst::binary(HAst::Op::Mul, lhs, factor());
      } else if (peek('/')) {
        ++pos_;
        lhs = HAst::binary(HAst::Op::Div, lhs, factor());
      } else {
        return lhs;
      }
    }
  }

  HAst factor() {
    HAst b = base();
    if (!peek('^')) return b;
    ++pos_;
    skip();
    const std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected non-negative integer exponent");
    if (pos_ < src_.size() && (src_[pos_] == '.' || src_[pos_] == 'e' || src_[pos_] == 'E'))
      fail("exponent must be a non-negative integer");
    if (pos_ - start > 6) {
      pos_ = start;
      fail("exponent too large");
    }
    const unsigned n = static_cast<unsigned>(std::stoul(std::string(src_.substr(start, pos_ - start))));
    return HAst::power(b, n);
  }

  HAst base() {
    skip();
    if (pos_ >= src_.size()) fail("expected expression, found end of input");
    const char c = src_[pos_];
    if (c == '-') {
      ++pos_;
      skip();
      // a signed literal is one constant, so negative constants round-trip
      if (pos_ < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.'))
        return HAst::constant(-number().value());
      return HAst::unary(HAst::Op::Neg, base());
    }
    if (c == '(') {
      ++pos_;
      HAst e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail(std::string("unexpected '") + c + "', expected number, 'y', function or '('");
  }

  HAst number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_, ++n;
      return n;
    };
    std::size_t nd = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      nd += digits();
    }
    if (nd == 0) {
      pos_ = start;
      fail("malformed number");
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      const std::size_t mark = pos_;
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (digits() == 0) {
        pos_ = mark + 1;
        fail("malformed exponent in number");
      }
    }
    const std::string text(src_.substr(start, pos_ - start));
    return HAst::constant(std::strtod(text.c_str(), nullptr));
  }

  HAst identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    const std::string name(src_.substr(start, pos_ - start));
    if (name == "y") return HAst::var();
    for (const auto& f : kFunctions) {
      if (name == f.name) {
        expect('(');
        HAst arg = expr();
        expect(')');
        return HAst::unary(f.op, arg);
      }
    }
    pos_ = start;
    for (const char* bad : kNonSmooth) {
      if (name == bad)
        fail("'" + name + "' is not admitted: H must be C1 on [-1,1] and zero multiplicities need higher derivatives");
    }
    fail("unknown identifier '" + name + "'");
  }
};

}  // namespace

HAst parse_ast(std::string_view source) { return Parser(source).parse(); }

}  // namespace hsurf
