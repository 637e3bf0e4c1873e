#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "hsurf/errors.hpp"
#include "hsurf/hfunc.hpp"

namespace hsurf {

struct HAst::Node {
  Op op;
  double value = 0.0;
  unsigned exponent = 0;
  HAst a, b;
};

Kappa kappa_from_int(int k) {
  if (k == -1) return Kappa::Hyperbolic;
  if (k == 1) return Kappa::Spherical;
  throw DomainError("kappa must be -1 or +1, got " + std::to_string(k));
}

const char* op_name(HAst::Op op) {
  switch (op) {
    case HAst::Op::Sin: return "sin";
    case HAst::Op::Cos: return "cos";
    case HAst::Op::Tan: return "tan";
    case HAst::Op::Sinh: return "sinh";
    case HAst::Op::Cosh: return "cosh";
    case HAst::Op::Tanh: return "tanh";
    case HAst::Op::Exp: return "exp";
    case HAst::Op::Sqrt: return "sqrt";
    case HAst::Op::Add: return "+";
    case HAst::Op::Sub: return "-";
    case HAst::Op::Mul: return "*";
    case HAst::Op::Div: return "/";
    case HAst::Op::Pow: return "^";
    case HAst::Op::Neg: return "-";
    case HAst::Op::Const: return "const";
    case HAst::Op::Var: return "y";
  }
  return "?";
}

namespace {

bool is_function(HAst::Op op) {
  switch (op) {
    case HAst::Op::Sin:
    case HAst::Op::Cos:
    case HAst::Op::Tan:
    case HAst::Op::Sinh:
    case HAst::Op::Cosh:
    case HAst::Op::Tanh:
    case HAst::Op::Exp:
    case HAst::Op::Sqrt:
      return true;
    default:
      return false;
  }
}

bool is_binary(HAst::Op op) {
  return op == HAst::Op::Add || op == HAst::Op::Sub || op == HAst::Op::Mul || op == HAst::Op::Div;
}

std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

HAst HAst::constant(double c) { return HAst(std::make_shared<const Node>(Node{Op::Const, c, 0, {}, {}})); }

HAst HAst::var() { return HAst(std::make_shared<const Node>(Node{Op::Var, 0.0, 0, {}, {}})); }

HAst HAst::unary(Op op, HAst a) {
  if (!(op == Op::Neg || is_function(op)) || !a.valid()) throw std::invalid_argument("HAst::unary: bad operand");
  return HAst(std::make_shared<const Node>(Node{op, 0.0, 0, std::move(a), {}}));
}

HAst HAst::binary(Op op, HAst a, HAst b) {
  if (!is_binary(op) || !a.valid() || !b.valid()) throw std::invalid_argument("HAst::binary: bad operands");
  return HAst(std::make_shared<const Node>(Node{op, 0.0, 0, std::move(a), std::move(b)}));
}

HAst HAst::power(HAst a, unsigned n) {
  if (!a.valid()) throw std::invalid_argument("HAst::power: bad operand");
  return HAst(std::make_shared<const Node>(Node{Op::Pow, 0.0, n, std::move(a), {}}));
}

HAst::Op HAst::op() const { return node_->op; }
double HAst::value() const { return node_->value; }
unsigned HAst::exponent() const { return node_->exponent; }
const HAst& HAst::lhs() const { return node_->a; }
const HAst& HAst::rhs() const { return node_->b; }

int HAst::arity() const {
  if (node_->op == Op::Const || node_->op == Op::Var) return 0;
  if (is_binary(node_->op)) return 2;
  return 1;
}

double HAst::eval(double y) const {
  const Node& n = *node_;
  switch (n.op) {
    case Op::Const: return n.value;
    case Op::Var: return y;
    case Op::Neg: return -n.a.eval(y);
    case Op::Sin: return std::sin(n.a.eval(y));
    case Op::Cos: return std::cos(n.a.eval(y));
    case Op::Tan: return std::tan(n.a.eval(y));
    case Op::Sinh: return std::sinh(n.a.eval(y));
    case Op::Cosh: return std::cosh(n.a.eval(y));
    case Op::Tanh: return std::tanh(n.a.eval(y));
    case Op::Exp: return std::exp(n.a.eval(y));
    case Op::Sqrt: return std::sqrt(n.a.eval(y));
    case Op::Add: return n.a.eval(y) + n.b.eval(y);
    case Op::Sub: return n.a.eval(y) - n.b.eval(y);
    case Op::Mul: return n.a.eval(y) * n.b.eval(y);
    case Op::Div: return n.a.eval(y) / n.b.eval(y);
    case Op::Pow: {
      const double base = n.a.eval(y);
      double r = 1.0;
      for (unsigned k = 0; k < n.exponent; ++k) r *= base;
      return r;
    }
  }
  return std::nan("");
}

// Every binary node is parenthesized, so the output re-parses to the same tree.
std::string HAst::serialize() const {
  const Node& n = *node_;
  switch (n.op) {
    case Op::Const:
      return n.value < 0.0 || std::signbit(n.value) ? "(-" + number(-n.value) + ")" : number(n.value);
    case Op::Var: return "y";
    case Op::Neg: return "-(" + n.a.serialize() + ")";
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div:
      return "(" + n.a.serialize() + " " + op_name(n.op) + " " + n.b.serialize() + ")";
    case Op::Pow: {
      const Op inner = n.a.op();
      std::string base = n.a.serialize();
      if (inner == Op::Neg || inner == Op::Pow) base = "(" + base + ")";
      return base + "^" + std::to_string(n.exponent);
    }
    default:
      return std::string(op_name(n.op)) + "(" + n.a.serialize() + ")";
  }
}

bool HAst::structurally_equal(const HAst& o) const {
  if (node_ == o.node_) return true;
  if (!valid() || !o.valid()) return false;
  const Node& p = *node_;
  const Node& q = *o.node_;
  if (p.op != q.op) return false;
  switch (p.op) {
    case Op::Const: return p.value == q.value || (std::isnan(p.value) && std::isnan(q.value));
    case Op::Var: return true;
    case Op::Pow: return p.exponent == q.exponent && p.a.structurally_equal(q.a);
    default:
      if (is_binary(p.op)) return p.a.structurally_equal(q.a) && p.b.structurally_equal(q.b);
      return p.a.structurally_equal(q.a);
  }
}

std::size_t HAst::size() const {
  const Node& n = *node_;
  std::size_t s = 1;
  if (n.a.valid()) s += n.a.size();
  if (n.b.valid()) s += n.b.size();
  return s;
}

namespace ast {

namespace {
bool is_const(const HAst& a, double v) { return a.op() == HAst::Op::Const && a.value() == v; }
bool is_const(const HAst& a) { return a.op() == HAst::Op::Const; }
}  // namespace

HAst c(double v) { return HAst::constant(v); }
HAst y() { return HAst::var(); }

HAst neg(const HAst& a) {
  if (is_const(a)) return c(-a.value());
  if (a.op() == HAst::Op::Neg) return a.lhs();
  return HAst::unary(HAst::Op::Neg, a);
}

HAst fn(HAst::Op op, const HAst& a) {
  if (is_const(a)) return c(HAst::unary(op, a).eval(0.0));
  return HAst::unary(op, a);
}

HAst add(const HAst& a, const HAst& b) {
  if (is_const(a) && is_const(b)) return c(a.value() + b.value());
  if (is_const(a, 0.0)) return b;
  if (is_const(b, 0.0)) return a;
  return HAst::binary(HAst::Op::Add, a, b);
}

HAst sub(const HAst& a, const HAst& b) {
  if (is_const(a) && is_const(b)) return c(a.value() - b.value());
  if (is_const(b, 0.0)) return a;
  if (is_const(a, 0.0)) return neg(b);
  return HAst::binary(HAst::Op::Sub, a, b);
}

HAst mul(const HAst& a, const HAst& b) {
  if (is_const(a) && is_const(b)) return c(a.value() * b.value());
  if (is_const(a, 0.0) || is_const(b, 0.0)) return c(0.0);
  if (is_const(a, 1.0)) return b;
  if (is_const(b, 1.0)) return a;
  if (is_const(a, -1.0)) return neg(b);
  if (is_const(b, -1.0)) return neg(a);
  return HAst::binary(HAst::Op::Mul, a, b);
}

HAst div(const HAst& a, const HAst& b) {
  if (is_const(a) && is_const(b) && b.value() != 0.0) return c(a.value() / b.value());
  if (is_const(a, 0.0)) return c(0.0);
  if (is_const(b, 1.0)) return a;
  return HAst::binary(HAst::Op::Div, a, b);
}

HAst pow(const HAst& a, unsigned n) {
  if (n == 0) return c(1.0);
  if (n == 1) return a;
  if (is_const(a)) return c(HAst::power(a, n).eval(0.0));
  return HAst::power(a, n);
}

}  // namespace ast

HAst differentiate(const HAst& e) {
  using namespace ast;
  using Op = HAst::Op;
  switch (e.op()) {
    case Op::Const: return c(0.0);
    case Op::Var: return c(1.0);
    case Op::Neg: return neg(differentiate(e.lhs()));
    case Op::Add: return add(differentiate(e.lhs()), differentiate(e.rhs()));
    case Op::Sub: return sub(differentiate(e.lhs()), differentiate(e.rhs()));
    case Op::Mul: {
      const HAst& a = e.lhs();
      const HAst& b = e.rhs();
      return add(mul(differentiate(a), b), mul(a, differentiate(b)));
    }
    case Op::Div: {
      const HAst& a = e.lhs();
      const HAst& b = e.rhs();
      return div(sub(mul(differentiate(a), b), mul(a, differentiate(b))), pow(b, 2));
    }
    case Op::Pow: {
      const unsigned n = e.exponent();
      if (n == 0) return c(0.0);
      return mul(mul(c(n), pow(e.lhs(), n - 1)), differentiate(e.lhs()));
    }
    default: break;
  }
  const HAst& a = e.lhs();
  const HAst da = differentiate(a);
  HAst outer;
  switch (e.op()) {
    case Op::Sin: outer = fn(Op::Cos, a); break;
    case Op::Cos: outer = neg(fn(Op::Sin, a)); break;
    case Op::Tan: outer = add(c(1.0), pow(fn(Op::Tan, a), 2)); break;
    case Op::Sinh: outer = fn(Op::Cosh, a); break;
    case Op::Cosh: outer = fn(Op::Sinh, a); break;
    case Op::Tanh: outer = sub(c(1.0), pow(fn(Op::Tanh, a), 2)); break;
    case Op::Exp: outer = fn(Op::Exp, a); break;
    case Op::Sqrt: return div(da, mul(c(2.0), fn(Op::Sqrt, a)));
    default: throw std::logic_error("differentiate: unhandled node");
  }
  return mul(outer, da);
}

}  // namespace hsurf
