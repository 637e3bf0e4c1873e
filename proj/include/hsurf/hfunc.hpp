#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hsurf {

enum class Kappa : int { Hyperbolic = -1, Spherical = 1 };

inline int value(Kappa k) { return static_cast<int>(k); }
Kappa kappa_from_int(int k);

// Expression tree for H(y). Nodes are immutable and shared.
class HAst {
public:
  enum class Op { Const, Var, Neg, Sin, Cos, Tan, Sinh, Cosh, Tanh, Exp, Sqrt, Add, Sub, Mul, Div, Pow };

  HAst() = default;

  static HAst constant(double c);
  static HAst var();
  static HAst unary(Op op, HAst a);
  static HAst binary(Op op, HAst a, HAst b);
  static HAst power(HAst a, unsigned n);

  bool valid() const { return node_ != nullptr; }
  Op op() const;
  double value() const;
  unsigned exponent() const;
  const HAst& lhs() const;
  const HAst& rhs() const;
  int arity() const;

  double eval(double y) const;
  std::string serialize() const;
  bool structurally_equal(const HAst& other) const;
  std::size_t size() const;

private:
  struct Node;
  explicit HAst(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

const char* op_name(HAst::Op op);

// Constant-folding constructors used by differentiation.
namespace ast {
HAst c(double v);
HAst y();
HAst neg(const HAst& a);
HAst fn(HAst::Op op, const HAst& a);
HAst add(const HAst& a, const HAst& b);
HAst sub(const HAst& a, const HAst& b);
HAst mul(const HAst& a, const HAst& b);
HAst div(const HAst& a, const HAst& b);
HAst pow(const HAst& a, unsigned n);
}  // namespace ast

HAst differentiate(const HAst& e);

// Raw tree, no simplification. Throws ParseError.
HAst parse_ast(std::string_view source);

struct ZeroRecord {
  double y0;
  int multiplicity;
  bool sign_change;
};

struct RootOptions {
  int grid = 4096;
  double bisect_tol = 1e-12;
  double root_tol = 1e-10;
  double vanish_tol = 1e-8;
  double merge_tol = 1e-9;
  double separation = 1e-6;
  int max_order = 6;
};

// Zeros of e on [lo, hi]. Throws UnresolvedZero for clusters or multiplicity above max_order.
std::vector<ZeroRecord> find_roots(const HAst& e, double lo = -1.0, double hi = 1.0,
                                   const RootOptions& opt = {});

class HFunction {
public:
  // Throws ParseError for syntax, DomainError for non-smooth or non-finite expressions.
  explicit HFunction(const HAst& ast, std::string source = {});

  const HAst& ast() const { return ast_; }
  const HAst& d_ast() const { return d_ast_; }
  const std::string& source() const { return source_; }

  double operator()(double y) const { return ast_.eval(y); }
  double derivative(double y) const { return d_ast_.eval(y); }

  // Lazily computed; cached result or rethrown error.
  const std::vector<ZeroRecord>& zeros() const;

private:
  struct ZeroCache {
    std::once_flag once;
    std::vector<ZeroRecord> zeros;
    std::string error;
  };
  HAst ast_;
  HAst d_ast_;
  std::string source_;
  std::shared_ptr<ZeroCache> cache_;
};

HFunction parse_h(std::string_view source);

// order 0 gives H, order 1 gives H'. Throws DomainError outside [-1,1].
double eval_h(const HFunction& f, double y, int order = 0);

std::vector<ZeroRecord> find_zeros(const HFunction& f);
int multiplicity_sum(const std::vector<ZeroRecord>& zs);

bool is_even(const HFunction& f);
double evenness_defect(const HFunction& f);

struct ClassReport {
  bool is_even = false;
  bool satisfies_h2r_inequality = false;
  std::optional<double> inequality_witness;
  double inequality_margin = 0.0;  // min over [-1,1] of 2|H| - sqrt(1-y^2)
  double g_min = 0.0;              // min over [-1,1] of 4H^2 - (1-y^2)
  std::optional<int> zero_multiplicity_sum;
  std::string zero_error;
  std::vector<Kappa> admissible_for;

  bool admissible(Kappa k) const;
};

ClassReport class_membership(const HFunction& f, Kappa k);

// Minimum of a smooth function on [lo, hi]: grid scan plus golden-section refinement.
struct Minimum {
  double arg;
  double value;
};
template <typename F>
Minimum grid_minimize(F&& f, double lo, double hi, int grid);

// Bisection of a bracketed sign change down to |b - a| <= tol.
template <typename F>
double bisect(F&& f, double a, double b, double tol);

}  // namespace hsurf

#include "hsurf/detail/scan.hpp"
