#include <cmath>
#include <cstdio>

#include "hsurf/errors.hpp"
#include "hsurf/hfunc.hpp"

namespace hsurf {

namespace {

constexpr int kFiniteGrid = 4096;
constexpr int kEvenGrid = 1024;
constexpr double kEvenTol = 1e-10;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

bool zero_free(const HAst& e) {
  try {
    return find_roots(e).empty();
  } catch (const UnresolvedZero&) {
    return false;
  }
}

// Rejects subexpressions that are singular or non-smooth somewhere on [-1,1].
void validate_domain(const HAst& e) {
  using Op = HAst::Op;
  if (e.arity() >= 1) validate_domain(e.lhs());
  if (e.arity() == 2) validate_domain(e.rhs());
  switch (e.op()) {
    case Op::Div:
      if (!zero_free(e.rhs()))
        throw DomainError("denominator " + e.rhs().serialize() + " vanishes on [-1,1]");
      break;
    case Op::Sqrt: {
      const Minimum m = grid_minimize([&](double y) { return e.lhs().eval(y); }, -1.0, 1.0, 1024);
      if (!(m.value > 0.0) || !zero_free(e.lhs()))
        throw DomainError("sqrt argument " + e.lhs().serialize() + " is not positive on [-1,1] (H must be C1)");
      break;
    }
    case Op::Tan:
      if (!zero_free(ast::fn(Op::Cos, e.lhs())))
        throw DomainError("tan(" + e.lhs().serialize() + ") has a pole on [-1,1]");
      break;
    default:
      break;
  }
}

}  // namespace

HFunction::HFunction(const HAst& ast, std::string source)
    : ast_(ast), source_(std::move(source)), cache_(std::make_shared<ZeroCache>()) {
  if (!ast_.valid()) throw DomainError("empty expression");
  validate_domain(ast_);
  d_ast_ = differentiate(ast_);
  for (int i = 0; i <= kFiniteGrid; ++i) {
    const double y = -1.0 + 2.0 * i / kFiniteGrid;
    if (!std::isfinite(ast_.eval(y)) || !std::isfinite(d_ast_.eval(y)))
      throw DomainError("H or H' is not finite at y=" + fmt(y));
  }
  if (source_.empty()) source_ = ast_.serialize();
}

const std::vector<ZeroRecord>& HFunction::zeros() const {
  std::call_once(cache_->once, [this] {
    try {
      cache_->zeros = find_roots(ast_);
    } catch (const UnresolvedZero& e) {
      cache_->error = e.what();
    }
  });
  if (!cache_->error.empty()) throw UnresolvedZero(cache_->error);
  return cache_->zeros;
}

HFunction parse_h(std::string_view source) { return HFunction(parse_ast(source), std::string(source)); }

double eval_h(const HFunction& f, double y, int order) {
  if (!(y >= -1.0 && y <= 1.0)) throw DomainError("y=" + fmt(y) + " outside [-1,1]");
  if (order == 0) return f(y);
  if (order == 1) return f.derivative(y);
  throw DomainError("eval_h supports order 0 or 1");
}

std::vector<ZeroRecord> find_zeros(const HFunction& f) { return f.zeros(); }

int multiplicity_sum(const std::vector<ZeroRecord>& zs) {
  int s = 0;
  for (const auto& z : zs) s += z.multiplicity;
  return s;
}

double evenness_defect(const HFunction& f) {
  double worst = 0.0;
  for (int i = 0; i < kEvenGrid; ++i) {
    const double y = static_cast<double>(i) / (kEvenGrid - 1);
    worst = std::max(worst, std::abs(f(y) - f(-y)));
  }
  return worst;
}

bool is_even(const HFunction& f) { return evenness_defect(f) <= kEvenTol; }

bool ClassReport::admissible(Kappa k) const {
  for (Kappa a : admissible_for)
    if (a == k) return true;
  return false;
}

ClassReport class_membership(const HFunction& f, Kappa k) {
  (void)k;  // the report covers both curvatures; k selects nothing extra
  ClassReport r;
  r.is_even = is_even(f);
  const Minimum g = grid_minimize(
      [&](double y) {
        const double h = f(y);
        return 4.0 * h * h - (1.0 - y * y);
      },
      -1.0, 1.0, 4096);
  r.g_min = g.value;
  r.satisfies_h2r_inequality = g.value > 0.0;
  const Minimum w = grid_minimize(
      [&](double y) { return 2.0 * std::abs(f(y)) - std::sqrt(std::max(0.0, 1.0 - y * y)); }, -1.0, 1.0, 4096);
  r.inequality_witness = w.arg;
  r.inequality_margin = w.value;
  try {
    r.zero_multiplicity_sum = multiplicity_sum(f.zeros());
  } catch (const UnresolvedZero& e) {
    r.zero_error = e.what();
  }
  if (r.is_even && r.satisfies_h2r_inequality) r.admissible_for.push_back(Kappa::Hyperbolic);
  if (r.is_even) r.admissible_for.push_back(Kappa::Spherical);
  return r;
}

}  // namespace hsurf
