#include "hsurf/io/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace hsurf::io {

namespace {

std::string g12(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string scalar(const Tree& v) {
  switch (v.type()) {
    case Tree::value_t::null: return "none";
    case Tree::value_t::boolean: return v.get<bool>() ? "true" : "false";
    case Tree::value_t::number_integer: return std::to_string(v.get<long long>());
    case Tree::value_t::number_unsigned: return std::to_string(v.get<unsigned long long>());
    case Tree::value_t::number_float: return g12(v.get<double>());
    case Tree::value_t::string: return v.get<std::string>();
    default: return v.dump();
  }
}

bool is_leaf(const Tree& v) { return !v.is_structured() || v.empty(); }

std::string leaf(const Tree& v) {
  if (v.is_array() && v.empty()) return "[]";
  if (v.is_object() && v.empty()) return "{}";
  return scalar(v);
}

void render(const Tree& t, int indent, std::string& out);

void render_item(const Tree& v, int indent, std::string& out) {
  const std::string pad(indent, ' ');
  if (is_leaf(v)) {
    out += pad + "- " + leaf(v) + "\n";
    return;
  }
  std::string inner;
  render(v, indent + 2, inner);
  // replace the first line's indentation with the list marker
  out += pad + "- " + inner.substr(indent + 2);
}

void render(const Tree& t, int indent, std::string& out) {
  const std::string pad(indent, ' ');
  if (t.is_array()) {
    for (const Tree& v : t) render_item(v, indent, out);
    return;
  }
  for (auto it = t.begin(); it != t.end(); ++it) {
    if (is_leaf(it.value())) {
      out += pad + it.key() + ": " + leaf(it.value()) + "\n";
    } else {
      out += pad + it.key() + ":\n";
      render(it.value(), indent + 2, out);
    }
  }
}

}  // namespace

double num(double v) {
  if (!std::isfinite(v)) return v;
  return std::strtod(g12(v).c_str(), nullptr);
}

std::string render_text(const Tree& t) {
  std::string out;
  render(t, 0, out);
  return out;
}

std::string render_json(const Tree& t) { return t.dump(2) + "\n"; }

}  // namespace hsurf::io
