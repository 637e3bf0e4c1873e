#pragma once

#include <json.hpp>
#include <string>

namespace hsurf::io {

using Tree = nlohmann::ordered_json;

// Rounds to the 12 significant digits used by every emitted number.
double num(double v);

// "key: value" lines, two-space indentation per level, list items as "- ".
std::string render_text(const Tree& t);
std::string render_json(const Tree& t);

}  // namespace hsurf::io
