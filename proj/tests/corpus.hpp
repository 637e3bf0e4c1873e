#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

// Expressions in the H(y) grammar paired with the same function written in plain C++.
struct CorpusEntry {
  std::string text;
  std::function<double(double)> f;
};

inline const std::vector<CorpusEntry>& expression_corpus() {
  using std::cos;
  using std::cosh;
  using std::exp;
  using std::sin;
  using std::sinh;
  using std::sqrt;
  using std::tan;
  using std::tanh;
  static const std::vector<CorpusEntry> c{
      {"1", [](double) { return 1.0; }},
      {"0.4", [](double) { return 0.4; }},
      {"y", [](double y) { return y; }},
      {"1+y^2", [](double y) { return 1 + y * y; }},
      {"y^2-0.25", [](double y) { return y * y - 0.25; }},
      {"y+0.5", [](double y) { return y + 0.5; }},
      {"2*cos(y)", [](double y) { return 2 * cos(y); }},
      {"2*cos(y)+y^4", [](double y) { return 2 * cos(y) + std::pow(y, 4); }},
      {"cosh(y)", [](double y) { return cosh(y); }},
      {"exp(y^2)", [](double y) { return exp(y * y); }},
      {"exp(-y)", [](double y) { return exp(-y); }},
      {"sin(y)*y", [](double y) { return sin(y) * y; }},
      {"1/(2+y^2)", [](double y) { return 1 / (2 + y * y); }},
      {"sqrt(4-y^2)", [](double y) { return sqrt(4 - y * y); }},
      {"tan(y)", [](double y) { return tan(y); }},
      {"tanh(3*y)", [](double y) { return tanh(3 * y); }},
      {"sinh(y)^3", [](double y) { return std::pow(sinh(y), 3); }},
      {"(1+y)^5", [](double y) { return std::pow(1 + y, 5); }},
      {"3*y^3-2*y+1", [](double y) { return 3 * y * y * y - 2 * y + 1; }},
      {"1.5e-1+y^2", [](double y) { return 0.15 + y * y; }},
      {"2.5E0*y", [](double y) { return 2.5 * y; }},
      {"-y+1", [](double y) { return -y + 1; }},
      {"-(y^2)+2", [](double y) { return -(y * y) + 2; }},
      {"1-y*y/3", [](double y) { return 1 - y * y / 3; }},
      {"y/2/2", [](double y) { return y / 4; }},
      {"1-2-3", [](double) { return -4.0; }},
      {"cos(sin(y))", [](double y) { return cos(sin(y)); }},
      {"exp(cos(2*y))/3", [](double y) { return exp(cos(2 * y)) / 3; }},
      {"sqrt(1+y^2)*cosh(y/2)", [](double y) { return sqrt(1 + y * y) * cosh(y / 2); }},
      {"(y^2+1)/(y^2+2)", [](double y) { return (y * y + 1) / (y * y + 2); }},
      {"sin(y)^2+cos(y)^2", [](double) { return 1.0; }},
      {"0.5 + 0.25*y^2 + 0.125*y^4", [](double y) { return 0.5 + 0.25 * y * y + 0.125 * std::pow(y, 4); }},
      {"(1+y^2)^2", [](double y) { return std::pow(1 + y * y, 2); }},
      {"y^10", [](double y) { return std::pow(y, 10); }},
      {"1+tanh(y)^2", [](double y) { return 1 + std::pow(tanh(y), 2); }},
  };
  return c;
}
