#include "hsurf/io/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>

#include "hsurf/errors.hpp"

namespace hsurf::io {

std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) os_ << ',';
    const std::string& f = fields[i];
    if (f.find_first_of(",\"\r\n") == std::string::npos) {
      os_ << f;
      continue;
    }
    os_ << '"';
    for (char c : f) {
      if (c == '"') os_ << '"';
      os_ << c;
    }
    os_ << '"';
  }
  os_ << "\r\n";
}

std::vector<std::vector<std::string>> read_csv(std::istream& is) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false, any = false;
  char c;
  while (is.get(c)) {
    any = true;
    if (quoted) {
      if (c == '"') {
        if (is.peek() == '"') {
          is.get(c);
          field += '"';
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
    } else if (c == '\r' || c == '\n') {
      if (c == '\r' && is.peek() == '\n') is.get(c);
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
      any = false;
    } else {
      field += c;
    }
  }
  if (quoted) throw ParseError("unterminated quoted CSV field", 0);
  if (any) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_profile_csv(std::ostream& os, const SurfaceProfile& p) {
  CsvWriter w(os);
  w.row({"arc_id", "eps", "s", "x", "y", "z"});
  for (std::size_t a = 0; a < p.arcs.size(); ++a) {
    for (const ProfileSample& s : p.arcs[a].samples)
      w.row({std::to_string(a), std::to_string(value(s.eps)), csv_number(s.s), csv_number(s.x), csv_number(s.y),
             csv_number(s.z)});
  }
}

SurfaceProfile read_profile_csv(std::istream& is) {
  const auto rows = read_csv(is);
  if (rows.empty() || rows[0] != std::vector<std::string>{"arc_id", "eps", "s", "x", "y", "z"})
    throw ParseError("profile CSV header must be arc_id,eps,s,x,y,z", 0);
  SurfaceProfile p;
  long current = -1;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.size() != 6) throw ParseError("profile CSV row " + std::to_string(i) + " has " + std::to_string(r.size()) + " fields", i);
    const long id = std::strtol(r[0].c_str(), nullptr, 10);
    const Eps eps = eps_from_int(static_cast<int>(std::strtol(r[1].c_str(), nullptr, 10)));
    if (id != current) {
      p.arcs.push_back({eps, {}, {}});
      current = id;
    }
    ProfileSample s;
    s.eps = eps;
    s.s = std::strtod(r[2].c_str(), nullptr);
    s.x = std::strtod(r[3].c_str(), nullptr);
    s.y = std::strtod(r[4].c_str(), nullptr);
    s.z = std::strtod(r[5].c_str(), nullptr);
    p.arcs.back().samples.push_back(s);
  }
  return p;
}

void write_portrait_csv(std::ostream& os, const std::vector<PolylineRow>& rows) {
  CsvWriter w(os);
  w.row({"orbit_id", "s", "x", "y"});
  for (const PolylineRow& r : rows) w.row({std::to_string(r.orbit_id), csv_number(r.s), csv_number(r.x), csv_number(r.y)});
}

}  // namespace hsurf::io
