#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hsurf/delaunay.hpp"

namespace hsurf::io {

// RFC 4180: header row, CRLF line ends, quoting only where needed.
class CsvWriter {
public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}
  void row(const std::vector<std::string>& fields);

private:
  std::ostream& os_;
};

std::vector<std::vector<std::string>> read_csv(std::istream& is);

std::string csv_number(double v);

// Columns arc_id, eps, s, x, y, z.
void write_profile_csv(std::ostream& os, const SurfaceProfile& p);
SurfaceProfile read_profile_csv(std::istream& is);

struct PolylineRow {
  int orbit_id;
  double s, x, y;
};

// Columns orbit_id, s, x, y.
void write_portrait_csv(std::ostream& os, const std::vector<PolylineRow>& rows);

}  // namespace hsurf::io
