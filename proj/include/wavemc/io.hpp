#pragma once

#include "wavemc/lattice.hpp"
#include "wavemc/sphere.hpp"

#include <string>
#include <vector>

namespace wavemc {

// Flat binary field file: one text header line
//   wavemc-field v1 n=<n> h=<h> fields=<name,name,...>
// followed by the named fields as little-endian float64 in C order.
void write_field_binary(const std::string& path, const Lattice& lat,
                        const std::vector<std::pair<std::string, const RealField*>>& fields);

struct FieldFile {
  int n = 0;
  double h = 0.0;
  std::vector<std::string> names;
  std::vector<RealField> fields;
};
FieldFile read_field_binary(const std::string& path);

// Small CSV helper with locale-independent %.17g floats (reruns must be
// byte-identical).
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);
  ~CsvWriter();
  void header(const std::vector<std::string>& cols);
  void row(const std::vector<std::string>& cells);
  static std::string num(double v);

 private:
  void* out_;
};

// Quadrature tables: one "x y z weight" line per node.
void save_quadrature_table(const std::string& path, const SphereQuadrature& quad);
SphereQuadrature load_quadrature_table(const std::string& path);

}  // namespace wavemc
