#include "wavemc/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace wavemc {

void write_field_binary(const std::string& path, const Lattice& lat,
                        const std::vector<std::pair<std::string, const RealField*>>& fields) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  std::ostringstream head;
  char hbuf[32];
  std::snprintf(hbuf, sizeof hbuf, "%.17g", lat.h());
  head << "wavemc-field v1 n=" << lat.n() << " h=" << hbuf << " fields=";
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) head << ',';
    head << fields[i].first;
  }
  head << '\n';
  out << head.str();
  for (const auto& [name, f] : fields) {
    if (f->size() != lat.size()) throw std::runtime_error("field size mismatch");
    out.write(reinterpret_cast<const char*>(f->data()),
              static_cast<std::streamsize>(sizeof(double) * f->size()));
  }
}

FieldFile read_field_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::string header;
  std::getline(in, header);
  FieldFile file;
  std::istringstream hs(header);
  std::string tag, ver, tok;
  hs >> tag >> ver;
  if (tag != "wavemc-field" || ver != "v1")
    throw std::runtime_error("not a wavemc field file: " + path);
  while (hs >> tok) {
    if (tok.rfind("n=", 0) == 0) file.n = std::stoi(tok.substr(2));
    if (tok.rfind("h=", 0) == 0) file.h = std::stod(tok.substr(2));
    if (tok.rfind("fields=", 0) == 0) {
      std::istringstream fs(tok.substr(7));
      std::string name;
      while (std::getline(fs, name, ',')) file.names.push_back(name);
    }
  }
  const Eigen::Index size = static_cast<Eigen::Index>(file.n) * file.n * file.n;
  for (std::size_t i = 0; i < file.names.size(); ++i) {
    RealField f(size);
    in.read(reinterpret_cast<char*>(f.data()),
            static_cast<std::streamsize>(sizeof(double) * size));
    if (!in) throw std::runtime_error("truncated field file: " + path);
    file.fields.push_back(std::move(f));
  }
  return file;
}

CsvWriter::CsvWriter(const std::string& path) {
  out_ = std::fopen(path.c_str(), "wb");
  if (!out_) throw std::runtime_error("cannot write " + path);
}
CsvWriter::~CsvWriter() {
  if (out_) std::fclose(static_cast<std::FILE*>(out_));
}
void CsvWriter::header(const std::vector<std::string>& cols) { row(cols); }
void CsvWriter::row(const std::vector<std::string>& cells) {
  auto* f = static_cast<std::FILE*>(out_);
  for (std::size_t i = 0; i < cells.size(); ++i)
    std::fprintf(f, "%s%s", i ? "," : "", cells[i].c_str());
  std::fputc('\n', f);
}
std::string CsvWriter::num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void save_quadrature_table(const std::string& path, const SphereQuadrature& quad) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  char buf[140];
  for (std::size_t q = 0; q < quad.size(); ++q) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g %.17g\n", quad.nodes[q][0],
                  quad.nodes[q][1], quad.nodes[q][2], quad.weights[q]);
    out << buf;
  }
}

SphereQuadrature load_quadrature_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  SphereQuadrature quad;
  quad.order = 0;
  double x, y, z, w;
  while (in >> x >> y >> z >> w) {
    quad.nodes.push_back(Vec3(x, y, z));
    quad.weights.push_back(w);
  }
  if (quad.nodes.empty()) throw std::runtime_error("empty quadrature table: " + path);
  return quad;
}

}  // namespace wavemc
