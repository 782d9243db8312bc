#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "liouville/disk_ops.hpp"

namespace liouville {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void write_field(const DiskField& f, const std::string& path_base) {
  const auto& g = f.grid;
  {
    std::ofstream meta(path_base + ".meta");
    if (!meta) throw std::runtime_error("write_field: cannot open " + path_base + ".meta");
    meta << "n_r=" << g->n_r() << "\n"
         << "n_theta=" << g->n_theta() << "\n"
         << "cluster=" << fmt(g->cluster()) << "\n";
  }
  std::ofstream csv(path_base + ".csv");
  if (!csv) throw std::runtime_error("write_field: cannot open " + path_base + ".csv");
  csv << "r,theta,value\n";
  for (int j = 0; j < g->n_r(); ++j)
    for (int i = 0; i < g->n_theta(); ++i)
      csv << fmt(g->radii()(j)) << ',' << fmt(g->theta(i)) << ',' << fmt(f.values(j, i))
          << '\n';
}

DiskField read_field(const std::string& path_base) {
  int n_r = 0, n_theta = 0;
  double cluster = 1.0;
  {
    std::ifstream meta(path_base + ".meta");
    if (!meta) throw std::runtime_error("read_field: cannot open " + path_base + ".meta");
    std::string line;
    while (std::getline(meta, line)) {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = line.substr(0, eq);
      const std::string val = line.substr(eq + 1);
      if (key == "n_r") n_r = std::stoi(val);
      else if (key == "n_theta") n_theta = std::stoi(val);
      else if (key == "cluster") cluster = std::stod(val);
      else throw std::runtime_error("read_field: unknown meta key " + key);
    }
  }
  DiskField f(make_grid(n_r, n_theta, cluster));
  std::ifstream csv(path_base + ".csv");
  if (!csv) throw std::runtime_error("read_field: cannot open " + path_base + ".csv");
  std::string line;
  std::getline(csv, line);  // header
  for (int j = 0; j < n_r; ++j) {
    for (int i = 0; i < n_theta; ++i) {
      if (!std::getline(csv, line))
        throw std::runtime_error("read_field: truncated file " + path_base + ".csv");
      std::istringstream ss(line);
      std::string tok;
      std::getline(ss, tok, ',');
      std::getline(ss, tok, ',');
      std::getline(ss, tok, ',');
      f.values(j, i) = std::stod(tok);
    }
  }
  return f;
}

}  // namespace liouville
