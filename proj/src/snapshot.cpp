#include "kawahara/snapshot.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace kawahara {

namespace {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

void write_snapshot(const std::string& path, const SpectralField& f, const SnapshotMeta& meta) {
  const TorusGrid& g = f.grid();
  std::ofstream out(path);
  require(out.good(), "write_snapshot: cannot open " + path);
  nlohmann::ordered_json header;
  header["lambda"] = g.lambda;
  header["M"] = g.max_index;
  header["beta"] = meta.beta;
  header["gamma"] = meta.gamma;
  header["mu"] = meta.mu;
  header["t"] = meta.t;
  header["realness"] = f.realness();
  out << header.dump() << "\n";
  out << "m,re,im\n";
  for (int m = -g.max_index; m <= g.max_index; ++m) {
    Complex z = f.coeff(m);
    out << m << "," << fmt17(z.real()) << "," << fmt17(z.imag()) << "\n";
  }
  require(out.good(), "write_snapshot: write failed for " + path);
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "read_snapshot: cannot open " + path);
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), "read_snapshot: missing header");
  nlohmann::json header = nlohmann::json::parse(line);
  double lambda = header.at("lambda").get<double>();
  int M = header.at("M").get<int>();
  SnapshotMeta meta;
  meta.beta = header.at("beta").get<double>();
  meta.gamma = header.at("gamma").get<double>();
  meta.mu = header.at("mu").get<int>();
  meta.t = header.at("t").get<double>();
  bool realness = header.at("realness").get<bool>();

  require(static_cast<bool>(std::getline(in, line)) && line == "m,re,im",
          "read_snapshot: missing column header");
  TorusGrid g = TorusGrid::make(lambda, M);
  std::vector<Complex> c(static_cast<std::size_t>(g.coeff_count()));
  std::vector<bool> seen(c.size(), false);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string tok;
    require(static_cast<bool>(std::getline(row, tok, ',')), "read_snapshot: bad row: " + line);
    int m = std::stoi(tok);
    require(m >= -M && m <= M, "read_snapshot: index out of band: " + line);
    require(static_cast<bool>(std::getline(row, tok, ',')), "read_snapshot: bad row: " + line);
    double re = std::stod(tok);
    require(static_cast<bool>(std::getline(row, tok, ',')), "read_snapshot: bad row: " + line);
    double im = std::stod(tok);
    c[static_cast<std::size_t>(m + M)] = Complex{re, im};
    seen[static_cast<std::size_t>(m + M)] = true;
  }
  for (bool s : seen) require(s, "read_snapshot: missing mode rows");
  // from_coeffs re-validates Hermitian symmetry when realness is set.
  Snapshot snap{SpectralField::from_coeffs(g, std::move(c), realness), meta};
  return snap;
}

}  // namespace kawahara
