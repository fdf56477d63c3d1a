#pragma once

#include <string>

#include "kawahara/spectral_field.hpp"

namespace kawahara {

struct SnapshotMeta {
  double beta = 0.0;
  double gamma = 0.0;
  int mu = 1;
  double t = 0.0;
};

// On-disk format: one JSON header line {"lambda","M","beta","gamma","mu","t",
// "realness"}, a "m,re,im" column header, then one CSV row per retained mode
// m = -M..M with 17 significant digits (doubles round-trip exactly).
void write_snapshot(const std::string& path, const SpectralField& f, const SnapshotMeta& meta);

struct Snapshot {
  SpectralField field;
  SnapshotMeta meta;
};

// Reader validates the row count and, when realness is set, the Hermitian
// symmetry of the stored coefficients (1e-9 relative) before reconstructing.
Snapshot read_snapshot(const std::string& path);

}  // namespace kawahara
