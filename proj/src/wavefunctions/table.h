// Tabulated wave-function values and their CSV export.  A table holds
// one photon number and one evaluation method; rows are written in entry
// order with %.17g formatting, so identical inputs produce byte-identical
// files.

#pragma once

#include <string>
#include <vector>

#include "fock/vector.h"
#include "wavefunctions/tuples.h"

namespace wf {

struct WaveFunctionEntry {
  std::vector<std::array<double, 3>> k;
  fock::cplx value{0.0, 0.0};
};

struct WaveFunctionTable {
  int n = 0;
  std::string method;  ///< "direct", "froehlich", or "novel"
  bool symmetrized = false;
  std::vector<WaveFunctionEntry> entries;
};

/// One row per entry: method, n, symmetrized flag, parameter hash, the
/// 3n momentum components space-separated in one field, and the value's
/// real and imaginary parts.  Throws std::runtime_error if the file
/// cannot be written.
void write_tables_csv(const std::vector<WaveFunctionTable>& tables,
                      const std::string& params_hash, const std::string& path);

}  // namespace wf
