#include "wavefunctions/table.h"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace wf {

namespace {

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

void write_tables_csv(const std::vector<WaveFunctionTable>& tables,
                      const std::string& params_hash, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "method,n,symmetrized,params_hash,k,value_re,value_im\n";
  for (const auto& table : tables) {
    for (const auto& entry : table.entries) {
      out << table.method << ',' << table.n << ','
          << (table.symmetrized ? 1 : 0) << ',' << params_hash << ',';
      bool first = true;
      for (const auto& k : entry.k) {
        for (double c : k) {
          if (!first) out << ' ';
          out << fmt17(c);
          first = false;
        }
      }
      out << ',' << fmt17(entry.value.real()) << ',' << fmt17(entry.value.imag())
          << '\n';
    }
  }
  if (!out.good()) throw std::runtime_error("write failed: " + path);
}

}  // namespace wf
