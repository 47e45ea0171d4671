#include "verification/reports.h"

#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>

namespace verif {

namespace {

void fnv_update(std::uint64_t& h, const char* data, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) {
    h ^= static_cast<unsigned char>(data[i]);
    h *= 1099511628211ull;
  }
}

void fnv_text(std::uint64_t& h, const char* fmt, double v) {
  char buf[64];
  const int n = std::snprintf(buf, sizeof buf, fmt, v);
  fnv_update(h, buf, static_cast<std::size_t>(n));
}

}  // namespace

std::string model_fingerprint(const nelson::NelsonModel& model) {
  std::uint64_t h = 1469598103934665603ull;
  const auto& p = model.params();
  fnv_text(h, "P0=%.17g;", model.effective_p()[0]);
  fnv_text(h, "P1=%.17g;", model.effective_p()[1]);
  fnv_text(h, "P2=%.17g;", model.effective_p()[2]);
  fnv_text(h, "sigma=%.17g;", p.sigma);
  fnv_text(h, "kappa=%.17g;", p.kappa);
  fnv_text(h, "lambda=%.17g;", p.lambda);
  fnv_text(h, "alpha=%.17g;", p.alpha_bar);
  fnv_text(h, "eps0=%.17g;", p.eps0);
  fnv_text(h, "nmax=%g;", static_cast<double>(model.basis().n_max()));
  fnv_text(h, "quad=%g;", model.quadratic_enabled() ? 1.0 : 0.0);
  for (const auto& m : model.grid().modes) {
    fnv_text(h, "kx=%.17g;", m.k[0]);
    fnv_text(h, "ky=%.17g;", m.k[1]);
    fnv_text(h, "kz=%.17g;", m.k[2]);
    fnv_text(h, "w=%.17g;", m.w);
  }
  char out[17];
  std::snprintf(out, sizeof out, "%016llx",
                static_cast<unsigned long long>(h));
  return std::string(out);
}

IdentityReport make_report(std::string id, double raw, double projected,
                           double tolerance,
                           const nelson::NelsonModel& model) {
  IdentityReport r;
  r.id = std::move(id);
  r.raw = raw;
  r.projected = projected;
  r.tolerance = tolerance;
  r.pass = projected <= tolerance;
  r.fingerprint = model_fingerprint(model);
  return r;
}

bool all_pass(const std::vector<IdentityReport>& reports) {
  for (const auto& r : reports)
    if (!r.pass) return false;
  return true;
}

void write_reports_csv(std::ostream& out,
                       const std::vector<IdentityReport>& reports) {
  out << "id,raw,projected,tolerance,pass,fingerprint\n";
  char buf[128];
  for (const auto& r : reports) {
    std::snprintf(buf, sizeof buf, ",%.17g,%.17g,%.17g,%d,", r.raw,
                  r.projected, r.tolerance, r.pass ? 1 : 0);
    out << r.id << buf << r.fingerprint << "\n";
  }
}

}  // namespace verif
