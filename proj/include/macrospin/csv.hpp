#pragma once

// CSV writers. Every number is printed with 17 significant digits so that a
// round trip through text reproduces the double exactly.

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "dynamics.hpp"
#include "leggett_garg.hpp"
#include "qfunction.hpp"
#include "slots.hpp"

namespace macrospin::csv {

inline std::string number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Writer {
 public:
  explicit Writer(std::ostream& os) : os_(os) {}

  Writer& header(std::initializer_list<const char*> names) {
    bool first = true;
    for (const char* n : names) {
      if (!first) os_ << ',';
      os_ << n;
      first = false;
    }
    os_ << '\n';
    return *this;
  }

  Writer& cell(double v) { return raw(number(v)); }
  Writer& cell(int v) { return raw(std::to_string(v)); }
  Writer& end() {
    os_ << '\n';
    fresh_ = true;
    return *this;
  }

 private:
  Writer& raw(const std::string& s) {
    if (!fresh_) os_ << ',';
    os_ << s;
    fresh_ = false;
    return *this;
  }

  std::ostream& os_;
  bool fresh_ = true;
};

/// theta,phi,weight,value per grid node (Q or P maps).
inline void write_sphere_function(std::ostream& os, const SphereFunction& f) {
  Writer w(os);
  w.header({"theta", "phi", "weight", "value"});
  const SphereGrid& g = f.grid();
  for (int r = 0; r < g.n_theta(); ++r)
    for (int c = 0; c < g.n_phi(); ++c) {
      const std::size_t n = g.index(r, c);
      w.cell(g.theta(r)).cell(g.phi(c)).cell(g.weight(n)).cell(f.values()[n]).end();
    }
}

/// mbar,m_lo,m_hi,p_exact,p_approx,abs_err per slot.
inline void write_slots(std::ostream& os, const SlotDistribution& exact, const SlotDistribution& approx) {
  const SlotPartition& part = exact.partition();
  Writer w(os);
  w.header({"mbar", "m_lo", "m_hi", "p_exact", "p_approx", "abs_err"});
  for (int s = 0; s < part.size(); ++s)
    w.cell(part.midpoint(s)).cell(part.m_lo(s)).cell(part.m_hi(s)).cell(exact[s]).cell(approx[s])
        .cell(std::abs(exact[s] - approx[s])).end();
}

/// t, quantum direction and length, classical direction, angle error; slot column in selective mode.
inline void write_trajectory(std::ostream& os, const TrajectoryRecord& rec) {
  Writer w(os);
  if (rec.slot_outcomes)
    w.header({"t", "qx", "qy", "qz", "qlen", "cx", "cy", "cz", "angle_err_rad", "slot"});
  else
    w.header({"t", "qx", "qy", "qz", "qlen", "cx", "cy", "cz", "angle_err_rad"});
  for (std::size_t i = 0; i < rec.times.size(); ++i) {
    const Vec3& q = rec.quantum_dir[i];
    const Vec3& c = rec.classical_dir[i];
    w.cell(rec.times[i]).cell(q.x()).cell(q.y()).cell(q.z()).cell(rec.quantum_len[i]);
    w.cell(c.x()).cell(c.y()).cell(c.z()).cell(rec.angle_error(i));
    if (rec.slot_outcomes) w.cell((*rec.slot_outcomes)[i]);
    w.end();
  }
}

/// omega_tau,delta_m,c12,c23,c13,K per sweep point.
inline void write_lg(std::ostream& os, const std::vector<LgResult>& rows, int delta_m) {
  Writer w(os);
  w.header({"omega_tau", "delta_m", "c12", "c23", "c13", "K"});
  for (const LgResult& r : rows) w.cell(r.omega_tau).cell(delta_m).cell(r.c12).cell(r.c23).cell(r.c13).cell(r.K).end();
}

}  // namespace macrospin::csv
