#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>

#include <Eigen/Dense>

namespace effham {

using Complex = std::complex<double>;
using VectorXc = Eigen::VectorXcd;
using MatrixXc = Eigen::MatrixXcd;

// Normalized amplitude vector over the 2^L computational basis states.
// Convention: site j maps to bit j of the basis index; a cleared bit is a
// down spin, so index 0 is |down...down> and Z_j has eigenvalue +1 when
// bit j is set.
struct StateVector {
  int L = 0;
  VectorXc amps;

  static StateVector zero(int L) {
    StateVector s;
    s.L = L;
    s.amps = VectorXc::Zero(1L << L);
    return s;
  }
  std::int64_t dim() const { return amps.size(); }
  double norm() const { return amps.norm(); }
  void normalize() { amps /= amps.norm(); }
};

// Snapshot format: header (L: u32, dim: u64) then dim interleaved
// little-endian f64 (re, im) pairs.
void save_state(std::ostream& os, const StateVector& s);
StateVector load_state(std::istream& is);
void save_state_file(const std::string& path, const StateVector& s);
StateVector load_state_file(const std::string& path);

}  // namespace effham
