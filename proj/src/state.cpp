#include "effham/state.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace effham {

static_assert(std::endian::native == std::endian::little,
              "snapshot io assumes a little-endian host");

void save_state(std::ostream& os, const StateVector& s) {
  std::uint32_t L = std::uint32_t(s.L);
  std::uint64_t dim = std::uint64_t(s.dim());
  os.write(reinterpret_cast<const char*>(&L), sizeof L);
  os.write(reinterpret_cast<const char*>(&dim), sizeof dim);
  os.write(reinterpret_cast<const char*>(s.amps.data()),
           std::streamsize(dim * 2 * sizeof(double)));
  if (!os) throw std::runtime_error("state snapshot: write failed");
}

StateVector load_state(std::istream& is) {
  std::uint32_t L = 0;
  std::uint64_t dim = 0;
  is.read(reinterpret_cast<char*>(&L), sizeof L);
  is.read(reinterpret_cast<char*>(&dim), sizeof dim);
  if (!is || L > 30 || dim != (std::uint64_t(1) << L))
    throw std::runtime_error("state snapshot: bad header");
  StateVector s;
  s.L = int(L);
  s.amps.resize(Eigen::Index(dim));
  is.read(reinterpret_cast<char*>(s.amps.data()),
          std::streamsize(dim * 2 * sizeof(double)));
  if (!is) throw std::runtime_error("state snapshot: truncated data");
  return s;
}

void save_state_file(const std::string& path, const StateVector& s) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  save_state(os, s);
}

StateVector load_state_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open: " + path);
  return load_state(is);
}

}  // namespace effham
