#ifndef SYMBIOSIM_LATTICE_HPP
#define SYMBIOSIM_LATTICE_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "symbiosim/rng.hpp"

namespace symbiosim {

inline constexpr int kMaxDim = 4;

using Coord = std::array<std::int32_t, kMaxDim>;

// Finite d-dimensional box/torus of side L with per-site open probability p.
struct LatticeSpec {
  int d = 2;
  std::int32_t side = 2;
  bool torus = true;
  double p = 1.0;
  std::uint64_t seed = 0;

  std::int64_t site_count() const {
    std::int64_t n = 1;
    for (int i = 0; i < d; ++i) n *= side;
    return n;
  }
  void validate() const;  // throws std::invalid_argument
};

// Row-major site indexing; axis 0 is the slowest ("e1" of the spanning path).
inline std::int64_t site_index(const LatticeSpec& spec, const Coord& c) {
  std::int64_t idx = 0;
  for (int i = 0; i < spec.d; ++i) idx = idx * spec.side + c[i];
  return idx;
}

inline Coord site_coord(const LatticeSpec& spec, std::int64_t idx) {
  Coord c{};
  for (int i = spec.d - 1; i >= 0; --i) {
    c[i] = static_cast<std::int32_t>(idx % spec.side);
    idx /= spec.side;
  }
  return c;
}

// Neighbor along `axis` in direction `dir` (+1/-1); -1 when off a non-torus edge.
std::int64_t site_neighbor(const LatticeSpec& spec, std::int64_t idx, int axis, int dir);

// Torus L-infinity distance between two sites (shortest wraps per axis).
std::int32_t torus_linf(const LatticeSpec& spec, std::int64_t a, std::int64_t b);

// One realization of the site percolation field.
struct SiteField {
  LatticeSpec spec;
  std::vector<std::uint8_t> open;  // one flag per site

  bool is_open(std::int64_t idx) const { return open[static_cast<std::size_t>(idx)] != 0; }
  std::int64_t open_count() const;
};

SiteField sample_sites(const LatticeSpec& spec);

}  // namespace symbiosim

#endif
