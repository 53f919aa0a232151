#include "symbiosim/lattice.hpp"

#include <cstdlib>
#include <stdexcept>

namespace symbiosim {

void LatticeSpec::validate() const {
  if (d < 1 || d > kMaxDim) throw std::invalid_argument("lattice dimension must be in 1..4");
  if (side < 2) throw std::invalid_argument("lattice side must be >= 2");
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("open probability must be in [0,1]");
}

std::int64_t site_neighbor(const LatticeSpec& spec, std::int64_t idx, int axis, int dir) {
  Coord c = site_coord(spec, idx);
  std::int32_t v = c[axis] + dir;
  if (v < 0 || v >= spec.side) {
    if (!spec.torus) return -1;
    v = (v + spec.side) % spec.side;
  }
  c[axis] = v;
  return site_index(spec, c);
}

std::int32_t torus_linf(const LatticeSpec& spec, std::int64_t a, std::int64_t b) {
  const Coord ca = site_coord(spec, a);
  const Coord cb = site_coord(spec, b);
  std::int32_t dmax = 0;
  for (int i = 0; i < spec.d; ++i) {
    std::int32_t diff = std::abs(ca[i] - cb[i]);
    if (spec.torus) diff = std::min(diff, spec.side - diff);
    dmax = std::max(dmax, diff);
  }
  return dmax;
}

SiteField sample_sites(const LatticeSpec& spec) {
  spec.validate();
  SiteField field{spec, std::vector<std::uint8_t>(static_cast<std::size_t>(spec.site_count()))};
  RngStream rng(spec.seed, "percolation", 0);
  for (auto& s : field.open) s = rng.bernoulli(spec.p) ? 1 : 0;
  return field;
}

std::int64_t SiteField::open_count() const {
  std::int64_t n = 0;
  for (auto s : open) n += s;
  return n;
}

}  // namespace symbiosim
