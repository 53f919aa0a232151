#ifndef SYMBIOSIM_ORIENTED_HPP
#define SYMBIOSIM_ORIENTED_HPP

#include <cstdint>
#include <vector>

#include "symbiosim/contact.hpp"
#include "symbiosim/rng.hpp"

namespace symbiosim {

// Oriented site percolation on G = {(z, m) : z + m even}, z in [0, width),
// m in [0, height). Row 0 is seeded fully wet; a site is wet iff it is open
// and one of its parents (z -+ 1, m - 1) is wet.
struct OrientedLattice {
  std::int32_t width = 0;
  std::int32_t height = 0;
  std::vector<std::uint8_t> wet;  // m * width + z; only z + m even is populated

  bool in_lattice(std::int32_t z, std::int32_t m) const {
    return z >= 0 && z < width && m >= 0 && m < height && ((z + m) & 1) == 0;
  }
  bool is_wet(std::int32_t z, std::int32_t m) const {
    return in_lattice(z, m) && wet[static_cast<std::size_t>(m) * width + z] != 0;
  }
  double wet_density(std::int32_t m) const;
};

// Site openness is drawn in a fixed site order, so sharing a stream couples
// realizations monotonically across q.
OrientedLattice run_oriented(std::int32_t width, std::int32_t height, double q, RngStream& rng);

// Good sites of a particle-system run along the spanning path: (z, m) is good
// when the host at path position z holds at least `threshold` symbionts at
// time m * block.
struct GoodSiteField {
  std::int32_t width = 0;
  std::int32_t height = 0;
  std::vector<std::uint8_t> good;

  bool is_good(std::int32_t z, std::int32_t m) const {
    return z >= 0 && z < width && m >= 0 && m < height && ((z + m) & 1) == 0 &&
           good[static_cast<std::size_t>(m) * width + z] != 0;
  }
  double good_density(std::int32_t m) const;
};

// Throws when the samples are missing levels.
GoodSiteField extract_good_sites(const OccupancySamples& samples, std::int32_t threshold);

struct ChildBound {
  std::int64_t parents = 0;       // good sites with both children in range
  std::int64_t both_good = 0;     // both children good
  double estimate = 0.0;          // conditional frequency
  double wilson_low = 0.0;        // 95% Wilson lower bound
};

// P(both children good | (z,m) good), pooled over levels m < m_cap.
ChildBound child_bound(const GoodSiteField& field, std::int32_t m_cap);

double wilson_lower_bound(std::int64_t successes, std::int64_t trials, double z = 1.959963985);

}  // namespace symbiosim

#endif
