#ifndef SYMBIOSIM_PERCOLATION_HPP
#define SYMBIOSIM_PERCOLATION_HPP

#include <cstdint>
#include <vector>

#include "symbiosim/lattice.hpp"

namespace symbiosim {

// Connected components of the open set under the nearest-neighbor relation.
struct ClusterLabels {
  LatticeSpec spec;
  std::vector<std::int32_t> label;  // per site; -1 for closed sites
  std::vector<std::int64_t> sizes;  // component id -> site count
  std::int32_t giant = -1;          // largest component, ties to smallest id
};

// BFS labeling in site-index order. Throws on an all-closed field.
ClusterLabels label_clusters(const SiteField& field);

// Tiling by cubes B_Z of edge 2n+1; a coarse site is open iff its whole cube is.
struct CoarseGrid {
  LatticeSpec fine;                     // underlying lattice
  std::int32_t n = 1;                   // cube half-width
  std::int32_t side = 0;                // coarse side = L/(2n+1)
  std::vector<std::uint8_t> cube_open;  // one flag per coarse site

  LatticeSpec coarse_spec() const {
    LatticeSpec s = fine;
    s.side = side;
    return s;
  }
};

// Requires (2n+1) | L.
CoarseGrid coarse_grain(const SiteField& field, std::int32_t n);

// Self-avoiding site path through centers of adjacent open cubes, spanning the
// torus along axis 0. Every site within L-inf distance n of the path is open.
struct OpenPath {
  std::vector<std::int64_t> sites;      // fine-lattice site indices, consecutive adjacent
  std::vector<std::int64_t> cube_path;  // coarse-lattice cube indices along the path
  std::int32_t n = 0;                   // half-width inherited from the grid
};

// Shortest spanning cube path by BFS (axis 0 treated as non-periodic so the
// path actually crosses; lexicographic tie-break makes the choice canonical),
// expanded to the site path through cube centers.
// Throws "no open-cube spanning path" when none exists.
OpenPath find_open_cube_path(const CoarseGrid& grid);

}  // namespace symbiosim

#endif
