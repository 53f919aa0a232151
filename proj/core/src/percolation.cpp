#include "symbiosim/percolation.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace symbiosim {

ClusterLabels label_clusters(const SiteField& field) {
  const LatticeSpec& spec = field.spec;
  const std::int64_t n_sites = spec.site_count();
  ClusterLabels out;
  out.spec = spec;
  out.label.assign(static_cast<std::size_t>(n_sites), -1);

  if (field.open_count() == 0) throw std::runtime_error("empty field");

  std::deque<std::int64_t> queue;
  std::int32_t next_label = 0;
  for (std::int64_t start = 0; start < n_sites; ++start) {
    if (!field.is_open(start) || out.label[start] >= 0) continue;
    const std::int32_t id = next_label++;
    out.sizes.push_back(0);
    out.label[start] = id;
    queue.push_back(start);
    while (!queue.empty()) {
      const std::int64_t site = queue.front();
      queue.pop_front();
      ++out.sizes[id];
      for (int axis = 0; axis < spec.d; ++axis) {
        for (int dir : {-1, +1}) {
          const std::int64_t nb = site_neighbor(spec, site, axis, dir);
          if (nb < 0 || !field.is_open(nb) || out.label[nb] >= 0) continue;
          out.label[nb] = id;
          queue.push_back(nb);
        }
      }
    }
  }

  out.giant = 0;
  for (std::int32_t id = 1; id < next_label; ++id)
    if (out.sizes[id] > out.sizes[out.giant]) out.giant = id;
  return out;
}

CoarseGrid coarse_grain(const SiteField& field, std::int32_t n) {
  const LatticeSpec& spec = field.spec;
  if (n < 1) throw std::invalid_argument("cube half-width must be >= 1");
  const std::int32_t edge = 2 * n + 1;
  if (spec.side % edge != 0)
    throw std::invalid_argument("cube edge 2n+1 must divide the lattice side");

  CoarseGrid grid;
  grid.fine = spec;
  grid.n = n;
  grid.side = spec.side / edge;
  const LatticeSpec coarse = grid.coarse_spec();
  grid.cube_open.assign(static_cast<std::size_t>(coarse.site_count()), 1);

  // cube Z covers sites (2n+1)Z + [0, 2n]^d in row-major coordinates
  for (std::int64_t z = 0; z < coarse.site_count(); ++z) {
    const Coord cz = site_coord(coarse, z);
    Coord offset{};
    bool all_open = true;
    while (all_open) {
      Coord c{};
      for (int i = 0; i < spec.d; ++i) c[i] = cz[i] * edge + offset[i];
      if (!field.is_open(site_index(spec, c))) {
        all_open = false;
        break;
      }
      int axis = spec.d - 1;
      while (axis >= 0 && ++offset[axis] == edge) offset[axis--] = 0;
      if (axis < 0) break;
    }
    grid.cube_open[z] = all_open ? 1 : 0;
  }
  return grid;
}

namespace {

// BFS distances over open cubes; axis 0 does not wrap so a left-to-right
// path must really cross the box.
std::vector<std::int32_t> cube_distances(const CoarseGrid& grid) {
  const LatticeSpec coarse = grid.coarse_spec();
  std::vector<std::int32_t> dist(grid.cube_open.size(), -1);
  std::deque<std::int64_t> queue;
  for (std::int64_t z = 0; z < coarse.site_count(); ++z) {
    if (grid.cube_open[z] && site_coord(coarse, z)[0] == 0) {
      dist[z] = 0;
      queue.push_back(z);
    }
  }
  while (!queue.empty()) {
    const std::int64_t z = queue.front();
    queue.pop_front();
    const Coord cz = site_coord(coarse, z);
    for (int axis = 0; axis < coarse.d; ++axis) {
      for (int dir : {-1, +1}) {
        if (axis == 0 && (cz[0] + dir < 0 || cz[0] + dir >= coarse.side)) continue;
        const std::int64_t nb = site_neighbor(coarse, z, axis, dir);
        if (nb < 0 || !grid.cube_open[nb] || dist[nb] >= 0) continue;
        dist[nb] = dist[z] + 1;
        queue.push_back(nb);
      }
    }
  }
  return dist;
}

}  // namespace

OpenPath find_open_cube_path(const CoarseGrid& grid) {
  const LatticeSpec coarse = grid.coarse_spec();
  const std::vector<std::int32_t> dist = cube_distances(grid);

  // lexicographically smallest reachable cube on the far face
  std::int64_t target = -1;
  for (std::int64_t z = 0; z < coarse.site_count(); ++z) {
    if (site_coord(coarse, z)[0] != coarse.side - 1 || dist[z] < 0) continue;
    if (target < 0 || dist[z] < dist[target] || (dist[z] == dist[target] && z < target)) target = z;
  }
  if (target < 0) throw std::runtime_error("no open-cube spanning path");

  // backtrack choosing the smallest predecessor at each step
  std::vector<std::int64_t> cubes{target};
  std::int64_t cur = target;
  while (dist[cur] > 0) {
    const Coord cc = site_coord(coarse, cur);
    std::int64_t best = -1;
    for (int axis = 0; axis < coarse.d; ++axis) {
      for (int dir : {-1, +1}) {
        if (axis == 0 && (cc[0] + dir < 0 || cc[0] + dir >= coarse.side)) continue;
        const std::int64_t nb = site_neighbor(coarse, cur, axis, dir);
        if (nb < 0 || dist[nb] != dist[cur] - 1) continue;
        if (best < 0 || nb < best) best = nb;
      }
    }
    cubes.push_back(best);
    cur = best;
  }
  std::reverse(cubes.begin(), cubes.end());

  OpenPath path;
  path.n = grid.n;
  path.cube_path = cubes;
  const std::int32_t edge = 2 * grid.n + 1;
  auto center_of = [&](std::int64_t cube) {
    Coord c = site_coord(coarse, cube);
    for (int i = 0; i < grid.fine.d; ++i) c[i] = c[i] * edge + grid.n;
    return site_index(grid.fine, c);
  };

  path.sites.push_back(center_of(cubes.front()));
  for (std::size_t i = 1; i < cubes.size(); ++i) {
    // straight segment between adjacent cube centers (edge sites apart)
    const Coord a = site_coord(coarse, cubes[i - 1]);
    const Coord b = site_coord(coarse, cubes[i]);
    int axis = 0;
    int dir = 0;
    for (int ax = 0; ax < coarse.d; ++ax) {
      std::int32_t diff = b[ax] - a[ax];
      if (diff == 0) continue;
      axis = ax;
      if (diff == 1 || diff == -(coarse.side - 1)) dir = +1;
      else dir = -1;
    }
    std::int64_t site = path.sites.back();
    for (int step = 0; step < edge; ++step) {
      site = site_neighbor(grid.fine, site, axis, dir);
      path.sites.push_back(site);
    }
  }
  return path;
}

}  // namespace symbiosim
