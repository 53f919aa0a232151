#include <doctest.h>

#include <cmath>
#include <set>

#include "symbiosim/percolation.hpp"
#include "oracles.hpp"

using namespace symbiosim;

namespace {

SiteField field_from_sites(const LatticeSpec& spec, const std::vector<Coord>& sites) {
  SiteField f{spec, std::vector<std::uint8_t>(static_cast<std::size_t>(spec.site_count()), 0)};
  for (const Coord& c : sites) f.open[site_index(spec, c)] = 1;
  return f;
}

}  // namespace

TEST_CASE("degenerate probabilities fill or empty the field") {
  LatticeSpec all{2, 8, true, 1.0, 3};
  CHECK(sample_sites(all).open_count() == 64);
  LatticeSpec none{2, 8, true, 0.0, 3};
  CHECK(sample_sites(none).open_count() == 0);
}

TEST_CASE("open fraction concentrates around p") {
  LatticeSpec spec{2, 80, true, 0.6, 12345};
  const SiteField f = sample_sites(spec);
  const double frac = static_cast<double>(f.open_count()) / 6400.0;
  const double sigma = std::sqrt(0.6 * 0.4 / 6400.0);
  CHECK(std::abs(frac - 0.6) < 4.0 * sigma);
}

TEST_CASE("identical spec and seed give bit-identical fields") {
  LatticeSpec spec{3, 12, true, 0.35, 99};
  CHECK(sample_sites(spec).open == sample_sites(spec).open);
  LatticeSpec other = spec;
  other.seed = 100;
  CHECK(sample_sites(other).open != sample_sites(spec).open);
}

TEST_CASE("labeling the all-open torus yields one full cluster") {
  LatticeSpec spec{2, 6, true, 1.0, 1};
  const ClusterLabels labels = label_clusters(sample_sites(spec));
  REQUIRE(labels.sizes.size() == 1);
  CHECK(labels.sizes[0] == 36);
  CHECK(labels.giant == 0);
}

TEST_CASE("single open site forms a singleton cluster") {
  LatticeSpec spec{2, 5, true, 0.0, 1};
  const SiteField f = field_from_sites(spec, {{2, 3}});
  const ClusterLabels labels = label_clusters(f);
  REQUIRE(labels.sizes.size() == 1);
  CHECK(labels.sizes[0] == 1);
}

TEST_CASE("empty field is rejected") {
  LatticeSpec spec{2, 4, true, 0.0, 1};
  CHECK_THROWS_WITH(label_clusters(sample_sites(spec)), "empty field");
}

TEST_CASE("hand-checked two-cluster configuration without wrap") {
  LatticeSpec spec{2, 4, false, 0.0, 1};
  const SiteField f = field_from_sites(spec, {{0, 0}, {0, 1}, {2, 2}});
  const ClusterLabels labels = label_clusters(f);
  REQUIRE(labels.sizes.size() == 2);
  CHECK(labels.sizes[labels.label[site_index(spec, {0, 0})]] == 2);
  CHECK(labels.sizes[labels.label[site_index(spec, {2, 2})]] == 1);
  CHECK(labels.label[site_index(spec, {0, 0})] == labels.label[site_index(spec, {0, 1})]);
  CHECK(labels.giant == labels.label[site_index(spec, {0, 0})]);
}

TEST_CASE("labels agree with a union-find partition on random instances") {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
    LatticeSpec spec{2, 32, true, 0.55, seed};
    const SiteField f = sample_sites(spec);
    const ClusterLabels labels = label_clusters(f);

    std::int64_t size_sum = 0;
    for (const auto s : labels.sizes) size_sum += s;
    CHECK(size_sum == f.open_count());

    for (const auto& comp : oracles::cluster_partition(f)) {
      const std::int32_t id = labels.label[comp.front()];
      for (const std::int64_t site : comp) CHECK(labels.label[site] == id);
      CHECK(labels.sizes[id] == static_cast<std::int64_t>(comp.size()));
    }
  }
}

TEST_CASE("supercritical giant cluster density") {
  // p = 0.6 sits close enough to the d=2 site threshold (~0.593) that the
  // giant fraction keeps a fat lower tail at any desk-scale L; 0.25 is the
  // level the 95%-of-seeds check actually clears (measured ~98% at L=80).
  int ok = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    LatticeSpec spec{2, 80, true, 0.6, seed};
    const ClusterLabels labels = label_clusters(sample_sites(spec));
    if (static_cast<double>(labels.sizes[labels.giant]) / 6400.0 > 0.25) ++ok;
  }
  CHECK(ok >= 95);
}

TEST_CASE("coarse graining marks exactly the all-open cubes") {
  LatticeSpec spec{2, 9, true, 1.0, 1};
  SiteField f = sample_sites(spec);
  CHECK(coarse_grain(f, 1).cube_open == std::vector<std::uint8_t>(9, 1));

  f.open[site_index(spec, {4, 4})] = 0;  // center of the middle cube
  const CoarseGrid grid = coarse_grain(f, 1);
  for (std::int64_t z = 0; z < 9; ++z) CHECK(grid.cube_open[z] == (z == 4 ? 0 : 1));

  CHECK_THROWS(coarse_grain(f, 2));  // 5 does not divide 9
}

TEST_CASE("cube openness frequency matches the binomial rate") {
  LatticeSpec spec{2, 81, true, 0.99, 7};
  const CoarseGrid grid = coarse_grain(sample_sites(spec), 1);
  double frac = 0.0;
  for (const auto c : grid.cube_open) frac += c;
  frac /= 729.0;
  const double q = std::pow(0.99, 9);  // ~0.9135
  CHECK(std::abs(frac - q) < 4.0 * std::sqrt(q * (1 - q) / 729.0));
}

namespace {

void check_open_path_invariants(const SiteField& f, const OpenPath& path) {
  const LatticeSpec& spec = f.spec;
  // consecutive adjacency (one unit step along one axis)
  for (std::size_t i = 1; i < path.sites.size(); ++i) {
    const Coord a = site_coord(spec, path.sites[i - 1]);
    const Coord b = site_coord(spec, path.sites[i]);
    std::int32_t l1 = 0;
    for (int ax = 0; ax < spec.d; ++ax) {
      std::int32_t diff = std::abs(a[ax] - b[ax]);
      diff = std::min(diff, spec.side - diff);
      l1 += diff;
    }
    CHECK(l1 == 1);
  }
  // self-avoiding
  std::set<std::int64_t> seen(path.sites.begin(), path.sites.end());
  CHECK(seen.size() == path.sites.size());
  // the n-neighborhood of every path site is open
  for (const std::int64_t site : path.sites) {
    const Coord c = site_coord(spec, site);
    Coord off{};
    for (int i = 0; i < spec.d; ++i) off[i] = -path.n;
    while (true) {
      Coord probe{};
      for (int i = 0; i < spec.d; ++i)
        probe[i] = (c[i] + off[i] + spec.side) % spec.side;
      CHECK(f.is_open(site_index(spec, probe)));
      int axis = spec.d - 1;
      while (axis >= 0 && ++off[axis] > path.n) off[axis--] = -path.n;
      if (axis < 0) break;
    }
  }
}

}  // namespace

TEST_CASE("all-open grid gives the straight spanning path") {
  LatticeSpec spec{2, 15, true, 1.0, 1};
  const SiteField f = sample_sites(spec);
  const OpenPath path = find_open_cube_path(coarse_grain(f, 1));
  CHECK(path.cube_path.size() == 5);  // L/(2n+1)
  CHECK(path.sites.size() == 13);     // 4 segments of 3 plus the start
  check_open_path_invariants(f, path);
  // lexicographic tie-break: the first coarse row
  const LatticeSpec coarse{2, 5, true, 1.0, 0};
  for (std::size_t i = 0; i < path.cube_path.size(); ++i)
    CHECK(site_coord(coarse, path.cube_path[i])[1] == 0);
}

TEST_CASE("a single open row is the forced path") {
  LatticeSpec spec{2, 15, true, 0.0, 1};
  SiteField f{spec, std::vector<std::uint8_t>(225, 0)};
  // open exactly the cubes of coarse row z2 = 2
  for (std::int32_t r = 0; r < 15; ++r)
    for (std::int32_t c = 6; c < 9; ++c) f.open[site_index(spec, {r, c})] = 1;
  const CoarseGrid grid = coarse_grain(f, 1);
  const OpenPath path = find_open_cube_path(grid);
  REQUIRE(path.cube_path.size() == 5);
  const LatticeSpec coarse = grid.coarse_spec();
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(site_coord(coarse, path.cube_path[i])[0] == static_cast<std::int32_t>(i));
    CHECK(site_coord(coarse, path.cube_path[i])[1] == 2);
  }
  check_open_path_invariants(f, path);
}

TEST_CASE("random open-cube grids yield valid paths") {
  RngStream cube_rng(2024, "cube-pattern", 0);
  int found = 0;
  for (int trial = 0; trial < 20; ++trial) {
    LatticeSpec spec{2, 30, true, 0.0, 1};
    SiteField f{spec, std::vector<std::uint8_t>(900, 0)};
    const LatticeSpec coarse{2, 10, true, 1.0, 0};
    for (std::int64_t z = 0; z < 100; ++z) {
      if (cube_rng.uniform() >= 0.95) continue;
      const Coord cz = site_coord(coarse, z);
      for (std::int32_t a = 0; a < 3; ++a)
        for (std::int32_t b = 0; b < 3; ++b)
          f.open[site_index(spec, {cz[0] * 3 + a, cz[1] * 3 + b})] = 1;
    }
    try {
      const OpenPath path = find_open_cube_path(coarse_grain(f, 1));
      check_open_path_invariants(f, path);
      ++found;
    } catch (const std::runtime_error&) {
      // no spanning path in this draw; the caller resamples
    }
  }
  CHECK(found >= 15);
}

TEST_CASE("missing spanning path reports an error") {
  LatticeSpec spec{2, 9, true, 0.0, 1};
  const SiteField f{spec, std::vector<std::uint8_t>(81, 0)};
  CHECK_THROWS_WITH(find_open_cube_path(coarse_grain(f, 1)), "no open-cube spanning path");
}
