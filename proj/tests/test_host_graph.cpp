#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "symbiosim/host_graph.hpp"

using namespace symbiosim;

namespace {

SiteField field_from_sites(const LatticeSpec& spec, const std::vector<Coord>& sites) {
  SiteField f{spec, std::vector<std::uint8_t>(static_cast<std::size_t>(spec.site_count()), 0)};
  for (const Coord& c : sites) f.open[site_index(spec, c)] = 1;
  return f;
}

}  // namespace

TEST_CASE("two adjacent hosts with three slots") {
  LatticeSpec spec{2, 4, false, 0.0, 1};
  const SiteField f = field_from_sites(spec, {{0, 0}, {0, 1}});
  const HostGraph g = build_host_graph(label_clusters(f), GraphSpec{3});
  CHECK(g.host_count() == 2);
  CHECK(g.vertex_count() == 6);
  CHECK(g.degree(0) == 1);
  CHECK(g.degree(1) == 1);
}

TEST_CASE("full torus is 2d-regular") {
  const HostGraph g = full_torus_graph(2, 10, 1);
  for (std::int32_t h = 0; h < g.host_count(); ++h) CHECK(g.degree(h) == 4);
  CHECK(g.regular());
}

TEST_CASE("degrees match a brute-force recount") {
  LatticeSpec spec{2, 80, true, 0.6, 2718};
  const SiteField f = sample_sites(spec);
  const ClusterLabels labels = label_clusters(f);
  const HostGraph g = build_host_graph(labels, GraphSpec{2});

  std::map<int, int> histogram;
  for (std::int32_t h = 0; h < g.host_count(); ++h) ++histogram[g.degree(h)];

  std::map<int, int> recount;
  for (std::int64_t site = 0; site < spec.site_count(); ++site) {
    if (labels.label[site] != labels.giant) continue;
    int deg = 0;
    for (int axis = 0; axis < spec.d; ++axis)
      for (int dir : {-1, +1}) {
        const std::int64_t nb = site_neighbor(spec, site, axis, dir);
        if (nb >= 0 && labels.label[nb] == labels.giant) ++deg;
      }
    ++recount[deg];
  }
  CHECK(histogram == recount);
  for (const auto& [deg, count] : histogram) {
    CHECK(deg >= 1);
    CHECK(deg <= 4);
  }
}

TEST_CASE("vertical neighborhoods are the whole host") {
  const HostGraph g1 = full_torus_graph(2, 4, 1);
  const auto v1 = g1.vertical_neighbors({3, 0});
  REQUIRE(v1.size() == 1);
  CHECK(v1[0] == VertexId{3, 0});

  const HostGraph g5 = full_torus_graph(2, 4, 5);
  const auto v5 = g5.vertical_neighbors({3, 2});
  CHECK(v5.size() == 5);
  CHECK(std::count(v5.begin(), v5.end(), VertexId{3, 2}) == 1);
  for (std::int32_t slot = 0; slot < 5; ++slot)
    CHECK(std::count(v5.begin(), v5.end(), VertexId{3, slot}) == 1);
}

TEST_CASE("horizontal neighborhood sizes follow N deg") {
  LatticeSpec spec{2, 4, false, 0.0, 1};
  const SiteField f = field_from_sites(spec, {{0, 0}, {0, 1}});
  const HostGraph g = build_host_graph(label_clusters(f), GraphSpec{4});
  CHECK(g.horizontal_neighbors({0, 0}).size() == 4);  // degree-1 host

  const HostGraph torus = full_torus_graph(2, 6, 25);
  CHECK(torus.horizontal_neighbors({7, 11}).size() == 100);  // 4 * 25
}

TEST_CASE("horizontal relation is symmetric and sizes are exact") {
  LatticeSpec spec{2, 14, true, 0.7, 31};
  const HostGraph g = build_host_graph(label_clusters(sample_sites(spec)), GraphSpec{3});
  REQUIRE(g.vertex_count() <= 10000);

  std::set<std::pair<std::int64_t, std::int64_t>> edges;
  for (std::int64_t xi = 0; xi < g.vertex_count(); ++xi) {
    const VertexId x = g.vertex(xi);
    const auto vert = g.vertical_neighbors(x);
    CHECK(static_cast<std::int32_t>(vert.size()) == g.slots());
    const auto hor = g.horizontal_neighbors(x);
    CHECK(static_cast<std::int32_t>(hor.size()) == g.slots() * g.degree(x.host));
    for (const VertexId& y : hor) edges.insert({xi, g.index(y)});
  }
  for (const auto& [a, b] : edges) CHECK(edges.count({b, a}) == 1);
}

TEST_CASE("vertex indexing is a bijection and pi is N-to-1") {
  const HostGraph g = full_torus_graph(2, 5, 7);
  std::vector<int> per_host(static_cast<std::size_t>(g.host_count()), 0);
  for (std::int64_t i = 0; i < g.vertex_count(); ++i) {
    const VertexId x = g.vertex(i);
    CHECK(g.index(x) == i);
    ++per_host[x.host];
  }
  for (const int count : per_host) CHECK(count == 7);
}

TEST_CASE("empty giant cluster is rejected") {
  LatticeSpec spec{2, 4, true, 0.0, 1};
  SiteField f{spec, std::vector<std::uint8_t>(16, 0)};
  f.open[0] = 1;
  ClusterLabels labels = label_clusters(f);
  labels.giant = 7;  // no site carries this label
  CHECK_THROWS(build_host_graph(labels, GraphSpec{2}));
}

TEST_CASE("debug dump lists one host per line") {
  LatticeSpec spec{2, 4, false, 0.0, 1};
  const SiteField f = field_from_sites(spec, {{0, 0}, {0, 1}});
  const HostGraph g = build_host_graph(label_clusters(f), GraphSpec{2});
  const std::string dump = g.debug_dump();
  CHECK(dump == "0 0 0 : 1\n1 0 1 : 0\n");
}
