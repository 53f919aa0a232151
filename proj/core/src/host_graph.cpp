#include "symbiosim/host_graph.hpp"

#include <sstream>
#include <stdexcept>

namespace symbiosim {

HostGraph build_host_graph(const ClusterLabels& labels, const GraphSpec& spec) {
  if (spec.slots_per_host < 1) throw std::invalid_argument("slots per host must be >= 1");

  HostGraph g;
  g.spec_ = labels.spec;
  g.slots_ = spec.slots_per_host;

  const std::int64_t n_sites = labels.spec.site_count();
  g.site_to_host_.assign(static_cast<std::size_t>(n_sites), -1);
  for (std::int64_t site = 0; site < n_sites; ++site) {
    if (labels.label[site] == labels.giant) {
      g.site_to_host_[site] = static_cast<std::int32_t>(g.host_sites_.size());
      g.host_sites_.push_back(site);
    }
  }
  if (g.host_sites_.empty()) throw std::runtime_error("empty giant cluster");

  g.offs_.assign(g.host_sites_.size() + 1, 0);
  for (std::size_t h = 0; h < g.host_sites_.size(); ++h) {
    std::int32_t deg = 0;
    for (int axis = 0; axis < g.spec_.d; ++axis) {
      for (int dir : {-1, +1}) {
        const std::int64_t nb = site_neighbor(g.spec_, g.host_sites_[h], axis, dir);
        if (nb >= 0 && g.site_to_host_[nb] >= 0) ++deg;
      }
    }
    g.offs_[h + 1] = g.offs_[h] + deg;
  }
  g.adj_.resize(g.offs_.back());
  for (std::size_t h = 0; h < g.host_sites_.size(); ++h) {
    std::int32_t k = g.offs_[h];
    for (int axis = 0; axis < g.spec_.d; ++axis) {
      for (int dir : {-1, +1}) {
        const std::int64_t nb = site_neighbor(g.spec_, g.host_sites_[h], axis, dir);
        if (nb >= 0 && g.site_to_host_[nb] >= 0) g.adj_[k++] = g.site_to_host_[nb];
      }
    }
  }
  return g;
}

bool HostGraph::regular() const {
  for (std::int32_t h = 0; h < host_count(); ++h)
    if (degree(h) != 2 * spec_.d) return false;
  return true;
}

std::vector<VertexId> HostGraph::vertical_neighbors(VertexId x) const {
  std::vector<VertexId> out;
  out.reserve(slots_);
  for (std::int32_t i = 0; i < slots_; ++i) out.push_back({x.host, i});
  return out;
}

std::vector<VertexId> HostGraph::horizontal_neighbors(VertexId x) const {
  std::vector<VertexId> out;
  out.reserve(static_cast<std::size_t>(degree(x.host)) * slots_);
  for (std::int32_t nb : neighbors(x.host))
    for (std::int32_t i = 0; i < slots_; ++i) out.push_back({nb, i});
  return out;
}

std::string HostGraph::debug_dump() const {
  std::ostringstream os;
  for (std::int32_t h = 0; h < host_count(); ++h) {
    os << h;
    const Coord c = site_coord(spec_, host_sites_[h]);
    for (int i = 0; i < spec_.d; ++i) os << ' ' << c[i];
    os << " :";
    for (std::int32_t nb : neighbors(h)) os << ' ' << nb;
    os << '\n';
  }
  return os.str();
}

HostGraph full_torus_graph(int d, std::int32_t side, std::int32_t slots) {
  LatticeSpec spec{d, side, true, 1.0, 0};
  SiteField field = sample_sites(spec);
  return build_host_graph(label_clusters(field), GraphSpec{slots});
}

}  // namespace symbiosim
