#ifndef SYMBIOSIM_HOST_GRAPH_HPP
#define SYMBIOSIM_HOST_GRAPH_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "symbiosim/percolation.hpp"

namespace symbiosim {

struct GraphSpec {
  std::int32_t slots_per_host = 1;  // N
};

// vertex x = (host, slot); linear index = host * N + slot
struct VertexId {
  std::int32_t host = 0;
  std::int32_t slot = 0;
  friend bool operator==(const VertexId&, const VertexId&) = default;
};

// The graph of symbiont locations over the giant cluster: every host carries a
// complete graph on N slots (vertical edges, self included) and all slot pairs
// of adjacent hosts are linked (horizontal edges). Immutable after build.
class HostGraph {
 public:
  HostGraph() = default;

  std::int32_t host_count() const { return static_cast<std::int32_t>(host_sites_.size()); }
  std::int64_t vertex_count() const { return static_cast<std::int64_t>(host_count()) * slots_; }
  std::int32_t slots() const { return slots_; }
  int dim() const { return spec_.d; }
  const LatticeSpec& lattice() const { return spec_; }

  std::int64_t host_site(std::int32_t host) const { return host_sites_[host]; }
  std::int32_t host_of_site(std::int64_t site) const { return site_to_host_[site]; }

  std::int32_t degree(std::int32_t host) const { return offs_[host + 1] - offs_[host]; }
  std::span<const std::int32_t> neighbors(std::int32_t host) const {
    return {adj_.data() + offs_[host], static_cast<std::size_t>(degree(host))};
  }
  bool regular() const;  // every host of degree 2d (p = 1 style lattices)

  VertexId vertex(std::int64_t index) const {
    return {static_cast<std::int32_t>(index / slots_), static_cast<std::int32_t>(index % slots_)};
  }
  std::int64_t index(VertexId x) const {
    return static_cast<std::int64_t>(x.host) * slots_ + x.slot;
  }

  std::vector<VertexId> vertical_neighbors(VertexId x) const;
  std::vector<VertexId> horizontal_neighbors(VertexId x) const;

  // one host per line: "host x0 x1 ... : n0 n1 ..."
  std::string debug_dump() const;

  friend HostGraph build_host_graph(const ClusterLabels& labels, const GraphSpec& spec);

 private:
  LatticeSpec spec_;
  std::int32_t slots_ = 1;
  std::vector<std::int64_t> host_sites_;   // giant-cluster sites, lexicographic
  std::vector<std::int32_t> site_to_host_; // -1 off the giant cluster
  std::vector<std::int32_t> offs_;         // CSR offsets, size hosts+1
  std::vector<std::int32_t> adj_;          // CSR neighbor host ids
};

// Hosts are the sites of the giant cluster in lexicographic order.
// Throws when the giant cluster is empty.
HostGraph build_host_graph(const ClusterLabels& labels, const GraphSpec& spec);

// Convenience: full p=1 torus host graph (every site a host).
HostGraph full_torus_graph(int d, std::int32_t side, std::int32_t slots);

}  // namespace symbiosim

#endif
