#ifndef SYMBIOSIM_CONTACT_HPP
#define SYMBIOSIM_CONTACT_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "symbiosim/host_graph.hpp"
#include "symbiosim/rng.hpp"

namespace symbiosim {

struct ContactParams {
  double alpha = 0.0;  // within-host reproduction rate
  double beta = 0.0;   // transmission rate
};

// Host-level occupancy counts; slots are exchangeable so the counts carry the
// full law. A per-symbiont host list keeps uniform-symbiont picks O(1).
class ContactState {
 public:
  ContactState(const HostGraph& g);

  void add(std::int32_t host, std::int32_t count);
  static ContactState single_host(const HostGraph& g, std::int32_t host, std::int32_t count);

  std::int32_t count(std::int32_t host) const { return counts_[host]; }
  std::int64_t total() const { return static_cast<std::int64_t>(entries_.size()); }
  std::int64_t occupied_hosts() const { return occupied_; }
  double time() const { return time_; }
  const std::vector<std::int32_t>& counts() const { return counts_; }

  // kernel pieces used by the run loops; apply_event requires total() > 0
  void apply_event(const ContactParams& params, RngStream& rng,
                   const std::vector<std::uint8_t>* box_mask = nullptr);

  void set_time(double t) { time_ = t; }

 private:
  void insert(std::int32_t host);
  void erase(std::size_t entry);

  const HostGraph* g_;
  std::vector<std::int32_t> counts_;
  std::vector<std::int32_t> entries_;  // host of each living symbiont
  std::int64_t occupied_ = 0;
  double time_ = 0.0;
};

// One exact event. Every symbiont dies at rate 1, reproduces into a uniform
// slot of its own host at rate alpha, and transmits to a uniform slot of a
// uniform adjacent host at rate beta; births onto occupied slots are
// suppressed. Returns false (and leaves the state untouched) from the
// absorbing all-zero state. When box_mask is given, transmissions targeting
// hosts outside the mask are discarded.
bool contact_step(const HostGraph& g, const ContactParams& params, ContactState& state,
                  RngStream& rng, const std::vector<std::uint8_t>* box_mask = nullptr);

struct TrajectoryPoint {
  double t = 0.0;
  std::int64_t total = 0;
  std::int64_t occupied_hosts = 0;
};

struct RunReport {
  bool survived = false;
  double extinction_time = 0.0;  // absorption time, or t_end when survived
  std::vector<TrajectoryPoint> trajectory;  // sampled at t = 1,2,4,... and t_end
};

RunReport contact_run(const HostGraph& g, const ContactParams& params, ContactState state,
                      double t_end, RngStream& rng,
                      const std::vector<std::uint8_t>* box_mask = nullptr);

// Same loop advancing the caller's state so final counts stay readable.
RunReport contact_run_inplace(const HostGraph& g, const ContactParams& params,
                              ContactState& state, double t_end, RngStream& rng,
                              const std::vector<std::uint8_t>* box_mask = nullptr);

// Same dynamics, but transmissions targeting hosts outside the L-inf ball of
// radius box_n around center_host are killed.
RunReport contact_run_restricted(const HostGraph& g, const ContactParams& params,
                                 ContactState state, std::int32_t center_host, std::int32_t box_n,
                                 double t_end, RngStream& rng);

std::vector<std::uint8_t> box_mask(const HostGraph& g, std::int32_t center_host,
                                   std::int32_t box_n);

struct Estimate {
  double value = 0.0;
  double stderr_ = 0.0;
  std::int64_t replicas = 0;
};

// Fraction of replicas alive at t_end; replica r runs on stream
// (master_seed, "contact", r).
Estimate survival_probability(const HostGraph& g, const ContactParams& params,
                              const ContactState& init, double t_end, std::int64_t replicas,
                              std::uint64_t master_seed, int threads = 1);

// Occupancy of chosen hosts sampled at times m*block for m = 0..m_max,
// feeding the oriented-percolation comparison layer.
struct OccupancySamples {
  std::vector<std::int32_t> hosts;
  double block = 1.0;
  std::vector<std::vector<std::int32_t>> at_level;  // [m][host index in hosts]
};

OccupancySamples contact_run_sampling(const HostGraph& g, const ContactParams& params,
                                      ContactState state, const std::vector<std::int32_t>& hosts,
                                      double block, std::int32_t m_max, RngStream& rng);

}  // namespace symbiosim

#endif
