#include "symbiosim/contact.hpp"

#include <cmath>
#include <stdexcept>

#include "symbiosim/parallel.hpp"

namespace symbiosim {

ContactState::ContactState(const HostGraph& g)
    : g_(&g), counts_(static_cast<std::size_t>(g.host_count()), 0) {}

void ContactState::add(std::int32_t host, std::int32_t count) {
  if (count < 0 || counts_[host] + count > g_->slots())
    throw std::invalid_argument("host occupancy must stay within 0..N");
  for (std::int32_t i = 0; i < count; ++i) insert(host);
}

ContactState ContactState::single_host(const HostGraph& g, std::int32_t host,
                                       std::int32_t count) {
  ContactState state(g);
  state.add(host, count);
  return state;
}

void ContactState::insert(std::int32_t host) {
  if (counts_[host]++ == 0) ++occupied_;
  entries_.push_back(host);
}

void ContactState::erase(std::size_t entry) {
  const std::int32_t host = entries_[entry];
  if (--counts_[host] == 0) --occupied_;
  entries_[entry] = entries_.back();
  entries_.pop_back();
}

// Applies one event without touching the clock; the caller owns time.
void ContactState::apply_event(const ContactParams& params, RngStream& rng,
                               const std::vector<std::uint8_t>* box_mask) {
  const HostGraph& g = *g_;
  const double per_symbiont = 1.0 + params.alpha + params.beta;

  const std::size_t entry = rng.index(entries_.size());
  const std::int32_t host = entries_[entry];
  const double u = rng.uniform() * per_symbiont;
  const std::int32_t slots = g.slots();

  if (u < 1.0) {
    erase(entry);  // death
  } else if (u < 1.0 + params.alpha) {
    // within-host birth: uniform target slot, occupied slots reject
    if (static_cast<std::int32_t>(rng.index(slots)) >= counts_[host]) insert(host);
  } else {
    // transmission to a uniform slot of a uniform adjacent host
    const auto nbs = g.neighbors(host);
    const std::int32_t target = nbs[rng.index(nbs.size())];
    const bool slot_free = static_cast<std::int32_t>(rng.index(slots)) >= counts_[target];
    if (slot_free && (box_mask == nullptr || (*box_mask)[target])) insert(target);
  }
}

bool contact_step(const HostGraph& g, const ContactParams& params, ContactState& state,
                  RngStream& rng, const std::vector<std::uint8_t>* box_mask) {
  (void)g;
  if (state.total() == 0) return false;  // delta_0 is absorbing
  const double per_symbiont = 1.0 + params.alpha + params.beta;
  state.set_time(state.time() +
                 rng.exponential(static_cast<double>(state.total()) * per_symbiont));
  state.apply_event(params, rng, box_mask);
  return true;
}

namespace {

// Event loop with trajectory samples at t = 1, 2, 4, ... and t_end.
RunReport run_impl(const HostGraph& g, const ContactParams& params, ContactState& state,
                   double t_end, RngStream& rng, const std::vector<std::uint8_t>* mask) {
  (void)g;
  RunReport report;
  const double per_symbiont = 1.0 + params.alpha + params.beta;
  double next_sample = 1.0;

  while (state.total() > 0) {
    const double dt = rng.exponential(static_cast<double>(state.total()) * per_symbiont);
    const double t_next = state.time() + dt;
    while (next_sample <= t_end && next_sample < t_next) {
      report.trajectory.push_back({next_sample, state.total(), state.occupied_hosts()});
      next_sample *= 2.0;
    }
    if (t_next >= t_end) {
      state.set_time(t_end);
      break;
    }
    state.set_time(t_next);
    state.apply_event(params, rng, mask);
  }

  report.survived = state.total() > 0;
  if (!report.survived) {
    while (next_sample <= t_end) {
      report.trajectory.push_back({next_sample, 0, 0});
      next_sample *= 2.0;
    }
  }
  report.extinction_time = report.survived ? t_end : state.time();
  report.trajectory.push_back({t_end, state.total(), state.occupied_hosts()});
  return report;
}

}  // namespace

RunReport contact_run(const HostGraph& g, const ContactParams& params, ContactState state,
                      double t_end, RngStream& rng, const std::vector<std::uint8_t>* mask) {
  return run_impl(g, params, state, t_end, rng, mask);
}

RunReport contact_run_inplace(const HostGraph& g, const ContactParams& params,
                              ContactState& state, double t_end, RngStream& rng,
                              const std::vector<std::uint8_t>* mask) {
  return run_impl(g, params, state, t_end, rng, mask);
}

std::vector<std::uint8_t> box_mask(const HostGraph& g, std::int32_t center_host,
                                   std::int32_t box_n) {
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(g.host_count()));
  const std::int64_t center = g.host_site(center_host);
  for (std::int32_t h = 0; h < g.host_count(); ++h)
    mask[h] = torus_linf(g.lattice(), center, g.host_site(h)) <= box_n ? 1 : 0;
  return mask;
}

RunReport contact_run_restricted(const HostGraph& g, const ContactParams& params,
                                 ContactState state, std::int32_t center_host, std::int32_t box_n,
                                 double t_end, RngStream& rng) {
  const std::vector<std::uint8_t> mask = box_mask(g, center_host, box_n);
  return run_impl(g, params, state, t_end, rng, &mask);
}

Estimate survival_probability(const HostGraph& g, const ContactParams& params,
                              const ContactState& init, double t_end, std::int64_t replicas,
                              std::uint64_t master_seed, int threads) {
  std::vector<std::uint8_t> survived(static_cast<std::size_t>(replicas));
  parallel_for_replicas(replicas, threads, [&](std::int64_t r) {
    RngStream rng(master_seed, "contact", static_cast<std::uint64_t>(r));
    RunReport report = contact_run(g, params, init, t_end, rng);
    survived[r] = report.survived ? 1 : 0;
  });
  double frac = 0.0;
  for (auto s : survived) frac += s;
  frac /= static_cast<double>(replicas);
  const double se = std::sqrt(frac * (1.0 - frac) / static_cast<double>(replicas));
  return {frac, se, replicas};
}

OccupancySamples contact_run_sampling(const HostGraph& g, const ContactParams& params,
                                      ContactState state, const std::vector<std::int32_t>& hosts,
                                      double block, std::int32_t m_max, RngStream& rng) {
  (void)g;
  OccupancySamples out;
  out.hosts = hosts;
  out.block = block;
  const double per_symbiont = 1.0 + params.alpha + params.beta;
  auto snapshot = [&]() {
    std::vector<std::int32_t> row(hosts.size());
    for (std::size_t i = 0; i < hosts.size(); ++i) row[i] = state.count(hosts[i]);
    out.at_level.push_back(std::move(row));
  };
  snapshot();  // m = 0

  std::int32_t m = 1;
  while (m <= m_max && state.total() > 0) {
    const double dt = rng.exponential(static_cast<double>(state.total()) * per_symbiont);
    const double t_next = state.time() + dt;
    while (m <= m_max && block * m < t_next) {
      snapshot();
      ++m;
    }
    if (m > m_max) break;
    state.set_time(t_next);
    state.apply_event(params, rng, nullptr);
  }
  while (m <= m_max) {  // extinct: remaining levels see the frozen state
    snapshot();
    ++m;
  }
  return out;
}

}  // namespace symbiosim
