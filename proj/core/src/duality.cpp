#include "symbiosim/duality.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "symbiosim/parallel.hpp"

namespace symbiosim {

namespace {

std::int64_t log_source(const HostGraph& g, const Event& e) {
  const VertexId v = g.vertex(static_cast<std::int64_t>(e.vertex));
  if (e.kind == EventKind::vertical_copy) {
    if (e.aux >= static_cast<std::uint32_t>(g.slots()))
      throw std::runtime_error("event log does not match the graph");
    return g.index({v.host, static_cast<std::int32_t>(e.aux)});
  }
  const auto nbs = g.neighbors(v.host);
  const std::uint32_t span = static_cast<std::uint32_t>(nbs.size()) * g.slots();
  if (e.aux >= span) throw std::runtime_error("event log does not match the graph");
  return g.index({nbs[e.aux / g.slots()], static_cast<std::int32_t>(e.aux % g.slots())});
}

bool contains(const std::vector<std::int64_t>& set, std::int64_t v) {
  return std::find(set.begin(), set.end(), v) != set.end();
}

void insert_unique(std::vector<std::int64_t>& set, std::int64_t v) {
  if (!contains(set, v)) set.push_back(v);
}

}  // namespace

CoalescingRun run_coalescing_dual(const HostGraph& g, double alpha, double beta,
                                  const std::vector<std::int64_t>& B, double T, RngStream& rng) {
  if (B.empty()) throw std::invalid_argument("dual start set must be nonempty");
  if (alpha + beta <= 0.0) throw std::invalid_argument("alpha + beta must be positive");
  const double q_horizontal = beta / (alpha + beta);
  const std::int32_t N = g.slots();

  std::vector<std::int64_t> walkers;
  for (const std::int64_t v : B) insert_unique(walkers, v);

  CoalescingRun run;
  run.size_history.push_back({0.0, static_cast<std::int64_t>(walkers.size())});

  double s = 0.0;
  while (true) {
    s += rng.exponential(static_cast<double>(walkers.size()));
    if (s >= T) break;
    const std::size_t i = rng.index(walkers.size());
    const VertexId w = g.vertex(walkers[i]);
    std::int64_t dest;
    if (rng.uniform() < q_horizontal) {
      const auto nbs = g.neighbors(w.host);
      dest = g.index({nbs[rng.index(nbs.size())], static_cast<std::int32_t>(rng.index(N))});
    } else {
      dest = g.index({w.host, static_cast<std::int32_t>(rng.index(N))});
    }
    const std::size_t before = walkers.size();
    walkers.erase(walkers.begin() + static_cast<std::ptrdiff_t>(i));
    insert_unique(walkers, dest);
    if (walkers.size() < before)
      run.size_history.push_back({s, static_cast<std::int64_t>(walkers.size())});
  }

  std::sort(walkers.begin(), walkers.end());
  run.final_set = std::move(walkers);
  return run;
}

std::vector<std::int64_t> coalescing_dual_from_log(const HostGraph& g, const EventLog& log,
                                                   const std::vector<std::int64_t>& B, double T) {
  std::vector<std::int64_t> walkers;
  for (const std::int64_t v : B) insert_unique(walkers, v);
  for (auto it = log.events.rbegin(); it != log.events.rend(); ++it) {
    if (it->time > T) continue;
    const auto v = static_cast<std::int64_t>(it->vertex);
    const auto pos = std::find(walkers.begin(), walkers.end(), v);
    if (pos == walkers.end()) continue;
    walkers.erase(pos);
    insert_unique(walkers, log_source(g, *it));
  }
  std::sort(walkers.begin(), walkers.end());
  return walkers;
}

DualityCheck duality_check(const HostGraph& g, double alpha, double beta, double theta,
                           const std::vector<std::int64_t>& B, double t, std::int64_t replicas,
                           std::uint64_t master_seed, int threads) {
  const VoterParams params{alpha, alpha, beta, beta};

  std::vector<std::uint8_t> empty_hits(static_cast<std::size_t>(replicas));
  parallel_for_replicas(replicas, threads, [&](std::int64_t r) {
    RngStream rng(master_seed, "duality-forward", static_cast<std::uint64_t>(r));
    const VoterRunReport rep =
        run_voter(g, params, theta, t, {}, 0, PairMode::uniform, rng);
    bool empty = true;
    for (const std::int64_t v : B) empty = empty && rep.final_state.type(v) != 1;
    empty_hits[r] = empty ? 1 : 0;
  });

  std::vector<double> dual_vals(static_cast<std::size_t>(replicas));
  parallel_for_replicas(replicas, threads, [&](std::int64_t r) {
    RngStream rng(master_seed, "duality-dual", static_cast<std::uint64_t>(r));
    const CoalescingRun run = run_coalescing_dual(g, alpha, beta, B, t, rng);
    dual_vals[r] = std::pow(1.0 - theta, static_cast<double>(run.final_set.size()));
  });

  DualityCheck out;
  double sum = 0.0;
  for (const auto h : empty_hits) sum += h;
  out.lhs = sum / static_cast<double>(replicas);
  out.lhs_stderr = std::sqrt(out.lhs * (1.0 - out.lhs) / static_cast<double>(replicas));

  double mean = 0.0;
  for (const double v : dual_vals) mean += v;
  mean /= static_cast<double>(replicas);
  double var = 0.0;
  for (const double v : dual_vals) var += (v - mean) * (v - mean);
  var /= static_cast<double>(replicas - 1);
  out.rhs = mean;
  out.rhs_stderr = std::sqrt(var / static_cast<double>(replicas));

  out.z = (out.lhs - out.rhs) /
          std::sqrt(out.lhs_stderr * out.lhs_stderr + out.rhs_stderr * out.rhs_stderr);
  return out;
}

MeetingStats meeting_separation_stats(const HostGraph& g, double alpha, double beta,
                                      std::int64_t x, std::int64_t y, double T,
                                      std::int64_t replicas, std::uint64_t master_seed,
                                      int threads) {
  if (x == y) throw std::invalid_argument("meeting stats require distinct start vertices");
  if (alpha + beta <= 0.0) throw std::invalid_argument("alpha + beta must be positive");
  const double q_horizontal = beta / (alpha + beta);
  const std::int32_t N = g.slots();

  struct Tally {
    std::int64_t separations = 0, coalescences = 0, started = 0;
  };
  std::vector<Tally> tallies(static_cast<std::size_t>(replicas));

  parallel_for_replicas(replicas, threads, [&](std::int64_t r) {
    RngStream rng(master_seed, "meeting-stats", static_cast<std::uint64_t>(r));
    Tally& tally = tallies[r];
    VertexId w[2] = {g.vertex(x), g.vertex(y)};
    bool cohabiting = w[0].host == w[1].host;
    if (cohabiting) ++tally.started;
    double s = 0.0;
    while (true) {
      s += rng.exponential(2.0);
      if (s >= T) break;
      const std::size_t i = rng.index(2);
      const VertexId other = w[1 - i];
      if (rng.uniform() < q_horizontal) {
        const auto nbs = g.neighbors(w[i].host);
        w[i] = {nbs[rng.index(nbs.size())], static_cast<std::int32_t>(rng.index(N))};
        if (cohabiting) {
          // horizontal jump ends the meeting: tau > t_i
          ++tally.separations;
          cohabiting = false;
        }
        if (w[i].host == other.host) {
          cohabiting = true;  // arrival; not a coalescence opportunity
          ++tally.started;
        }
      } else {
        w[i] = {w[i].host, static_cast<std::int32_t>(rng.index(N))};
        if (cohabiting && w[i] == other) {
          ++tally.coalescences;  // vertical redraw hit the other walker
          break;
        }
      }
    }
  });

  MeetingStats out;
  for (const auto& t : tallies) {
    out.separations += t.separations;
    out.coalescences += t.coalescences;
    out.meetings_started += t.started;
  }
  out.meetings_completed = out.separations + out.coalescences;
  if (out.meetings_completed > 0) {
    out.survive_prob =
        static_cast<double>(out.separations) / static_cast<double>(out.meetings_completed);
    out.survive_stderr = std::sqrt(out.survive_prob * (1.0 - out.survive_prob) /
                                   static_cast<double>(out.meetings_completed));
  }
  return out;
}

BranchingCoalescingRun run_branching_coalescing(const HostGraph& g, double p_jump,
                                                std::int64_t x, double T, RngStream& rng,
                                                std::int64_t max_events) {
  if (!g.regular())
    throw std::invalid_argument("branching-coalescing dual requires a p=1 host graph");
  const std::int32_t N = g.slots();
  std::vector<std::int64_t> particles{x};
  BranchingCoalescingRun run;
  run.max_size = 1;

  double s = 0.0;
  std::int64_t events = 0;
  while (max_events < 0 || events++ < max_events) {
    s += rng.exponential(static_cast<double>(particles.size()));
    if (s >= T) break;
    const std::size_t i = rng.index(particles.size());
    const VertexId w = g.vertex(particles[i]);
    const auto nbs = g.neighbors(w.host);
    if (rng.uniform() < p_jump) {
      const std::int64_t dest =
          g.index({nbs[rng.index(nbs.size())], static_cast<std::int32_t>(rng.index(N))});
      particles.erase(particles.begin() + static_cast<std::ptrdiff_t>(i));
      insert_unique(particles, dest);
    } else {
      // branching: the particle is replaced by every adjacent-host vertex
      particles.erase(particles.begin() + static_cast<std::ptrdiff_t>(i));
      for (const std::int32_t nb : nbs)
        for (std::int32_t slot = 0; slot < N; ++slot) insert_unique(particles, g.index({nb, slot}));
    }
    run.max_size = std::max(run.max_size, particles.size());
  }

  std::sort(particles.begin(), particles.end());
  run.final_set = std::move(particles);
  return run;
}

std::vector<std::int64_t> branching_dual_from_log(const HostGraph& g, const EventLog& log,
                                                  std::int64_t x, double T) {
  std::vector<std::int64_t> particles{x};
  for (auto it = log.events.rbegin(); it != log.events.rend(); ++it) {
    if (it->time > T) continue;
    const auto v = static_cast<std::int64_t>(it->vertex);
    const auto pos = std::find(particles.begin(), particles.end(), v);
    if (pos == particles.end()) continue;
    particles.erase(pos);
    if (it->kind == EventKind::branch) {
      const VertexId vz = g.vertex(v);
      for (const std::int32_t nb : g.neighbors(vz.host))
        for (std::int32_t slot = 0; slot < g.slots(); ++slot)
          insert_unique(particles, g.index({nb, slot}));
    } else {
      insert_unique(particles, log_source(g, *it));
    }
  }
  std::sort(particles.begin(), particles.end());
  return particles;
}

std::vector<std::uint8_t> replay_threshold_log(const HostGraph& g, const EventLog& log,
                                               const std::vector<std::uint8_t>& init, double T) {
  if (init.size() != static_cast<std::size_t>(g.vertex_count()))
    throw std::runtime_error("event log does not match the graph");
  std::vector<std::uint8_t> types = init;
  for (const Event& e : log.events) {
    if (e.time > T) break;
    const auto z = static_cast<std::int64_t>(e.vertex);
    if (z >= g.vertex_count()) throw std::runtime_error("event log does not match the graph");
    if (e.kind == EventKind::branch) {
      const VertexId vz = g.vertex(z);
      bool any1 = false;
      for (const std::int32_t nb : g.neighbors(vz.host))
        for (std::int32_t slot = 0; slot < g.slots() && !any1; ++slot)
          any1 = types[g.index({nb, slot})] == 1;
      types[z] = any1 ? 1 : 2;
    } else {
      types[z] = types[log_source(g, e)];
    }
  }
  return types;
}

bool pseudo_dual_check(const HostGraph& g, const EventLog& log,
                       const std::vector<std::uint8_t>& init, std::int64_t x, double T) {
  const std::vector<std::int64_t> ancestors = branching_dual_from_log(g, log, x, T);
  bool premise = false;
  for (const std::int64_t z : ancestors) premise = premise || init[z] == 1;
  if (!premise) return true;  // vacuous
  const std::vector<std::uint8_t> final_types = replay_threshold_log(g, log, init, T);
  return final_types[x] == 1;
}

MissEstimate dual_hit_ball(const HostGraph& g, double p_jump, std::int64_t x,
                           std::int32_t x_center_host, std::int32_t K, std::int64_t replicas,
                           std::uint64_t master_seed, int threads) {
  const double T = static_cast<double>(K) * K;
  const std::int64_t center_site = g.host_site(x_center_host);
  std::vector<std::uint8_t> missed(static_cast<std::size_t>(replicas));
  parallel_for_replicas(replicas, threads, [&](std::int64_t r) {
    RngStream rng(master_seed, "dual-hit-ball", static_cast<std::uint64_t>(r));
    const BranchingCoalescingRun run = run_branching_coalescing(g, p_jump, x, T, rng);
    bool miss = true;
    for (const std::int64_t v : run.final_set) {
      const std::int64_t site = g.host_site(g.vertex(v).host);
      if (torus_linf(g.lattice(), site, center_site) < K) {
        miss = false;
        break;
      }
    }
    missed[r] = miss ? 1 : 0;
  });
  double frac = 0.0;
  for (const auto m : missed) frac += m;
  frac /= static_cast<double>(replicas);
  return {frac, std::sqrt(frac * (1.0 - frac) / static_cast<double>(replicas))};
}

ReflectedRates reflected_rates(int d, double p_jump) {
  ReflectedRates rates;
  rates.r = p_jump / (2.0 * d);
  rates.l = rates.r + (1.0 - p_jump) / d;
  return rates;
}

double ruin_hit_mc(double r, double l, std::int32_t k, std::int64_t replicas,
                   std::uint64_t master_seed, std::int32_t escape_cap) {
  const double p_left = r > 0.0 || l > 0.0 ? r / (r + l) : 0.0;
  std::int64_t hits = 0;
  RngStream rng(master_seed, "ruin-hit", 0);
  for (std::int64_t rep = 0; rep < replicas; ++rep) {
    std::int32_t pos = k;
    while (pos > 0 && pos < escape_cap) pos += rng.uniform() < p_left ? -1 : +1;
    hits += pos == 0 ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(replicas);
}

std::vector<double> ruin_hit_linear_solve(double r, double l, std::int32_t k_max) {
  if (r <= 0.0 || l <= 0.0 || r >= l)
    throw std::invalid_argument("linear solve requires 0 < r < l");
  const double a = r / l;
  std::int32_t R = k_max + 1;
  while (std::pow(a, R) > 1e-14 && R < 4096) ++R;

  // Thomas algorithm on l u_{k+1} - (r+l) u_k + r u_{k-1} = 0, u_0 = 1, u_R = 0
  const std::int32_t m = R - 1;  // unknowns u_1..u_m
  std::vector<double> c_prime(m), d_prime(m);
  const double b = -(r + l);
  c_prime[0] = l / b;
  d_prime[0] = -r / b;  // rhs of the first row is -r u_0 = -r
  for (std::int32_t i = 1; i < m; ++i) {
    const double denom = b - r * c_prime[i - 1];
    c_prime[i] = l / denom;
    d_prime[i] = (0.0 - r * d_prime[i - 1]) / denom;
  }
  std::vector<double> u(static_cast<std::size_t>(R) + 1, 0.0);
  u[0] = 1.0;
  u[m] = d_prime[m - 1];
  for (std::int32_t i = m - 1; i >= 1; --i) u[i] = d_prime[i - 1] - c_prime[i - 1] * u[i + 1];
  u.resize(static_cast<std::size_t>(k_max) + 1);
  return u;
}

}  // namespace symbiosim
