#include "symbiosim/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "symbiosim/contact.hpp"
#include "symbiosim/io.hpp"
#include "symbiosim/parallel.hpp"
#include "symbiosim/voter.hpp"

namespace symbiosim {

std::vector<std::int32_t> central_hosts(const HostGraph& g, std::int32_t count) {
  const LatticeSpec& spec = g.lattice();
  Coord center{};
  for (int i = 0; i < spec.d; ++i) center[i] = spec.side / 2;
  const std::int64_t center_site = site_index(spec, center);

  std::vector<std::int32_t> order(static_cast<std::size_t>(g.host_count()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::int32_t a, std::int32_t b) {
    return torus_linf(spec, g.host_site(a), center_site) <
           torus_linf(spec, g.host_site(b), center_site);
  });
  order.resize(std::min<std::size_t>(order.size(), static_cast<std::size_t>(count)));
  return order;
}

namespace {

HostGraph point_graph(int d, std::int32_t side, double p, std::int32_t N,
                      std::uint64_t field_seed) {
  LatticeSpec spec{d, side, true, p, field_seed};
  const SiteField field = sample_sites(spec);
  return build_host_graph(label_clusters(field), GraphSpec{N});
}

std::uint64_t point_seed(std::uint64_t master, std::size_t point) {
  return mix64(master ^ mix64(static_cast<std::uint64_t>(point) + 1));
}

std::string sweep_contact(Config& cfg, std::uint64_t master_seed, int threads) {
  const int d = static_cast<int>(cfg.get_int("d", 2));
  const auto side = static_cast<std::int32_t>(cfg.get_int("side", 40));
  const double t_end = cfg.get_double("t_end", 200.0);
  const auto replicas = cfg.get_int("replicas", 50);
  const auto init_hosts = static_cast<std::int32_t>(cfg.get_int("init_hosts", 1));
  const auto ps = cfg.get_double_list("p", {1.0});
  const auto ns = cfg.get_int_list("N", {5});
  const auto alphas = cfg.get_double_list("alpha", {1.0});
  const auto betas = cfg.get_double_list("beta", {1.0});

  CsvWriter csv(cfg.resolved_lines());
  csv.set_columns({"d", "side", "p", "N", "alpha", "beta", "t_end", "replicas", "survival",
                   "stderr"});
  std::size_t point = 0;
  std::size_t block = 0;
  for (const double p : ps) {
    for (const auto N : ns) {
      const HostGraph g = point_graph(d, side, p, static_cast<std::int32_t>(N),
                                      point_seed(master_seed ^ 0x5157u, block++));
      ContactState init(g);
      for (const std::int32_t h : central_hosts(g, init_hosts)) init.add(h, g.slots());
      for (const double alpha : alphas) {
        for (const double beta : betas) {
          const Estimate est = survival_probability(g, {alpha, beta}, init, t_end, replicas,
                                                    point_seed(master_seed, point), threads);
          csv.field(static_cast<std::int64_t>(d))
              .field(static_cast<std::int64_t>(side))
              .field(p)
              .field(N)
              .field(alpha)
              .field(beta)
              .field(t_end)
              .field(replicas)
              .field(est.value)
              .field(est.stderr_);
          csv.end_row();
          ++point;
        }
      }
    }
  }
  return csv.str();
}

std::string sweep_voter(Config& cfg, std::uint64_t master_seed, int threads) {
  const int d = static_cast<int>(cfg.get_int("d", 2));
  const auto side = static_cast<std::int32_t>(cfg.get_int("side", 30));
  const double t_end = cfg.get_double("t_end", 100.0);
  const auto replicas = cfg.get_int("replicas", 20);
  const auto n_pairs = cfg.get_int("pairs", 500);
  const auto ps = cfg.get_double_list("p", {1.0});
  const auto ns = cfg.get_int_list("N", {5});
  const auto alphas = cfg.get_double_list("alpha", {0.5});
  const auto betas = cfg.get_double_list("beta", {0.5});
  const auto thetas = cfg.get_double_list("theta", {0.5});

  CsvWriter csv(cfg.resolved_lines());
  csv.set_columns({"d", "side", "p", "N", "alpha", "beta", "theta", "t_end", "replicas",
                   "disagree", "stderr"});
  std::size_t point = 0;
  std::size_t block = 0;
  for (const double p : ps) {
    for (const auto N : ns) {
      const HostGraph g = point_graph(d, side, p, static_cast<std::int32_t>(N),
                                      point_seed(master_seed ^ 0x5157u, block++));
      for (const double alpha : alphas) {
        for (const double beta : betas) {
          for (const double theta : thetas) {
            std::vector<double> vals(static_cast<std::size_t>(replicas));
            parallel_for_replicas(replicas, threads, [&](std::int64_t r) {
              RngStream rng(point_seed(master_seed, point), "sweep-voter",
                            static_cast<std::uint64_t>(r));
              const VoterRunReport rep = run_voter(g, {alpha, alpha, beta, beta}, theta, t_end,
                                                   {t_end}, n_pairs, PairMode::adjacent_host, rng);
              vals[r] = rep.samples.front().disagree_prob;
            });
            double mean = 0.0;
            for (const double v : vals) mean += v;
            mean /= static_cast<double>(replicas);
            double var = 0.0;
            for (const double v : vals) var += (v - mean) * (v - mean);
            var /= std::max<double>(1.0, static_cast<double>(replicas - 1));
            csv.field(static_cast<std::int64_t>(d))
                .field(static_cast<std::int64_t>(side))
                .field(p)
                .field(N)
                .field(alpha)
                .field(beta)
                .field(theta)
                .field(t_end)
                .field(replicas)
                .field(mean)
                .field(std::sqrt(var / static_cast<double>(replicas)));
            csv.end_row();
            ++point;
          }
        }
      }
    }
  }
  return csv.str();
}

std::string sweep_selection(Config& cfg, std::uint64_t master_seed, int threads) {
  const int d = static_cast<int>(cfg.get_int("d", 1));
  const auto side = static_cast<std::int32_t>(cfg.get_int("side", 200));
  const auto replicas = cfg.get_int("replicas", 1000);
  const auto seeds_k = static_cast<std::int32_t>(cfg.get_int("K", 1));
  const auto up = cfg.get_int("up", 100);
  const double t_cap = cfg.get_double("t_cap", 1e6);
  const auto ns = cfg.get_int_list("N", {1});
  const auto alpha1s = cfg.get_double_list("alpha1", {1.0});
  const auto alpha2s = cfg.get_double_list("alpha2", {1.0});
  const auto beta1s = cfg.get_double_list("beta1", {1.0});
  const auto beta2s = cfg.get_double_list("beta2", {0.5});

  CsvWriter csv(cfg.resolved_lines());
  csv.set_columns({"d", "side", "N", "alpha1", "alpha2", "beta1", "beta2", "K", "up", "replicas",
                   "invasion", "stderr"});
  std::size_t point = 0;
  for (const auto N : ns) {
    const HostGraph g = full_torus_graph(d, side, static_cast<std::int32_t>(N));
    const std::vector<std::int32_t> seeds = central_hosts(g, seeds_k);
    for (const double a1 : alpha1s) {
      for (const double a2 : alpha2s) {
        for (const double b1 : beta1s) {
          for (const double b2 : beta2s) {
            std::vector<std::uint8_t> invaded(static_cast<std::size_t>(replicas));
            parallel_for_replicas(replicas, threads, [&](std::int64_t r) {
              RngStream rng(point_seed(master_seed, point), "sweep-selection",
                            static_cast<std::uint64_t>(r));
              VoterState state(g);
              for (const std::int32_t h : seeds)
                for (std::int32_t slot = 0; slot < g.slots(); ++slot)
                  state.assign(g.index({h, slot}), 1);
              const RuinOutcome out = run_until_ruin(g, {a1, a2, b1, b2}, std::move(state), up,
                                                     t_cap, rng);
              invaded[r] = out.reached_up ? 1 : 0;
            });
            double frac = 0.0;
            for (const auto v : invaded) frac += v;
            frac /= static_cast<double>(replicas);
            csv.field(static_cast<std::int64_t>(d))
                .field(static_cast<std::int64_t>(side))
                .field(N)
                .field(a1)
                .field(a2)
                .field(b1)
                .field(b2)
                .field(static_cast<std::int64_t>(seeds_k))
                .field(up)
                .field(replicas)
                .field(frac)
                .field(std::sqrt(frac * (1.0 - frac) / static_cast<double>(replicas)));
            csv.end_row();
            ++point;
          }
        }
      }
    }
  }
  return csv.str();
}

}  // namespace

std::string run_sweep(Config& cfg, std::uint64_t master_seed, int threads) {
  const std::string mode = cfg.get_string("mode", "contact");
  if (mode == "contact") return sweep_contact(cfg, master_seed, threads);
  if (mode == "voter") return sweep_voter(cfg, master_seed, threads);
  if (mode == "selection") return sweep_selection(cfg, master_seed, threads);
  throw ConfigError("sweep mode must be contact, voter, or selection");
}

}  // namespace symbiosim
