// Command-line driver: percolation sampling, the invasion and competition
// processes, branching-walk expectations, duality checks, random-walk
// collision statistics, the oriented-block comparison, parameter sweeps, and
// snapshot rendering. Exit codes: 0 success, 2 configuration error, 3 runtime
// error.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "symbiosim/brw.hpp"
#include "symbiosim/config.hpp"
#include "symbiosim/contact.hpp"
#include "symbiosim/duality.hpp"
#include "symbiosim/host_graph.hpp"
#include "symbiosim/io.hpp"
#include "symbiosim/oriented.hpp"
#include "symbiosim/parallel.hpp"
#include "symbiosim/percolation.hpp"
#include "symbiosim/render.hpp"
#include "symbiosim/rwalk.hpp"
#include "symbiosim/sweep.hpp"
#include "symbiosim/voter.hpp"

using namespace symbiosim;

namespace {

struct GlobalOpts {
  std::string config_path;
  std::uint64_t seed = 1;
  bool seed_given = false;
  std::string out;
  int threads = 1;
};

Config load_config(const GlobalOpts& g) {
  Config cfg = g.config_path.empty() ? Config() : Config::parse_file(g.config_path);
  if (g.seed_given) cfg.override_value("seed", std::to_string(g.seed));
  return cfg;
}

std::vector<std::string> header_lines(Config& cfg, const GlobalOpts& g) {
  std::vector<std::string> lines = cfg.resolved_lines();
  lines.push_back("rng = xoshiro256++ (streams hashed from seed, tag, replica)");
  lines.push_back("threads = " + std::to_string(g.threads));
  return lines;
}

void emit(const GlobalOpts& g, const std::string& body) {
  if (g.out.empty()) {
    std::fputs(body.c_str(), stdout);
  } else {
    std::ofstream out(g.out, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + g.out);
    out << body;
  }
}

HostGraph graph_from_config(Config& cfg, std::uint64_t seed, SiteField* field_out = nullptr) {
  const int d = static_cast<int>(cfg.get_int("d", 2));
  const auto side = static_cast<std::int32_t>(cfg.get_int("side", 40));
  const double p = cfg.get_double("p", 1.0);
  const auto N = static_cast<std::int32_t>(cfg.get_int("N", 1));
  LatticeSpec spec{d, side, true, p, mix64(seed ^ fnv1a64("field"))};
  SiteField field = sample_sites(spec);
  HostGraph g = build_host_graph(label_clusters(field), GraphSpec{N});
  if (field_out != nullptr) *field_out = std::move(field);
  return g;
}

int cmd_percolate(int d, std::int32_t side, double p, std::uint64_t seed,
                  const std::string& out) {
  LatticeSpec spec{d, side, true, p, seed};
  const SiteField field = sample_sites(spec);
  const ClusterLabels labels = label_clusters(field);
  render_percolation(labels).write_ppm(out);
  return 0;
}

int cmd_contact(const GlobalOpts& g, double render_every) {
  Config cfg = load_config(g);
  const std::uint64_t seed = static_cast<std::uint64_t>(cfg.get_int("seed", 1));
  SiteField field;
  const HostGraph graph = graph_from_config(cfg, seed, &field);
  const ContactParams params{cfg.get_double("alpha", 1.0), cfg.get_double("beta", 1.0)};
  const double t_end = cfg.get_double("t_end", 100.0);
  const auto replicas = cfg.get_int("replicas", 1);
  const auto init_hosts = static_cast<std::int32_t>(cfg.get_int("init_hosts", 1));
  const auto init_fill = static_cast<std::int32_t>(cfg.get_int("init_fill", graph.slots()));
  cfg.reject_unknown();

  ContactState init(graph);
  for (const std::int32_t h : central_hosts(graph, init_hosts)) init.add(h, init_fill);

  std::vector<RunReport> reports(static_cast<std::size_t>(replicas));
  parallel_for_replicas(replicas, g.threads, [&](std::int64_t r) {
    RngStream rng(seed, "contact", static_cast<std::uint64_t>(r));
    reports[r] = contact_run(graph, params, init, t_end, rng);
  });

  CsvWriter csv(header_lines(cfg, g));
  csv.set_columns({"replica", "seed", "t", "total_symbionts", "occupied_hosts"});
  for (std::int64_t r = 0; r < replicas; ++r) {
    for (const TrajectoryPoint& pt : reports[r].trajectory) {
      csv.field(r).field(static_cast<std::int64_t>(seed)).field(pt.t).field(pt.total);
      csv.field(pt.occupied_hosts);
      csv.end_row();
    }
  }
  for (std::int64_t r = 0; r < replicas; ++r) {
    csv.field(r).field(static_cast<std::int64_t>(reports[r].survived ? 1 : 0));
    csv.field(reports[r].extinction_time);
    csv.end_row();
  }
  emit(g, csv.str());

  if (render_every > 0.0) {
    // snapshot the first replica's state at multiples of render_every
    RngStream rng(seed, "contact", 0);
    ContactState state = init;
    const std::string prefix = g.out.empty() ? std::string("contact") : g.out;
    int frame = 0;
    render_contact(field, graph, state).write_ppm(prefix + ".t" + std::to_string(frame) + ".ppm");
    for (double t = render_every; t <= t_end; t += render_every) {
      ++frame;
      const double per = 1.0 + params.alpha + params.beta;
      while (state.total() > 0) {
        const double dt = rng.exponential(static_cast<double>(state.total()) * per);
        if (state.time() + dt >= t) {
          state.set_time(t);
          break;
        }
        state.set_time(state.time() + dt);
        state.apply_event(params, rng);
      }
      render_contact(field, graph, state).write_ppm(prefix + ".t" + std::to_string(frame) +
                                                    ".ppm");
    }
  }
  return 0;
}

int cmd_brw_expect(int d, double alpha_bar, double beta_bar, double t,
                   const std::string& x_csv, int nmax) {
  Coord x{};
  std::istringstream in(x_csv);
  std::string item;
  int i = 0;
  while (std::getline(in, item, ',') && i < kMaxDim) x[i++] = std::stoi(item);
  if (i != d) throw std::runtime_error("--x must list exactly d coordinates");
  const BrwParams params{alpha_bar, beta_bar, 0.0, 0};
  const OccupancyValue v = expected_occupancy(params, d, t, x, nmax, 1e300);
  std::printf("value %.12g\ntail_bound %.12g\n", v.value, v.tail_bound);
  return 0;
}

int cmd_brw_run(const GlobalOpts& g) {
  Config cfg = load_config(g);
  const std::uint64_t seed = static_cast<std::uint64_t>(cfg.get_int("seed", 1));
  const int d = static_cast<int>(cfg.get_int("d", 1));
  const auto radius = static_cast<std::int32_t>(cfg.get_int("box_radius", 30));
  const BrwParams params{cfg.get_double("alpha_bar", 0.5), cfg.get_double("beta_bar", 0.25),
                         cfg.get_double("delta", 0.0),
                         static_cast<std::int32_t>(cfg.get_int("M", 10))};
  const bool truncated = cfg.get_int("truncated", 1) != 0;
  const auto init = static_cast<std::int32_t>(cfg.get_int("init", 1));
  const double t_end = cfg.get_double("t_end", 50.0);
  const auto replicas = cfg.get_int("replicas", 1);
  cfg.reject_unknown();

  std::vector<BrwRunReport> reports(static_cast<std::size_t>(replicas));
  parallel_for_replicas(replicas, g.threads, [&](std::int64_t r) {
    RngStream rng(seed, "brw", static_cast<std::uint64_t>(r));
    reports[r] = run_brw(params, d, radius, init, t_end, truncated, rng);
  });

  CsvWriter csv(header_lines(cfg, g));
  csv.set_columns({"replica", "t", "total", "max_site_count"});
  for (std::int64_t r = 0; r < replicas; ++r)
    for (const BrwTrajectoryPoint& pt : reports[r].trajectory) {
      csv.field(r).field(pt.t).field(pt.total).field(static_cast<std::int64_t>(pt.max_site_count));
      csv.end_row();
    }
  emit(g, csv.str());
  return 0;
}

PairMode pair_mode_of(const std::string& name) {
  if (name == "same_host") return PairMode::same_host;
  if (name == "adjacent") return PairMode::adjacent_host;
  if (name == "uniform") return PairMode::uniform;
  throw ConfigError("pair_mode must be same_host, adjacent, or uniform");
}

int cmd_voter(const GlobalOpts& g, bool threshold_mode, const std::string& log_out) {
  Config cfg = load_config(g);
  const std::uint64_t seed = static_cast<std::uint64_t>(cfg.get_int("seed", 1));
  const HostGraph graph = graph_from_config(cfg, seed);
  const double t_end = cfg.get_double("t_end", 100.0);
  const auto replicas = cfg.get_int("replicas", 1);
  const double theta = cfg.get_double("theta", 0.5);
  const auto n_pairs = cfg.get_int("pairs", 1000);
  const PairMode mode = pair_mode_of(cfg.get_string("pair_mode", "adjacent"));
  std::vector<double> sample_times =
      cfg.get_double_list("sample_times", {t_end});

  std::vector<VoterRunReport> reports;
  reports.reserve(static_cast<std::size_t>(replicas));

  if (threshold_mode) {
    const double beta2 = cfg.get_double("beta2", 0.5);
    const double kappa = cfg.get_double("kappa", 0.5);
    cfg.reject_unknown();
    for (std::int64_t r = 0; r < replicas; ++r) {
      RngStream rng(seed, "voter-threshold", static_cast<std::uint64_t>(r));
      std::vector<std::uint8_t> init(static_cast<std::size_t>(graph.vertex_count()));
      for (auto& type : init) type = rng.bernoulli(theta) ? 1 : 2;
      EventLog log;
      reports.push_back(run_threshold(graph, beta2, kappa, init, t_end, rng, &log));
      if (!log_out.empty())
        log.write_file(replicas == 1 ? log_out : log_out + "." + std::to_string(r));
    }
  } else {
    const VoterParams params{cfg.get_double("alpha1", 0.5), cfg.get_double("alpha2", 0.5),
                             cfg.get_double("beta1", 0.5), cfg.get_double("beta2", 0.5)};
    cfg.reject_unknown();
    reports.resize(static_cast<std::size_t>(replicas),
                   VoterRunReport{{}, 0, 0, false, VoterState(graph)});
    parallel_for_replicas(replicas, g.threads, [&](std::int64_t r) {
      RngStream rng(seed, "voter", static_cast<std::uint64_t>(r));
      reports[r] = run_voter(graph, params, theta, t_end, sample_times, n_pairs, mode, rng);
    });
  }

  CsvWriter csv(header_lines(cfg, g));
  csv.set_columns({"replica", "t", "n1", "disagree_prob", "pairs_sampled"});
  for (std::int64_t r = 0; r < static_cast<std::int64_t>(reports.size()); ++r) {
    for (const DisagreementSample& s : reports[r].samples) {
      csv.field(r).field(s.t).field(s.n1).field(s.disagree_prob).field(s.pairs);
      csv.end_row();
    }
    csv.field(r).field(t_end).field(reports[r].final_n1).field(0.0).field(std::int64_t{0});
    csv.end_row();
  }
  emit(g, csv.str());
  return 0;
}

int cmd_dual_check(const GlobalOpts& g) {
  Config cfg = load_config(g);
  const std::uint64_t seed = static_cast<std::uint64_t>(cfg.get_int("seed", 1));
  const HostGraph graph = graph_from_config(cfg, seed);
  const double alpha = cfg.get_double("alpha", 1.0);
  const double beta = cfg.get_double("beta", 1.0);
  const double theta = cfg.get_double("theta", 0.5);
  const double t = cfg.get_double("t", 5.0);
  const auto replicas = cfg.get_int("replicas", 10000);
  const auto b_size = cfg.get_int("B", 3);

  // Eq. (4.2) sweep parameters: zipped triples
  const auto meet_n = cfg.get_int_list("meet_N", {2, 1, 1});
  const auto meet_alpha = cfg.get_double_list("meet_alpha", {1.0, 5.0, 0.0});
  const auto meet_beta = cfg.get_double_list("meet_beta", {1.0, 1.0, 1.0});
  const double meet_t = cfg.get_double("meet_T", 400.0);
  const auto meet_replicas = cfg.get_int("meet_replicas", 2000);
  cfg.reject_unknown();
  if (meet_alpha.size() != meet_n.size() || meet_beta.size() != meet_n.size())
    throw ConfigError("meet_N, meet_alpha, meet_beta must have equal lengths");

  std::vector<std::int64_t> B;
  for (std::int64_t i = 0; i < b_size; ++i)
    B.push_back(i * graph.slots());  // slot 0 of the first few hosts

  const DualityCheck check =
      duality_check(graph, alpha, beta, theta, B, t, replicas, seed, g.threads);

  CsvWriter csv(header_lines(cfg, g));
  csv.set_columns({"quantity", "value", "stderr"});
  csv.field("forward_lhs").field(check.lhs).field(check.lhs_stderr);
  csv.end_row();
  csv.field("dual_rhs").field(check.rhs).field(check.rhs_stderr);
  csv.end_row();
  csv.field("z").field(check.z).field(0.0);
  csv.end_row();

  for (std::size_t i = 0; i < meet_n.size(); ++i) {
    const auto N = static_cast<std::int32_t>(meet_n[i]);
    const HostGraph mg = full_torus_graph(graph.dim(), graph.lattice().side, N);
    const std::int64_t x = 0;
    const std::int64_t y = static_cast<std::int64_t>(N);  // slot 0 of host 1
    const MeetingStats stats = meeting_separation_stats(mg, meet_alpha[i], meet_beta[i], x, y,
                                                        meet_t, meet_replicas, seed, g.threads);
    const double expected =
        N * meet_beta[i] / (meet_alpha[i] + N * meet_beta[i]);
    csv.field("meet_N" + std::to_string(N) + "_a" + CsvWriter::format_double(meet_alpha[i]) +
              "_b" + CsvWriter::format_double(meet_beta[i]) + "_expected" +
              CsvWriter::format_double(expected))
        .field(stats.survive_prob)
        .field(stats.survive_stderr);
    csv.end_row();
  }
  emit(g, csv.str());
  return 0;
}

int cmd_collide(const GlobalOpts& g) {
  Config cfg = load_config(g);
  const std::uint64_t seed = static_cast<std::uint64_t>(cfg.get_int("seed", 1));
  cfg.override_value("N", "1");
  const HostGraph graph = graph_from_config(cfg, seed);
  const auto horizons = cfg.get_double_list("T", {1000.0, 10000.0});
  const auto replicas = cfg.get_int("replicas", 200);
  cfg.reject_unknown();

  const std::int32_t A = central_hosts(graph, 1).front();
  CsvWriter csv(header_lines(cfg, g));
  csv.set_columns({"T", "mean_I", "stderr", "replicas"});
  for (const double T : horizons) {
    const CollisionEstimate est = collision_count(graph, A, A, T, replicas, seed, g.threads);
    csv.field(T).field(est.mean).field(est.stderr_).field(replicas);
    csv.end_row();
  }
  emit(g, csv.str());
  return 0;
}

int cmd_kernel(const GlobalOpts& g, int d, std::int32_t side, double p, std::int32_t from,
               std::int64_t steps) {
  Config cfg = load_config(g);
  const std::uint64_t seed = static_cast<std::uint64_t>(cfg.get_int("seed", 1));
  cfg.override_value("d", std::to_string(d));
  cfg.override_value("side", std::to_string(side));
  cfg.override_value("p", CsvWriter::format_double(p));
  cfg.override_value("N", "1");
  const HostGraph graph = graph_from_config(cfg, seed);
  const std::vector<double> dist =
      heat_kernel(graph, WalkMode::lazy_discrete, from, static_cast<double>(steps));

  CsvWriter csv(header_lines(cfg, g));
  csv.set_columns({"site", "probability"});
  for (std::int32_t h = 0; h < graph.host_count(); ++h) {
    if (dist[h] <= 0.0) continue;
    csv.field(graph.host_site(h)).field(dist[h]);
    csv.end_row();
  }
  emit(g, csv.str());
  return 0;
}

int cmd_blocks(const GlobalOpts& g) {
  Config cfg = load_config(g);
  const std::uint64_t seed = static_cast<std::uint64_t>(cfg.get_int("seed", 1));
  const int d = static_cast<int>(cfg.get_int("d", 2));
  const auto side = static_cast<std::int32_t>(cfg.get_int("side", 24));
  const double p = cfg.get_double("p", 0.97);
  const auto cube_n = static_cast<std::int32_t>(cfg.get_int("cube_n", 1));
  const auto N = static_cast<std::int32_t>(cfg.get_int("N", 100));
  const ContactParams params{cfg.get_double("alpha", 1.2), cfg.get_double("beta", 0.2)};
  const auto K = static_cast<std::int32_t>(
      cfg.get_int("K", static_cast<std::int64_t>(std::sqrt(static_cast<double>(N)))));
  const double block = cfg.get_double("block", 4.0);
  const auto m_max = static_cast<std::int32_t>(cfg.get_int("m_max", 20));
  const auto runs = cfg.get_int("runs", 20);
  const auto max_resample = cfg.get_int("max_resample", 50);
  cfg.reject_unknown();

  // find a spanning open-cube path, resampling the field if needed
  OpenPath path;
  HostGraph graph;
  bool found = false;
  for (std::int64_t attempt = 0; attempt < max_resample && !found; ++attempt) {
    LatticeSpec spec{d, side, true, p, mix64(seed ^ fnv1a64("blocks-field") ^ attempt)};
    const SiteField field = sample_sites(spec);
    try {
      path = find_open_cube_path(coarse_grain(field, cube_n));
      graph = build_host_graph(label_clusters(field), GraphSpec{N});
      found = true;
    } catch (const std::runtime_error&) {
      continue;  // no spanning path in this realization
    }
  }
  if (!found) throw std::runtime_error("no open-cube spanning path after resampling");

  std::vector<std::int32_t> path_hosts;
  for (const std::int64_t site : path.sites) path_hosts.push_back(graph.host_of_site(site));

  // pooled good-site statistics across runs
  std::vector<GoodSiteField> fields(static_cast<std::size_t>(runs));
  parallel_for_replicas(runs, g.threads, [&](std::int64_t r) {
    RngStream rng(seed, "blocks", static_cast<std::uint64_t>(r));
    const std::int32_t center = path_hosts[path_hosts.size() / 2];
    ContactState init = ContactState::single_host(graph, center, N);
    const OccupancySamples samples =
        contact_run_sampling(graph, params, std::move(init), path_hosts, block, m_max, rng);
    fields[r] = extract_good_sites(samples, K);
  });

  CsvWriter csv(header_lines(cfg, g));
  csv.set_columns({"m", "good_density", "child_bound_estimate", "ci_low"});
  for (std::int32_t m = 0; m <= m_max; ++m) {
    double density = 0.0;
    std::int64_t parents = 0, both = 0;
    for (const GoodSiteField& f : fields) {
      density += f.good_density(m);
      for (std::int32_t z = 1; z + 1 < f.width; ++z) {
        if (!f.is_good(z, m) || m + 1 > m_max) continue;
        ++parents;
        if (f.is_good(z - 1, m + 1) && f.is_good(z + 1, m + 1)) ++both;
      }
    }
    density /= static_cast<double>(runs);
    const double estimate =
        parents > 0 ? static_cast<double>(both) / static_cast<double>(parents) : 0.0;
    csv.field(static_cast<std::int64_t>(m))
        .field(density)
        .field(estimate)
        .field(wilson_lower_bound(both, parents));
    csv.end_row();
  }
  emit(g, csv.str());
  return 0;
}

int cmd_sweep(const GlobalOpts& g) {
  Config cfg = load_config(g);
  const std::uint64_t seed = static_cast<std::uint64_t>(cfg.get_int("seed", 1));
  std::string body = run_sweep(cfg, seed, g.threads);
  cfg.reject_unknown();
  emit(g, body);
  return 0;
}

int cmd_render(const GlobalOpts& g) {
  Config cfg = load_config(g);
  const std::uint64_t seed = static_cast<std::uint64_t>(cfg.get_int("seed", 1));
  const std::string mode = cfg.get_string("mode", "contact");
  SiteField field;
  const HostGraph graph = graph_from_config(cfg, seed, &field);
  const auto times = cfg.get_double_list("t", {100.0});
  const std::string prefix = g.out.empty() ? mode : g.out;

  if (mode == "percolation") {
    cfg.reject_unknown();
    render_percolation(label_clusters(field)).write_ppm(prefix + ".ppm");
    return 0;
  }
  if (mode == "contact") {
    const ContactParams params{cfg.get_double("alpha", 1.0), cfg.get_double("beta", 2.0)};
    cfg.reject_unknown();
    RngStream rng(seed, "render-contact", 0);
    ContactState state = ContactState::single_host(graph, central_hosts(graph, 1).front(),
                                                   graph.slots());
    const double per = 1.0 + params.alpha + params.beta;
    double done = 0.0;
    for (const double t : times) {
      while (state.total() > 0 && done < t) {
        const double dt = rng.exponential(static_cast<double>(state.total()) * per);
        if (state.time() + dt >= t) break;
        state.set_time(state.time() + dt);
        state.apply_event(params, rng);
      }
      done = t;
      render_contact(field, graph, state).write_ppm(prefix + ".t" + CsvWriter::format_double(t) +
                                                    ".ppm");
    }
    return 0;
  }
  if (mode == "voter") {
    const VoterParams params{cfg.get_double("alpha", 0.5), cfg.get_double("alpha", 0.5),
                             cfg.get_double("beta", 0.5), cfg.get_double("beta", 0.5)};
    const double theta = cfg.get_double("theta", 0.5);
    cfg.reject_unknown();
    RngStream rng(seed, "render-voter", 0);
    VoterState state = VoterState::product_measure(graph, theta, rng);
    double done = 0.0;
    for (const double t : times) {
      const VoterRunReport rep = run_voter_from(graph, params, std::move(state), t - done, {}, 0,
                                                PairMode::uniform, rng);
      state = rep.final_state;
      done = t;
      render_voter(field, graph, state).write_ppm(prefix + ".t" + CsvWriter::format_double(t) +
                                                  ".ppm");
    }
    return 0;
  }
  throw ConfigError("render mode must be percolation, contact, or voter");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"host-symbiont particle systems on percolation clusters"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--config", g.config_path, "key = value configuration file")->capture_default_str();
  app.add_option("--seed", g.seed, "master seed (overrides the config)")
      ->each([&](const std::string&) { g.seed_given = true; });
  app.add_option("--out", g.out, "output path (default: stdout for CSV)");
  app.add_option("--threads", g.threads, "worker threads for replicas")->capture_default_str();

  // percolate
  auto* percolate = app.add_subcommand("percolate", "sample a site-percolation field as PPM");
  int perc_d = 2;
  std::int32_t perc_side = 80;
  double perc_p = 0.6;
  std::uint64_t perc_seed = 1;
  std::string perc_out = "percolation.ppm";
  percolate->add_option("--d", perc_d);
  percolate->add_option("--side", perc_side);
  percolate->add_option("--p", perc_p);
  percolate->add_option("--seed", perc_seed);
  percolate->add_option("--out", perc_out);

  auto* contact = app.add_subcommand("contact", "invasion model runs to CSV");
  double render_every = 0.0;
  contact->add_option("--render-every", render_every, "PPM snapshot period (replica 0)");

  auto* brw = app.add_subcommand("brw", "branching random walk tools");
  brw->require_subcommand(1);
  auto* brw_expect = brw->add_subcommand("expect", "series expectation and tail bound");
  int be_d = 1;
  double be_ab = 0.4, be_bb = 0.4, be_t = 4.0;
  std::string be_x = "1";
  int be_nmax = 30;
  brw_expect->add_option("--d", be_d);
  brw_expect->add_option("--alpha-bar", be_ab);
  brw_expect->add_option("--beta-bar", be_bb);
  brw_expect->add_option("--t", be_t);
  brw_expect->add_option("--x", be_x);
  brw_expect->add_option("--nmax", be_nmax);
  auto* brw_run = brw->add_subcommand("run", "simulate the (truncated) walk to CSV");

  auto* voter = app.add_subcommand("voter", "competition model runs to CSV");
  auto* voter_threshold = voter->add_subcommand("threshold", "threshold process with event log");
  std::string log_out;
  voter_threshold->add_option("--log-out", log_out, "binary event-log path");

  auto* dual = app.add_subcommand("dual-check", "duality identity and meeting statistics");
  auto* collide = app.add_subcommand("collide", "two-walk collision counts to CSV");

  auto* kernel = app.add_subcommand("kernel", "lazy-walk heat kernel to CSV");
  int k_d = 2;
  std::int32_t k_side = 20;
  double k_p = 1.0;
  std::int32_t k_from = 0;
  std::int64_t k_steps = 10;
  kernel->add_option("--d", k_d);
  kernel->add_option("--side", k_side);
  kernel->add_option("--p", k_p);
  kernel->add_option("--from", k_from, "start host index");
  kernel->add_option("--steps", k_steps);

  auto* blocks = app.add_subcommand("blocks", "good sites along the open-cube path");
  auto* sweep = app.add_subcommand("sweep", "parameter sweep to CSV");
  auto* render = app.add_subcommand("render", "snapshot images");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (percolate->parsed()) return cmd_percolate(perc_d, perc_side, perc_p, perc_seed, perc_out);
    if (contact->parsed()) return cmd_contact(g, render_every);
    if (brw->parsed()) {
      if (brw_expect->parsed()) return cmd_brw_expect(be_d, be_ab, be_bb, be_t, be_x, be_nmax);
      if (brw_run->parsed()) return cmd_brw_run(g);
    }
    if (voter->parsed()) return cmd_voter(g, voter_threshold->parsed(), log_out);
    if (dual->parsed()) return cmd_dual_check(g);
    if (collide->parsed()) return cmd_collide(g);
    if (kernel->parsed()) return cmd_kernel(g, k_d, k_side, k_p, k_from, k_steps);
    if (blocks->parsed()) return cmd_blocks(g);
    if (sweep->parsed()) return cmd_sweep(g);
    if (render->parsed()) return cmd_render(g);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
