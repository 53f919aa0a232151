#include "symbiosim/voter.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace symbiosim {

VoterState::VoterState(const HostGraph& g)
    : g_(&g),
      types_(static_cast<std::size_t>(g.vertex_count()), 2),
      host_count1_(static_cast<std::size_t>(g.host_count()), 0) {}

VoterState VoterState::from_types(const HostGraph& g, const std::vector<std::uint8_t>& types) {
  if (types.size() != static_cast<std::size_t>(g.vertex_count()))
    throw std::invalid_argument("type vector size mismatch");
  VoterState state(g);
  for (std::int64_t v = 0; v < g.vertex_count(); ++v) {
    if (types[v] != 1 && types[v] != 2) throw std::invalid_argument("types must be 1 or 2");
    if (types[v] == 1) state.assign(v, 1);
  }
  return state;
}

VoterState VoterState::product_measure(const HostGraph& g, double theta, RngStream& rng) {
  VoterState state(g);
  for (std::int64_t v = 0; v < g.vertex_count(); ++v)
    if (rng.bernoulli(theta)) state.assign(v, 1);
  return state;
}

void VoterState::assign(std::int64_t vertex, std::uint8_t new_type) {
  const std::uint8_t old = types_[vertex];
  if (old == new_type) return;
  types_[vertex] = new_type;
  const std::int32_t host = g_->vertex(vertex).host;
  if (new_type == 1) {
    ++host_count1_[host];
    ++n1_;
  } else {
    --host_count1_[host];
    --n1_;
  }
}

LocalFreqs local_freqs(const HostGraph& g, const VoterState& state, std::int64_t vertex) {
  const std::int32_t host = g.vertex(vertex).host;
  const double N = g.slots();
  LocalFreqs f;
  f.f1 = state.host_count1(host) / N;
  f.f2 = 1.0 - f.f1;
  std::int64_t nbr1 = 0;
  const auto nbs = g.neighbors(host);
  for (const std::int32_t nb : nbs) nbr1 += state.host_count1(nb);
  f.g1 = static_cast<double>(nbr1) / (N * static_cast<double>(nbs.size()));
  f.g2 = 1.0 - f.g1;
  return f;
}

void voter_flip(const HostGraph& g, const VoterParams& params, VoterState& state,
                std::int64_t vertex, RngStream& rng) {
  const LocalFreqs f = local_freqs(g, state, vertex);
  const double w1 = params.alpha1 * f.f1 + params.beta1 * f.g1;
  const double w2 = params.alpha2 * f.f2 + params.beta2 * f.g2;
  if (w1 + w2 <= 0.0) throw std::runtime_error("degenerate parameters");
  state.assign(vertex, rng.uniform() * (w1 + w2) < w1 ? 1 : 2);
}

namespace {

std::pair<std::int64_t, std::int64_t> draw_pair(const HostGraph& g, PairMode mode,
                                                RngStream& rng) {
  const std::int64_t V = g.vertex_count();
  const std::int32_t N = g.slots();
  const std::int64_t x = static_cast<std::int64_t>(rng.index(V));
  switch (mode) {
    case PairMode::same_host: {
      const VertexId vx = g.vertex(x);
      std::int32_t slot = static_cast<std::int32_t>(rng.index(N - 1));
      if (slot >= vx.slot) ++slot;  // uniform over the other slots
      return {x, g.index({vx.host, slot})};
    }
    case PairMode::adjacent_host: {
      const VertexId vx = g.vertex(x);
      const auto nbs = g.neighbors(vx.host);
      const std::int32_t host = nbs[rng.index(nbs.size())];
      const std::int32_t slot = static_cast<std::int32_t>(rng.index(N));
      return {x, g.index({host, slot})};
    }
    case PairMode::uniform: {
      std::int64_t y = static_cast<std::int64_t>(rng.index(V - 1));
      if (y >= x) ++y;
      return {x, y};
    }
  }
  throw std::logic_error("unreachable");
}

DisagreementSample measure_disagreement(const HostGraph& g, const VoterState& state, double t,
                                        std::int64_t n_pairs, PairMode mode, RngStream& rng) {
  std::int64_t disagree = 0;
  for (std::int64_t i = 0; i < n_pairs; ++i) {
    const auto [x, y] = draw_pair(g, mode, rng);
    disagree += state.type(x) != state.type(y) ? 1 : 0;
  }
  return {t, state.n1(),
          n_pairs > 0 ? static_cast<double>(disagree) / static_cast<double>(n_pairs) : 0.0,
          n_pairs};
}

// Shared event loop. `update` redraws one vertex and returns nothing; the
// caller's state tracks n1 so consensus can freeze the run.
template <typename Update>
VoterRunReport voter_loop(const HostGraph& g, VoterState state, double t_end,
                          std::vector<double> sample_times, std::int64_t n_pairs, PairMode mode,
                          RngStream& rng, Update&& update) {
  std::sort(sample_times.begin(), sample_times.end());
  VoterRunReport report{.samples = {}, .final_n1 = 0, .vertices = g.vertex_count(),
                        .consensus = false, .final_state = state};
  const std::int64_t V = g.vertex_count();
  const double total_rate = static_cast<double>(V);
  std::size_t next = 0;

  while (true) {
    const bool frozen = state.n1() == 0 || state.n1() == V;
    double t_next;
    if (frozen) {
      t_next = t_end;  // consensus is absorbing; jump to the horizon
    } else {
      t_next = state.time() + rng.exponential(total_rate);
    }
    while (next < sample_times.size() && sample_times[next] < t_next &&
           sample_times[next] <= t_end) {
      report.samples.push_back(
          measure_disagreement(g, state, sample_times[next], n_pairs, mode, rng));
      ++next;
    }
    if (frozen || t_next >= t_end) {
      state.set_time(t_end);
      break;
    }
    state.set_time(t_next);
    update(state);
  }

  report.final_n1 = state.n1();
  report.consensus = state.n1() == 0 || state.n1() == V;
  report.final_state = std::move(state);
  return report;
}

}  // namespace

VoterRunReport run_voter_from(const HostGraph& g, const VoterParams& params, VoterState state,
                              double t_end, const std::vector<double>& sample_times,
                              std::int64_t n_pairs, PairMode mode, RngStream& rng,
                              EventLog* log) {
  const std::int64_t V = g.vertex_count();
  const std::int32_t N = g.slots();
  const double total = params.alpha1 + params.beta1;  // neutral log rates use a1, b1
  return voter_loop(g, std::move(state), t_end, sample_times, n_pairs, mode, rng,
                    [&](VoterState& s) {
                      const std::int64_t x = static_cast<std::int64_t>(rng.index(V));
                      if (log == nullptr) {
                        voter_flip(g, params, s, x, rng);
                        return;
                      }
                      // logged mode (neutral only): draw the arrow explicitly so the
                      // dual can replay it
                      const VertexId vx = g.vertex(x);
                      std::int64_t src;
                      if (rng.uniform() * total < params.alpha1) {
                        const auto slot = static_cast<std::uint32_t>(rng.index(N));
                        log->record(static_cast<std::uint32_t>(x), s.time(),
                                    EventKind::vertical_copy, slot);
                        src = g.index({vx.host, static_cast<std::int32_t>(slot)});
                      } else {
                        const auto nbs = g.neighbors(vx.host);
                        const auto ord =
                            static_cast<std::uint32_t>(rng.index(nbs.size() * static_cast<std::size_t>(N)));
                        log->record(static_cast<std::uint32_t>(x), s.time(),
                                    EventKind::horizontal_copy, ord);
                        src = g.index({nbs[ord / N], static_cast<std::int32_t>(ord % N)});
                      }
                      s.assign(x, s.type(src));
                    });
}

VoterRunReport run_voter(const HostGraph& g, const VoterParams& params, double theta,
                         double t_end, const std::vector<double>& sample_times,
                         std::int64_t n_pairs, PairMode mode, RngStream& rng, EventLog* log) {
  if (log != nullptr &&
      (params.alpha1 != params.alpha2 || params.beta1 != params.beta2))
    throw std::invalid_argument("event-log recording requires neutral rates");
  VoterState state = VoterState::product_measure(g, theta, rng);
  return run_voter_from(g, params, std::move(state), t_end, sample_times, n_pairs, mode, rng,
                        log);
}

PtQt pt_qt(const HostGraph& g, const RationalRates& rates, const std::vector<std::int32_t>& counts,
           std::int32_t X) {
  if (!g.regular()) throw std::invalid_argument("selection analysis requires a p=1 host graph");
  const std::int32_t N = g.slots();
  const int twod = 2 * g.dim();

  std::int64_t nbr1 = 0;
  for (const std::int32_t nb : g.neighbors(X)) nbr1 += counts[nb];
  const Rational xi(counts[X]);
  const Rational num = Rational(twod) * rates.alpha1 * xi + rates.beta1 * Rational(nbr1);
  const Rational den_q = Rational(twod) * Rational(N) * (rates.alpha1 + rates.beta1);
  const Rational den_p = Rational(twod) * rates.alpha1 * xi +
                         Rational(twod) * rates.alpha2 * (Rational(N) - xi) +
                         rates.beta1 * Rational(nbr1) +
                         rates.beta2 * (Rational(twod) * Rational(N) - Rational(nbr1));

  PtQt out;
  out.q = num / den_q;
  if (den_p == Rational(0)) {
    // only reachable with no type-1 mass locally; both formulas vanish
    out.p = Rational(0);
    out.no_local_mass = true;
  } else {
    out.p = num / den_p;
  }
  return out;
}

SelectionDiagnostics q_bounds(int d, std::int32_t N, const RationalRates& rates) {
  const int twod = 2 * d;
  const Rational den = Rational(twod) * Rational(N) * (rates.alpha1 + rates.beta1);
  SelectionDiagnostics diag;
  bool found = false;
  for (std::int32_t a = 0; a <= N; ++a) {
    for (std::int32_t b = 0; b <= twod * N; ++b) {
      const Rational q = (Rational(twod) * rates.alpha1 * Rational(a) +
                          rates.beta1 * Rational(b)) / den;
      if (q <= Rational(0) || q >= Rational(1)) continue;
      if (!found) {
        diag.qminus = diag.qplus = q;
        found = true;
      } else {
        if (q < diag.qminus) diag.qminus = q;
        if (q > diag.qplus) diag.qplus = q;
      }
    }
  }
  if (!found) throw std::runtime_error("q never falls in (0,1) for these rates");
  diag.c = (rates.beta1 - rates.beta2) / den;
  return diag;
}

Rational frequency_identity_residual_exact(const HostGraph& g, const RationalRates& rates,
                                           const std::vector<std::int32_t>& counts) {
  Rational lhs(0), rhs(0);
  for (std::int32_t X = 0; X < g.host_count(); ++X) {
    lhs += Rational(counts[X], g.slots());
    rhs += pt_qt(g, rates, counts, X).q;
  }
  Rational diff = lhs - rhs;
  if (diff < Rational(0)) diff = Rational(0) - diff;
  return diff;
}

double frequency_identity_residual(const HostGraph& g, const VoterParams& params,
                                   const std::vector<std::int32_t>& counts) {
  if (!g.regular()) throw std::invalid_argument("selection analysis requires a p=1 host graph");
  const double N = g.slots();
  const int twod = 2 * g.dim();
  double lhs = 0.0, rhs = 0.0;
  for (std::int32_t X = 0; X < g.host_count(); ++X) {
    lhs += counts[X] / N;
    std::int64_t nbr1 = 0;
    for (const std::int32_t nb : g.neighbors(X)) nbr1 += counts[nb];
    rhs += (twod * params.alpha1 * counts[X] + params.beta1 * static_cast<double>(nbr1)) /
           (twod * N * (params.alpha1 + params.beta1));
  }
  return std::abs(lhs - rhs);
}

SiteClasses classify_sites(const HostGraph& g, const RationalRates& rates,
                           const std::vector<std::int32_t>& counts) {
  SiteClasses out;
  const std::int32_t N = g.slots();
  for (std::int32_t X = 0; X < g.host_count(); ++X) {
    const Rational q = pt_qt(g, rates, counts, X).q;
    if (q <= Rational(0) || q >= Rational(1)) continue;
    bool all_full = true;
    for (const std::int32_t nb : g.neighbors(X)) all_full = all_full && counts[nb] == N;
    (all_full ? out.bad : out.good).push_back(X);
  }
  return out;
}

Rational gambler_ratio(int d, std::int32_t N, const RationalRates& rates) {
  const SelectionDiagnostics diag = q_bounds(d, N, rates);
  const Rational one(1);
  return (diag.qminus + diag.qplus) / (diag.qminus / (one - diag.c) + diag.qplus);
}

double gambler_bound(int d, std::int32_t N, const VoterParams& params, std::int64_t K) {
  if (params.beta1 <= params.beta2)
    throw std::invalid_argument("gambler bound requires beta1 > beta2");
  const double c = (params.beta1 - params.beta2) / (2.0 * d * N * (params.alpha1 + params.beta1));
  if (c >= 1.0) throw std::runtime_error("drift constant c must be below 1");

  // q extremes in doubles, same enumeration as q_bounds
  const int twod = 2 * d;
  const double den = twod * N * (params.alpha1 + params.beta1);
  double qm = 2.0, qp = -1.0;
  for (std::int32_t a = 0; a <= N; ++a) {
    for (std::int32_t b = 0; b <= twod * N; ++b) {
      const double q = (twod * params.alpha1 * a + params.beta1 * b) / den;
      if (q <= 0.0 || q >= 1.0) continue;
      qm = std::min(qm, q);
      qp = std::max(qp, q);
    }
  }
  const double ratio = (qm + qp) / (qm / (1.0 - c) + qp);
  return 1.0 - std::pow(ratio, static_cast<double>(K));
}

VoterRunReport run_threshold(const HostGraph& g, double beta2, double kappa,
                             const std::vector<std::uint8_t>& init, double t_end, RngStream& rng,
                             EventLog* log) {
  if (!g.regular()) throw std::invalid_argument("threshold process requires a p=1 host graph");
  if (kappa <= 0.0) throw std::invalid_argument("kappa = beta1 - beta2 must be positive");
  const std::int32_t N = g.slots();
  const int twod = 2 * g.dim();
  const double gamma = kappa / (twod * N);
  const double p_jump = beta2 / (beta2 + gamma);
  const std::int64_t V = g.vertex_count();

  return voter_loop(g, VoterState::from_types(g, init), t_end, {}, 0, PairMode::uniform, rng,
                    [&](VoterState& s) {
                      const std::int64_t z = static_cast<std::int64_t>(rng.index(V));
                      const VertexId vz = g.vertex(z);
                      const auto nbs = g.neighbors(vz.host);
                      if (rng.uniform() < p_jump) {
                        // jumping event: copy one uniform adjacent-host vertex
                        const auto ord = static_cast<std::uint32_t>(
                            rng.index(nbs.size() * static_cast<std::size_t>(N)));
                        if (log != nullptr)
                          log->record(static_cast<std::uint32_t>(z), s.time(),
                                      EventKind::horizontal_copy, ord);
                        const std::int64_t src = g.index({nbs[ord / N], static_cast<std::int32_t>(ord % N)});
                        s.assign(z, s.type(src));
                      } else {
                        // branching event: type 1 iff some adjacent-host vertex is type 1
                        if (log != nullptr)
                          log->record(static_cast<std::uint32_t>(z), s.time(), EventKind::branch, 0);
                        bool any1 = false;
                        for (const std::int32_t nb : nbs) any1 = any1 || s.host_count1(nb) > 0;
                        s.assign(z, any1 ? 1 : 2);
                      }
                    });
}

RuinOutcome run_until_ruin(const HostGraph& g, const VoterParams& params, VoterState state,
                           std::int64_t up, double t_cap, RngStream& rng) {
  const std::int64_t V = g.vertex_count();
  const double total_rate = static_cast<double>(V);
  while (state.n1() > 0 && state.n1() < up) {
    const double t_next = state.time() + rng.exponential(total_rate);
    if (t_next >= t_cap) break;
    state.set_time(t_next);
    voter_flip(g, params, state, static_cast<std::int64_t>(rng.index(V)), rng);
  }
  return {state.n1() >= up, state.time()};
}

}  // namespace symbiosim
