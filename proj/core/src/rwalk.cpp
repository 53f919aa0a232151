#include "symbiosim/rwalk.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "symbiosim/parallel.hpp"

namespace symbiosim {

void lazy_step(const HostGraph& g, const std::vector<double>& in, std::vector<double>& out) {
  const std::int32_t H = g.host_count();
  out.assign(static_cast<std::size_t>(H), 0.0);
  for (std::int32_t h = 0; h < H; ++h) {
    const double mass = in[h];
    if (mass == 0.0) continue;
    out[h] += 0.5 * mass;
    const auto nbs = g.neighbors(h);
    const double share = 0.5 * mass / static_cast<double>(nbs.size());
    for (const std::int32_t nb : nbs) out[nb] += share;
  }
}

namespace {

void jump_step(const HostGraph& g, const std::vector<double>& in, std::vector<double>& out) {
  const std::int32_t H = g.host_count();
  out.assign(static_cast<std::size_t>(H), 0.0);
  for (std::int32_t h = 0; h < H; ++h) {
    const double mass = in[h];
    if (mass == 0.0) continue;
    const auto nbs = g.neighbors(h);
    const double share = mass / static_cast<double>(nbs.size());
    for (const std::int32_t nb : nbs) out[nb] += share;
  }
}

}  // namespace

void continuous_step(const HostGraph& g, std::vector<double>& dist, double dt) {
  // p_{t+dt} = e^-dt sum_m (dt^m / m!) K^m p_t; the walk holds at rate 1
  std::vector<double> result(dist.size(), 0.0);
  std::vector<double> term = dist;
  std::vector<double> scratch;
  double weight = std::exp(-dt);
  double cumulative = 0.0;
  for (int m = 0; cumulative < 1.0 - 1e-15 && m < 4096; ++m) {
    if (m > 0) {
      jump_step(g, term, scratch);
      term.swap(scratch);
      weight *= dt / m;
    }
    for (std::size_t i = 0; i < dist.size(); ++i) result[i] += weight * term[i];
    cumulative += weight;
  }
  dist.swap(result);
}

std::vector<double> heat_kernel(const HostGraph& g, WalkMode mode, std::int32_t A,
                                double n_or_t) {
  if (A < 0 || A >= g.host_count()) throw std::invalid_argument("start host not in the cluster");
  std::vector<double> dist(static_cast<std::size_t>(g.host_count()), 0.0);
  dist[A] = 1.0;
  if (mode == WalkMode::lazy_discrete) {
    const auto steps = static_cast<std::int64_t>(n_or_t);
    std::vector<double> next;
    for (std::int64_t s = 0; s < steps; ++s) {
      lazy_step(g, dist, next);
      dist.swap(next);
    }
  } else {
    // stepwise uniformization keeps the term count per call small
    double remaining = n_or_t;
    while (remaining > 0.0) {
      const double dt = std::min(remaining, 1.0);
      continuous_step(g, dist, dt);
      remaining -= dt;
    }
  }
  return dist;
}

bool degree_bound_check(const HostGraph& g, std::int32_t A, std::int32_t B, double t) {
  const std::vector<double> from_a = heat_kernel(g, WalkMode::continuous_rate1, A, t);
  const std::vector<double> from_b = heat_kernel(g, WalkMode::continuous_rate1, B, t);
  const double twod = 2.0 * g.dim();
  const double ab = from_a[B];
  const double ba = from_b[A];
  return ab >= ba / twod - 1e-15 && ab <= twod * ba + 1e-15;
}

std::vector<CollisionEstimate> collision_count_multi(const HostGraph& g, std::int32_t A,
                                                     std::int32_t B,
                                                     const std::vector<double>& horizons,
                                                     std::int64_t replicas,
                                                     std::uint64_t master_seed, int threads) {
  const std::size_t H = horizons.size();
  std::vector<std::vector<double>> counts(H, std::vector<double>(static_cast<std::size_t>(replicas)));
  parallel_for_replicas(replicas, threads, [&](std::int64_t r) {
    RngStream rng(master_seed, "collision-count", static_cast<std::uint64_t>(r));
    std::int32_t pos[2] = {A, B};
    std::int64_t hits = pos[0] == pos[1] ? 1 : 0;  // time-zero collision, once
    double t = 0.0;
    std::size_t level = 0;
    while (level < H) {
      t += rng.exponential(2.0);
      while (level < H && t >= horizons[level]) {
        counts[level][r] = static_cast<double>(hits);
        ++level;
      }
      if (level >= H) break;
      const std::size_t i = rng.index(2);
      const auto nbs = g.neighbors(pos[i]);
      pos[i] = nbs[rng.index(nbs.size())];
      if (pos[0] == pos[1]) ++hits;
    }
  });
  std::vector<CollisionEstimate> out(H);
  for (std::size_t h = 0; h < H; ++h) {
    double mean = 0.0;
    for (const double c : counts[h]) mean += c;
    mean /= static_cast<double>(replicas);
    double var = 0.0;
    for (const double c : counts[h]) var += (c - mean) * (c - mean);
    var /= static_cast<double>(replicas - 1);
    out[h] = {mean, std::sqrt(var / static_cast<double>(replicas))};
  }
  return out;
}

CollisionEstimate collision_count(const HostGraph& g, std::int32_t A, std::int32_t B, double T,
                                  std::int64_t replicas, std::uint64_t master_seed, int threads) {
  return collision_count_multi(g, A, B, {T}, replicas, master_seed, threads).front();
}

double collision_integral(const HostGraph& g, std::int32_t A, double T, double dt) {
  std::vector<double> dist(static_cast<std::size_t>(g.host_count()), 0.0);
  dist[A] = 1.0;
  auto overlap = [&]() {
    // sum_B p_t(A,B) p_t(B,A) with p_t(B,A) = p_t(A,B) deg(A)/deg(B)
    double s = 0.0;
    for (std::int32_t h = 0; h < g.host_count(); ++h)
      s += dist[h] * dist[h] * static_cast<double>(g.degree(A)) / g.degree(h);
    return s;
  };
  double integral = 0.0;
  double prev = overlap();
  for (double t = 0.0; t < T - 1e-12; t += dt) {
    const double step = std::min(dt, T - t);
    continuous_step(g, dist, step);
    const double cur = overlap();
    integral += 0.5 * (prev + cur) * step;
    prev = cur;
  }
  return 2.0 * integral;
}

void two_walk_chain_step(const HostGraph& g, WalkPair& pair, RngStream& rng) {
  std::int32_t& coord = rng.index(2) == 0 ? pair.a : pair.b;
  if (rng.index(2) == 0) return;  // lazy hold
  const auto nbs = g.neighbors(coord);
  coord = nbs[rng.index(nbs.size())];
}

CollisionWindowMoments collision_moments(const HostGraph& g, std::int32_t A, std::int32_t B,
                                         std::int32_t k, std::int64_t replicas,
                                         std::uint64_t master_seed, int threads) {
  const std::int64_t horizon = static_cast<std::int64_t>(k) * k;

  // torus Euclidean distance squared between host sites
  const LatticeSpec& spec = g.lattice();
  auto dist2 = [&](std::int32_t h1, std::int32_t h2) {
    const Coord c1 = site_coord(spec, g.host_site(h1));
    const Coord c2 = site_coord(spec, g.host_site(h2));
    std::int64_t acc = 0;
    for (int i = 0; i < spec.d; ++i) {
      std::int64_t diff = std::abs(c1[i] - c2[i]);
      if (spec.torus) diff = std::min(diff, static_cast<std::int64_t>(spec.side) - diff);
      acc += diff * diff;
    }
    return acc;
  };

  std::vector<double> values(static_cast<std::size_t>(replicas));
  parallel_for_replicas(replicas, threads, [&](std::int64_t r) {
    RngStream rng(master_seed, "collision-window", static_cast<std::uint64_t>(r));
    WalkPair pair{A, B};
    std::int64_t ik = 0;
    for (std::int64_t n = 1; n <= horizon; ++n) {
      two_walk_chain_step(g, pair, rng);
      if (n < k || pair.a != pair.b) continue;
      const std::int64_t d2a = dist2(pair.a, A);
      const std::int64_t d2b = dist2(pair.a, B);
      if (d2a < n && d2b < n) ++ik;  // |X-A| v |X-B| < sqrt(n)
    }
    values[r] = static_cast<double>(ik);
  });

  CollisionWindowMoments out;
  for (const double v : values) {
    out.mean += v;
    out.second += v * v;
  }
  out.mean /= static_cast<double>(replicas);
  out.second /= static_cast<double>(replicas);
  if (out.second > 0.0) out.pz_bound = out.mean * out.mean / (4.0 * out.second);
  return out;
}

CollisionWeights f_and_f_rho(const HostGraph& g, std::int32_t A, std::int32_t B, std::int32_t X,
                             std::int32_t n, double rho) {
  if (rho <= 0.0 || rho >= 0.5) throw std::invalid_argument("rho must be in (0, 1/2)");

  // q_j(A,X) and q_j(B,X) for j = 0..n
  std::vector<double> qa(static_cast<std::size_t>(n) + 1), qb(static_cast<std::size_t>(n) + 1);
  std::vector<double> dist(static_cast<std::size_t>(g.host_count()), 0.0), next;
  dist[A] = 1.0;
  qa[0] = dist[X];
  for (std::int32_t j = 1; j <= n; ++j) {
    lazy_step(g, dist, next);
    dist.swap(next);
    qa[j] = dist[X];
  }
  std::fill(dist.begin(), dist.end(), 0.0);
  dist[B] = 1.0;
  qb[0] = dist[X];
  for (std::int32_t j = 1; j <= n; ++j) {
    lazy_step(g, dist, next);
    dist.swap(next);
    qb[j] = dist[X];
  }

  const double log2n = n * std::log(2.0);
  auto weight = [&](std::int32_t j) {
    return std::exp(std::lgamma(n + 1.0) - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0) -
                    log2n);
  };

  const auto lo = static_cast<std::int32_t>(std::floor(rho * n));
  const auto hi = static_cast<std::int32_t>(std::ceil((1.0 - rho) * n));
  CollisionWeights out;
  for (std::int32_t j = 0; j <= n; ++j) {
    const double term = weight(j) * qa[j] * qb[n - j];
    out.F += term;
    if (j >= lo && j <= hi) out.F_rho += term;
  }
  out.gap_bound = 2.0 * std::exp(-2.0 * n * (0.5 - rho) * (0.5 - rho));
  return out;
}

EnvelopeFit envelope_fit(const HostGraph& g, std::int32_t A, std::int32_t n) {
  const std::vector<double> q = heat_kernel(g, WalkMode::lazy_discrete, A, n);
  const LatticeSpec& spec = g.lattice();
  const Coord ca = site_coord(spec, g.host_site(A));

  std::vector<double> xs, ys;
  for (std::int32_t h = 0; h < g.host_count(); ++h) {
    if (q[h] <= 0.0) continue;
    const Coord ch = site_coord(spec, g.host_site(h));
    double d2 = 0.0;
    for (int i = 0; i < spec.d; ++i) {
      double diff = std::abs(ca[i] - ch[i]);
      if (spec.torus) diff = std::min(diff, spec.side - diff);
      d2 += diff * diff;
    }
    xs.push_back(d2 / n);
    ys.push_back(std::log(q[h]));
  }

  EnvelopeFit fit;
  const double m = static_cast<double>(xs.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
    syy += ys[i] * ys[i];
  }
  const double denom = m * sxx - sx * sx;
  if (denom <= 0.0) return fit;
  fit.slope = (m * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / m;
  const double ss_res = syy - sy * sy / m - fit.slope * (sxy - sx * sy / m);
  const double ss_tot = syy - sy * sy / m;
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

}  // namespace symbiosim
