#include <doctest.h>

#include <cmath>

#include "symbiosim/duality.hpp"
#include "symbiosim/voter.hpp"

using namespace symbiosim;

namespace {

// random aggregated counts on a p=1 torus
std::vector<std::int32_t> random_counts(const HostGraph& g, RngStream& rng) {
  std::vector<std::int32_t> counts(static_cast<std::size_t>(g.host_count()));
  for (auto& c : counts) c = static_cast<std::int32_t>(rng.index(g.slots() + 1));
  return counts;
}

RationalRates random_rates(RngStream& rng, bool selection) {
  auto draw = [&](std::int64_t lo, std::int64_t hi) {
    return Rational(lo + static_cast<std::int64_t>(rng.index(hi - lo + 1)),
                    1 + static_cast<std::int64_t>(rng.index(4)));
  };
  RationalRates r;
  if (selection) {
    r.alpha1 = draw(1, 6);
    r.alpha2 = r.alpha1 * Rational(static_cast<std::int64_t>(rng.index(5)), 4);  // <= alpha1
    r.beta1 = draw(1, 6);
    r.beta2 = r.beta1 * Rational(static_cast<std::int64_t>(rng.index(4)), 4);  // < beta1
  } else {
    r.alpha1 = draw(0, 6);
    r.alpha2 = draw(0, 6);
    r.beta1 = draw(1, 6);
    r.beta2 = draw(1, 6);
  }
  return r;
}

VoterState state_from_counts(const HostGraph& g, const std::vector<std::int32_t>& counts) {
  VoterState state(g);
  for (std::int32_t h = 0; h < g.host_count(); ++h)
    for (std::int32_t slot = 0; slot < counts[h]; ++slot) state.assign(g.index({h, slot}), 1);
  return state;
}

}  // namespace

TEST_CASE("local frequencies at the extremes and by recount") {
  const HostGraph g = full_torus_graph(2, 6, 4);

  VoterState all1(g);
  for (std::int64_t v = 0; v < g.vertex_count(); ++v) all1.assign(v, 1);
  const LocalFreqs f1 = local_freqs(g, all1, 17);
  CHECK(f1.f1 == 1.0);
  CHECK(f1.f2 == 0.0);
  CHECK(f1.g1 == 1.0);
  CHECK(f1.g2 == 0.0);

  // half the host type 1, every neighbor type 2
  VoterState half(g);
  half.assign(g.index({0, 0}), 1);
  half.assign(g.index({0, 1}), 1);
  const LocalFreqs fh = local_freqs(g, half, g.index({0, 3}));
  CHECK(fh.f1 == 0.5);
  CHECK(fh.g1 == 0.0);

  // brute-force recount on a random state
  RngStream rng(21, "freqs", 0);
  VoterState random_state = VoterState::product_measure(g, 0.37, rng);
  REQUIRE(g.vertex_count() >= 100);
  for (std::int64_t v = 0; v < g.vertex_count(); v += 7) {
    const LocalFreqs f = local_freqs(g, random_state, v);
    const VertexId x = g.vertex(v);
    double own = 0.0;
    for (const VertexId& y : g.vertical_neighbors(x))
      own += random_state.type(g.index(y)) == 1 ? 1.0 : 0.0;
    double nbr = 0.0;
    const auto hor = g.horizontal_neighbors(x);
    for (const VertexId& y : hor) nbr += random_state.type(g.index(y)) == 1 ? 1.0 : 0.0;
    CHECK(f.f1 == doctest::Approx(own / g.slots()).epsilon(1e-12));
    CHECK(f.g1 == doctest::Approx(nbr / static_cast<double>(hor.size())).epsilon(1e-12));
    CHECK(f.f1 + f.f2 == doctest::Approx(1.0));
    CHECK(f.g1 + f.g2 == doctest::Approx(1.0));
  }
}

TEST_CASE("flip probabilities at corner cases") {
  const HostGraph g = full_torus_graph(2, 4, 2);

  // consensus: f1 = g1 = 1 forces type 1
  VoterState all1(g);
  for (std::int64_t v = 0; v < g.vertex_count(); ++v) all1.assign(v, 1);
  RngStream rng(22, "flip", 0);
  for (int i = 0; i < 50; ++i) {
    voter_flip(g, {1.0, 2.0, 0.5, 3.0}, all1, 5, rng);
    CHECK(all1.type(5) == 1);
  }

  // no type-1 mass anywhere forces type 2
  VoterState all2(g);
  for (int i = 0; i < 50; ++i) {
    voter_flip(g, {0.0, 1.0, 1.0, 1.0}, all2, 5, rng);
    CHECK(all2.type(5) == 2);
  }
}

TEST_CASE("neutral flip reduces to (alpha f1 + beta g1)/(alpha + beta)") {
  // host fully type 1, all neighbors type 2, alpha = beta: probability 1/2
  const HostGraph g = full_torus_graph(2, 6, 3);
  VoterState base(g);
  for (std::int32_t slot = 0; slot < 3; ++slot) base.assign(g.index({0, slot}), 1);
  RngStream rng(23, "flip-neutral", 0);
  const int trials = 40000;
  int ones = 0;
  for (int i = 0; i < trials; ++i) {
    VoterState scratch = base;
    voter_flip(g, {0.7, 0.7, 0.7, 0.7}, scratch, g.index({0, 1}), rng);
    ones += scratch.type(g.index({0, 1})) == 1 ? 1 : 0;
  }
  const double frac = static_cast<double>(ones) / trials;
  CHECK(std::abs(frac - 0.5) < 4.0 * std::sqrt(0.25 / trials));
}

TEST_CASE("theta = 1 stays at consensus forever") {
  const HostGraph g = full_torus_graph(2, 6, 2);
  RngStream rng(24, "theta1", 0);
  const VoterRunReport rep =
      run_voter(g, {0.5, 0.5, 0.5, 0.5}, 1.0, 50.0, {10.0, 50.0}, 100, PairMode::uniform, rng);
  CHECK(rep.final_n1 == g.vertex_count());
  CHECK(rep.consensus);
  for (const auto& s : rep.samples) {
    CHECK(s.n1 == g.vertex_count());
    CHECK(s.disagree_prob == 0.0);
  }
}

TEST_CASE("neutral type-1 count is a martingale") {
  const HostGraph g = full_torus_graph(1, 8, 2);  // 16 vertices
  const std::int64_t n0 = 5;
  const int replicas = 10000;
  for (const double t : {1.0, 10.0, 100.0}) {
    double sum = 0.0, sumsq = 0.0;
    for (int r = 0; r < replicas; ++r) {
      RngStream rng(25, "martingale", static_cast<std::uint64_t>(r) * 1000 +
                                          static_cast<std::uint64_t>(t));
      VoterState init(g);
      for (std::int64_t v = 0; v < n0; ++v) init.assign(v * 3 % g.vertex_count(), 1);
      const VoterRunReport rep = run_voter_from(g, {0.5, 0.5, 0.5, 0.5}, std::move(init), t, {},
                                                0, PairMode::uniform, rng);
      sum += static_cast<double>(rep.final_n1);
      sumsq += static_cast<double>(rep.final_n1) * rep.final_n1;
    }
    const double mean = sum / replicas;
    const double var = sumsq / replicas - mean * mean;
    CHECK(std::abs(mean - static_cast<double>(n0)) < 3.0 * std::sqrt(var / replicas));
  }
}

TEST_CASE("p and q at full, empty, and the worked example") {
  const HostGraph g = full_torus_graph(1, 6, 2);
  const RationalRates rates{Rational(1), Rational(1), Rational(1), Rational(1, 2)};

  std::vector<std::int32_t> full(static_cast<std::size_t>(g.host_count()), 2);
  const PtQt at_full = pt_qt(g, rates, full, 3);
  CHECK(at_full.p == Rational(1));
  CHECK(at_full.q == Rational(1));

  std::vector<std::int32_t> empty(static_cast<std::size_t>(g.host_count()), 0);
  const PtQt at_empty = pt_qt(g, rates, empty, 3);
  CHECK(at_empty.p == Rational(0));
  CHECK(at_empty.q == Rational(0));

  // d=1, N=2, alpha1=beta1=1, xi(X)=1, neighbor sum 2 -> q = (2+2)/8
  const RationalRates unit{Rational(1), Rational(1), Rational(1), Rational(1)};
  std::vector<std::int32_t> counts(static_cast<std::size_t>(g.host_count()), 0);
  counts[3] = 1;
  counts[2] = 1;
  counts[4] = 1;
  CHECK(pt_qt(g, unit, counts, 3).q == Rational(1, 2));
}

TEST_CASE("q bounds by enumeration and the drift constant") {
  const RationalRates unit{Rational(1), Rational(1), Rational(1), Rational(1)};
  const SelectionDiagnostics diag = q_bounds(1, 1, unit);
  CHECK(diag.qminus == Rational(1, 4));
  CHECK(diag.qplus == Rational(3, 4));
  CHECK(diag.c == Rational(0));  // beta1 = beta2

  const RationalRates sel{Rational(1), Rational(1), Rational(1), Rational(1, 2)};
  CHECK(q_bounds(1, 1, sel).c == Rational(1, 8));
}

TEST_CASE("frequency identity is exact") {
  const HostGraph g = full_torus_graph(2, 5, 3);
  RngStream rng(26, "identity", 0);
  std::vector<std::int32_t> zero(static_cast<std::size_t>(g.host_count()), 0);
  std::vector<std::int32_t> full(static_cast<std::size_t>(g.host_count()), 3);
  const RationalRates rates = random_rates(rng, false);
  CHECK(frequency_identity_residual_exact(g, rates, zero) == Rational(0));
  CHECK(frequency_identity_residual_exact(g, rates, full) == Rational(0));
  for (int trial = 0; trial < 60; ++trial) {
    const RationalRates r = random_rates(rng, false);
    const auto counts = random_counts(g, rng);
    CHECK(frequency_identity_residual_exact(g, r, counts) == Rational(0));
    CHECK(frequency_identity_residual(
              g, {r.alpha1.to_double(), r.alpha2.to_double(), r.beta1.to_double(),
                  r.beta2.to_double()},
              counts) <= 1e-12 * g.host_count());
  }
}

TEST_CASE("site classification in the three canonical configurations") {
  const HostGraph g = full_torus_graph(2, 5, 3);
  const RationalRates rates{Rational(1), Rational(1), Rational(1), Rational(1, 2)};

  // a single type-1 symbiont: its host is good, nothing is bad
  std::vector<std::int32_t> lone(static_cast<std::size_t>(g.host_count()), 0);
  lone[7] = 1;
  const SiteClasses lone_classes = classify_sites(g, rates, lone);
  CHECK(lone_classes.bad.empty());
  bool host_good = false;
  for (const auto h : lone_classes.good) host_good = host_good || h == 7;
  CHECK(host_good);

  // one empty host in a full sea: that host is bad, its neighbors good
  std::vector<std::int32_t> hole(static_cast<std::size_t>(g.host_count()), 3);
  hole[12] = 0;
  const SiteClasses hole_classes = classify_sites(g, rates, hole);
  REQUIRE(hole_classes.bad.size() == 1);
  CHECK(hole_classes.bad[0] == 12);
  CHECK(hole_classes.good.size() == 4);

  // all full: q is identically one, both sets empty
  std::vector<std::int32_t> full(static_cast<std::size_t>(g.host_count()), 3);
  const SiteClasses full_classes = classify_sites(g, rates, full);
  CHECK(full_classes.bad.empty());
  CHECK(full_classes.good.empty());
}

TEST_CASE("bad sites never outnumber good sites") {
  const HostGraph g = full_torus_graph(2, 6, 2);
  RngStream rng(27, "classes", 0);
  for (int trial = 0; trial < 200; ++trial) {
    const RationalRates rates = random_rates(rng, true);
    const auto counts = random_counts(g, rng);
    const SiteClasses classes = classify_sites(g, rates, counts);
    CHECK(classes.bad.size() <= classes.good.size());
  }
}

TEST_CASE("drift inequalities hold in exact arithmetic") {
  const HostGraph g = full_torus_graph(1, 8, 3);
  RngStream rng(28, "drift", 0);
  for (int trial = 0; trial < 300; ++trial) {
    const RationalRates rates = random_rates(rng, true);
    const auto counts = random_counts(g, rng);
    const SelectionDiagnostics diag = q_bounds(g.dim(), g.slots(), rates);
    const Rational one(1);
    const Rational factor =
        (diag.qminus / (one - diag.c) + diag.qplus) / (diag.qminus + diag.qplus);

    Rational up_rate(0), down_rate(0);
    for (std::int32_t X = 0; X < g.host_count(); ++X) {
      const PtQt v = pt_qt(g, rates, counts, X);
      CHECK(v.p >= v.q);  // holds at every site
      const Rational n_minus(g.slots() - counts[X]);
      up_rate += n_minus * v.p;
      down_rate += Rational(counts[X]) * (one - v.p);
    }
    CHECK(up_rate >= factor * down_rate);

    // good sites satisfy the sharper bound p >= q/(1-c)
    const SiteClasses classes = classify_sites(g, rates, counts);
    for (const auto X : classes.good) {
      const PtQt v = pt_qt(g, rates, counts, X);
      CHECK(v.p >= v.q / (one - diag.c));
    }
  }
}

TEST_CASE("threshold transition dominates the full selection rates") {
  // with alpha2 = 0: (a1 f1 + b1 g1)/(a1 f1 + b1 g1 + b2 g2)
  //   >= (b2 g1 + gamma)/(b2 + gamma) 1{g1 != 0}
  const int d = 1;
  for (const std::int32_t N : {1, 2, 3}) {
    RngStream rng(29, "l3-dom", static_cast<std::uint64_t>(N));
    for (int trial = 0; trial < 40; ++trial) {
      const Rational a1(1 + static_cast<std::int64_t>(rng.index(5)),
                        1 + static_cast<std::int64_t>(rng.index(3)));
      const Rational b1(1 + static_cast<std::int64_t>(rng.index(5)),
                        1 + static_cast<std::int64_t>(rng.index(3)));
      const Rational b2 = b1 * Rational(static_cast<std::int64_t>(rng.index(4)), 4);
      if (!(b2 < b1)) continue;
      const Rational gamma = (b1 - b2) / Rational(2 * d * N);
      for (std::int32_t a = 0; a <= N; ++a) {
        for (std::int32_t b = 0; b <= 2 * d * N; ++b) {
          const Rational f1(a, N);
          const Rational g1(b, 2 * d * N);
          const Rational g2 = Rational(1) - g1;
          const Rational num = a1 * f1 + b1 * g1;
          const Rational den = num + b2 * g2;
          if (den == Rational(0)) continue;
          const Rational lhs = num / den;
          const Rational rhs =
              b == 0 ? Rational(0) : (b2 * g1 + gamma) / (b2 + gamma);
          CHECK(lhs >= rhs);
        }
      }
    }
  }
}

TEST_CASE("gambler bound values") {
  // neutral limit: beta2 -> beta1 sends the bound to zero
  CHECK(gambler_bound(1, 1, {1.0, 1.0, 1.0, 1.0 - 1e-9}, 5) ==
        doctest::Approx(0.0).epsilon(1e-6));

  const double bound = gambler_bound(1, 1, {1.0, 1.0, 1.0, 0.5}, 1);
  CHECK(bound == doctest::Approx(1.0 / 29.0).epsilon(1e-12));
  CHECK(bound == doctest::Approx(0.03448).epsilon(1e-3));

  // exact ratio 28/29 via rationals
  const RationalRates rates{Rational(1), Rational(1), Rational(1), Rational(1, 2)};
  CHECK(gambler_ratio(1, 1, rates) == Rational(28, 29));

  CHECK(gambler_bound(1, 1, {1.0, 1.0, 1.0, 0.5}, 2000) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("threshold process freezes at consensus") {
  const HostGraph g = full_torus_graph(1, 10, 2);
  std::vector<std::uint8_t> all2(static_cast<std::size_t>(g.vertex_count()), 2);
  RngStream rng(30, "threshold", 0);
  const VoterRunReport rep2 = run_threshold(g, 0.5, 0.5, all2, 20.0, rng);
  CHECK(rep2.final_n1 == 0);

  std::vector<std::uint8_t> all1(static_cast<std::size_t>(g.vertex_count()), 1);
  const VoterRunReport rep1 = run_threshold(g, 0.5, 0.5, all1, 20.0, rng);
  CHECK(rep1.final_n1 == g.vertex_count());
}

TEST_CASE("threshold flip-to-one rate matches the generator") {
  // d=1, N=2, beta=beta2, gamma=kappa/(2dN); inspect the first logged event
  const HostGraph g = full_torus_graph(1, 4, 2);
  const double beta2 = 0.6, kappa = 0.8;
  const double gamma = kappa / 4.0;

  // fixed initial configuration with assorted g1 values
  std::vector<std::uint8_t> init(static_cast<std::size_t>(g.vertex_count()), 2);
  init[0] = 1;  // host 0 slot 0
  init[1] = 1;  // host 0 slot 1
  init[2] = 1;  // host 1 slot 0

  const int runs = 120000;
  std::vector<std::int64_t> seen(static_cast<std::size_t>(g.vertex_count()), 0);
  std::vector<std::int64_t> became1(static_cast<std::size_t>(g.vertex_count()), 0);
  for (int r = 0; r < runs; ++r) {
    RngStream rng(31, "threshold-rate", static_cast<std::uint64_t>(r));
    EventLog log;
    run_threshold(g, beta2, kappa, init, 0.05, rng, &log);
    if (log.events.empty()) continue;
    const Event& first = log.events.front();
    const auto z = static_cast<std::int64_t>(first.vertex);
    ++seen[z];
    const auto after = replay_threshold_log(g, log, init, first.time);
    became1[z] += after[z] == 1 ? 1 : 0;
  }
  for (std::int64_t z = 0; z < g.vertex_count(); ++z) {
    if (seen[z] < 500) continue;
    const VertexId vz = g.vertex(z);
    std::int64_t nbr1 = 0;
    for (const std::int32_t nb : g.neighbors(vz.host))
      nbr1 += (init[g.index({nb, 0})] == 1 ? 1 : 0) + (init[g.index({nb, 1})] == 1 ? 1 : 0);
    const double g1 = static_cast<double>(nbr1) / 4.0;
    const double expected = nbr1 == 0 ? 0.0 : (beta2 * g1 + gamma) / (beta2 + gamma);
    const double frac = static_cast<double>(became1[z]) / static_cast<double>(seen[z]);
    const double sigma = std::sqrt(std::max(expected * (1 - expected), 1e-6) /
                                   static_cast<double>(seen[z]));
    CHECK(std::abs(frac - expected) < 4.0 * sigma);
  }
}
