#ifndef SYMBIOSIM_VOTER_HPP
#define SYMBIOSIM_VOTER_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "symbiosim/event_log.hpp"
#include "symbiosim/host_graph.hpp"
#include "symbiosim/rational.hpp"
#include "symbiosim/rng.hpp"

namespace symbiosim {

struct VoterParams {
  double alpha1 = 0.0, alpha2 = 0.0;  // reproduction rates
  double beta1 = 0.0, beta2 = 0.0;    // transmission rates
};

// Exact counterparts for the identity and inequality checks.
struct RationalRates {
  Rational alpha1, alpha2, beta1, beta2;
};

struct LocalFreqs {
  double f1 = 0.0, f2 = 0.0;  // own-host fractions (f1 + f2 = 1)
  double g1 = 0.0, g2 = 0.0;  // neighborhood fractions (g1 + g2 = 1)
};

// Two-type configuration on the vertices of g with host-level tallies kept
// incrementally.
class VoterState {
 public:
  explicit VoterState(const HostGraph& g);

  static VoterState from_types(const HostGraph& g, const std::vector<std::uint8_t>& types);
  // product measure: each vertex type 1 with probability theta
  static VoterState product_measure(const HostGraph& g, double theta, RngStream& rng);

  std::uint8_t type(std::int64_t vertex) const { return types_[vertex]; }
  std::int64_t n1() const { return n1_; }
  std::int32_t host_count1(std::int32_t host) const { return host_count1_[host]; }
  double time() const { return time_; }
  void set_time(double t) { time_ = t; }
  const std::vector<std::uint8_t>& types() const { return types_; }

  void assign(std::int64_t vertex, std::uint8_t new_type);

 private:
  const HostGraph* g_;
  std::vector<std::uint8_t> types_;        // 1 or 2 per vertex
  std::vector<std::int32_t> host_count1_;  // type-1 tally per host
  std::int64_t n1_ = 0;
  double time_ = 0.0;
};

LocalFreqs local_freqs(const HostGraph& g, const VoterState& state, std::int64_t vertex);

// One update of vertex x: resample its type from the local frequencies
// weighted by the rates. Throws on a vanishing denominator.
void voter_flip(const HostGraph& g, const VoterParams& params, VoterState& state,
                std::int64_t vertex, RngStream& rng);

enum class PairMode { same_host, adjacent_host, uniform };

struct DisagreementSample {
  double t = 0.0;
  std::int64_t n1 = 0;
  double disagree_prob = 0.0;
  std::int64_t pairs = 0;
};

struct VoterRunReport {
  std::vector<DisagreementSample> samples;
  std::int64_t final_n1 = 0;
  std::int64_t vertices = 0;
  bool consensus = false;  // absorbed before t_end
  VoterState final_state;
};

// Uniform-vertex updates at total rate |vertices| from the product measure
// pi_theta; disagreement is measured over freshly drawn vertex pairs at each
// requested sample time. Consensus states are absorbing and detected early.
VoterRunReport run_voter(const HostGraph& g, const VoterParams& params, double theta,
                         double t_end, const std::vector<double>& sample_times,
                         std::int64_t n_pairs, PairMode mode, RngStream& rng,
                         EventLog* log = nullptr);

// Same event loop from an explicit initial configuration.
VoterRunReport run_voter_from(const HostGraph& g, const VoterParams& params, VoterState state,
                              double t_end, const std::vector<double>& sample_times,
                              std::int64_t n_pairs, PairMode mode, RngStream& rng,
                              EventLog* log = nullptr);

struct PtQt {
  Rational p, q;
  bool no_local_mass = false;  // both formulas had zero numerator and denominator
};

// The selection-analysis quantities at host X for aggregated type-1 counts on
// a regular (p = 1) graph:
//   q = (2d a1 xi(X) + b1 sum_nbr xi) / (2dN (a1 + b1))
//   p = same numerator / full two-type denominator.
PtQt pt_qt(const HostGraph& g, const RationalRates& rates, const std::vector<std::int32_t>& counts,
           std::int32_t X);

struct SelectionDiagnostics {
  Rational qminus, qplus;  // extremes of q over (0,1)
  Rational c;              // (b1 - b2) / (2dN (a1 + b1))
};

// q ranges over numerators 2d a1 a + b1 b for a in 0..N, b in 0..2dN.
SelectionDiagnostics q_bounds(int d, std::int32_t N, const RationalRates& rates);

// | (1/N) sum_X xi(X) - sum_X q(X) |; exactly zero in rational arithmetic.
double frequency_identity_residual(const HostGraph& g, const VoterParams& params,
                                   const std::vector<std::int32_t>& counts);
Rational frequency_identity_residual_exact(const HostGraph& g, const RationalRates& rates,
                                           const std::vector<std::int32_t>& counts);

// Hosts with q in (0,1): bad when every neighbor is full, good otherwise.
struct SiteClasses {
  std::vector<std::int32_t> bad, good;
};
SiteClasses classify_sites(const HostGraph& g, const RationalRates& rates,
                           const std::vector<std::int32_t>& counts);

// P(type 1 grows without bound from K seeds) >= 1 - ((q- + q+)/(q-/(1-c) + q+))^K
double gambler_bound(int d, std::int32_t N, const VoterParams& params, std::int64_t K);
Rational gambler_ratio(int d, std::int32_t N, const RationalRates& rates);

// Threshold process: at each vertex update, with probability
// p = beta2/(beta2+gamma), gamma = kappa/(2dN), copy a uniform adjacent-host
// vertex; otherwise become type 1 iff some adjacent-host vertex is type 1.
// Requires a regular (p = 1) graph; records the full Harris history when a
// log is supplied.
VoterRunReport run_threshold(const HostGraph& g, double beta2, double kappa,
                             const std::vector<std::uint8_t>& init, double t_end, RngStream& rng,
                             EventLog* log = nullptr);

// Count of type-1 vertices run until it hits `up` or 0 under the full
// competition dynamics; used against the gambler's ruin bound.
struct RuinOutcome {
  bool reached_up = false;
  double time = 0.0;
};
RuinOutcome run_until_ruin(const HostGraph& g, const VoterParams& params, VoterState state,
                           std::int64_t up, double t_cap, RngStream& rng);

}  // namespace symbiosim

#endif
