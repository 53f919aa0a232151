#ifndef SYMBIOSIM_DUALITY_HPP
#define SYMBIOSIM_DUALITY_HPP

#include <cstdint>
#include <vector>

#include "symbiosim/event_log.hpp"
#include "symbiosim/host_graph.hpp"
#include "symbiosim/rng.hpp"
#include "symbiosim/voter.hpp"

namespace symbiosim {

// Coalescing ancestry walkers of the neutral model. Each walker jumps
// vertically (uniform slot of its own host) at rate alpha/(alpha+beta) and
// horizontally (uniform slot of a uniform adjacent host) at rate
// beta/(alpha+beta); walkers landing on an occupied vertex merge.
struct CoalescingRun {
  std::vector<std::int64_t> final_set;                     // sorted vertices at dual time T
  std::vector<std::pair<double, std::int64_t>> size_history;  // (s, walker count) after merges
};

CoalescingRun run_coalescing_dual(const HostGraph& g, double alpha, double beta,
                                  const std::vector<std::int64_t>& B, double T, RngStream& rng);

// Dual read off a recorded neutral forward run: the reversed arrows of the
// events in (0, T]. Returns the ancestor set at forward time 0.
std::vector<std::int64_t> coalescing_dual_from_log(const HostGraph& g, const EventLog& log,
                                                   const std::vector<std::int64_t>& B, double T);

struct DualityCheck {
  double lhs = 0.0, lhs_stderr = 0.0;  // forward: P(no type 1 on B at time t)
  double rhs = 0.0, rhs_stderr = 0.0;  // dual: E (1-theta)^(ancestor count)
  double z = 0.0;
};

// Monte Carlo test of P(Theta^1_t /\ B = empty) = E (1-theta)^|dual set|.
DualityCheck duality_check(const HostGraph& g, double alpha, double beta, double theta,
                           const std::vector<std::int64_t>& B, double t, std::int64_t replicas,
                           std::uint64_t master_seed, int threads = 1);

// Meeting/separation bookkeeping for two labeled ancestry walkers. A meeting
// starts when a horizontal jump puts the walkers on one host; during the
// meeting each vertical redraw coalesces with probability 1/N; the meeting
// ends at the first horizontal jump. The arrival jump itself is not a
// coalescence opportunity, which is what makes the closed form
// N beta/(alpha + N beta) exact on any host graph.
struct MeetingStats {
  std::int64_t meetings_completed = 0;  // separations plus coalescences
  std::int64_t separations = 0;         // meetings survived (tau > t_i)
  std::int64_t coalescences = 0;
  std::int64_t meetings_started = 0;    // J summed over replicas
  double survive_prob = 0.0;            // separations / meetings_completed
  double survive_stderr = 0.0;
};

MeetingStats meeting_separation_stats(const HostGraph& g, double alpha, double beta,
                                      std::int64_t x, std::int64_t y, double T,
                                      std::int64_t replicas, std::uint64_t master_seed,
                                      int threads = 1);

// Branching-coalescing dual of the threshold process: particles jump with
// probability p_jump to a uniform adjacent-host vertex and otherwise are
// replaced by all 2dN adjacent-host vertices; duplicates merge.
struct BranchingCoalescingRun {
  std::vector<std::int64_t> final_set;
  std::size_t max_size = 0;
};

BranchingCoalescingRun run_branching_coalescing(const HostGraph& g, double p_jump,
                                                std::int64_t x, double T, RngStream& rng,
                                                std::int64_t max_events = -1);

// Dual set of the threshold process read off a recorded log (reversed arrows).
std::vector<std::int64_t> branching_dual_from_log(const HostGraph& g, const EventLog& log,
                                                  std::int64_t x, double T);

// Replays a threshold-process log forward from `init` and checks the pathwise
// implication: a type-1 ancestor in the dual set forces type 1 at (x, T).
// Returns true when the implication holds (vacuously when no ancestor is 1).
bool pseudo_dual_check(const HostGraph& g, const EventLog& log,
                       const std::vector<std::uint8_t>& init, std::int64_t x, double T);

// Forward replay of a threshold log (shared by pseudo_dual_check and tests).
std::vector<std::uint8_t> replay_threshold_log(const HostGraph& g, const EventLog& log,
                                               const std::vector<std::uint8_t>& init, double T);

struct MissEstimate {
  double miss_prob = 0.0;
  double stderr_ = 0.0;
};

// P(dual set at dual time T = K^2 misses the ball B(X_center, K)); x should
// lie in B(X_center, 3K).
MissEstimate dual_hit_ball(const HostGraph& g, double p_jump, std::int64_t x,
                           std::int32_t x_center_host, std::int32_t K, std::int64_t replicas,
                           std::uint64_t master_seed, int threads = 1);

// Dominating reflected walk: right rate r = p/(2d), left rate l = r + (1-p)/d.
struct ReflectedRates {
  double r = 0.0, l = 0.0;
  double a() const { return r / l; }
};
ReflectedRates reflected_rates(int d, double p_jump);

// P(walk jumping right at rate l and left at rate r ever hits 0 from k);
// closed form a^k with a = r/l.
double ruin_hit_mc(double r, double l, std::int32_t k, std::int64_t replicas,
                   std::uint64_t master_seed, std::int32_t escape_cap = 512);

// First-step linear system l(u_{k+1}-u_k) = r(u_k-u_{k-1}) truncated where
// a^R underflows the requested accuracy.
std::vector<double> ruin_hit_linear_solve(double r, double l, std::int32_t k_max);

}  // namespace symbiosim

#endif
