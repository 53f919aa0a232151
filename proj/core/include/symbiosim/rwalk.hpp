#ifndef SYMBIOSIM_RWALK_HPP
#define SYMBIOSIM_RWALK_HPP

#include <cstdint>
#include <vector>

#include "symbiosim/host_graph.hpp"
#include "symbiosim/rng.hpp"

namespace symbiosim {

// Walks live on the hosts (the giant-cluster sites). Two kernels:
//   continuous: jump at rate 1 to a uniform neighbor
//   lazy:       hold with probability 1/2, else uniform neighbor
enum class WalkMode { continuous_rate1, lazy_discrete };

// one lazy step: out = P * in
void lazy_step(const HostGraph& g, const std::vector<double>& in, std::vector<double>& out);

// continuous kernel by uniformization at rate 1; relative tail below 1e-14
void continuous_step(const HostGraph& g, std::vector<double>& dist, double dt);

// distribution of the walk started at host A after n steps / time t
std::vector<double> heat_kernel(const HostGraph& g, WalkMode mode, std::int32_t A, double n_or_t);

// path-reversal degree bounds on the continuous kernel:
//   (2d)^-1 p_t(B,A) <= p_t(A,B) <= 2d p_t(B,A)
bool degree_bound_check(const HostGraph& g, std::int32_t A, std::int32_t B, double t);

struct CollisionEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
};

// Two independent rate-1 walks from A and B; collisions are counted at jump
// epochs (post-jump equality), plus one for A == B at time zero.
CollisionEstimate collision_count(const HostGraph& g, std::int32_t A, std::int32_t B, double T,
                                  std::int64_t replicas, std::uint64_t master_seed,
                                  int threads = 1);

// Counts at several horizons along the same trajectories, so differences
// between horizons carry no cross-replica noise. `horizons` must be sorted.
std::vector<CollisionEstimate> collision_count_multi(const HostGraph& g, std::int32_t A,
                                                     std::int32_t B,
                                                     const std::vector<double>& horizons,
                                                     std::int64_t replicas,
                                                     std::uint64_t master_seed, int threads = 1);

// quadrature oracle 2 * integral_0^T sum_B p_t(A,B) p_t(B,A) dt
double collision_integral(const HostGraph& g, std::int32_t A, double T, double dt = 0.1);

// Two-walk lazy chain: one coordinate chosen with probability 1/2 moves by the
// lazy rule, the other stands still.
struct WalkPair {
  std::int32_t a = 0, b = 0;
};
void two_walk_chain_step(const HostGraph& g, WalkPair& pair, RngStream& rng);

struct CollisionWindowMoments {
  double mean = 0.0;     // E I_k
  double second = 0.0;   // E I_k^2
  double pz_bound = 0.0; // (E I_k)^2 / (4 E I_k^2)
};

// I_k = number of times n in [k, k^2] at which the two-walk chain collides at
// a site within Euclidean distance sqrt(n) of both A and B.
CollisionWindowMoments collision_moments(const HostGraph& g, std::int32_t A, std::int32_t B,
                                         std::int32_t k, std::int64_t replicas,
                                         std::uint64_t master_seed, int threads = 1);

struct CollisionWeights {
  double F = 0.0;
  double F_rho = 0.0;
  double gap_bound = 0.0;  // 2 exp(-2n (1/2 - rho)^2)
};

// F(n)     = sum_{j=0..n}                2^-n C(n,j) q_j(A,X) q_{n-j}(B,X)
// F_rho(n) = sum_{j=floor(rho n)..ceil((1-rho) n)}  same summand
CollisionWeights f_and_f_rho(const HostGraph& g, std::int32_t A, std::int32_t B, std::int32_t X,
                             std::int32_t n, double rho);

// Diagnostic only: least-squares fit of log q_n(A,B) against |A-B|^2/n over
// reachable B, echoing the sub-Gaussian envelope shape.
struct EnvelopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};
EnvelopeFit envelope_fit(const HostGraph& g, std::int32_t A, std::int32_t n);

}  // namespace symbiosim

#endif
