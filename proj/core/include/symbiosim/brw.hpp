#ifndef SYMBIOSIM_BRW_HPP
#define SYMBIOSIM_BRW_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "symbiosim/lattice.hpp"
#include "symbiosim/rng.hpp"

namespace symbiosim {

// Effective rates of the comparison walks: death rate 1 per particle, birth
// rate alpha_bar to the particle's own site and beta_bar to each of the 2d
// neighbors. The truncated variant disables births into sites holding more
// than trunc_m particles, so site counts never exceed trunc_m + 1.
struct BrwParams {
  double alpha_bar = 0.0;
  double beta_bar = 0.0;
  double delta = 0.0;       // thinning used to derive the bars, bookkeeping only
  std::int32_t trunc_m = 0; // truncation level M
};

using PathCount = unsigned __int128;

std::string path_count_to_string(PathCount v);

// mu[n][k][X]: lattice paths 0 -> X of length n with k holds ("loops").
// Exact integers; throws on 128-bit overflow.
class PathCountTable {
 public:
  PathCountTable(int d, int n_max);

  int dim() const { return d_; }
  int n_max() const { return n_max_; }

  // X given as displacement coordinates in [-n_max, n_max]^d
  PathCount mu(int n, int k, const Coord& x) const;

  // sum over k and X for one n; equals (2d+1)^n
  PathCount level_total(int n) const;

  friend PathCountTable count_paths(int d, int n_max);

 private:
  std::size_t flat(const Coord& x) const;
  int d_;
  int n_max_;
  std::int32_t box_side_;
  std::size_t box_size_;
  std::vector<std::vector<PathCount>> mu_;  // [n*(n_max+1)+k][site]
};

PathCountTable count_paths(int d, int n_max);

struct OccupancyValue {
  double value = 0.0;
  double tail_bound = 0.0;  // remainder of the series past n_max
};

// Expected occupancy of site X at time t for the untruncated walk started
// from one particle at the origin:
//   sum_n sum_k mu^(n,k)(0,X) alpha_bar^k beta_bar^(n-k) t^n/n! e^(-t).
// Throws "increase n_max" when the factorial tail exceeds tol.
OccupancyValue expected_occupancy(const BrwParams& params, int d, double t, const Coord& x,
                                  int n_max, double tol = 1e-9);
OccupancyValue expected_occupancy(const PathCountTable& table, const BrwParams& params, double t,
                                  const Coord& x, double tol = 1e-9);

// P(U_n = X | U_0 = 0) for the lazy walk that holds with probability
// alpha_bar/(alpha_bar + 2d beta_bar) and otherwise steps uniformly.
double lazy_walk_step_prob(const BrwParams& params, int d, int n, const Coord& x);

struct BrwTrajectoryPoint {
  double t = 0.0;
  std::int64_t total = 0;
  std::int32_t max_site_count = 0;
};

struct BrwRunReport {
  bool survived = false;
  double extinction_time = 0.0;
  std::int64_t leaked = 0;  // births killed at the box boundary
  std::vector<BrwTrajectoryPoint> trajectory;
  int dim = 1;
  std::int32_t box_radius = 0;
  std::vector<std::int32_t> final_counts;  // dense box, axis d-1 fastest

  std::int32_t final_count_at(const Coord& x) const;
};

// Event-driven run on the box [-box_radius, box_radius]^d with absorbing
// boundary; killed boundary births are tallied in `leaked` so callers can
// bound the finite-box error.
BrwRunReport run_brw(const BrwParams& params, int d, std::int32_t box_radius,
                     std::int32_t init_at_origin, double t_end, bool truncated, RngStream& rng);

}  // namespace symbiosim

#endif
