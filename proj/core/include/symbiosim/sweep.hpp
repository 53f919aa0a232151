#ifndef SYMBIOSIM_SWEEP_HPP
#define SYMBIOSIM_SWEEP_HPP

#include <string>
#include <vector>

#include "symbiosim/config.hpp"

namespace symbiosim {

// Phase-diagram driver. Modes:
//   contact:   survival fraction over a (p, N, alpha, beta) grid
//   voter:     neutral disagreement probability over a (p, N, alpha, beta, theta) grid
//   selection: invasion frequency (type-1 count reaches `up` before 0) over a
//              (N, alpha1, alpha2, beta1, beta2) grid on the p=1 torus
// Rows follow the nested grid order; every grid point r uses streams derived
// from (seed, point index, replica), so the CSV body is byte-stable across
// thread counts.
std::string run_sweep(Config& cfg, std::uint64_t master_seed, int threads);

// Deterministic initial infection: the `count` hosts closest to the torus
// center (ties by host id), each filled with `fill` symbionts.
std::vector<std::int32_t> central_hosts(const class HostGraph& g, std::int32_t count);

}  // namespace symbiosim

#endif
