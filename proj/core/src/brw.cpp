#include "symbiosim/brw.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace symbiosim {

std::string path_count_to_string(PathCount v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s += static_cast<char>('0' + static_cast<int>(v % 10));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

namespace {

PathCount checked_add(PathCount a, PathCount b) {
  const PathCount s = a + b;
  if (s < a) throw std::overflow_error("path count overflow; use wide integers");
  return s;
}

}  // namespace

PathCountTable::PathCountTable(int d, int n_max) : d_(d), n_max_(n_max) {
  if (d < 1 || d > 3) throw std::invalid_argument("path counts support d in 1..3");
  if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
  box_side_ = 2 * n_max + 1;
  box_size_ = 1;
  for (int i = 0; i < d; ++i) box_size_ *= static_cast<std::size_t>(box_side_);
  mu_.assign(static_cast<std::size_t>(n_max + 1) * (n_max + 1),
             std::vector<PathCount>(box_size_, 0));
}

std::size_t PathCountTable::flat(const Coord& x) const {
  std::size_t idx = 0;
  for (int i = 0; i < d_; ++i) {
    const std::int32_t v = x[i] + n_max_;
    if (v < 0 || v >= box_side_) return box_size_;  // out of reach
    idx = idx * box_side_ + static_cast<std::size_t>(v);
  }
  return idx;
}

PathCount PathCountTable::mu(int n, int k, const Coord& x) const {
  if (n < 0 || n > n_max_ || k < 0 || k > n_max_) return 0;
  const std::size_t site = flat(x);
  if (site >= box_size_) return 0;
  return mu_[static_cast<std::size_t>(n) * (n_max_ + 1) + k][site];
}

PathCount PathCountTable::level_total(int n) const {
  PathCount total = 0;
  for (int k = 0; k <= n_max_; ++k)
    for (const PathCount v : mu_[static_cast<std::size_t>(n) * (n_max_ + 1) + k])
      total = checked_add(total, v);
  return total;
}

PathCountTable count_paths(int d, int n_max) {
  PathCountTable table(d, n_max);
  const int stride = n_max + 1;

  Coord origin{};
  table.mu_[0][table.flat(origin)] = 1;  // empty path

  // mu[n][k] = mu[n-1][k-1] (hold) + sum over neighbors of mu[n-1][k] (move)
  for (int n = 1; n <= n_max; ++n) {
    for (int k = 0; k <= n; ++k) {
      auto& cur = table.mu_[static_cast<std::size_t>(n) * stride + k];
      if (k >= 1) {
        const auto& hold = table.mu_[static_cast<std::size_t>(n - 1) * stride + (k - 1)];
        for (std::size_t s = 0; s < cur.size(); ++s) cur[s] = hold[s];
      }
      const auto& move = table.mu_[static_cast<std::size_t>(n - 1) * stride + k];
      // iterate sites of the box, accumulating neighbor contributions
      std::vector<std::int32_t> coord(static_cast<std::size_t>(d), -n_max);
      for (std::size_t s = 0; s < cur.size(); ++s) {
        PathCount acc = cur[s];
        std::size_t axis_stride = 1;
        for (int ax = d - 1; ax >= 0; --ax) {
          if (coord[ax] > -n_max) acc = checked_add(acc, move[s - axis_stride]);
          if (coord[ax] < n_max) acc = checked_add(acc, move[s + axis_stride]);
          axis_stride *= static_cast<std::size_t>(table.box_side_);
        }
        cur[s] = acc;
        int ax = d - 1;
        while (ax >= 0 && ++coord[ax] > n_max) coord[ax--] = -n_max;
      }
    }
  }
  return table;
}

OccupancyValue expected_occupancy(const PathCountTable& table, const BrwParams& params, double t,
                                  const Coord& x, double tol) {
  const int d = table.dim();
  const int n_max = table.n_max();
  const double rate = params.alpha_bar + 2.0 * d * params.beta_bar;

  // series value
  double value = 0.0;
  double tn_over_fact = 1.0;  // t^n / n!
  for (int n = 0; n <= n_max; ++n) {
    double level = 0.0;
    double ak = 1.0;  // alpha_bar^k
    for (int k = 0; k <= n; ++k) {
      const PathCount cnt = table.mu(n, k, x);
      if (cnt != 0)
        level += static_cast<double>(cnt) * ak * std::pow(params.beta_bar, n - k);
      ak *= params.alpha_bar;
    }
    value += level * tn_over_fact;
    tn_over_fact *= t / (n + 1);
  }
  value *= std::exp(-t);

  // remainder: sum over all sites and loop counts is (rate*t)^n/n!, so the
  // per-site tail past n_max is e^-t * (e^{rate t} - partial sum)
  double partial = 0.0;
  double term = 1.0;
  for (int n = 0; n <= n_max; ++n) {
    partial += term;
    term *= rate * t / (n + 1);
  }
  double tail = std::exp(rate * t - t) - partial * std::exp(-t);
  tail = std::max(tail, 0.0);
  if (tail > tol) throw std::runtime_error("increase n_max");
  return {value, tail};
}

OccupancyValue expected_occupancy(const BrwParams& params, int d, double t, const Coord& x,
                                  int n_max, double tol) {
  return expected_occupancy(count_paths(d, n_max), params, t, x, tol);
}

double lazy_walk_step_prob(const BrwParams& params, int d, int n, const Coord& x) {
  if (n < 0) throw std::invalid_argument("n must be >= 0");
  const double rate = params.alpha_bar + 2.0 * d * params.beta_bar;
  if (rate <= 0.0) throw std::invalid_argument("alpha_bar + 2d beta_bar must be positive");
  const double hold = params.alpha_bar / rate;
  const double move = params.beta_bar / rate;

  const std::int32_t side = 2 * n + 1;
  std::size_t size = 1;
  for (int i = 0; i < d; ++i) size *= static_cast<std::size_t>(side);
  std::vector<double> dist(size, 0.0), next(size, 0.0);

  auto flat = [&](const Coord& c) {
    std::size_t idx = 0;
    for (int i = 0; i < d; ++i) idx = idx * side + static_cast<std::size_t>(c[i] + n);
    return idx;
  };
  dist[flat(Coord{})] = 1.0;

  for (int step = 0; step < n; ++step) {
    std::fill(next.begin(), next.end(), 0.0);
    std::vector<std::int32_t> coord(static_cast<std::size_t>(d), -n);
    for (std::size_t s = 0; s < size; ++s) {
      const double mass = dist[s];
      if (mass > 0.0) {
        next[s] += hold * mass;
        std::size_t axis_stride = 1;
        for (int ax = d - 1; ax >= 0; --ax) {
          if (coord[ax] > -n) next[s - axis_stride] += move * mass;
          if (coord[ax] < n) next[s + axis_stride] += move * mass;
          axis_stride *= static_cast<std::size_t>(side);
        }
      }
      int ax = d - 1;
      while (ax >= 0 && ++coord[ax] > n) coord[ax--] = -n;
    }
    dist.swap(next);
  }

  for (int i = 0; i < d; ++i)
    if (x[i] < -n || x[i] > n) return 0.0;
  return dist[flat(x)];
}

BrwRunReport run_brw(const BrwParams& params, int d, std::int32_t box_radius,
                     std::int32_t init_at_origin, double t_end, bool truncated, RngStream& rng) {
  if (d < 1 || d > 3) throw std::invalid_argument("run_brw supports d in 1..3");
  const std::int32_t side = 2 * box_radius + 1;
  std::size_t n_sites = 1;
  for (int i = 0; i < d; ++i) n_sites *= static_cast<std::size_t>(side);

  std::vector<std::int32_t> counts(n_sites, 0);
  std::vector<std::int64_t> entries;  // flat site per particle

  // flat index arithmetic on [-R, R]^d, axis d-1 fastest
  std::vector<std::int64_t> axis_stride(static_cast<std::size_t>(d));
  axis_stride[d - 1] = 1;
  for (int ax = d - 2; ax >= 0; --ax) axis_stride[ax] = axis_stride[ax + 1] * side;

  const std::int64_t origin = static_cast<std::int64_t>(n_sites / 2);
  for (std::int32_t i = 0; i < init_at_origin; ++i) {
    entries.push_back(origin);
    ++counts[origin];
  }

  BrwRunReport report;
  std::int32_t max_count = init_at_origin;
  double time = 0.0;
  double next_sample = 1.0;
  const double per_particle = 1.0 + params.alpha_bar + 2.0 * d * params.beta_bar;

  auto axis_pos = [&](std::int64_t site, int ax) {
    return static_cast<std::int32_t>((site / axis_stride[ax]) % side);
  };

  report.trajectory.push_back({0.0, static_cast<std::int64_t>(entries.size()), max_count});
  while (!entries.empty()) {
    const double dt = rng.exponential(static_cast<double>(entries.size()) * per_particle);
    const double t_next = time + dt;
    while (next_sample <= t_end && next_sample < t_next) {
      report.trajectory.push_back({next_sample, static_cast<std::int64_t>(entries.size()), max_count});
      next_sample *= 2.0;
    }
    if (t_next >= t_end) {
      time = t_end;
      break;
    }
    time = t_next;

    const std::size_t entry = rng.index(entries.size());
    const std::int64_t site = entries[entry];
    const double u = rng.uniform() * per_particle;
    if (u < 1.0) {
      --counts[site];
      entries[entry] = entries.back();
      entries.pop_back();
      continue;
    }
    std::int64_t target = site;
    if (u >= 1.0 + params.alpha_bar) {
      const std::size_t dir = rng.index(static_cast<std::size_t>(2 * d));
      const int ax = static_cast<int>(dir / 2);
      const int sign = (dir % 2 == 0) ? 1 : -1;
      const std::int32_t pos = axis_pos(site, ax) + sign;
      if (pos < 0 || pos >= side) {
        ++report.leaked;  // absorbed at the box boundary
        continue;
      }
      target = site + sign * axis_stride[ax];
    }
    if (truncated && counts[target] > params.trunc_m) continue;  // birth suppressed
    ++counts[target];
    max_count = std::max(max_count, counts[target]);
    entries.push_back(target);
  }

  if (entries.empty()) {
    while (next_sample <= t_end) {
      report.trajectory.push_back({next_sample, 0, max_count});
      next_sample *= 2.0;
    }
  }
  report.survived = !entries.empty();
  report.extinction_time = report.survived ? t_end : time;
  report.trajectory.push_back({t_end, static_cast<std::int64_t>(entries.size()), max_count});
  report.dim = d;
  report.box_radius = box_radius;
  report.final_counts = std::move(counts);
  return report;
}

std::int32_t BrwRunReport::final_count_at(const Coord& x) const {
  std::size_t idx = 0;
  const std::int32_t side = 2 * box_radius + 1;
  for (int i = 0; i < dim; ++i) {
    const std::int32_t v = x[i] + box_radius;
    if (v < 0 || v >= side) return 0;
    idx = idx * static_cast<std::size_t>(side) + static_cast<std::size_t>(v);
  }
  return final_counts[idx];
}

}  // namespace symbiosim
