#include "symbiosim/oriented.hpp"

#include <cmath>
#include <stdexcept>

namespace symbiosim {

double OrientedLattice::wet_density(std::int32_t m) const {
  std::int64_t lattice_sites = 0, wet_sites = 0;
  for (std::int32_t z = 0; z < width; ++z) {
    if (((z + m) & 1) != 0) continue;
    ++lattice_sites;
    wet_sites += is_wet(z, m) ? 1 : 0;
  }
  return lattice_sites > 0 ? static_cast<double>(wet_sites) / lattice_sites : 0.0;
}

OrientedLattice run_oriented(std::int32_t width, std::int32_t height, double q, RngStream& rng) {
  if (q < 0.0 || q > 1.0) throw std::invalid_argument("q must be in [0,1]");
  OrientedLattice lat;
  lat.width = width;
  lat.height = height;
  lat.wet.assign(static_cast<std::size_t>(width) * height, 0);

  for (std::int32_t z = 0; z < width; ++z)
    if ((z & 1) == 0) lat.wet[z] = 1;  // row 0 fully wet

  for (std::int32_t m = 1; m < height; ++m) {
    for (std::int32_t z = 0; z < width; ++z) {
      if (((z + m) & 1) != 0) continue;
      const bool open = rng.uniform() < q;  // drawn for every site: shared
                                            // streams couple across q
      if (!open) continue;
      if (lat.is_wet(z - 1, m - 1) || lat.is_wet(z + 1, m - 1))
        lat.wet[static_cast<std::size_t>(m) * width + z] = 1;
    }
  }
  return lat;
}

double GoodSiteField::good_density(std::int32_t m) const {
  std::int64_t lattice_sites = 0, good_sites = 0;
  for (std::int32_t z = 0; z < width; ++z) {
    if (((z + m) & 1) != 0) continue;
    ++lattice_sites;
    good_sites += is_good(z, m) ? 1 : 0;
  }
  return lattice_sites > 0 ? static_cast<double>(good_sites) / lattice_sites : 0.0;
}

GoodSiteField extract_good_sites(const OccupancySamples& samples, std::int32_t threshold) {
  if (samples.at_level.empty()) throw std::runtime_error("missing occupancy samples");
  GoodSiteField field;
  field.width = static_cast<std::int32_t>(samples.hosts.size());
  field.height = static_cast<std::int32_t>(samples.at_level.size());
  field.good.assign(static_cast<std::size_t>(field.width) * field.height, 0);
  for (std::int32_t m = 0; m < field.height; ++m) {
    const auto& row = samples.at_level[m];
    if (row.size() != static_cast<std::size_t>(field.width))
      throw std::runtime_error("missing occupancy samples");
    for (std::int32_t z = 0; z < field.width; ++z) {
      if (((z + m) & 1) != 0) continue;
      if (row[z] >= threshold) field.good[static_cast<std::size_t>(m) * field.width + z] = 1;
    }
  }
  return field;
}

ChildBound child_bound(const GoodSiteField& field, std::int32_t m_cap) {
  ChildBound out;
  const std::int32_t top = std::min(m_cap, field.height - 1);
  for (std::int32_t m = 0; m < top; ++m) {
    for (std::int32_t z = 1; z + 1 < field.width; ++z) {
      if (!field.is_good(z, m)) continue;
      ++out.parents;
      if (field.is_good(z - 1, m + 1) && field.is_good(z + 1, m + 1)) ++out.both_good;
    }
  }
  if (out.parents > 0) {
    out.estimate = static_cast<double>(out.both_good) / static_cast<double>(out.parents);
    out.wilson_low = wilson_lower_bound(out.both_good, out.parents);
  }
  return out;
}

double wilson_lower_bound(std::int64_t successes, std::int64_t trials, double z) {
  if (trials == 0) return 0.0;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = p + z2 / (2.0 * n);
  const double margin = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return (center - margin) / denom;
}

}  // namespace symbiosim
