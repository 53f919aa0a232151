#include "symbiosim/render.hpp"

#include <cmath>
#include <stdexcept>

namespace symbiosim {

namespace {

constexpr std::uint8_t kClosed[3] = {255, 255, 255};
constexpr std::uint8_t kOpenNonGiant[3] = {200, 200, 200};
constexpr std::uint8_t kGiant[3] = {0, 0, 0};
constexpr std::uint8_t kEmptySlot[3] = {160, 160, 160};
constexpr std::uint8_t kSymbiont[3] = {0, 0, 0};
constexpr std::uint8_t kType2[3] = {120, 120, 120};

std::int32_t block_side(std::int32_t slots) {
  const auto b = static_cast<std::int32_t>(std::ceil(std::sqrt(static_cast<double>(slots))));
  if (b * b < slots) throw std::runtime_error("block side does not cover N slots");
  return b;
}

template <typename SlotColor>
Image render_blocks(const SiteField& field, const HostGraph& g, SlotColor&& slot_color) {
  const LatticeSpec& spec = g.lattice();
  if (spec.d != 2) throw std::invalid_argument("snapshot rendering requires d = 2");
  const std::int32_t b = block_side(g.slots());
  Image img = make_image(spec.side * b, spec.side * b);

  for (std::int64_t site = 0; site < spec.site_count(); ++site) {
    const Coord c = site_coord(spec, site);
    const std::int32_t row = c[0], col = c[1];
    const std::int32_t host = g.host_of_site(site);
    const bool open = field.is_open(site);
    for (std::int32_t i = 0; i < b * b; ++i) {
      const std::int32_t px = col * b + i % b;
      const std::int32_t py = row * b + i / b;
      const std::uint8_t* color = kClosed;
      if (host >= 0 && i < g.slots()) color = slot_color(host, i);
      else if (open) color = kEmptySlot;  // non-giant open sites carry idle slots
      img.set(px, py, color[0], color[1], color[2]);
    }
  }
  return img;
}

}  // namespace

Image render_percolation(const ClusterLabels& labels) {
  const LatticeSpec& spec = labels.spec;
  if (spec.d != 2) throw std::invalid_argument("percolation rendering requires d = 2");
  Image img = make_image(spec.side, spec.side);
  for (std::int64_t site = 0; site < spec.site_count(); ++site) {
    const Coord c = site_coord(spec, site);
    const std::uint8_t* color = kClosed;
    if (labels.label[site] == labels.giant) color = kGiant;
    else if (labels.label[site] >= 0) color = kOpenNonGiant;
    img.set(c[1], c[0], color[0], color[1], color[2]);
  }
  return img;
}

Image render_contact(const SiteField& field, const HostGraph& g, const ContactState& state) {
  return render_blocks(field, g, [&](std::int32_t host, std::int32_t slot) {
    return slot < state.count(host) ? kSymbiont : kEmptySlot;
  });
}

Image render_voter(const SiteField& field, const HostGraph& g, const VoterState& state) {
  return render_blocks(field, g, [&](std::int32_t host, std::int32_t slot) {
    return state.type(g.index({host, slot})) == 1 ? kSymbiont : kType2;
  });
}

}  // namespace symbiosim
