#ifndef SYMBIOSIM_EVENT_LOG_HPP
#define SYMBIOSIM_EVENT_LOG_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace symbiosim {

// One recorded update of the graphical representation. `vertex` is the linear
// vertex index being redrawn at `time`; `aux` resolves the source:
//   vertical-copy:   aux = source slot within the same host
//   horizontal-copy: aux = ordinal into the vertex's horizontal neighborhood
//                    (host = neighbors[aux / N], slot = aux % N)
//   branch:          aux unused; sources are all 2dN adjacent-host vertices
enum class EventKind : std::uint8_t { vertical_copy = 0, horizontal_copy = 1, branch = 2 };

struct Event {
  std::uint32_t vertex = 0;
  double time = 0.0;
  EventKind kind = EventKind::vertical_copy;
  std::uint32_t aux = 0;
};

// Append-only record of a Harris construction, in global time order.
struct EventLog {
  std::vector<Event> events;

  void record(std::uint32_t vertex, double time, EventKind kind, std::uint32_t aux) {
    events.push_back({vertex, time, kind, aux});
  }

  // wire format: little-endian records (vertex u32, time f64, kind u8, aux u32)
  void write_file(const std::string& path) const;
  static EventLog read_file(const std::string& path);
};

}  // namespace symbiosim

#endif
