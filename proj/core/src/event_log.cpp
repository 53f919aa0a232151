#include "symbiosim/event_log.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace symbiosim {

static_assert(std::endian::native == std::endian::little,
              "event-log serialization assumes a little-endian host");

namespace {
constexpr std::size_t kRecordBytes = 4 + 8 + 1 + 4;
}

void EventLog::write_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  char rec[kRecordBytes];
  for (const Event& e : events) {
    std::memcpy(rec, &e.vertex, 4);
    std::memcpy(rec + 4, &e.time, 8);
    rec[12] = static_cast<char>(e.kind);
    std::memcpy(rec + 13, &e.aux, 4);
    out.write(rec, sizeof(rec));
  }
}

EventLog EventLog::read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read file: " + path);
  EventLog log;
  char rec[kRecordBytes];
  while (in.read(rec, sizeof(rec))) {
    Event e;
    std::memcpy(&e.vertex, rec, 4);
    std::memcpy(&e.time, rec + 4, 8);
    e.kind = static_cast<EventKind>(rec[12]);
    std::memcpy(&e.aux, rec + 13, 4);
    log.events.push_back(e);
  }
  return log;
}

}  // namespace symbiosim
