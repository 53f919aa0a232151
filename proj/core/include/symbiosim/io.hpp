#ifndef SYMBIOSIM_IO_HPP
#define SYMBIOSIM_IO_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace symbiosim {

// CSV with '.' decimals, '\n' line endings, a mandatory header row, and the
// resolved run configuration echoed as leading '#' lines. All numbers are
// formatted through one code path so identical runs produce identical bytes.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> config_echo = {});

  void set_columns(const std::vector<std::string>& names);

  CsvWriter& field(const std::string& v);
  CsvWriter& field(std::int64_t v);
  CsvWriter& field(double v);
  void end_row();

  const std::string& str() const { return body_; }
  void write_file(const std::string& path) const;

  static std::string format_double(double v);

 private:
  std::string body_;
  bool row_open_ = false;
};

// Binary P6 PPM.
struct Image {
  std::int32_t width = 0;
  std::int32_t height = 0;
  std::vector<std::uint8_t> rgb;  // 3 bytes per pixel, row-major

  void set(std::int32_t x, std::int32_t y, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    const std::size_t off = 3 * (static_cast<std::size_t>(y) * width + x);
    rgb[off] = r;
    rgb[off + 1] = g;
    rgb[off + 2] = b;
  }

  void write_ppm(const std::string& path) const;
};

Image make_image(std::int32_t width, std::int32_t height);

}  // namespace symbiosim

#endif
