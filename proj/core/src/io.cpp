#include "symbiosim/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace symbiosim {

CsvWriter::CsvWriter(std::vector<std::string> config_echo) {
  for (const auto& line : config_echo) body_ += "# " + line + "\n";
}

void CsvWriter::set_columns(const std::vector<std::string>& names) {
  for (std::size_t i = 0; i < names.size(); ++i) body_ += (i ? "," : "") + names[i];
  body_ += '\n';
}

CsvWriter& CsvWriter::field(const std::string& v) {
  if (row_open_) body_ += ',';
  body_ += v;
  row_open_ = true;
  return *this;
}

CsvWriter& CsvWriter::field(std::int64_t v) { return field(std::to_string(v)); }

CsvWriter& CsvWriter::field(double v) { return field(format_double(v)); }

void CsvWriter::end_row() {
  body_ += '\n';
  row_open_ = false;
}

std::string CsvWriter::format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

void CsvWriter::write_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << body_;
}

Image make_image(std::int32_t width, std::int32_t height) {
  Image img;
  img.width = width;
  img.height = height;
  img.rgb.assign(3 * static_cast<std::size_t>(width) * height, 255);
  return img;
}

void Image::write_ppm(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << "P6\n" << width << ' ' << height << "\n255\n";
  out.write(reinterpret_cast<const char*>(rgb.data()), static_cast<std::streamsize>(rgb.size()));
}

}  // namespace symbiosim
