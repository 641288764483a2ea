// Copyright 2026 The ghostimg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ghostimg/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <vector>

namespace ghostimg {
namespace {

Error parse_error(const std::string& what) { return Error(ErrorCode::kParse, what); }

// ---------------------------------------------------------------- PGM helpers

class PgmHeaderReader {
 public:
  explicit PgmHeaderReader(std::string_view bytes) : bytes_(bytes) {}

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const char c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f') {
        ++pos_;
      } else {
        break;
      }
    }
  }

  long number(const char* what) {
    skip_space_and_comments();
    long v = 0;
    auto [ptr, ec] = std::from_chars(bytes_.data() + pos_, bytes_.data() + bytes_.size(), v);
    if (ec != std::errc() || v < 0) {
      throw parse_error(std::string("malformed PGM: bad ") + what);
    }
    pos_ = static_cast<std::size_t>(ptr - bytes_.data());
    return v;
  }

  std::size_t pos() const { return pos_; }
  void advance(std::size_t n) { pos_ += n; }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

// ------------------------------------------------------------ Text helpers

std::string format_real(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

class LineReader {
 public:
  explicit LineReader(std::string_view text) {
    std::size_t start = 0;
    while (start < text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      std::string_view line = text.substr(start, end - start);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      lines_.push_back(line);
      start = end + 1;
    }
  }

  void expect_magic(std::string_view magic) {
    const std::string_view family = magic.substr(0, magic.size() - 1);
    if (lines_.empty()) throw parse_error("empty file, expected " + std::string(magic));
    const std::string_view first = lines_[0];
    if (first != magic) {
      if (first.starts_with(family)) {
        throw Error(ErrorCode::kVersion, "unsupported version '" + std::string(first) +
                                             "', expected " + std::string(magic));
      }
      throw parse_error("bad magic '" + std::string(first) + "', expected " +
                        std::string(magic));
    }
    next_ = 1;
  }

  std::string_view field(std::string_view key) {
    if (next_ >= lines_.size()) throw parse_error("missing header field '" + std::string(key) + "'");
    const std::string_view line = lines_[next_++];
    if (!line.starts_with(key) || line.size() <= key.size() + 1 || line[key.size()] != ' ') {
      throw parse_error("expected header field '" + std::string(key) + "', got '" +
                        std::string(line) + "'");
    }
    return line.substr(key.size() + 1);
  }

  std::vector<std::string_view> body() const {
    return std::vector<std::string_view>(lines_.begin() + static_cast<std::ptrdiff_t>(next_),
                                         lines_.end());
  }

 private:
  std::vector<std::string_view> lines_;
  std::size_t next_ = 0;
};

template <typename T>
T parse_int(std::string_view text, std::string_view what) {
  T v{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw parse_error("bad " + std::string(what) + " '" + std::string(text) + "'");
  }
  return v;
}

double parse_real(std::string_view text, std::string_view what) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw parse_error("bad " + std::string(what) + " '" + std::string(text) + "'");
  }
  return v;
}

struct CommonHeader {
  std::size_t n = 0;
  int width = 0;
  int height = 0;
};

CommonHeader read_counts(LineReader& in) {
  CommonHeader h;
  h.n = parse_int<std::size_t>(in.field("n"), "n");
  h.width = parse_int<int>(in.field("width"), "width");
  h.height = parse_int<int>(in.field("height"), "height");
  if (h.n == 0) throw parse_error("n must be at least 1");
  check_dimensions(h.width, h.height);
  return h;
}

std::vector<std::string_view> exact_body(const LineReader& in, std::size_t expected) {
  auto body = in.body();
  if (body.size() != expected) {
    throw Error(ErrorCode::kCountMismatch, "header promises " + std::to_string(expected) +
                                               " values but the body has " +
                                               std::to_string(body.size()));
  }
  return body;
}

void write_counts(std::ostringstream& out, std::size_t n, int width, int height) {
  out << "n " << n << "\nwidth " << width << "\nheight " << height << "\n";
}

}  // namespace

// --------------------------------------------------------------------- PGM

ObjectImage decode_pgm(std::string_view bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5')) {
    throw parse_error("unsupported PGM magic; expected P2 or P5");
  }
  const bool plain = bytes[1] == '2';
  PgmHeaderReader in(bytes);
  in.advance(2);
  const long width = in.number("width");
  const long height = in.number("height");
  const long maxval = in.number("maxval");
  if (width <= 0 || height <= 0 || width > 65536 || height > 65536) {
    throw parse_error("malformed PGM: bad dimensions");
  }
  if (maxval < 1 || maxval > 65535) throw parse_error("malformed PGM: maxval must be 1..65535");

  const auto pixels = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  std::vector<double> data(pixels);
  const double scale = static_cast<double>(maxval);
  if (plain) {
    for (std::size_t i = 0; i < pixels; ++i) {
      in.skip_space_and_comments();
      if (in.pos() >= bytes.size()) throw parse_error("truncated PGM body");
      const long v = in.number("sample");
      if (v > maxval) throw parse_error("PGM sample exceeds maxval");
      data[i] = static_cast<double>(v) / scale;
    }
  } else {
    // Exactly one whitespace byte separates the header from the raster.
    if (in.pos() >= bytes.size()) throw parse_error("truncated PGM header");
    in.advance(1);
    const std::size_t depth = maxval > 255 ? 2 : 1;
    if (bytes.size() - in.pos() < pixels * depth) throw parse_error("truncated PGM body");
    const auto* raster = reinterpret_cast<const unsigned char*>(bytes.data() + in.pos());
    for (std::size_t i = 0; i < pixels; ++i) {
      const long v = depth == 2 ? (long{raster[2 * i]} << 8) | raster[2 * i + 1] : raster[i];
      if (v > maxval) throw parse_error("PGM sample exceeds maxval");
      data[i] = static_cast<double>(v) / scale;
    }
  }
  return ObjectImage(static_cast<int>(width), static_cast<int>(height), std::move(data));
}

ObjectImage read_pgm(const std::filesystem::path& path) { return decode_pgm(read_file(path)); }

std::string encode_pgm(const DisplayImage& image) {
  check_dimensions(image.width, image.height);
  const std::uint32_t maxval = image.max_value();
  std::string out = "P5\n" + std::to_string(image.width) + " " + std::to_string(image.height) +
                    "\n" + std::to_string(maxval) + "\n";
  for (std::uint16_t v : image.data) {
    if (v > maxval) throw Error(ErrorCode::kPrecondition, "display value exceeds its depth");
    if (maxval > 255) out.push_back(static_cast<char>(v >> 8));
    out.push_back(static_cast<char>(v & 0xff));
  }
  return out;
}

void write_pgm(const DisplayImage& image, const std::filesystem::path& path) {
  write_file(path, encode_pgm(image));
}

void write_pgm(const ObjectImage& image, const std::filesystem::path& path) {
  write_pgm(to_display(image), path);
}

DisplayImage to_display(const ObjectImage& image, int bits) {
  if (bits < 1 || bits > 16) throw Error(ErrorCode::kPrecondition, "display depth must be 1..16");
  DisplayImage out;
  out.width = image.width();
  out.height = image.height();
  out.bits = bits;
  const double top = static_cast<double>(out.max_value());
  out.data.reserve(image.size());
  for (double v : image.data()) {
    out.data.push_back(static_cast<std::uint16_t>(std::nearbyint(v * top)));
  }
  return out;
}

// ------------------------------------------------------------- measurements

std::string serialize_measurement(const MeasurementSet& m) {
  m.validate();
  std::ostringstream out;
  out << kMeasurementMagic << "\n";
  write_counts(out, m.n(), m.width, m.height);
  out << "adc_bits " << (m.adc_bits ? std::to_string(*m.adc_bits) : "none") << "\n";
  out << "generator " << m.generator.to_string() << "\n";
  for (double s : m.samples) {
    if (m.adc_bits) {
      out << static_cast<std::int64_t>(s) << "\n";
    } else {
      out << format_real(s) << "\n";
    }
  }
  return out.str();
}

MeasurementSet parse_measurement(std::string_view text) {
  LineReader in(text);
  in.expect_magic(kMeasurementMagic);
  const CommonHeader h = read_counts(in);
  MeasurementSet m;
  m.width = h.width;
  m.height = h.height;
  const std::string_view adc = in.field("adc_bits");
  if (adc != "none") m.adc_bits = parse_int<int>(adc, "adc_bits");
  m.generator = GeneratorDescriptor::parse(in.field("generator"));
  const auto body = exact_body(in, h.n);
  m.samples.reserve(h.n);
  for (std::string_view line : body) m.samples.push_back(parse_real(line, "sample"));
  m.validate();
  return m;
}

MeasurementSet read_measurement(const std::filesystem::path& path) {
  return parse_measurement(read_file(path));
}

void write_measurement(const MeasurementSet& m, const std::filesystem::path& path) {
  write_file(path, serialize_measurement(m));
}

// ------------------------------------------------------------------- tables

std::string serialize_tables(const ReferenceTables& t) {
  std::ostringstream out;
  out << kTablesMagic << "\n";
  write_counts(out, t.n, t.width, t.height);
  out << "generator " << t.generator.to_string() << "\n";
  out << "mean_r " << format_real(t.mean_r) << "\n";
  for (double v : t.mean_ri) out << format_real(v) << "\n";
  return out.str();
}

ReferenceTables parse_tables(std::string_view text) {
  LineReader in(text);
  in.expect_magic(kTablesMagic);
  const CommonHeader h = read_counts(in);
  ReferenceTables t;
  t.n = h.n;
  t.width = h.width;
  t.height = h.height;
  t.generator = GeneratorDescriptor::parse(in.field("generator"));
  t.mean_r = parse_real(in.field("mean_r"), "mean_r");
  const auto body = exact_body(in, static_cast<std::size_t>(h.width) * h.height);
  t.mean_ri.reserve(body.size());
  for (std::string_view line : body) t.mean_ri.push_back(parse_real(line, "mean_ri"));
  return t;
}

std::string serialize_fixed_tables(const FixedReferenceTables& t) {
  std::ostringstream out;
  out << kFixedTablesMagic << "\n";
  write_counts(out, t.n, t.width, t.height);
  out << "generator " << t.generator.to_string() << "\n";
  out << "mean_r_format " << t.mean_r.format().to_string() << "\n";
  out << "mean_r " << t.mean_r.raw() << "\n";
  out << "mean_ri_format " << t.fmt_mean_ri.to_string() << "\n";
  for (std::int64_t v : t.mean_ri) out << v << "\n";
  return out.str();
}

FixedReferenceTables parse_fixed_tables(std::string_view text) {
  LineReader in(text);
  in.expect_magic(kFixedTablesMagic);
  const CommonHeader h = read_counts(in);
  FixedReferenceTables t;
  t.n = h.n;
  t.width = h.width;
  t.height = h.height;
  t.generator = GeneratorDescriptor::parse(in.field("generator"));
  const FixedFormat fmt_r = FixedFormat::parse(in.field("mean_r_format"));
  t.mean_r = FixedValue::from_raw(parse_int<std::int64_t>(in.field("mean_r"), "mean_r"), fmt_r);
  t.fmt_mean_ri = FixedFormat::parse(in.field("mean_ri_format"));
  const auto body = exact_body(in, static_cast<std::size_t>(h.width) * h.height);
  t.mean_ri.reserve(body.size());
  for (std::string_view line : body) {
    t.mean_ri.push_back(
        FixedValue::from_raw(parse_int<std::int64_t>(line, "mean_ri"), t.fmt_mean_ri).raw());
  }
  return t;
}

// --------------------------------------------------------------------- files

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "' for reading");
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorCode::kIo, "failed writing '" + path.string() + "'");
}

}  // namespace ghostimg
