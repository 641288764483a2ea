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

#include <filesystem>
#include <random>

#include <unistd.h>

#include "gtest/gtest.h"
#include "random_instances.hpp"

namespace ghostimg {
namespace {

namespace fs = std::filesystem;

template <typename Fn>
ErrorCode code_of(Fn fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kIo;
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("ghostimg_io_" + std::to_string(::getpid()))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

TEST(PgmTest, PlainExample) {
  const ObjectImage t = decode_pgm("P2 2 2 255 0 255 0 255");
  EXPECT_EQ(t.width(), 2);
  EXPECT_EQ(t.height(), 2);
  EXPECT_EQ(std::vector<double>(t.data().begin(), t.data().end()),
            (std::vector<double>{0.0, 1.0, 0.0, 1.0}));
}

TEST(PgmTest, CommentsAndSixteenBit) {
  const ObjectImage t = decode_pgm("P2\n# comment\n3 1\n# more\n1000\n0 500 1000\n");
  EXPECT_DOUBLE_EQ(t.at(1, 0), 0.5);
  const std::string raw = std::string("P5 2 1 65535\n") + '\xff' + '\xff' + '\x00' + '\x01';
  const ObjectImage u = decode_pgm(raw);
  EXPECT_EQ(u.at(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(u.at(1, 0), 1.0 / 65535.0);
}

TEST(PgmTest, Malformed) {
  EXPECT_EQ(code_of([] { decode_pgm("P2 2 2 0 0 0 0 0"); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { decode_pgm("P2 2 2 65536 0 0 0 0"); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { decode_pgm("P6 2 2 255 "); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { decode_pgm("P2 2 2 255 0 0 0"); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { decode_pgm("P5 2 2 255\nabc"); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { decode_pgm("P2 2 2 10 0 11 0 0"); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { decode_pgm("P2 0 2 255"); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { decode_pgm(""); }), ErrorCode::kParse);
}

TEST(PgmTest, RandomDisplayRoundTripIsByteExact) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const DisplayImage d = testing::random_display(rng);
    const std::string bytes = encode_pgm(d);
    const DisplayImage back = to_display(decode_pgm(bytes), d.bits);
    EXPECT_EQ(back, d);
    EXPECT_EQ(encode_pgm(back), bytes);
  }
}

TEST(PgmTest, ObjectRoundTripWithinOneStep) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(32 * 32);
  for (double& x : v) x = u(rng);
  const ObjectImage t(32, 32, v);
  TempDir dir;
  write_pgm(t, dir / "obj.pgm");
  const ObjectImage back = read_pgm(dir / "obj.pgm");
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_LE(std::abs(back.data()[i] - v[i]), 0.5 / 255.0 + 1e-12);
}

TEST(PgmTest, FileErrors) {
  EXPECT_EQ(code_of([] { read_pgm("/nonexistent/dir/x.pgm"); }), ErrorCode::kIo);
  EXPECT_EQ(code_of([] { write_file("/nonexistent/dir/x.txt", "x"); }), ErrorCode::kIo);
}

TEST(MeasurementFileTest, Layout) {
  MeasurementSet m;
  m.width = 2;
  m.height = 1;
  m.generator = GeneratorDescriptor::mseq(1);
  m.adc_bits = 12;
  m.samples = {3.0, 4095.0};
  EXPECT_EQ(serialize_measurement(m),
            "GIMEAS1\nn 2\nwidth 2\nheight 1\nadc_bits 12\ngenerator mseq:1:64,63,61,60\n3\n4095\n");
  m.adc_bits.reset();
  m.samples = {0.1, 512.0};
  EXPECT_EQ(serialize_measurement(m),
            "GIMEAS1\nn 2\nwidth 2\nheight 1\nadc_bits none\ngenerator mseq:1:64,63,61,60\n0.1\n512\n");
}

TEST(MeasurementFileTest, RandomRoundTrips) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const MeasurementSet m = testing::random_measurement(rng);
    const std::string text = serialize_measurement(m);
    const MeasurementSet back = parse_measurement(text);
    ASSERT_EQ(back, m);
    ASSERT_EQ(serialize_measurement(back), text);
  }
}

TEST(MeasurementFileTest, Errors) {
  const std::string good =
      "GIMEAS1\nn 2\nwidth 2\nheight 1\nadc_bits 12\ngenerator mseq:1:64,63,61,60\n3\n4095\n";
  EXPECT_NO_THROW(parse_measurement(good));
  std::string bad = good;
  bad.replace(bad.find("n 2"), 3, "n 3");
  EXPECT_EQ(code_of([&] { parse_measurement(bad); }), ErrorCode::kCountMismatch);
  EXPECT_EQ(code_of([&] { parse_measurement(good + "7\n"); }), ErrorCode::kCountMismatch);
  bad = good;
  bad.replace(0, 7, "GIMEAS2");
  EXPECT_EQ(code_of([&] { parse_measurement(bad); }), ErrorCode::kVersion);
  bad = good;
  bad.replace(bad.find("mseq:1"), 6, "mseq:0");
  EXPECT_EQ(code_of([&] { parse_measurement(bad); }), ErrorCode::kZeroState);
  bad = good;
  bad.replace(bad.find("4095"), 4, "4096");
  EXPECT_EQ(code_of([&] { parse_measurement(bad); }), ErrorCode::kPrecondition);
  bad = good;
  bad.replace(bad.find("width"), 5, "wide");
  EXPECT_EQ(code_of([&] { parse_measurement(bad); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([&] { parse_measurement("GIREF1\n"); }), ErrorCode::kParse);
}

TEST(MeasurementFileTest, ThroughFiles) {
  TempDir dir;
  std::mt19937_64 rng(4);
  const MeasurementSet m = testing::random_measurement(rng);
  write_measurement(m, dir / "m.gim");
  EXPECT_EQ(read_measurement(dir / "m.gim"), m);
}

TEST(TablesFileTest, RandomRoundTrips) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const ReferenceTables t = testing::random_tables(rng);
    const std::string text = serialize_tables(t);
    const ReferenceTables back = parse_tables(text);
    ASSERT_EQ(back, t);
    ASSERT_EQ(serialize_tables(back), text);
  }
}

TEST(TablesFileTest, BuiltTablesRoundTrip) {
  const ReferenceTables t = build_reference_tables(GeneratorDescriptor::mseq(1), 1000, 32, 32);
  EXPECT_EQ(parse_tables(serialize_tables(t)), t);
  std::string text = serialize_tables(t);
  text.resize(text.size() - 2);
  text.resize(text.rfind('\n') + 1);
  EXPECT_EQ(code_of([&] { parse_tables(text); }), ErrorCode::kCountMismatch);
}

TEST(FixedTablesFileTest, RandomRoundTrips) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    const FixedReferenceTables t = testing::random_fixed_tables(rng);
    const std::string text = serialize_fixed_tables(t);
    const FixedReferenceTables back = parse_fixed_tables(text);
    ASSERT_EQ(back, t);
    ASSERT_EQ(serialize_fixed_tables(back), text);
  }
}

TEST(FixedTablesFileTest, QuantizedTablesKeepEveryMantissa) {
  const FixedSchedule sched;
  const auto q = quantize_tables(build_reference_tables(GeneratorDescriptor::mseq(1), 4096, 32, 32), sched);
  const auto back = parse_fixed_tables(serialize_fixed_tables(q));
  EXPECT_EQ(back.mean_ri, q.mean_ri);
  EXPECT_EQ(back.mean_r.raw(), q.mean_r.raw());
  EXPECT_EQ(back.fmt_mean_ri, sched.fmt_mean_ri);
}

TEST(FixedTablesFileTest, RejectsOutOfRangeMantissa) {
  const std::string text =
      "GIFIX1\nn 1\nwidth 1\nheight 1\ngenerator mt:1\nmean_r_format u,2,0\nmean_r 3\n"
      "mean_ri_format u,2,0\n4\n";
  EXPECT_EQ(code_of([&] { parse_fixed_tables(text); }), ErrorCode::kOverflow);
}

}  // namespace
}  // namespace ghostimg
