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

#include "cli.hpp"

#include <cstdio>
#include <cmath>
#include <filesystem>
#include <map>
#include <optional>
#include <string_view>

#include "CLI11.hpp"
#include "ghostimg/bench.hpp"
#include "ghostimg/core.hpp"
#include "ghostimg/forward.hpp"
#include "ghostimg/io.hpp"
#include "ghostimg/metrics.hpp"
#include "ghostimg/patterns.hpp"
#include "ghostimg/reconstruct.hpp"

namespace ghostimg::cli {
namespace {

const std::map<std::string, Engine> kEngines{
    {"gi", Engine::kFloatGi}, {"dgi-float", Engine::kFloatDgi}, {"dgi-fixed", Engine::kFixedDgi}};

const std::map<std::string, GeneratorKind> kGenerators{{"mseq", GeneratorKind::kMSequence},
                                                       {"lcg", GeneratorKind::kLcg},
                                                       {"mt", GeneratorKind::kMersenneTwister}};

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, v);
  return buf;
}

std::string format_psnr(double v) { return std::isinf(v) ? "inf" : fmt("%.2f", v); }

GeneratorDescriptor make_generator(GeneratorKind kind, std::uint64_t seed,
                                   const std::string& taps) {
  GeneratorDescriptor g;
  g.kind = kind;
  g.seed = seed;
  if (!taps.empty()) {
    if (kind != GeneratorKind::kMSequence) {
      throw Error(ErrorCode::kPrecondition, "--taps only applies to the mseq generator");
    }
    g = GeneratorDescriptor::parse("mseq:" + std::to_string(seed) + ":" + taps);
  }
  g.validate();
  return g;
}

// Reconstructs with any engine and returns the display image.
struct EngineRun {
  ReconstructedImage image;
  DisplayImage display;
};

EngineRun reconstruct_with(Engine engine, const MeasurementSet& m, int lanes, int threads,
                           int bits, const std::string& tables_path) {
  const ExecutionOptions exec{threads};
  EngineRun run;
  switch (engine) {
    case Engine::kFloatGi:
      run.image = reconstruct_gi(m, exec);
      break;
    case Engine::kFloatDgi: {
      const ReferenceTables ref = tables_path.empty()
                                      ? build_reference_tables(m.generator, m.n(), m.width, m.height)
                                      : parse_tables(read_file(tables_path));
      run.image = reconstruct_dgi_float(m, ref, exec);
      break;
    }
    case Engine::kFixedDgi: {
      FixedSchedule schedule;
      schedule.lanes = lanes;
      const FixedReferenceTables ref =
          tables_path.empty()
              ? quantize_tables(build_reference_tables(m.generator, m.n(), m.width, m.height),
                                schedule)
              : parse_fixed_tables(read_file(tables_path));
      run.image = reconstruct_dgi_fixed(m, ref, schedule, exec).image;
      break;
    }
  }
  run.display = normalize_for_display(run.image, bits);
  return run;
}

std::optional<int> adc_option(int bits) {
  return bits == 0 ? std::nullopt : std::optional<int>(bits);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Computational ghost imaging: simulate single-pixel measurements and "
               "reconstruct them with GI, floating-point DGI or the fixed-point datapath"};
  app.name("ghostimg");
  app.set_config("--config", "", "key=value configuration file; command-line flags win");
  app.require_subcommand(1);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Simulate bucket measurements of an object");
  std::string sim_object;
  std::string sim_generator = "mseq";
  std::uint64_t sim_seed = 1;
  std::string sim_taps;
  std::size_t sim_n = 16384;
  int sim_adc = kDefaultAdcBits;
  double sim_sigma = 0.0;
  std::uint64_t sim_noise_seed = 0;
  std::string sim_output;
  simulate->add_option("object", sim_object, "Object transmittance (PGM)")->required();
  simulate->add_option("--generator", sim_generator, "Pattern generator: mseq, lcg or mt")
      ->check(CLI::IsMember({"mseq", "lcg", "mt"}));
  simulate->add_option("--seed", sim_seed, "Generator seed (nonzero for mseq)");
  simulate->add_option("--taps", sim_taps, "LFSR taps, e.g. 64,63,61,60");
  simulate->add_option("--n", sim_n, "Number of patterns")->check(CLI::PositiveNumber);
  simulate->add_option("--adc-bits", sim_adc, "Detector quantizer bits (0 = unquantized)")
      ->check(CLI::Range(0, kMaxAdcBits));
  simulate->add_option("--noise-sigma", sim_sigma, "Additive Gaussian noise on S_i")
      ->check(CLI::NonNegativeNumber);
  simulate->add_option("--noise-seed", sim_noise_seed, "Noise RNG seed");
  simulate->add_option("-o,--output", sim_output, "Measurement file to write")->required();

  // tables
  auto* tables = app.add_subcommand("tables", "Precompute <R> and <R*I> for a measurement");
  std::string tab_meas;
  std::string tab_output;
  std::string tab_fixed;
  tables->add_option("measurement", tab_meas, "Measurement file")->required();
  tables->add_option("-o,--output", tab_output, "Floating-point tables (GIREF1)");
  tables->add_option("--fixed", tab_fixed, "Fixed-point tables for the default schedule (GIFIX1)");

  // reconstruct
  auto* reconstruct = app.add_subcommand("reconstruct", "Reconstruct an image from a measurement");
  std::string rec_meas;
  std::string rec_engine = "dgi-fixed";
  int rec_lanes = 64;
  int rec_threads = 1;
  int rec_bits = 8;
  std::string rec_tables;
  std::string rec_output;
  std::string rec_truth;
  reconstruct->add_option("measurement", rec_meas, "Measurement file")->required();
  reconstruct->add_option("--engine", rec_engine, "gi, dgi-float or dgi-fixed")
      ->check(CLI::IsMember({"gi", "dgi-float", "dgi-fixed"}));
  reconstruct->add_option("--lanes", rec_lanes, "Emulated calculation modules")
      ->check(CLI::PositiveNumber);
  reconstruct->add_option("--threads", rec_threads, "Worker threads")->check(CLI::PositiveNumber);
  reconstruct->add_option("--bits", rec_bits, "Output depth")->check(CLI::Range(1, 16));
  reconstruct->add_option("--tables", rec_tables, "Precomputed tables (GIREF1 / GIFIX1)");
  reconstruct->add_option("-o,--output", rec_output, "Normalized reconstruction (PGM)")
      ->required();
  reconstruct->add_option("--dump-metrics", rec_truth, "Ground-truth PGM for PSNR/SSIM");

  // bench
  auto* bench = app.add_subcommand("bench", "Time reconstruction across lane/thread counts");
  std::string bench_engine = "dgi-fixed";
  std::vector<int> bench_lanes{1, 16, 64};
  std::vector<int> bench_threads;
  std::size_t bench_n = 16384;
  int bench_repeat = kMinBenchRepeats;
  int bench_warmup = 2;
  std::string bench_object;
  bench->add_option("--engine", bench_engine, "gi, dgi-float or dgi-fixed")
      ->check(CLI::IsMember({"gi", "dgi-float", "dgi-fixed"}));
  bench->add_option("--lanes", bench_lanes, "Lane counts")->delimiter(',')
      ->check(CLI::PositiveNumber);
  bench->add_option("--threads", bench_threads, "Thread counts (default: one per lane count)")
      ->delimiter(',')->check(CLI::PositiveNumber);
  bench->add_option("--n", bench_n, "Number of patterns")->check(CLI::PositiveNumber);
  bench->add_option("--repeat", bench_repeat, "Timed runs per configuration")
      ->check(CLI::PositiveNumber);
  bench->add_option("--warmup", bench_warmup, "Untimed runs per configuration")
      ->check(CLI::NonNegativeNumber);
  bench->add_option("--object", bench_object, "Object PGM (default: built-in glyph)");

  // compare-generators
  auto* compare = app.add_subcommand("compare-generators",
                                     "Reconstruct with LCG, MT and M-sequence patterns");
  std::string cmp_object;
  std::size_t cmp_n = 16384;
  std::uint64_t cmp_seed = 1;
  int cmp_adc = kDefaultAdcBits;
  std::string cmp_engine = "dgi-float";
  std::string cmp_prefix = "recon";
  compare->add_option("object", cmp_object, "Object transmittance (PGM)")->required();
  compare->add_option("--n", cmp_n, "Number of patterns")->check(CLI::PositiveNumber);
  compare->add_option("--seed", cmp_seed, "Seed shared by all three generators");
  compare->add_option("--adc-bits", cmp_adc, "Detector quantizer bits (0 = unquantized)")
      ->check(CLI::Range(0, kMaxAdcBits));
  compare->add_option("--engine", cmp_engine, "gi, dgi-float or dgi-fixed")
      ->check(CLI::IsMember({"gi", "dgi-float", "dgi-fixed"}));
  compare->add_option("-o,--output-prefix", cmp_prefix,
                      "Outputs go to <prefix>-lcg.pgm, <prefix>-mt.pgm, <prefix>-mseq.pgm");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "ghostimg: error[usage]: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*simulate) {
      const ObjectImage object = read_pgm(sim_object);
      const GeneratorDescriptor g =
          make_generator(kGenerators.at(sim_generator), sim_seed, sim_taps);
      const MeasurementSet m = simulate_measurement(object, g, sim_n, adc_option(sim_adc),
                                                    NoiseModel{sim_sigma, sim_noise_seed});
      write_measurement(m, sim_output);
      double sum = 0.0;
      for (double s : m.samples) sum += s;
      out << "n=" << m.n() << " mean_s=" << fmt("%.6f", sum / static_cast<double>(m.n()))
          << " generator=" << g.to_string() << "\n";
    } else if (*tables) {
      if (tab_output.empty() && tab_fixed.empty()) {
        err << "ghostimg: error[usage]: tables needs -o and/or --fixed\n";
        return kExitUsage;
      }
      const MeasurementSet m = read_measurement(tab_meas);
      const ReferenceTables ref = build_reference_tables(m.generator, m.n(), m.width, m.height);
      if (!tab_output.empty()) write_file(tab_output, serialize_tables(ref));
      if (!tab_fixed.empty()) {
        write_file(tab_fixed, serialize_fixed_tables(quantize_tables(ref, FixedSchedule{})));
      }
      out << "n=" << ref.n << " mean_r=" << fmt("%.6f", ref.mean_r) << "\n";
    } else if (*reconstruct) {
      const MeasurementSet m = read_measurement(rec_meas);
      const EngineRun run = reconstruct_with(kEngines.at(rec_engine), m, rec_lanes, rec_threads,
                                             rec_bits, rec_tables);
      write_pgm(run.display, rec_output);
      out << "engine=" << rec_engine << " n=" << m.n() << " output=" << rec_output << "\n";
      if (!rec_truth.empty()) {
        const QualityReport q = evaluate(read_pgm(rec_truth), run.display);
        out << "psnr=" << format_psnr(q.psnr) << " ssim=" << fmt("%.4f", q.ssim) << "\n";
      }
    } else if (*bench) {
      if (bench_repeat < kMinBenchRepeats) {
        err << "ghostimg: warning: --repeat " << bench_repeat << " is below "
            << kMinBenchRepeats << "; medians are statistically weak\n";
      }
      BenchConfig config;
      config.engine = kEngines.at(bench_engine);
      config.lanes = bench_lanes;
      config.threads = bench_threads;
      config.n = bench_n;
      config.repeat = bench_repeat;
      config.warmup = bench_warmup;
      if (!bench_object.empty()) config.object = read_pgm(bench_object);
      const auto reports = run_bench(config);
      out << format_bench_table(reports);
      for (const auto& r : reports) out << format_bench_line(r) << "\n";
    } else if (*compare) {
      const ObjectImage object = read_pgm(cmp_object);
      const Engine engine = kEngines.at(cmp_engine);
      struct Row { const char* suffix; GeneratorDescriptor g; };
      const Row rows[] = {{"lcg", GeneratorDescriptor::lcg(cmp_seed)},
                          {"mt", GeneratorDescriptor::mt(cmp_seed)},
                          {"mseq", GeneratorDescriptor::mseq(cmp_seed)}};
      double lo = kPsnrIdentical;
      double hi = -kPsnrIdentical;
      out << "generator  psnr[dB]  ssim    output\n";
      for (const Row& row : rows) {
        const MeasurementSet m = simulate_measurement(object, row.g, cmp_n, adc_option(cmp_adc));
        const EngineRun run = reconstruct_with(engine, m, 64, 1, 8, "");
        const std::string path = cmp_prefix + "-" + row.suffix + ".pgm";
        write_pgm(run.display, path);
        const QualityReport q = evaluate(object, run.display);
        lo = std::min(lo, q.psnr);
        hi = std::max(hi, q.psnr);
        char line[256];
        std::snprintf(line, sizeof(line), "%-10s %8s  %6.4f  %s\n", row.suffix,
                      format_psnr(q.psnr).c_str(), q.ssim, path.c_str());
        out << line;
      }
      out << "psnr_spread_db=" << fmt("%.3f", hi - lo) << "\n";
    }
  } catch (const Error& e) {
    err << "ghostimg: error[" << error_code_name(e.code()) << "]: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "ghostimg: error[internal]: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace ghostimg::cli
