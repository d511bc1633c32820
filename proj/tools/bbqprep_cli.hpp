// Copyright 2026 The bbqprep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Command-line front end. Kept header-only and stream-parameterized so the
// test suite can drive it in-process.
//
//   bbqprep preprocess --input A.json --t 12 --mode complex --output img.json
//   bbqprep prepare    --input A.json --t 24 --mode complex --sim ideal
//   bbqprep sweep      --input A.json --t 6:16 --output sweep.csv
//   bbqprep resources  --K 1048576 --t 32 --mode complex
//   bbqprep example

#include "bbqprep.hpp"
#include "bbqprep/random_matrix.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <limits>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace bbqprep::cli {

enum class Command { prepare, sweep, resources, example, preprocess };
enum class SimMode { fixed, ideal };

struct RunConfig {
  Command command = Command::example;
  std::string input_path;
  std::string output_path;
  std::string t_spec = "12";
  EncodingMode mode = EncodingMode::complex;
  SimMode sim = SimMode::fixed;
  std::uint64_t K = 0;
  int random_k = 0;
  std::uint64_t seed = 1;
};

/// "N" -> {N}; "LO:HI" -> {LO, ..., HI}.
inline std::vector<int> parse_t_spec(const std::string &spec) {
  const auto to_int = [&](const std::string &s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception &) {
      used = 0;
    }
    if (used == 0 || used != s.size())
      throw ParseError("bad precision '" + spec + "'");
    check_precision(v);
    return v;
  };
  const auto colon = spec.find(':');
  if (colon == std::string::npos)
    return {to_int(spec)};
  const int lo = to_int(spec.substr(0, colon));
  const int hi = to_int(spec.substr(colon + 1));
  if (lo > hi)
    throw ParseError("empty precision range '" + spec + "'");
  std::vector<int> out;
  for (int t = lo; t <= hi; ++t)
    out.push_back(t);
  return out;
}

namespace detail {

inline int single_t(const RunConfig &cfg) {
  const auto ts = parse_t_spec(cfg.t_spec);
  if (ts.size() != 1)
    throw ParseError("this command takes a single --t value");
  return ts.front();
}

inline std::string read_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), {}};
}

inline void write_output(const RunConfig &cfg, const std::string &payload, std::ostream &out) {
  if (cfg.output_path.empty()) {
    out << payload;
    return;
  }
  std::ofstream f(cfg.output_path, std::ios::binary);
  if (!f)
    throw ParseError("cannot write '" + cfg.output_path + "'");
  f << payload;
}

inline ComplexMatrix input_matrix(const RunConfig &cfg) {
  if (cfg.random_k > 0) {
    std::mt19937_64 rng(cfg.seed);
    return random_matrix(cfg.random_k, rng, cfg.mode == EncodingMode::real_signed);
  }
  if (cfg.input_path.empty())
    throw ParseError("--input is required");
  return load_matrix_file(cfg.input_path);
}

inline std::string fmt_double(double v) {
  std::ostringstream s;
  s << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
  return s.str();
}

inline int cmd_preprocess(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
  const auto m = input_matrix(cfg);
  const auto img = preprocess(m, cfg.mode, single_t(cfg));
  write_output(cfg, to_json(img).dump(2) + "\n", out);
  auto &log = cfg.output_path.empty() ? err : out;
  log << "cells: " << img.size() << "\ncell_width: " << img.width()
      << "\npreprocessing_ops: " << preprocessing_ops(img.size()) << '\n';
  return 0;
}

inline int cmd_prepare(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
  std::optional<ComplexMatrix> matrix;
  std::optional<MemoryImage> image;

  if (cfg.random_k == 0 && !cfg.input_path.empty()) {
    const auto text = read_file(cfg.input_path);
    nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
    if (!doc.is_discarded() && doc.is_object() && doc.contains("cells")) {
      if (cfg.sim == SimMode::ideal)
        throw WrongMode("a quantized memory image cannot be simulated in ideal mode");
      image = memory_image_from_json(doc);
    }
  }
  if (!image) {
    matrix = input_matrix(cfg);
    image = cfg.sim == SimMode::ideal ? preprocess_ideal(*matrix, cfg.mode)
                                      : preprocess(*matrix, cfg.mode, single_t(cfg));
  }

  const auto prep = prepare(*image);
  if (!cfg.output_path.empty())
    write_output(cfg, state_to_json(prep.state).dump(2) + "\n", out);

  out << "mode: " << to_string(image->mode()) << "\nsim: "
      << (cfg.sim == SimMode::ideal ? "ideal" : "fixed") << "\nqueries: "
      << prep.ledger.query_count << "\nrouting_time: " << prep.ledger.routing_time() << '\n';
  if (!matrix) {
    out << "state_error: n/a (memory image input carries no reference matrix)\n";
    return 0;
  }
  const double error = state_error(prep.state, oracle_state(*matrix));
  const double tolerance = cfg.sim == SimMode::ideal
                               ? 1e-10
                               : kBoundSlack * error_bound(image->k(), image->t());
  const bool ok = error <= tolerance;
  out << "state_error: " << fmt_double(error) << "\ntolerance: " << fmt_double(tolerance)
      << '\n'
      << (ok ? "PASS" : "FAIL") << '\n';
  if (!ok)
    err << "state error " << error << " exceeds tolerance " << tolerance << '\n';
  return ok ? 0 : 1;
}

inline int cmd_sweep(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
  const auto m = input_matrix(cfg);
  const auto ts = parse_t_spec(cfg.t_spec);
  const auto rows = precision_sweep(m, ts, cfg.mode);
  std::ostringstream csv;
  write_sweep_csv(csv, rows);
  write_output(cfg, csv.str(), out);
  bool ok = true;
  for (const auto &r : rows)
    if (r.measured_error > kBoundSlack * r.bound) {
      err << "t=" << r.t << ": error " << r.measured_error << " exceeds " << kBoundSlack
          << " x bound " << r.bound << '\n';
      ok = false;
    }
  return ok ? 0 : 1;
}

inline int cmd_resources(const RunConfig &cfg, std::ostream &out) {
  const auto report = resource_report(cfg.K, single_t(cfg), cfg.mode);
  write_output(cfg, to_json(report).dump(2) + "\n", out);
  return 0;
}

inline int cmd_example(std::ostream &out, std::ostream &err) {
  const auto report = run_worked_example(out);
  if (!report.passed)
    err << "worked example failed at: " << report.failure << '\n';
  return report.passed ? 0 : 1;
}

} // namespace detail

inline int execute(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
  switch (cfg.command) {
  case Command::preprocess: return detail::cmd_preprocess(cfg, out, err);
  case Command::prepare: return detail::cmd_prepare(cfg, out, err);
  case Command::sweep: return detail::cmd_sweep(cfg, out, err);
  case Command::resources: return detail::cmd_resources(cfg, out);
  case Command::example: return detail::cmd_example(out, err);
  }
  return 2;
}

/// Parses argv and runs the command. Returns the process exit code.
inline int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Amplitude-encoding state preparation over a simulated bucket-brigade QRAM",
               "bbqprep"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string mode_name = "complex";
  std::string sim_name = "fixed";

  const auto add_input = [&](CLI::App *sub) {
    sub->add_option("--input", cfg.input_path, "Matrix (.json / .csv)");
    sub->add_option("--random", cfg.random_k, "Use a random matrix with 2^k entries instead")
        ->check(CLI::Range(1, 24));
    sub->add_option("--seed", cfg.seed, "Seed for --random");
  };
  const auto add_mode = [&](CLI::App *sub) {
    sub->add_option("--mode", mode_name, "complex | real_signed")
        ->check(CLI::IsMember({"complex", "real_signed"}));
  };

  auto *pre = app.add_subcommand("preprocess", "Write the fixed-point memory image");
  add_input(pre);
  add_mode(pre);
  pre->add_option("--t", cfg.t_spec, "Bits per angle / phase field");
  pre->add_option("--output", cfg.output_path, "Memory image JSON (default stdout)");

  auto *prep = app.add_subcommand("prepare", "Simulate the preparation and check it");
  add_input(prep);
  add_mode(prep);
  prep->add_option("--t", cfg.t_spec, "Bits per angle / phase field");
  prep->add_option("--sim", sim_name, "fixed | ideal")->check(CLI::IsMember({"fixed", "ideal"}));
  prep->add_option("--output", cfg.output_path, "State dump JSON");

  auto *sweep = app.add_subcommand("sweep", "Measured error vs. bound over a precision range");
  add_input(sweep);
  add_mode(sweep);
  sweep->add_option("--t", cfg.t_spec, "Precision N or range LO:HI")->required();
  sweep->add_option("--output", cfg.output_path, "CSV (default stdout)");

  auto *res = app.add_subcommand("resources", "Closed-form resource report");
  res->add_option("--K", cfg.K, "Number of amplitudes (power of two)")->required();
  res->add_option("--t", cfg.t_spec, "Bits per angle / phase field");
  add_mode(res);
  res->add_option("--output", cfg.output_path, "Report JSON (default stdout)");

  auto *example = app.add_subcommand("example", "Replay the 2x4 worked example");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e, out, err);
  }

  cfg.mode = parse_encoding_mode(mode_name);
  cfg.sim = sim_name == "ideal" ? SimMode::ideal : SimMode::fixed;
  if (pre->parsed())
    cfg.command = Command::preprocess;
  else if (prep->parsed())
    cfg.command = Command::prepare;
  else if (sweep->parsed())
    cfg.command = Command::sweep;
  else if (res->parsed())
    cfg.command = Command::resources;
  else if (example->parsed())
    cfg.command = Command::example;

  try {
    return execute(cfg, out, err);
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

} // namespace bbqprep::cli
