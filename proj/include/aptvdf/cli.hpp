/*
 * Copyright 2026 The aptvdf Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef APTVDF_CLI_HPP
#define APTVDF_CLI_HPP

// Command-line front end. parse_args() turns argv into a Command and
// execute() runs it; both are usable from tests without a process boundary.
//
// Exit codes: 0 success, 1 runtime error, 2 usage or validation error.

#include <aptvdf/dpr_model.hpp>
#include <aptvdf/error.hpp>
#include <aptvdf/filter_core.hpp>
#include <aptvdf/fixed_point.hpp>
#include <aptvdf/io.hpp>
#include <aptvdf/power_trace.hpp>
#include <aptvdf/prototype_design.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace aptvdf::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_runtime = 1;
inline constexpr int exit_usage = 2;

enum class Subcommand {
  design,
  response,
  simulate,
  quantize,
  search,
  dpr_time,
  dpr_compare,
  trace,
  reproduce_paper
};

struct Command {
  Subcommand sub = Subcommand::design;
  bool json = false;

  // design
  FrequencySpec spec{};
  std::size_t max_order = 400;

  // filter selection (response, simulate, search)
  std::string coeffs_path;
  double alpha = 0.0;
  std::optional<double> f_co;
  std::optional<double> f_c;
  FilterMode mode{};
  std::size_t grid = 1024;

  // simulate / search
  std::string input_path;
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
  std::optional<FixedPointFormat> data_format;
  std::optional<FixedPointFormat> coeff_format;
  int guard_bits = 4;
  QuantizationPolicy policy{};
  double target_db = -44.0;
  int max_fraction = 30;
  RmseScale scale = RmseScale::amplitude;
  std::string stimulus_out;

  // quantize
  std::vector<double> values;
  FixedPointFormat format{12, 10};

  // dpr
  std::optional<double> size_bytes;
  std::optional<double> throughput_bps;
  double overhead_s = 0.0;
  std::string bitstream_path;
  std::string interface_path;
  std::string rows_path;
  bool paper_rows = false;

  // trace
  std::string chain_path;
  TraceCsvDialect dialect{};
  DetectionOptions detection{};

  std::string out_path;
  std::string response_out;
};

struct ParseResult {
  std::optional<Command> command;
  int exit_code = exit_ok;
  std::string message; // help text or error
};

namespace detail {

inline nlohmann::json read_json_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw IoError("cannot open '" + path + "' for reading");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception &e) {
    throw ParseError("'" + path + "': " + e.what(), 0);
  }
}

template <class T> T json_as(const nlohmann::json &j, const std::string &path) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception &e) {
    throw ParseError("'" + path + "': " + e.what(), 0);
  }
}

inline void write_text(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out)
    throw IoError("write to '" + path + "' failed");
}

inline std::string fmt(const char *f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

inline AptVdfFilter load_filter(const Command &c) {
  PrototypeFilter p = load_coefficients(c.coeffs_path);
  WarpingCoefficient a =
      (c.f_co && c.f_c) ? compute_alpha(*c.f_co, *c.f_c)
                        : WarpingCoefficient(c.alpha);
  return build_filter(std::move(p), a, c.mode);
}

inline std::vector<double> load_stimulus(const Command &c) {
  if (!c.input_path.empty()) {
    std::ifstream in(c.input_path);
    if (!in)
      throw IoError("cannot open '" + c.input_path + "' for reading");
    return read_samples_csv(in);
  }
  return white_noise(c.samples, c.seed);
}

inline FixedSimConfig sim_config(const Command &c) {
  FixedSimConfig cfg;
  if (c.data_format)
    cfg.data_format = *c.data_format;
  cfg.coeff_format = c.coeff_format ? *c.coeff_format : cfg.data_format;
  cfg.accumulator_guard_bits = c.guard_bits;
  cfg.policy = c.policy;
  return cfg;
}

} // namespace detail

inline ParseResult parse_args(const std::vector<std::string> &argv_in) {
  Command c;
  CLI::App app{"All-pass transformed variable digital filter toolkit", "aptvdf"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_flag("--json", c.json, "Machine-readable output on stdout");

  std::string mode_bits = "00", data_fmt, coeff_fmt, rounding = "nearest-even",
              overflow = "saturate", scale = "amplitude", format = "12,10";

  auto add_filter_opts = [&](CLI::App *s) {
    s->add_option("--coeffs", c.coeffs_path, "Coefficient file")
        ->required()
        ->check(CLI::ExistingFile);
    s->add_option("--alpha", c.alpha, "Warping coefficient, |alpha| < 1");
    s->add_option("--fco", c.f_co, "Prototype cutoff (with --fc)");
    s->add_option("--fc", c.f_c, "Desired cutoff (with --fco)");
    s->add_option("--mode", mode_bits, "sel_f1 sel_f2 bits: 00 10 01 11");
  };
  auto add_fixed_opts = [&](CLI::App *s) {
    s->add_option("--guard", c.guard_bits, "Accumulator guard bits");
    s->add_option("--rounding", rounding,
                  "nearest-even | nearest-away | truncate");
    s->add_option("--overflow", overflow, "saturate | wrap");
  };

  auto *design = app.add_subcommand("design", "Design a lowpass prototype");
  design->add_option("--cutoff", c.spec.cutoff, "Passband edge (0..1)")->required();
  design->add_option("--transition", c.spec.transition_bw, "Transition width")
      ->required();
  design->add_option("--ripple", c.spec.passband_ripple_db,
                     "Peak-to-peak passband ripple, dB")
      ->required();
  design->add_option("--atten", c.spec.stopband_atten_db,
                     "Stopband attenuation, dB (positive)")
      ->required();
  design->add_option("--max-order", c.max_order, "Order cap");
  design->add_option("--out", c.out_path, "Write coefficient file");
  design->add_option("--response", c.response_out,
                     "Write prototype response CSV");
  design->add_option("--grid", c.grid, "Response grid size");

  auto *response =
      app.add_subcommand("response", "Frequency response of a warped filter");
  add_filter_opts(response);
  response->add_option("--grid", c.grid, "Grid size (>= 2)");
  response->add_option("--out", c.out_path, "CSV output (default stdout)");

  auto *simulate =
      app.add_subcommand("simulate", "Run a filter over a sample stream");
  add_filter_opts(simulate);
  add_fixed_opts(simulate);
  simulate->add_option("--input", c.input_path, "Input CSV n,value")
      ->check(CLI::ExistingFile);
  simulate->add_option("--samples", c.samples, "White-noise length");
  simulate->add_option("--seed", c.seed, "White-noise seed");
  simulate->add_option("--data-format", data_fmt, "Fixed-point data format w,f");
  simulate->add_option("--coeff-format", coeff_fmt,
                       "Fixed-point coefficient format w,f");
  simulate->add_option("--stimulus-out", c.stimulus_out, "Write stimulus CSV");
  simulate->add_option("--out", c.out_path, "Output CSV (default stdout)");

  auto *quantize_cmd = app.add_subcommand("quantize", "Quantize values");
  quantize_cmd->add_option("--value", c.values, "Value(s) to quantize")
      ->required();
  quantize_cmd->add_option("--format", format, "Format w,f");
  quantize_cmd->add_option("--rounding", rounding,
                           "nearest-even | nearest-away | truncate");
  quantize_cmd->add_option("--overflow", overflow, "saturate | wrap");

  auto *search = app.add_subcommand("search", "Fixed-point word-length search");
  add_filter_opts(search);
  add_fixed_opts(search);
  search->add_option("--target", c.target_db, "Target RMSE, dB")->required();
  search->add_option("--input", c.input_path, "Stimulus CSV n,value")
      ->check(CLI::ExistingFile);
  search->add_option("--samples", c.samples, "White-noise length");
  search->add_option("--seed", c.seed, "White-noise seed");
  search->add_option("--max-frac", c.max_fraction, "Fraction length cap");
  search->add_option("--scale", scale, "amplitude (20 log10) | ten-log");
  search->add_option("--out", c.out_path, "JSON report");

  auto *dpr_time = app.add_subcommand("dpr-time", "Reconfiguration time");
  dpr_time->add_option("--size", c.size_bytes, "Bitstream bytes");
  dpr_time->add_option("--throughput", c.throughput_bps, "Bytes per second");
  dpr_time->add_option("--overhead", c.overhead_s, "Setup overhead, s");
  dpr_time->add_option("--bitstream", c.bitstream_path, "Bitstream JSON")
      ->check(CLI::ExistingFile);
  dpr_time->add_option("--interface", c.interface_path, "Interface JSON")
      ->check(CLI::ExistingFile);

  auto *dpr_compare =
      app.add_subcommand("dpr-compare", "Compare reconfiguration modes");
  dpr_compare->add_option("--rows", c.rows_path, "JSON array of rows")
      ->check(CLI::ExistingFile);
  dpr_compare->add_flag("--paper", c.paper_rows, "Use the reference dataset");
  dpr_compare->add_option("--out", c.out_path, "JSON report");

  auto *trace = app.add_subcommand("trace", "Reconfiguration power overhead");
  trace->add_option("--input", c.input_path, "Trace CSV time_s,volts")
      ->required()
      ->check(CLI::ExistingFile);
  trace->add_option("--chain", c.chain_path, "Measurement chain JSON")
      ->required()
      ->check(CLI::ExistingFile);
  trace->add_option("--out", c.out_path, "JSON report");
  trace->add_option("--min-duration", c.detection.min_duration_s,
                    "Minimum event duration, s");
  trace->add_option("--sigma-k", c.detection.sigma_k,
                    "Threshold in baseline standard deviations");
  trace->add_option("--skip-lines", c.dialect.skip_lines,
                    "Metadata lines before the header");
  trace->add_option("--time-col", c.dialect.time_column, "Time column index");
  trace->add_option("--volts-col", c.dialect.volts_column,
                    "Voltage column index");
  bool no_header = false;
  trace->add_flag("--no-header", no_header, "CSV has no header row");

  auto *repro = app.add_subcommand(
      "reproduce-paper", "Check the reference dataset for consistency");

  std::vector<const char *> argv;
  argv.push_back("aptvdf");
  for (const auto &a : argv_in)
    argv.push_back(a.c_str());

  ParseResult result;
  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::CallForHelp &) {
    result.message = app.help();
    return result;
  } catch (const CLI::CallForAllHelp &) {
    result.message = app.help("", CLI::AppFormatMode::All);
    return result;
  } catch (const CLI::ParseError &e) {
    result.exit_code = exit_usage;
    result.message = std::string(e.what()) + "\nRun with --help for usage.";
    return result;
  }

  try {
    if (*design) {
      c.sub = Subcommand::design;
      c.spec.validate();
    } else if (*response) {
      c.sub = Subcommand::response;
      if (c.grid < 2)
        throw PreconditionError("--grid must be at least 2");
    } else if (*simulate) {
      c.sub = Subcommand::simulate;
    } else if (*quantize_cmd) {
      c.sub = Subcommand::quantize;
      c.format = FixedPointFormat::parse(format);
    } else if (*search) {
      c.sub = Subcommand::search;
      if (scale == "ten-log")
        c.scale = RmseScale::ten_log;
      else if (scale != "amplitude")
        throw PreconditionError("--scale must be amplitude or ten-log");
      if (c.input_path.empty() && c.samples < 1000)
        throw PreconditionError("--samples must be at least 1000");
    } else if (*dpr_time) {
      c.sub = Subcommand::dpr_time;
      const bool flags = c.size_bytes || c.throughput_bps;
      const bool files = !c.bitstream_path.empty() || !c.interface_path.empty();
      if (files) {
        if (c.bitstream_path.empty() || c.interface_path.empty())
          throw PreconditionError("--bitstream and --interface go together");
      } else if (!flags || !c.size_bytes || !c.throughput_bps) {
        throw PreconditionError("dpr-time needs --size and --throughput");
      }
      if (c.size_bytes && !(*c.size_bytes > 0.0))
        throw PreconditionError("--size must be positive");
      if (c.throughput_bps && !(*c.throughput_bps > 0.0))
        throw PreconditionError("--throughput must be positive");
      if (!(c.overhead_s >= 0.0))
        throw PreconditionError("--overhead must be non-negative");
    } else if (*dpr_compare) {
      c.sub = Subcommand::dpr_compare;
      if (c.paper_rows == !c.rows_path.empty())
        throw PreconditionError("dpr-compare needs exactly one of --rows, --paper");
    } else if (*trace) {
      c.sub = Subcommand::trace;
      c.dialect.has_header = !no_header;
      if (!(c.detection.min_duration_s > 0.0))
        throw PreconditionError("--min-duration must be positive");
      if (!(c.detection.sigma_k > 0.0))
        throw PreconditionError("--sigma-k must be positive");
    } else if (*repro) {
      c.sub = Subcommand::reproduce_paper;
    }

    if (*response || *simulate || *search) {
      c.mode = FilterMode::parse(mode_bits);
      if (c.f_co.has_value() != c.f_c.has_value())
        throw PreconditionError("--fco and --fc go together");
      if (!c.f_co)
        WarpingCoefficient check(c.alpha);
    }
    if (*simulate || *search) {
      c.policy.rounding = parse_rounding(rounding);
      c.policy.overflow = parse_overflow(overflow);
      if (c.guard_bits < 0 || c.guard_bits > 32)
        throw PreconditionError("--guard must lie in [0, 32]");
    }
    if (*quantize_cmd) {
      c.policy.rounding = parse_rounding(rounding);
      c.policy.overflow = parse_overflow(overflow);
    }
    if (*simulate) {
      if (!data_fmt.empty())
        c.data_format = FixedPointFormat::parse(data_fmt);
      if (!coeff_fmt.empty())
        c.coeff_format = FixedPointFormat::parse(coeff_fmt);
      if (c.coeff_format && !c.data_format)
        throw PreconditionError("--coeff-format needs --data-format");
    }
  } catch (const Error &e) {
    result.exit_code = exit_usage;
    result.message = e.what();
    return result;
  }

  result.command = c;
  return result;
}

namespace detail {

inline int run_design(const Command &c, std::ostream &out) {
  DesignOptions opt;
  opt.max_order = c.max_order;
  const DesignReport r = design_prototype_report(c.spec, opt);
  const char *method =
      r.method == DesignMethod::equiripple ? "equiripple" : "kaiser";
  if (!c.out_path.empty())
    save_coefficients(c.out_path, r.filter,
                      "lowpass prototype, order " +
                          std::to_string(r.filter.order()) + ", " + method);
  if (!c.response_out.empty()) {
    const AptVdfFilter f(r.filter, WarpingCoefficient(0.0), FilterMode{});
    std::ostringstream csv;
    write_response_csv(csv, frequency_response(f, c.grid));
    write_text(c.response_out, csv.str());
  }
  if (c.json) {
    nlohmann::json j = {{"order", r.filter.order()},
                        {"method", method},
                        {"ripple_db", r.check.ripple_db},
                        {"atten_db", r.check.atten_db},
                        {"coefficients", std::vector<double>(
                                             r.filter.coefficients().begin(),
                                             r.filter.coefficients().end())}};
    out << j.dump(2) << "\n";
  } else {
    out << "order " << r.filter.order() << " (" << method << ")\n"
        << "passband ripple " << fmt("%.4f", r.check.ripple_db) << " dB\n"
        << "stopband attenuation " << fmt("%.4f", r.check.atten_db)
        << " dB\n";
    if (c.out_path.empty())
      write_coefficients(out, r.filter);
  }
  return exit_ok;
}

inline int run_response(const Command &c, std::ostream &out) {
  const AptVdfFilter f = load_filter(c);
  const FrequencyResponse r = frequency_response(f, c.grid);
  std::ostringstream csv;
  write_response_csv(csv, r);
  if (c.out_path.empty()) {
    out << csv.str();
  } else {
    write_text(c.out_path, csv.str());
    out << "alpha " << fmt("%.9g", f.alpha().value()) << ", mode "
        << f.mode().bits() << " (" << f.mode().label() << "), " << r.size()
        << " points -> " << c.out_path << "\n";
  }
  return exit_ok;
}

inline int run_simulate(const Command &c, std::ostream &out) {
  AptVdfFilter f = load_filter(c);
  const auto x = load_stimulus(c);
  if (!c.stimulus_out.empty()) {
    std::ostringstream s;
    write_samples_csv(s, x);
    write_text(c.stimulus_out, s.str());
  }
  const auto y_float = run_float(f, x);
  std::vector<double> y = y_float;
  std::optional<double> err;
  if (c.data_format) {
    y = run_fixed(f, x, sim_config(c));
    err = rmse_db(y_float, y);
  }
  std::ostringstream csv;
  write_samples_csv(csv, y);
  if (c.out_path.empty()) {
    out << csv.str();
    return exit_ok;
  }
  write_text(c.out_path, csv.str());
  if (c.json) {
    nlohmann::json j = {{"samples", y.size()}, {"out", c.out_path}};
    if (err)
      j["rmse_db"] = *err;
    out << j.dump(2) << "\n";
  } else {
    out << y.size() << " samples -> " << c.out_path << "\n";
    if (err)
      out << "rmse vs floating point " << fmt("%.3f", *err) << " dB\n";
  }
  return exit_ok;
}

inline int run_quantize(const Command &c, std::ostream &out) {
  nlohmann::json arr = nlohmann::json::array();
  for (double v : c.values) {
    const double q = quantize(v, c.format, c.policy);
    if (c.json)
      arr.push_back({{"value", v}, {"quantized", q},
                     {"code", fixed_detail::to_fixed(v, c.format, c.policy)}});
    else
      out << fmt("%.17g", v) << " -> " << fmt("%.17g", q) << " "
          << c.format.to_string() << "\n";
  }
  if (c.json)
    out << arr.dump(2) << "\n";
  return exit_ok;
}

inline int run_search(const Command &c, std::ostream &out) {
  const AptVdfFilter f = load_filter(c);
  const auto x = load_stimulus(c);
  WordlengthSearchOptions opt;
  opt.max_fraction_length = c.max_fraction;
  opt.accumulator_guard_bits = c.guard_bits;
  opt.policy = c.policy;
  opt.scale = c.scale;
  const auto r = wordlength_search(f, x, c.target_db, opt);
  nlohmann::json j = {{"i_l", r.integer_length},
                      {"f_l", r.fraction_length},
                      {"w_l", r.config.data_format.word_length()},
                      {"coeff_format",
                       {r.config.coeff_format.word_length(),
                        r.config.coeff_format.fraction_length()}},
                      {"rmse_db", r.rmse_db},
                      {"max_internal_abs", r.max_internal_abs},
                      {"seed", c.seed}};
  if (!c.out_path.empty())
    write_text(c.out_path, j.dump(2) + "\n");
  if (c.json)
    out << j.dump(2) << "\n";
  else
    out << "data format " << r.config.data_format.to_string()
        << ", coefficient format " << r.config.coeff_format.to_string()
        << ", rmse " << fmt("%.3f", r.rmse_db) << " dB, peak internal "
        << fmt("%.6g", r.max_internal_abs) << "\n";
  return exit_ok;
}

inline int run_dpr_time(const Command &c, std::ostream &out) {
  BitstreamInfo b;
  ReconfigInterface i;
  if (!c.bitstream_path.empty()) {
    b = json_as<BitstreamInfo>(read_json_file(c.bitstream_path),
                               c.bitstream_path);
    i = json_as<ReconfigInterface>(read_json_file(c.interface_path),
                                   c.interface_path);
  } else {
    b.label = "bitstream";
    b.size_bytes = static_cast<std::uint64_t>(*c.size_bytes);
    i = {"interface", *c.throughput_bps, c.overhead_s};
  }
  const double t = reconfig_time(b, i);
  if (c.json)
    out << nlohmann::json{{"time_s", t},
                          {"size_bytes", b.size_bytes},
                          {"throughput_bps", i.throughput_bps},
                          {"setup_overhead_s", i.setup_overhead_s}}
               .dump(2)
        << "\n";
  else
    out << "reconfiguration time " << format_seconds(t) << "\n";
  return exit_ok;
}

inline int run_dpr_compare(const Command &c, std::ostream &out) {
  std::vector<ModeRow> rows;
  if (c.paper_rows)
    rows = reference::reconfiguration_rows();
  else
    rows = json_as<std::vector<ModeRow>>(read_json_file(c.rows_path),
                                         c.rows_path);
  const ComparisonReport rep = compare_modes(rows);
  const nlohmann::json j = to_json(rep);
  if (!c.out_path.empty())
    write_text(c.out_path, j.dump(2) + "\n");
  if (c.json)
    out << j.dump(2) << "\n";
  else
    out << to_table(rep);
  return exit_ok;
}

inline int run_trace(const Command &c, std::ostream &out) {
  const Trace t = load_trace_csv(c.input_path, c.dialect);
  const auto chain =
      json_as<MeasurementChain>(read_json_file(c.chain_path), c.chain_path);
  const PowerTrace p = trace_to_power(t, chain);
  const OverheadReport rep = overhead_report(detect_events(p, c.detection));
  const nlohmann::json j = rep;
  if (!c.out_path.empty())
    write_text(c.out_path, j.dump(2) + "\n");
  if (c.json) {
    out << j.dump(2) << "\n";
    return exit_ok;
  }
  out << rep.events.size() << " event(s)\n";
  for (const ReconfigEvent &e : rep.events)
    out << "  " << format_seconds(e.start_s) << " .. "
        << format_seconds(e.end_s) << "  "
        << (e.positive ? "+" : "-") << fmt("%.2f", e.mean_delta_mw)
        << " mW mean, " << fmt("%.2f", e.peak_delta_mw) << " mW peak, "
        << fmt("%.3f", e.energy_overhead_uj) << " uJ\n";
  out << "total energy overhead " << fmt("%.3f", rep.total_energy_uj)
      << " uJ\n";
  return exit_ok;
}

inline int run_reproduce(const Command &c, std::ostream &out) {
  const ComparisonReport rep = compare_modes(reference::reconfiguration_rows());
  const auto checks = reference::consistency_checks();
  bool all = true;
  nlohmann::json jc = nlohmann::json::array();
  for (const auto &k : checks) {
    all = all && k.pass;
    jc.push_back({{"check", k.name},
                  {"value", k.value},
                  {"limit", k.limit},
                  {"pass", k.pass}});
  }
  if (c.json) {
    out << nlohmann::json{{"comparison", to_json(rep)},
                          {"checks", jc},
                          {"pass", all}}
               .dump(2)
        << "\n";
  } else {
    out << to_table(rep) << "\n";
    for (const auto &k : checks)
      out << (k.pass ? "PASS " : "FAIL ") << k.name << ": "
          << fmt("%.6g", k.value) << " (limit " << fmt("%.6g", k.limit)
          << ")\n";
  }
  return all ? exit_ok : exit_runtime;
}

} // namespace detail

inline int execute(const Command &c, std::ostream &out, std::ostream &err) {
  try {
    switch (c.sub) {
    case Subcommand::design:
      return detail::run_design(c, out);
    case Subcommand::response:
      return detail::run_response(c, out);
    case Subcommand::simulate:
      return detail::run_simulate(c, out);
    case Subcommand::quantize:
      return detail::run_quantize(c, out);
    case Subcommand::search:
      return detail::run_search(c, out);
    case Subcommand::dpr_time:
      return detail::run_dpr_time(c, out);
    case Subcommand::dpr_compare:
      return detail::run_dpr_compare(c, out);
    case Subcommand::trace:
      return detail::run_trace(c, out);
    case Subcommand::reproduce_paper:
      return detail::run_reproduce(c, out);
    }
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return exit_runtime;
  }
  return exit_runtime;
}

inline int run(const std::vector<std::string> &args, std::ostream &out,
               std::ostream &err) {
  const ParseResult p = parse_args(args);
  if (!p.command) {
    (p.exit_code == exit_ok ? out : err) << p.message << "\n";
    return p.exit_code;
  }
  return execute(*p.command, out, err);
}

} // namespace aptvdf::cli

#endif // APTVDF_CLI_HPP
