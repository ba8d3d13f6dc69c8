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
#ifndef APTVDF_DPR_MODEL_HPP
#define APTVDF_DPR_MODEL_HPP

// Reconfiguration time and energy cost model for partial bitstreams, with
// the reference measurements of the Virtex-5 filter design as a dataset.
//
// Units: bytes, seconds, bytes/second, watts. "MByte/s" is 1e6 B/s.

#include <aptvdf/error.hpp>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace aptvdf {

struct BitstreamInfo {
  std::string label;
  std::uint64_t size_bytes = 0;
  std::uint32_t frames = 0;
  std::uint32_t frame_regions = 0;

  void validate() const {
    if (size_bytes == 0)
      throw PreconditionError("bitstream size must be positive");
  }
};

struct ReconfigInterface {
  std::string name;
  double throughput_bps = 0.0;
  double setup_overhead_s = 0.0;

  void validate() const {
    if (!(throughput_bps > 0.0) || !std::isfinite(throughput_bps))
      throw PreconditionError("interface throughput must be positive");
    if (!(setup_overhead_s >= 0.0) || !std::isfinite(setup_overhead_s))
      throw PreconditionError("setup overhead must be non-negative");
  }
};

struct UsedAvailable {
  std::uint32_t used = 0;
  std::uint32_t available = 0;
  double utilization() const { return double(used) / double(available); }
};

struct ResourceReport {
  std::string label;
  // Reconfigurable region.
  std::uint32_t lut = 0;
  std::uint32_t fd = 0;
  std::uint32_t slice_l = 0;
  std::uint32_t slice_m = 0;
  // Whole design.
  UsedAvailable slices_total;
  UsedAvailable registers_total;
  UsedAvailable luts_total;

  void validate() const {
    for (const auto *p : {&slices_total, &registers_total, &luts_total})
      if (p->used > p->available)
        throw PreconditionError("resource usage exceeds availability");
  }
};

struct PowerProfile {
  double static_mw = 0.0;
  double dynamic_mw = 0.0;
  double total_mw = 0.0;
  double core_during_full_reconfig_mw = 0.0;
  double core_operational_mw = 0.0;

  void validate() const {
    if (static_mw < 0 || dynamic_mw < 0 || total_mw < 0 ||
        core_during_full_reconfig_mw < 0 || core_operational_mw < 0)
      throw PreconditionError("power values must be non-negative");
    if (total_mw < static_mw)
      throw PreconditionError("total power below static power");
  }

  double sum_mismatch_mw() const {
    return std::abs(static_mw + dynamic_mw - total_mw);
  }
};

// Bytes per second of a configuration port moving one word per clock.
inline double icap_throughput(int word_bits, double clock_hz) {
  if (word_bits != 8 && word_bits != 32)
    throw PreconditionError("ICAP word width must be 8 or 32 bits");
  if (!(clock_hz > 0.0))
    throw PreconditionError("clock frequency must be positive");
  return double(word_bits / 8) * clock_hz;
}

inline double reconfig_time(const BitstreamInfo &bitstream,
                            const ReconfigInterface &iface) {
  bitstream.validate();
  iface.validate();
  return double(bitstream.size_bytes) / iface.throughput_bps +
         iface.setup_overhead_s;
}

inline double calibrate_throughput(double size_bytes, double measured_time_s,
                                   double setup_overhead_s) {
  const double effective = measured_time_s - setup_overhead_s;
  if (!(effective > 0.0))
    throw PreconditionError(
        "measured time must exceed the setup overhead");
  if (!(size_bytes > 0.0))
    throw PreconditionError("bitstream size must be positive");
  return size_bytes / effective;
}

inline double reconfig_energy(double delta_power_w, double duration_s) {
  if (!(duration_s >= 0.0))
    throw PreconditionError("duration must be non-negative");
  return delta_power_w * duration_s;
}

struct ModeRow {
  BitstreamInfo bitstream;
  ReconfigInterface interface;
  std::optional<double> measured_time_s;
};

struct ModeTiming {
  std::string label;
  std::string interface;
  std::uint64_t size_bytes = 0;
  double predicted_s = 0.0;
  std::optional<double> measured_s;
};

struct ComparisonReport {
  std::vector<ModeTiming> modes;
  // speedup[i][j] = time(i) / time(j); > 1 means j is faster.
  std::vector<std::vector<double>> predicted_speedup;
  std::vector<std::vector<std::optional<double>>> measured_speedup;

  double speedup(std::size_t slow, std::size_t fast) const {
    return predicted_speedup.at(slow).at(fast);
  }
  std::optional<double> measured(std::size_t slow, std::size_t fast) const {
    return measured_speedup.at(slow).at(fast);
  }
};

inline ComparisonReport compare_modes(const std::vector<ModeRow> &rows) {
  if (rows.size() < 2)
    throw PreconditionError("comparison needs at least two rows");
  ComparisonReport rep;
  for (const ModeRow &r : rows)
    rep.modes.push_back({r.bitstream.label, r.interface.name,
                         r.bitstream.size_bytes,
                         reconfig_time(r.bitstream, r.interface),
                         r.measured_time_s});
  const std::size_t n = rep.modes.size();
  rep.predicted_speedup.assign(n, std::vector<double>(n, 1.0));
  rep.measured_speedup.assign(n, std::vector<std::optional<double>>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      rep.predicted_speedup[i][j] =
          rep.modes[i].predicted_s / rep.modes[j].predicted_s;
      if (rep.modes[i].measured_s && rep.modes[j].measured_s)
        rep.measured_speedup[i][j] =
            *rep.modes[i].measured_s / *rep.modes[j].measured_s;
    }
  return rep;
}

// JSON

inline void to_json(nlohmann::json &j, const BitstreamInfo &b) {
  j = {{"label", b.label},
       {"size_bytes", b.size_bytes},
       {"frames", b.frames},
       {"frame_regions", b.frame_regions}};
}

inline void from_json(const nlohmann::json &j, BitstreamInfo &b) {
  b.label = j.value("label", std::string{});
  b.size_bytes = j.at("size_bytes").get<std::uint64_t>();
  b.frames = j.value("frames", std::uint32_t{0});
  b.frame_regions = j.value("frame_regions", std::uint32_t{0});
  b.validate();
}

inline void to_json(nlohmann::json &j, const ReconfigInterface &i) {
  j = {{"name", i.name},
       {"throughput_bps", i.throughput_bps},
       {"setup_overhead_s", i.setup_overhead_s}};
}

inline void from_json(const nlohmann::json &j, ReconfigInterface &i) {
  i.name = j.value("name", std::string{});
  i.throughput_bps = j.at("throughput_bps").get<double>();
  i.setup_overhead_s = j.value("setup_overhead_s", 0.0);
  i.validate();
}

inline void from_json(const nlohmann::json &j, ModeRow &r) {
  r.bitstream = j.at("bitstream").get<BitstreamInfo>();
  r.interface = j.at("interface").get<ReconfigInterface>();
  if (j.contains("measured_time_s") && !j["measured_time_s"].is_null())
    r.measured_time_s = j["measured_time_s"].get<double>();
}

inline void to_json(nlohmann::json &j, const ModeRow &r) {
  j = {{"bitstream", r.bitstream}, {"interface", r.interface}};
  if (r.measured_time_s)
    j["measured_time_s"] = *r.measured_time_s;
}

inline nlohmann::json to_json(const ComparisonReport &rep) {
  nlohmann::json modes = nlohmann::json::array();
  for (const ModeTiming &m : rep.modes) {
    nlohmann::json e = {{"label", m.label},
                        {"interface", m.interface},
                        {"size_bytes", m.size_bytes},
                        {"predicted_s", m.predicted_s}};
    e["measured_s"] = m.measured_s ? nlohmann::json(*m.measured_s)
                                   : nlohmann::json(nullptr);
    modes.push_back(e);
  }
  nlohmann::json speedups = nlohmann::json::array();
  for (std::size_t i = 0; i < rep.modes.size(); ++i)
    for (std::size_t j = 0; j < rep.modes.size(); ++j) {
      if (i == j)
        continue;
      nlohmann::json s = {{"slow", rep.modes[i].label},
                          {"fast", rep.modes[j].label},
                          {"predicted", rep.predicted_speedup[i][j]}};
      const auto &m = rep.measured_speedup[i][j];
      s["measured"] = m ? nlohmann::json(*m) : nlohmann::json(nullptr);
      speedups.push_back(s);
    }
  return {{"modes", modes}, {"speedups", speedups}};
}

// Engineering notation with an SI prefix, e.g. 316.16 us.
inline std::string format_seconds(double s) {
  char buf[64];
  if (s >= 1.0)
    std::snprintf(buf, sizeof buf, "%.6g s", s);
  else if (s >= 1e-3)
    std::snprintf(buf, sizeof buf, "%.6g ms", s * 1e3);
  else if (s >= 1e-6)
    std::snprintf(buf, sizeof buf, "%.6g us", s * 1e6);
  else
    std::snprintf(buf, sizeof buf, "%.6g ns", s * 1e9);
  return buf;
}

inline std::string to_table(const ComparisonReport &rep) {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "%-24s %-16s %12s %14s %14s\n", "mode",
                "interface", "bytes", "predicted", "measured");
  os << line;
  for (const ModeTiming &m : rep.modes) {
    std::snprintf(line, sizeof line, "%-24s %-16s %12llu %14s %14s\n",
                  m.label.c_str(), m.interface.c_str(),
                  static_cast<unsigned long long>(m.size_bytes),
                  format_seconds(m.predicted_s).c_str(),
                  m.measured_s ? format_seconds(*m.measured_s).c_str() : "-");
    os << line;
  }
  os << "\n";
  std::snprintf(line, sizeof line, "%-24s %-24s %12s %12s\n", "slow", "fast",
                "predicted", "measured");
  os << line;
  for (std::size_t i = 0; i < rep.modes.size(); ++i)
    for (std::size_t j = 0; j < rep.modes.size(); ++j) {
      if (i == j || rep.predicted_speedup[i][j] < 1.0)
        continue;
      const auto &m = rep.measured_speedup[i][j];
      char meas[32] = "-";
      if (m)
        std::snprintf(meas, sizeof meas, "%.1f", *m);
      std::snprintf(line, sizeof line, "%-24s %-24s %12.1f %12s\n",
                    rep.modes[i].label.c_str(), rep.modes[j].label.c_str(),
                    rep.predicted_speedup[i][j], meas);
      os << line;
    }
  return os.str();
}

// Reference measurements of the Virtex-5 XC5VLX50T filter design.
namespace reference {

inline constexpr double icap_clock_hz = 100e6;
inline constexpr int icap_word_bits = 32;
inline constexpr double icap_setup_overhead_s = 80e-6;
inline constexpr std::uint64_t partial_bitstream_bytes = 94464;
inline constexpr std::uint64_t full_bitstream_bytes = 1716ull * 1024ull;

inline constexpr double full_jtag_time_s = 3.80;
inline constexpr double partial_jtag_time_s = 208.9e-3;
inline constexpr double partial_icap_time_s = 324e-6;

// Core rail power around reconfiguration, mW.
inline constexpr double core_baseline_mw = 340.0;
inline constexpr double core_peak_mw = 500.0;
inline constexpr double core_full_reconfig_mw = 220.0;
inline constexpr double core_operational_mw = 360.0;

inline BitstreamInfo partial_bitstream(std::string label = "partial") {
  return {std::move(label), partial_bitstream_bytes, 16, 2};
}

inline BitstreamInfo full_bitstream() {
  return {"full", full_bitstream_bytes, 0, 0};
}

inline ReconfigInterface icap32_dma() {
  return {"ICAP32 DMA", icap_throughput(icap_word_bits, icap_clock_hz),
          icap_setup_overhead_s};
}

inline ReconfigInterface jtag_full() {
  return {"JTAG", calibrate_throughput(double(full_bitstream_bytes),
                                       full_jtag_time_s, 0.0),
          0.0};
}

inline ReconfigInterface jtag_partial() {
  return {"JTAG", calibrate_throughput(double(partial_bitstream_bytes),
                                       partial_jtag_time_s, 0.0),
          0.0};
}

// Full JTAG, partial JTAG and partial ICAP32 DMA, each with its measurement.
inline std::vector<ModeRow> reconfiguration_rows() {
  return {
      {{"Full (JTAG)", full_bitstream_bytes, 0, 0}, jtag_full(),
       full_jtag_time_s},
      {partial_bitstream("Partial (JTAG)"), jtag_partial(),
       partial_jtag_time_s},
      {partial_bitstream("Partial (ICAP32 DMA)"), icap32_dma(),
       partial_icap_time_s},
  };
}

// Highpass (0,1) and bandstop (1,1) configurations. The region columns keep
// the labels under which they were reported.
inline std::vector<ResourceReport> resources() {
  return {
      {"(0,1) highpass", 315, 0, 67, 23, {2364, 7200}, {3843, 28800},
       {4850, 28800}},
      {"(1,1) bandpass-region", 336, 336, 77, 26, {2427, 7200},
       {4179, 28800}, {4998, 28800}},
  };
}

inline std::vector<PowerProfile> power_estimates() {
  return {
      {450.0, 256.0, 707.0, core_full_reconfig_mw, core_operational_mw},
      {450.0, 270.0, 720.0, core_full_reconfig_mw, core_operational_mw},
  };
}

struct ConsistencyCheck {
  std::string name;
  double value = 0.0;
  double limit = 0.0;
  bool pass = false;
};

// Power sums and JTAG throughput agreement.
inline std::vector<ConsistencyCheck> consistency_checks() {
  std::vector<ConsistencyCheck> out;
  const auto res = resources();
  const auto pw = power_estimates();
  for (std::size_t i = 0; i < pw.size(); ++i) {
    const double mis = pw[i].sum_mismatch_mw();
    out.push_back({"static+dynamic=total " + res[i].label, mis, 2.0,
                   mis <= 2.0});
  }
  const double a = jtag_partial().throughput_bps;
  const double b = jtag_full().throughput_bps;
  const double rel = std::abs(a - b) / std::min(a, b);
  out.push_back({"JTAG throughput agreement (relative)", rel, 0.03,
                 rel <= 0.03});
  const double t = reconfig_time(partial_bitstream(), icap32_dma());
  const double dev = std::abs(t - partial_icap_time_s) / partial_icap_time_s;
  out.push_back({"ICAP32 DMA model vs measurement (relative)", dev, 0.03,
                 dev <= 0.03});
  return out;
}

} // namespace reference

} // namespace aptvdf

#endif // APTVDF_DPR_MODEL_HPP
