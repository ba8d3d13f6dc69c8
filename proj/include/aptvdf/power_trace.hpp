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
#ifndef APTVDF_POWER_TRACE_HPP
#define APTVDF_POWER_TRACE_HPP

// Shunt-resistor power measurement chain and reconfiguration event
// extraction from sampled rail traces.
//
// Chain: rail current I flows through a Kelvin shunt R, an instrumentation
// amplifier with gain G lifts the drop to v = G * I * R, and the rail power
// is P = V_rail * v / (G * R).

#include <aptvdf/error.hpp>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <utility>
#include <string>
#include <vector>

namespace aptvdf {

// Instrumentation amplifier gain set by one external resistor.
inline constexpr double default_gain_constant_ohms = 49400.0;

inline double amplifier_gain(double gain_resistor_ohms,
                             double gain_constant_ohms =
                                 default_gain_constant_ohms) {
  if (!(gain_resistor_ohms > 0.0))
    throw PreconditionError("gain resistor must be positive");
  if (std::isinf(gain_resistor_ohms))
    return 1.0;
  return 1.0 + gain_constant_ohms / gain_resistor_ohms;
}

struct MeasurementChain {
  double shunt_ohms = 0.01;
  double shunt_tolerance = 0.01; // fraction
  double amp_gain = 1.0;
  double rail_volts = 1.0;

  static MeasurementChain
  from_gain_resistor(double shunt_ohms, double gain_resistor_ohms,
                     double rail_volts, double shunt_tolerance = 0.01,
                     double gain_constant_ohms = default_gain_constant_ohms) {
    MeasurementChain c{shunt_ohms, shunt_tolerance,
                       amplifier_gain(gain_resistor_ohms, gain_constant_ohms),
                       rail_volts};
    c.validate();
    return c;
  }

  void validate() const {
    if (!(shunt_ohms > 0.0))
      throw PreconditionError("shunt resistance must be positive");
    if (!(shunt_tolerance >= 0.0 && shunt_tolerance < 1.0))
      throw PreconditionError("shunt tolerance must lie in [0, 1)");
    if (!(amp_gain >= 1.0))
      throw PreconditionError("amplifier gain must be at least 1");
    if (!(rail_volts > 0.0))
      throw PreconditionError("rail voltage must be positive");
  }

  // Amplifier output for a given rail power.
  double volts_for_power_mw(double power_mw) const {
    return power_mw * 1e-3 / rail_volts * shunt_ohms * amp_gain;
  }
  double power_mw_for_volts(double volts) const {
    return rail_volts * volts / (amp_gain * shunt_ohms) * 1e3;
  }
};

struct Trace {
  std::string label;
  std::vector<double> time_s;
  std::vector<double> volts;

  std::size_t size() const { return time_s.size(); }

  void validate() const {
    if (time_s.size() != volts.size())
      throw PreconditionError("trace time and value columns differ in length");
    if (time_s.size() < 2)
      throw PreconditionError("trace needs at least two samples");
    for (std::size_t i = 0; i < time_s.size(); ++i) {
      if (!std::isfinite(time_s[i]) || !std::isfinite(volts[i]))
        throw NonFiniteInputError(i);
      if (i > 0 && !(time_s[i] > time_s[i - 1]))
        throw PreconditionError("trace times must be strictly increasing "
                                "(sample " +
                                std::to_string(i) + ")");
    }
  }
};

struct PowerTrace {
  std::vector<double> time_s;
  std::vector<double> mw;
  // Bounds implied by the shunt tolerance.
  std::vector<double> mw_low;
  std::vector<double> mw_high;

  std::size_t size() const { return time_s.size(); }
};

inline PowerTrace trace_to_power(const Trace &trace,
                                 const MeasurementChain &chain) {
  trace.validate();
  chain.validate();
  PowerTrace p;
  p.time_s = trace.time_s;
  p.mw.reserve(trace.size());
  p.mw_low.reserve(trace.size());
  p.mw_high.reserve(trace.size());
  for (double v : trace.volts) {
    const double mw = chain.power_mw_for_volts(v);
    const double a = mw / (1.0 + chain.shunt_tolerance);
    const double b = mw / (1.0 - chain.shunt_tolerance);
    p.mw.push_back(mw);
    p.mw_low.push_back(std::min(a, b));
    p.mw_high.push_back(std::max(a, b));
  }
  return p;
}

// Inverse of trace_to_power: synthesizes the amplifier output for a power
// trace.
inline Trace power_to_trace(const std::vector<double> &time_s,
                            const std::vector<double> &power_mw,
                            const MeasurementChain &chain,
                            std::string label = {}) {
  chain.validate();
  Trace t{std::move(label), time_s, {}};
  t.volts.reserve(power_mw.size());
  for (double p : power_mw)
    t.volts.push_back(chain.volts_for_power_mw(p));
  return t;
}

struct ReconfigEvent {
  double start_s = 0.0;
  double end_s = 0.0;
  std::size_t first_sample = 0;
  std::size_t last_sample = 0;
  double baseline_mw = 0.0;
  double mean_delta_mw = 0.0; // magnitude
  double peak_delta_mw = 0.0; // magnitude
  bool positive = true;       // power rose above the baseline
  double energy_overhead_uj = 0.0; // signed integral of P - baseline

  double duration_s() const { return end_s - start_s; }
  friend bool operator==(const ReconfigEvent &,
                         const ReconfigEvent &) = default;
};

struct DetectionOptions {
  double min_duration_s = 1e-6;
  double sigma_k = 6.0;
  // Excursions at or below this are never events, so flat traces stay quiet.
  double min_threshold_mw = 1e-9;
};

namespace trace_detail {

inline double median(std::vector<double> v) {
  if (v.empty())
    return std::numeric_limits<double>::quiet_NaN();
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  double m = v[mid];
  if (v.size() % 2 == 0) {
    const double lo = *std::max_element(v.begin(), v.begin() + mid);
    m = 0.5 * (m + lo);
  }
  return m;
}

struct Run {
  std::size_t first;
  std::size_t last;
};

inline std::vector<Run> runs_above(const std::vector<double> &mw,
                                   double baseline, double threshold) {
  std::vector<Run> runs;
  std::optional<std::size_t> start;
  for (std::size_t i = 0; i < mw.size(); ++i) {
    const bool hit = std::abs(mw[i] - baseline) > threshold;
    if (hit && !start)
      start = i;
    if (!hit && start) {
      runs.push_back({*start, i - 1});
      start.reset();
    }
  }
  if (start)
    runs.push_back({*start, mw.size() - 1});
  return runs;
}

} // namespace trace_detail

// Trapezoidal integral of (P - baseline) over samples [first, last], in uJ.
inline double excess_energy_uj(const PowerTrace &p, std::size_t first,
                               std::size_t last, double baseline_mw) {
  double mj = 0.0;
  for (std::size_t i = first; i < last; ++i)
    mj += 0.5 * ((p.mw[i] - baseline_mw) + (p.mw[i + 1] - baseline_mw)) *
          (p.time_s[i + 1] - p.time_s[i]);
  return mj * 1e3;
}

// Baseline is the median outside candidate windows (global median first,
// then recomputed once with the windows excluded). An event is a maximal
// run of samples deviating from it by more than sigma_k baseline standard
// deviations and lasting at least min_duration_s.
inline std::vector<ReconfigEvent> detect_events(const PowerTrace &power,
                                                const DetectionOptions &opt) {
  using namespace trace_detail;
  if (power.size() < 100)
    throw PreconditionError("event detection needs at least 100 samples");
  if (!(opt.min_duration_s > 0.0))
    throw PreconditionError("minimum event duration must be positive");
  if (!(opt.sigma_k > 0.0))
    throw PreconditionError("sigma_k must be positive");

  const auto &mw = power.mw;
  const double m0 = median(mw);
  std::vector<double> dev(mw.size());
  for (std::size_t i = 0; i < mw.size(); ++i)
    dev[i] = std::abs(mw[i] - m0);
  const double sigma0 = 1.4826 * median(dev);
  const auto candidates = runs_above(
      mw, m0, std::max(opt.sigma_k * sigma0, opt.min_threshold_mw));

  std::vector<bool> inside(mw.size(), false);
  for (const Run &r : candidates)
    for (std::size_t i = r.first; i <= r.last; ++i)
      inside[i] = true;
  std::vector<double> quiet;
  for (std::size_t i = 0; i < mw.size(); ++i)
    if (!inside[i])
      quiet.push_back(mw[i]);
  if (quiet.size() < 2)
    return {};

  const double baseline = median(quiet);
  double var = 0.0;
  for (double v : quiet)
    var += (v - baseline) * (v - baseline);
  const double sigma = std::sqrt(var / double(quiet.size() - 1));
  const double threshold = std::max(opt.sigma_k * sigma, opt.min_threshold_mw);

  std::vector<ReconfigEvent> events;
  for (const Run &r : runs_above(mw, baseline, threshold)) {
    ReconfigEvent e;
    e.first_sample = r.first;
    e.last_sample = r.last;
    e.start_s = power.time_s[r.first];
    e.end_s = power.time_s[r.last];
    if (!(e.duration_s() >= opt.min_duration_s))
      continue;
    e.baseline_mw = baseline;
    double sum = 0.0, peak = 0.0;
    for (std::size_t i = r.first; i <= r.last; ++i) {
      sum += mw[i] - baseline;
      peak = std::max(peak, std::abs(mw[i] - baseline));
    }
    const double mean = sum / double(r.last - r.first + 1);
    e.positive = mean >= 0.0;
    e.mean_delta_mw = std::abs(mean);
    e.peak_delta_mw = peak;
    e.energy_overhead_uj = excess_energy_uj(power, r.first, r.last, baseline);
    events.push_back(e);
  }
  return events;
}

struct OverheadReport {
  std::vector<ReconfigEvent> events;
  double total_energy_uj = 0.0;
  double total_duration_s = 0.0;
  double max_mean_delta_mw = 0.0;
  double max_peak_delta_mw = 0.0;
};

inline OverheadReport overhead_report(std::vector<ReconfigEvent> events) {
  OverheadReport r;
  for (const ReconfigEvent &e : events) {
    r.total_energy_uj += e.energy_overhead_uj;
    r.total_duration_s += e.duration_s();
    r.max_mean_delta_mw = std::max(r.max_mean_delta_mw, e.mean_delta_mw);
    r.max_peak_delta_mw = std::max(r.max_peak_delta_mw, e.peak_delta_mw);
  }
  r.events = std::move(events);
  return r;
}

inline void to_json(nlohmann::json &j, const ReconfigEvent &e) {
  j = {{"start_s", e.start_s},
       {"end_s", e.end_s},
       {"duration_s", e.duration_s()},
       {"first_sample", e.first_sample},
       {"last_sample", e.last_sample},
       {"baseline_mw", e.baseline_mw},
       {"mean_delta_mw", e.mean_delta_mw},
       {"peak_delta_mw", e.peak_delta_mw},
       {"polarity", e.positive ? "rise" : "drop"},
       {"energy_overhead_uj", e.energy_overhead_uj}};
}

inline void to_json(nlohmann::json &j, const OverheadReport &r) {
  j = {{"events", r.events},
       {"totals",
        {{"event_count", r.events.size()},
         {"energy_overhead_uj", r.total_energy_uj},
         {"duration_s", r.total_duration_s},
         {"max_mean_delta_mw", r.max_mean_delta_mw},
         {"max_peak_delta_mw", r.max_peak_delta_mw}}}};
}

// {shunt_ohms, shunt_tolerance, gain | gain_resistor_ohms, rail_volts}
inline void from_json(const nlohmann::json &j, MeasurementChain &c) {
  c.shunt_ohms = j.at("shunt_ohms").get<double>();
  c.shunt_tolerance = j.value("shunt_tolerance", 0.01);
  c.rail_volts = j.at("rail_volts").get<double>();
  const bool has_gain = j.contains("gain");
  const bool has_rg = j.contains("gain_resistor_ohms");
  if (has_gain == has_rg)
    throw PreconditionError(
        "chain config needs exactly one of gain, gain_resistor_ohms");
  if (has_gain)
    c.amp_gain = j["gain"].get<double>();
  else
    c.amp_gain = amplifier_gain(
        j["gain_resistor_ohms"].get<double>(),
        j.value("gain_constant_ohms", default_gain_constant_ohms));
  c.validate();
}

inline void to_json(nlohmann::json &j, const MeasurementChain &c) {
  j = {{"shunt_ohms", c.shunt_ohms},
       {"shunt_tolerance", c.shunt_tolerance},
       {"gain", c.amp_gain},
       {"rail_volts", c.rail_volts}};
}

} // namespace aptvdf

#endif // APTVDF_POWER_TRACE_HPP
