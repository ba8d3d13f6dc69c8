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
#ifndef APTVDF_FILTER_CORE_HPP
#define APTVDF_FILTER_CORE_HPP

// All-pass transformation variable digital filter.
//
// A linear-phase FIR prototype H(z) = sum h(n) z^-n is turned into a tunable
// filter by replacing every unit delay with a first-order all-pass section
//
//     A(z) = (-alpha + z^-1) / (1 - alpha z^-1),   |alpha| < 1.
//
// Two select bits pick the filter type:
//   sel_f1 = 1  each stage becomes -A(z)^2 (lowpass -> bandpass around 0.5)
//   sel_f2 = 1  output is D(z) - H_w(z), where D(z) is the chain tap after
//               N/2 stages (delay complement: lowpass -> highpass,
//               bandpass -> bandstop)
//
// Frequencies are normalized to the Nyquist frequency, so 1.0 is fs/2.

#include <aptvdf/error.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace aptvdf {

using Complex = std::complex<double>;

struct FrequencySpec {
  double cutoff = 0.0;             // passband edge
  double transition_bw = 0.0;      // stopband edge is cutoff + transition_bw
  double passband_ripple_db = 0.0; // peak-to-peak
  double stopband_atten_db = 0.0;  // positive, relative to unit DC gain

  double stopband_edge() const { return cutoff + transition_bw; }

  void validate() const {
    if (!(cutoff > 0.0 && cutoff < 1.0))
      throw PreconditionError("cutoff must lie in (0, 1)");
    if (!(transition_bw > 0.0 && transition_bw < 1.0))
      throw PreconditionError("transition bandwidth must lie in (0, 1)");
    if (!(cutoff + transition_bw < 1.0))
      throw PreconditionError("cutoff + transition bandwidth must be < 1");
    if (!(passband_ripple_db > 0.0))
      throw PreconditionError("passband ripple must be positive");
    if (!(stopband_atten_db > 0.0))
      throw PreconditionError("stopband attenuation must be positive");
  }
};

class PrototypeFilter {
public:
  explicit PrototypeFilter(std::vector<double> coefficients)
      : h_(std::move(coefficients)) {
    if (h_.size() < 2)
      throw PreconditionError("prototype needs at least two coefficients");
    for (std::size_t i = 0; i < h_.size(); ++i)
      if (!std::isfinite(h_[i]))
        throw PreconditionError("coefficient " + std::to_string(i) +
                                " is not finite");
  }

  std::size_t order() const { return h_.size() - 1; }
  std::span<const double> coefficients() const { return h_; }
  double operator[](std::size_t n) const { return h_[n]; }

  bool is_symmetric(double tol = 0.0) const {
    const std::size_t n = order();
    for (std::size_t i = 0; i <= n / 2; ++i)
      if (std::abs(h_[i] - h_[n - i]) > tol)
        return false;
    return true;
  }

  // H(e^{-j pi w}) evaluated directly as a sum of complex exponentials.
  Complex response_at(double w) const {
    Complex acc{0.0, 0.0};
    for (std::size_t n = 0; n < h_.size(); ++n)
      acc += h_[n] * std::polar(1.0, -std::numbers::pi * w * double(n));
    return acc;
  }

private:
  std::vector<double> h_;
};

class WarpingCoefficient {
public:
  WarpingCoefficient() = default;
  explicit WarpingCoefficient(double alpha) : alpha_(alpha) {
    if (!(std::abs(alpha) < 1.0))
      throw DomainError("warping coefficient must satisfy |alpha| < 1");
  }
  double value() const { return alpha_; }

private:
  double alpha_ = 0.0;
};

struct FilterMode {
  bool sel_f1 = false;
  bool sel_f2 = false;

  static constexpr FilterMode lowpass() { return {false, false}; }
  static constexpr FilterMode bandpass() { return {true, false}; }
  static constexpr FilterMode highpass() { return {false, true}; }
  static constexpr FilterMode bandstop() { return {true, true}; }

  // "00", "10", "01", "11" in (sel_f1, sel_f2) order.
  static FilterMode parse(std::string_view bits) {
    if (bits.size() != 2 || (bits[0] != '0' && bits[0] != '1') ||
        (bits[1] != '0' && bits[1] != '1'))
      throw PreconditionError("mode must be two bits, e.g. 01");
    return {bits[0] == '1', bits[1] == '1'};
  }

  std::string bits() const {
    return {sel_f1 ? '1' : '0', sel_f2 ? '1' : '0'};
  }

  std::string_view label() const {
    if (!sel_f1 && !sel_f2)
      return "lowpass";
    if (sel_f1 && !sel_f2)
      return "bandpass";
    if (!sel_f1 && sel_f2)
      return "highpass";
    return "bandstop";
  }

  friend bool operator==(FilterMode, FilterMode) = default;
};

// Warping coefficient that moves a prototype cutoff f_co to f_c.
inline WarpingCoefficient compute_alpha(double f_co, double f_c) {
  if (!(f_co > 0.0 && f_co < 1.0) || !(f_c > 0.0 && f_c < 1.0))
    throw PreconditionError("cutoff frequencies must lie in (0, 1)");
  constexpr double half_pi = std::numbers::pi / 2.0;
  const double alpha =
      std::sin((f_co - f_c) * half_pi) / std::sin((f_co + f_c) * half_pi);
  if (!(std::abs(alpha) < 1.0))
    throw DomainError("computed warping coefficient is outside (-1, 1)");
  return WarpingCoefficient(alpha);
}

// First-order all-pass section value on the unit circle at normalized w.
inline Complex allpass_response(WarpingCoefficient alpha, double w) {
  const double a = alpha.value();
  const Complex zinv = std::polar(1.0, -std::numbers::pi * w);
  return (-a + zinv) / (1.0 - a * zinv);
}

// Prototype-domain frequency seen by the warped filter at w, i.e.
// -arg A(e^{j pi w}) / pi. Continuous and strictly increasing on [0, 1].
inline double warp_frequency(WarpingCoefficient alpha, double w) {
  if (!(w >= 0.0 && w <= 1.0))
    throw PreconditionError("frequency must lie in [0, 1]");
  if (w == 0.0 || w == 1.0)
    return w;
  const double a = alpha.value();
  const double theta = std::numbers::pi * w;
  // 1 - a cos(theta) > 0 for |a| < 1, so atan2 never crosses its branch cut.
  return w + 2.0 / std::numbers::pi *
                 std::atan2(a * std::sin(theta), 1.0 - a * std::cos(theta));
}

struct FrequencyResponse {
  std::vector<double> grid;
  std::vector<Complex> values;

  std::size_t size() const { return grid.size(); }
  double magnitude(std::size_t i) const { return std::abs(values[i]); }
  double magnitude_db(std::size_t i) const {
    return 20.0 * std::log10(std::abs(values[i]));
  }
  double phase(std::size_t i) const { return std::arg(values[i]); }
};

class AptVdfFilter {
public:
  AptVdfFilter(PrototypeFilter prototype, WarpingCoefficient alpha,
               FilterMode mode)
      : prototype_(std::move(prototype)), alpha_(alpha), mode_(mode) {
    if (mode_.sel_f2 && prototype_.order() % 2 != 0)
      throw StructuralError(
          "complement modes need an even prototype order, got " +
          std::to_string(prototype_.order()));
    taps_.assign(allpass_sections() + 1, 0.0);
  }

  const PrototypeFilter &prototype() const { return prototype_; }
  WarpingCoefficient alpha() const { return alpha_; }
  FilterMode mode() const { return mode_; }

  // Stages replacing the prototype delays: N of them.
  std::size_t stage_count() const { return prototype_.order(); }
  // First-order all-pass sections: one per stage, two when sel_f1 is set.
  std::size_t allpass_per_stage() const { return mode_.sel_f1 ? 2 : 1; }
  std::size_t allpass_sections() const {
    return stage_count() * allpass_per_stage();
  }
  // Stage whose output feeds the delay-complement branch.
  std::size_t complement_stage() const { return stage_count() / 2; }

  double pole_magnitude() const { return std::abs(alpha_.value()); }

  // Samples after which the impulse response has decayed below ~1e-9.
  std::size_t settling_horizon() const {
    constexpr double eps = 1e-6;
    const double per = std::ceil(std::log(1e-9) /
                                 std::log(std::abs(alpha_.value()) + eps));
    return static_cast<std::size_t>(per) * allpass_sections();
  }

  // Value of one stage (A or -A^2) on the unit circle.
  Complex stage_response(double w) const {
    const Complex a = allpass_response(alpha_, w);
    return mode_.sel_f1 ? -(a * a) : a;
  }

  Complex response_at(double w) const {
    const Complex s = stage_response(w);
    const auto h = prototype_.coefficients();
    Complex main{0.0, 0.0};
    for (std::size_t n = h.size(); n-- > 0;)
      main = main * s + h[n];
    if (!mode_.sel_f2)
      return main;
    return std::pow(s, static_cast<int>(complement_stage())) - main;
  }

  // Streams input through the section chain. State carries across calls.
  std::vector<double> process_block(std::span<const double> input) {
    for (std::size_t i = 0; i < input.size(); ++i)
      if (!std::isfinite(input[i]))
        throw NonFiniteInputError(i);

    const double a = alpha_.value();
    const auto h = prototype_.coefficients();
    const std::size_t per = allpass_per_stage();
    const std::size_t sections = allpass_sections();
    const std::size_t mid = complement_stage() * per;
    std::vector<double> out(input.size());
    std::vector<double> cur(taps_.size());

    for (std::size_t i = 0; i < input.size(); ++i) {
      cur[0] = input[i];
      for (std::size_t k = 1; k <= sections; ++k)
        cur[k] = -a * cur[k - 1] + taps_[k - 1] + a * taps_[k];

      double y = 0.0;
      for (std::size_t n = 0; n < h.size(); ++n)
        y += tap_sign(n) * h[n] * cur[n * per];
      if (mode_.sel_f2)
        y = tap_sign(complement_stage()) * cur[mid] - y;
      out[i] = y;
      taps_.swap(cur);
    }
    return out;
  }

  void reset() { std::fill(taps_.begin(), taps_.end(), 0.0); }

  // Previous output of each first-order section; index 0 is the input.
  std::span<const double> state() const { return taps_; }

  // Sign applied to stage n's output when sel_f1 turns A into -A^2.
  double tap_sign(std::size_t n) const {
    return (mode_.sel_f1 && (n % 2 == 1)) ? -1.0 : 1.0;
  }

private:
  PrototypeFilter prototype_;
  WarpingCoefficient alpha_;
  FilterMode mode_;
  std::vector<double> taps_;
};

inline AptVdfFilter build_filter(PrototypeFilter prototype,
                                 WarpingCoefficient alpha, FilterMode mode) {
  return AptVdfFilter(std::move(prototype), alpha, mode);
}

// Uniform grid of grid_size points covering [0, 1].
inline std::vector<double> uniform_grid(std::size_t grid_size) {
  if (grid_size < 2)
    throw PreconditionError("grid size must be at least 2");
  std::vector<double> g(grid_size);
  for (std::size_t i = 0; i < grid_size; ++i)
    g[i] = double(i) / double(grid_size - 1);
  g.back() = 1.0;
  return g;
}

inline FrequencyResponse frequency_response(const AptVdfFilter &filter,
                                            std::size_t grid_size) {
  FrequencyResponse r;
  r.grid = uniform_grid(grid_size);
  r.values.reserve(grid_size);
  for (double w : r.grid)
    r.values.push_back(filter.response_at(w));
  return r;
}

} // namespace aptvdf

#endif // APTVDF_FILTER_CORE_HPP
