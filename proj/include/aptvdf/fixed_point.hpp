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
#ifndef APTVDF_FIXED_POINT_HPP
#define APTVDF_FIXED_POINT_HPP

// Generalized fixed-point [w_l, f_l] emulation and bit-accurate simulation of
// the all-pass transformed filter.
//
// Dataflow of run_fixed (all integers, scaled by powers of two):
//   - coefficients h(n) and alpha are quantized to coeff_format
//   - each input sample is quantized to data_format
//   - every first-order section computes -a*x[n] + x[n-1] + a*y[n-1] exactly
//     in an accumulator of w_data + w_coeff + guard bits, then requantizes to
//     data_format
//   - the output sum (and the complement tap, if selected) is accumulated
//     exactly the same way and quantized once to data_format
// Accumulator overflow follows the configured overflow policy.

#include <aptvdf/error.hpp>
#include <aptvdf/filter_core.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace aptvdf {

class FixedPointFormat {
public:
  static constexpr int max_word_length = 48;

  FixedPointFormat() = default;
  FixedPointFormat(int word_length, int fraction_length)
      : w_(word_length), f_(fraction_length) {
    if (w_ < 2 || w_ > max_word_length)
      throw PreconditionError("word length must lie in [2, " +
                              std::to_string(max_word_length) + "]");
    if (f_ < 0 || f_ >= w_)
      throw PreconditionError("fraction length must lie in [0, w_l)");
  }

  // "w,f" or "[w,f]".
  static FixedPointFormat parse(std::string_view text) {
    std::string s(text);
    std::erase_if(s, [](char c) { return c == '[' || c == ']' || c == ' '; });
    const auto comma = s.find(',');
    if (comma == std::string::npos)
      throw PreconditionError("format must be written as w,f");
    try {
      std::size_t a = 0, b = 0;
      const int w = std::stoi(s.substr(0, comma), &a);
      const int f = std::stoi(s.substr(comma + 1), &b);
      if (a != comma || b != s.size() - comma - 1)
        throw std::invalid_argument("trailing characters");
      return {w, f};
    } catch (const std::logic_error &) {
      throw PreconditionError("format must be written as w,f");
    }
  }

  int word_length() const { return w_; }
  int fraction_length() const { return f_; }
  int integer_length() const { return w_ - f_; }

  double lsb() const { return std::ldexp(1.0, -f_); }
  double min_value() const { return -std::ldexp(1.0, integer_length() - 1); }
  double max_value() const {
    return std::ldexp(1.0, integer_length() - 1) - lsb();
  }
  std::int64_t min_int() const { return -(std::int64_t{1} << (w_ - 1)); }
  std::int64_t max_int() const { return (std::int64_t{1} << (w_ - 1)) - 1; }

  std::string to_string() const {
    return "[" + std::to_string(w_) + "," + std::to_string(f_) + "]";
  }

  friend bool operator==(const FixedPointFormat &,
                         const FixedPointFormat &) = default;

private:
  int w_ = 16;
  int f_ = 14;
};

enum class Rounding { nearest_even, nearest_away, truncate };
enum class Overflow { saturate, wrap };

struct QuantizationPolicy {
  Rounding rounding = Rounding::nearest_even;
  Overflow overflow = Overflow::saturate;
};

inline Rounding parse_rounding(std::string_view s) {
  if (s == "nearest-even" || s == "nearest")
    return Rounding::nearest_even;
  if (s == "nearest-away")
    return Rounding::nearest_away;
  if (s == "truncate")
    return Rounding::truncate;
  throw PreconditionError("unknown rounding mode '" + std::string(s) + "'");
}

inline Overflow parse_overflow(std::string_view s) {
  if (s == "saturate")
    return Overflow::saturate;
  if (s == "wrap")
    return Overflow::wrap;
  throw PreconditionError("unknown overflow mode '" + std::string(s) + "'");
}

inline std::string_view to_string(Rounding r) {
  switch (r) {
  case Rounding::nearest_even:
    return "nearest-even";
  case Rounding::nearest_away:
    return "nearest-away";
  case Rounding::truncate:
    return "truncate";
  }
  return "?";
}

inline std::string_view to_string(Overflow o) {
  return o == Overflow::saturate ? "saturate" : "wrap";
}

struct FixedSimConfig {
  FixedPointFormat coeff_format{16, 14};
  FixedPointFormat data_format{16, 14};
  int accumulator_guard_bits = 4;
  QuantizationPolicy policy{};

  void validate() const {
    if (accumulator_guard_bits < 0 || accumulator_guard_bits > 32)
      throw PreconditionError("guard bits must lie in [0, 32]");
  }
};

namespace fixed_detail {

using Wide = __int128;

// Rounds k / 2^shift to an integer (shift >= 0).
inline Wide shift_round(Wide k, int shift, Rounding mode) {
  if (shift == 0)
    return k;
  const Wide floor = k >> shift; // arithmetic shift floors
  const Wide rem = k - (floor << shift);
  const Wide half = Wide{1} << (shift - 1);
  switch (mode) {
  case Rounding::truncate:
    return floor;
  case Rounding::nearest_even:
    if (rem > half || (rem == half && (floor & 1) != 0))
      return floor + 1;
    return floor;
  case Rounding::nearest_away:
    if (rem > half || (rem == half && k >= 0))
      return floor + 1;
    return floor;
  }
  return floor;
}

// Brings k into a signed `bits`-wide range.
inline Wide fit(Wide k, int bits, Overflow mode) {
  const Wide lo = -(Wide{1} << (bits - 1));
  const Wide hi = (Wide{1} << (bits - 1)) - 1;
  if (k >= lo && k <= hi)
    return k;
  if (mode == Overflow::saturate)
    return k < lo ? lo : hi;
  const Wide span = Wide{1} << bits;
  Wide m = (k - lo) % span;
  if (m < 0)
    m += span;
  return m + lo;
}

// Integer representation of x in fmt, i.e. round(x * 2^f) fitted to w bits.
inline std::int64_t to_fixed(double x, const FixedPointFormat &fmt,
                             const QuantizationPolicy &policy) {
  if (std::isnan(x))
    throw PreconditionError("cannot quantize NaN");
  if (!std::isfinite(x))
    throw PreconditionError("cannot quantize infinity");
  const double scaled = std::ldexp(x, fmt.fraction_length());
  // Values far outside any representable range saturate or wrap from a
  // clamped integer; 2^100 keeps every retained bit exact for wrap.
  constexpr double limit = 0x1p100;
  if (std::abs(scaled) >= limit) {
    if (policy.overflow == Overflow::saturate)
      return scaled < 0 ? fmt.min_int() : fmt.max_int();
  }
  // Split into an exact integer and fractional part, then round.
  double ip = 0.0;
  const double frac = std::modf(scaled, &ip);
  Wide k = 0;
  if (std::abs(ip) < limit) {
    k = static_cast<Wide>(ip);
  } else {
    // Only low bits matter for wrap; ip is an integer multiple of a large
    // power of two, so its low w_l bits are zero.
    k = 0;
  }
  // frac in (-1, 1). Express rounding relative to floor.
  Wide fl = k;
  double r = frac;
  if (r < 0.0) {
    fl -= 1;
    r += 1.0;
  }
  Wide rounded = fl;
  switch (policy.rounding) {
  case Rounding::truncate:
    break;
  case Rounding::nearest_even:
    if (r > 0.5 || (r == 0.5 && (fl & 1) != 0))
      rounded = fl + 1;
    break;
  case Rounding::nearest_away:
    if (r > 0.5 || (r == 0.5 && x >= 0.0))
      rounded = fl + 1;
    break;
  }
  return static_cast<std::int64_t>(
      fit(rounded, fmt.word_length(), policy.overflow));
}

} // namespace fixed_detail

inline double quantize(double x, const FixedPointFormat &fmt,
                       const QuantizationPolicy &policy = {}) {
  return std::ldexp(double(fixed_detail::to_fixed(x, fmt, policy)),
                    -fmt.fraction_length());
}

// Bit-accurate simulation of `filter`'s dataflow. The filter's own streaming
// state is not touched; each call starts from zero state.
inline std::vector<double> run_fixed(const AptVdfFilter &filter,
                                     std::span<const double> input,
                                     const FixedSimConfig &config) {
  using fixed_detail::fit;
  using fixed_detail::shift_round;
  using fixed_detail::to_fixed;
  using fixed_detail::Wide;

  config.validate();
  for (std::size_t i = 0; i < input.size(); ++i)
    if (!std::isfinite(input[i]))
      throw NonFiniteInputError(i);

  const auto &cf = config.coeff_format;
  const auto &df = config.data_format;
  const auto &pol = config.policy;
  const int coeff_frac = cf.fraction_length();
  const int acc_bits =
      df.word_length() + cf.word_length() + config.accumulator_guard_bits;

  const Wide a = to_fixed(filter.alpha().value(), cf, pol);
  const auto hf = filter.prototype().coefficients();
  std::vector<Wide> h(hf.size());
  for (std::size_t n = 0; n < hf.size(); ++n)
    h[n] = to_fixed(hf[n], cf, pol) * Wide(filter.tap_sign(n));

  const std::size_t per = filter.allpass_per_stage();
  const std::size_t sections = filter.allpass_sections();
  const std::size_t mid = filter.complement_stage() * per;
  const Wide mid_sign = Wide(filter.tap_sign(filter.complement_stage()));
  const bool complement = filter.mode().sel_f2;

  auto requantize = [&](Wide acc) {
    acc = fit(acc, acc_bits, pol.overflow);
    return fit(shift_round(acc, coeff_frac, pol.rounding), df.word_length(),
               pol.overflow);
  };

  std::vector<Wide> prev(sections + 1, 0), cur(sections + 1, 0);
  std::vector<double> out(input.size());
  for (std::size_t i = 0; i < input.size(); ++i) {
    cur[0] = to_fixed(input[i], df, pol);
    for (std::size_t k = 1; k <= sections; ++k)
      cur[k] = requantize(-a * cur[k - 1] + (prev[k - 1] << coeff_frac) +
                          a * prev[k]);
    Wide acc = 0;
    for (std::size_t n = 0; n < h.size(); ++n)
      acc += h[n] * cur[n * per];
    if (complement)
      acc = ((mid_sign * cur[mid]) << coeff_frac) - acc;
    out[i] = std::ldexp(double(static_cast<std::int64_t>(requantize(acc))),
                        -df.fraction_length());
    prev.swap(cur);
  }
  return out;
}

// amplitude: 20 log10(rms), the usual amplitude decibel.
// ten_log:   10 log10(rms). Some word-length studies quote RMSE this way;
//            it halves the dB figure and gives 3 dB per fractional bit.
enum class RmseScale { amplitude, ten_log };

struct RmseOptions {
  double floor_db = -300.0;
  RmseScale scale = RmseScale::amplitude;
};

// Root-mean-square difference between two sequences, in dB.
inline double rmse_db(std::span<const double> reference,
                      std::span<const double> test,
                      const RmseOptions &opt = {}) {
  if (reference.size() != test.size())
    throw PreconditionError("rmse_db: length mismatch (" +
                            std::to_string(reference.size()) + " vs " +
                            std::to_string(test.size()) + ")");
  if (reference.empty())
    throw PreconditionError("rmse_db: sequences are empty");
  long double sum = 0.0L;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    const long double d = (long double)reference[i] - (long double)test[i];
    sum += d * d;
  }
  if (sum == 0.0L)
    return opt.floor_db;
  const double rms = std::sqrt(double(sum / (long double)reference.size()));
  const double k = opt.scale == RmseScale::amplitude ? 20.0 : 10.0;
  return std::max(opt.floor_db, k * std::log10(rms));
}

// Seeded unit-amplitude uniform white noise in [-1, 1).
inline std::vector<double> white_noise(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> x(count);
  for (double &v : x)
    v = dist(rng);
  return x;
}

// Largest magnitude reached by any section output or the filter output
// during a floating-point run starting from zero state.
inline double max_internal_abs(const AptVdfFilter &filter,
                               std::span<const double> input) {
  AptVdfFilter probe(filter.prototype(), filter.alpha(), filter.mode());
  double peak = 0.0;
  for (double x : input) {
    const double y = probe.process_block(std::span<const double>(&x, 1))[0];
    peak = std::max(peak, std::abs(y));
    for (double s : probe.state())
      peak = std::max(peak, std::abs(s));
  }
  return peak;
}

inline std::vector<double> run_float(const AptVdfFilter &filter,
                                     std::span<const double> input) {
  AptVdfFilter fresh(filter.prototype(), filter.alpha(), filter.mode());
  return fresh.process_block(input);
}

struct WordlengthSearchOptions {
  int max_fraction_length = 30;
  int accumulator_guard_bits = 4;
  QuantizationPolicy policy{};
  RmseScale scale = RmseScale::amplitude;
};

struct WordlengthSearchResult {
  FixedSimConfig config;
  int integer_length = 0;
  int fraction_length = 0;
  double rmse_db = 0.0;
  double max_internal_abs = 0.0;
};

inline int integer_length_for(double peak) {
  const double guarded = peak + std::numeric_limits<double>::epsilon() *
                                    std::max(1.0, peak);
  const int il = 1 + static_cast<int>(std::ceil(std::log2(guarded)));
  return std::max(1, il);
}

// Integer length from the observed signal range, then the smallest fraction
// length whose fixed-point run stays within target_rmse_db of the float run.
inline WordlengthSearchResult
wordlength_search(const AptVdfFilter &filter, std::span<const double> stimulus,
                  double target_rmse_db,
                  const WordlengthSearchOptions &opt = {}) {
  if (stimulus.size() < 1000)
    throw PreconditionError("word-length search needs at least 1000 samples");

  const double peak = max_internal_abs(filter, stimulus);
  const int data_il = integer_length_for(peak);

  double coeff_peak = std::abs(filter.alpha().value());
  for (double c : filter.prototype().coefficients())
    coeff_peak = std::max(coeff_peak, std::abs(c));
  const int coeff_il = integer_length_for(coeff_peak);

  const auto reference = run_float(filter, stimulus);
  double best = std::numeric_limits<double>::infinity();
  for (int f = 0; f <= opt.max_fraction_length; ++f) {
    // The narrowest legal word is two bits; an integer-only format may
    // need the extra sign bit.
    const int data_w = std::max(2, data_il + f);
    const int coeff_w = std::max(2, coeff_il + f);
    if (data_w > FixedPointFormat::max_word_length ||
        coeff_w > FixedPointFormat::max_word_length)
      break;
    FixedSimConfig cfg;
    cfg.data_format = FixedPointFormat(data_w, f);
    cfg.coeff_format = FixedPointFormat(coeff_w, f);
    cfg.accumulator_guard_bits = opt.accumulator_guard_bits;
    cfg.policy = opt.policy;
    RmseOptions ro;
    ro.scale = opt.scale;
    const double r = rmse_db(reference, run_fixed(filter, stimulus, cfg), ro);
    best = std::min(best, r);
    if (r <= target_rmse_db)
      return {cfg, data_il, f, r, peak};
  }
  throw SearchError("target RMSE " + std::to_string(target_rmse_db) +
                        " dB not reached with f_l <= " +
                        std::to_string(opt.max_fraction_length) +
                        "; best " + std::to_string(best) + " dB",
                    best);
}

} // namespace aptvdf

#endif // APTVDF_FIXED_POINT_HPP
