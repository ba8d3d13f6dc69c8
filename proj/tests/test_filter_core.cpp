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
#include <aptvdf/filter_core.hpp>
#include <aptvdf/prototype_design.hpp>

#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

using namespace aptvdf;

namespace {

const FrequencySpec kDesignSpec{0.08, 0.14, 0.8, 40.0};

const PrototypeFilter &design_prototype_fixture() {
  static const PrototypeFilter p = design_prototype(kDesignSpec);
  return p;
}

PrototypeFilter random_prototype(std::mt19937_64 &rng, std::size_t order) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> h(order + 1);
  for (double &c : h)
    c = d(rng);
  return PrototypeFilter(h);
}

// Gain of the steady-state response to cos(pi f n), measured by correlating
// over a window holding a whole number of periods.
double steady_state_gain(AptVdfFilter f, double freq, std::size_t settle,
                         std::size_t window) {
  std::vector<double> x(settle + window);
  for (std::size_t n = 0; n < x.size(); ++n)
    x[n] = std::cos(std::numbers::pi * freq * double(n));
  const auto y = f.process_block(x);
  std::complex<double> acc = 0.0;
  for (std::size_t n = settle; n < y.size(); ++n)
    acc += y[n] * std::polar(1.0, -std::numbers::pi * freq * double(n));
  return 2.0 * std::abs(acc) / double(window);
}

} // namespace

TEST(ComputeAlpha, EqualCutoffsGiveZero) {
  EXPECT_EQ(compute_alpha(0.08, 0.08).value(), 0.0);
}

TEST(ComputeAlpha, LowerCutoffIsPositive) {
  // sin(0.02 pi) / sin(0.06 pi)
  EXPECT_NEAR(compute_alpha(0.08, 0.04).value(), 0.33509488215585925, 1e-6);
}

TEST(ComputeAlpha, HigherCutoffIsNegative) {
  // sin(-0.04 pi) / sin(0.12 pi)
  EXPECT_NEAR(compute_alpha(0.08, 0.16).value(), -0.34046420606902617, 1e-6);
}

TEST(ComputeAlpha, SignFollowsCutoffDifferenceAndStaysInsideUnitInterval) {
  for (double fco = 0.01; fco < 1.0; fco += 0.07)
    for (double fc = 0.01; fc < 1.0; fc += 0.05) {
      const double a = compute_alpha(fco, fc).value();
      EXPECT_LT(std::abs(a), 1.0);
      if (fco > fc) {
        EXPECT_GT(a, 0.0);
      } else if (fco < fc) {
        EXPECT_LT(a, 0.0);
      }
    }
}

TEST(ComputeAlpha, RejectsOutOfRangeFrequencies) {
  EXPECT_THROW(compute_alpha(0.0, 0.5), PreconditionError);
  EXPECT_THROW(compute_alpha(0.5, 1.0), PreconditionError);
  EXPECT_THROW(WarpingCoefficient(1.0), DomainError);
  EXPECT_THROW(WarpingCoefficient(-1.0), DomainError);
}

TEST(WarpFrequency, ZeroAlphaIsIdentity) {
  EXPECT_DOUBLE_EQ(warp_frequency(WarpingCoefficient(0.0), 0.3), 0.3);
}

TEST(WarpFrequency, EndpointsAreFixed) {
  for (double a : {-0.95, -0.5, -0.1, 0.2, 0.7, 0.98}) {
    EXPECT_NEAR(warp_frequency(WarpingCoefficient(a), 0.0), 0.0, 1e-15);
    EXPECT_NEAR(warp_frequency(WarpingCoefficient(a), 1.0), 1.0, 1e-15);
  }
}

TEST(WarpFrequency, ConsistentWithComputeAlpha) {
  const auto a = compute_alpha(0.08, 0.04);
  EXPECT_NEAR(warp_frequency(a, 0.04), 0.08, 1e-9);
  const auto b = compute_alpha(0.08, 0.16);
  EXPECT_NEAR(warp_frequency(b, 0.16), 0.08, 1e-9);
}

TEST(WarpFrequency, MatchesPhaseOfAllpassSection) {
  for (double a : {-0.7, -0.3, 0.3, 0.7})
    for (int i = 1; i < 200; ++i) {
      const double w = i / 200.0;
      const double by_arg =
          -std::arg(allpass_response(WarpingCoefficient(a), w)) /
          std::numbers::pi;
      EXPECT_NEAR(warp_frequency(WarpingCoefficient(a), w), by_arg, 1e-12);
    }
}

TEST(WarpFrequency, StrictlyIncreasing) {
  for (double a = -0.98; a < 0.99; a += 0.04) {
    const WarpingCoefficient alpha(a);
    double prev = warp_frequency(alpha, 0.0);
    for (int i = 1; i <= 4096; ++i) {
      const double cur = warp_frequency(alpha, i / 4096.0);
      ASSERT_GT(cur, prev) << "alpha " << a << " at " << i;
      prev = cur;
    }
  }
}

TEST(WarpFrequency, RejectsOutOfRange) {
  EXPECT_THROW(warp_frequency(WarpingCoefficient(0.1), -0.01),
               PreconditionError);
  EXPECT_THROW(warp_frequency(WarpingCoefficient(0.1), 1.01),
               PreconditionError);
}

TEST(FilterMode, LabelTable) {
  EXPECT_EQ(FilterMode::parse("00").label(), "lowpass");
  EXPECT_EQ(FilterMode::parse("10").label(), "bandpass");
  EXPECT_EQ(FilterMode::parse("01").label(), "highpass");
  EXPECT_EQ(FilterMode::parse("11").label(), "bandstop");
  EXPECT_EQ(FilterMode::parse("10"), FilterMode::bandpass());
  EXPECT_THROW(FilterMode::parse("2"), PreconditionError);
  EXPECT_THROW(FilterMode::parse("012"), PreconditionError);
}

TEST(BuildFilter, OddOrderRejectedForComplementModes) {
  const PrototypeFilter odd({0.25, 0.25, 0.25, 0.25});
  EXPECT_THROW(build_filter(odd, WarpingCoefficient(0.0), FilterMode::highpass()),
               StructuralError);
  EXPECT_THROW(build_filter(odd, WarpingCoefficient(0.0), FilterMode::bandstop()),
               StructuralError);
  EXPECT_NO_THROW(
      build_filter(odd, WarpingCoefficient(0.0), FilterMode::lowpass()));
  EXPECT_NO_THROW(
      build_filter(odd, WarpingCoefficient(0.0), FilterMode::bandpass()));
}

TEST(BuildFilter, SectionCountFollowsMode) {
  const auto &p = design_prototype_fixture();
  const auto lp = build_filter(p, WarpingCoefficient(0.3), FilterMode::lowpass());
  const auto bs = build_filter(p, WarpingCoefficient(0.3), FilterMode::bandstop());
  EXPECT_EQ(lp.stage_count(), p.order());
  EXPECT_EQ(lp.allpass_sections(), p.order());
  EXPECT_EQ(bs.allpass_sections(), 2 * p.order());
  EXPECT_DOUBLE_EQ(bs.pole_magnitude(), 0.3);
}

TEST(FrequencyResponse, ZeroAlphaLowpassEqualsPrototypeDft) {
  const auto &p = design_prototype_fixture();
  const auto f = build_filter(p, WarpingCoefficient(0.0), FilterMode::lowpass());
  const auto r = frequency_response(f, 1024);
  ASSERT_EQ(r.size(), 1024u);
  EXPECT_EQ(r.grid.front(), 0.0);
  EXPECT_EQ(r.grid.back(), 1.0);
  for (std::size_t i = 0; i < r.size(); ++i)
    EXPECT_LT(std::abs(r.values[i] -
                       oracle::dft_at(p.coefficients(), r.grid[i])),
              1e-12);
}

TEST(FrequencyResponse, WarpingLaw) {
  const auto &p = design_prototype_fixture();
  for (double a : {-0.7, -0.3, 0.3, 0.7, 0.95}) {
    const WarpingCoefficient alpha(a);
    const auto r = frequency_response(
        build_filter(p, alpha, FilterMode::lowpass()), 1024);
    for (std::size_t i = 0; i < r.size(); ++i) {
      const double expect =
          std::abs(oracle::dft_at(p.coefficients(),
                                   warp_frequency(alpha, r.grid[i])));
      EXPECT_NEAR(r.magnitude(i), expect, 1e-9) << "alpha " << a;
    }
  }
}

TEST(FrequencyResponse, WarpedMagnitudeAtTargetCutoff) {
  const auto &p = design_prototype_fixture();
  const auto alpha = compute_alpha(0.08, 0.04);
  const auto f = build_filter(p, alpha, FilterMode::lowpass());
  EXPECT_NEAR(std::abs(f.response_at(0.04)),
              std::abs(oracle::dft_at(p.coefficients(), 0.08)), 1e-9);
}

TEST(FrequencyResponse, AllpassSectionHasUnitMagnitude) {
  for (double a : {-0.9, -0.2, 0.0, 0.5, 0.99})
    for (double w : uniform_grid(513))
      EXPECT_NEAR(std::abs(allpass_response(WarpingCoefficient(a), w)), 1.0,
                  1e-12);
}

TEST(FrequencyResponse, GridTooSmall) {
  const auto f = build_filter(design_prototype_fixture(), WarpingCoefficient(0.0),
                              FilterMode::lowpass());
  EXPECT_THROW(frequency_response(f, 1), PreconditionError);
}

TEST(ModeContracts, ZeroAlphaDesignPrototype) {
  const auto &p = design_prototype_fixture();
  const double pass_lo = std::pow(10.0, -0.8 / 20.0);
  const double pass_hi = std::pow(10.0, 0.8 / 20.0);
  const double stop = std::pow(10.0, -40.0 / 20.0);
  const WarpingCoefficient a0(0.0);

  auto mag = [&](FilterMode m, double w) {
    return std::abs(build_filter(p, a0, m).response_at(w));
  };
  // Lowpass
  EXPECT_GE(mag(FilterMode::lowpass(), 0.0), pass_lo);
  EXPECT_LE(mag(FilterMode::lowpass(), 0.0), pass_hi);
  EXPECT_LE(mag(FilterMode::lowpass(), 1.0), stop);
  // Highpass
  EXPECT_LE(mag(FilterMode::highpass(), 0.0), stop);
  EXPECT_GE(mag(FilterMode::highpass(), 1.0), pass_lo);
  EXPECT_LE(mag(FilterMode::highpass(), 1.0), pass_hi);
  // Bandpass
  EXPECT_LE(mag(FilterMode::bandpass(), 0.0), stop);
  EXPECT_LE(mag(FilterMode::bandpass(), 1.0), stop);
  EXPECT_GE(mag(FilterMode::bandpass(), 0.5), pass_lo);
  EXPECT_LE(mag(FilterMode::bandpass(), 0.5), pass_hi);
  // Bandstop
  EXPECT_GE(mag(FilterMode::bandstop(), 0.0), pass_lo);
  EXPECT_LE(mag(FilterMode::bandstop(), 0.0), pass_hi);
  EXPECT_GE(mag(FilterMode::bandstop(), 1.0), pass_lo);
  EXPECT_LE(mag(FilterMode::bandstop(), 1.0), pass_hi);
  EXPECT_LE(mag(FilterMode::bandstop(), 0.5), stop);
}

TEST(ProcessBlock, ImpulseAtZeroAlphaReproducesCoefficients) {
  const auto &p = design_prototype_fixture();
  auto f = build_filter(p, WarpingCoefficient(0.0), FilterMode::lowpass());
  std::vector<double> x(p.order() + 1, 0.0);
  x[0] = 1.0;
  const auto y = f.process_block(x);
  ASSERT_EQ(y.size(), x.size());
  for (std::size_t n = 0; n < y.size(); ++n)
    EXPECT_EQ(y[n], p[n]);
}

TEST(ProcessBlock, ZeroInputAfterResetGivesZeroOutput) {
  auto f = build_filter(design_prototype_fixture(), WarpingCoefficient(0.6),
                        FilterMode::bandstop());
  std::vector<double> x(64, 0.5);
  f.process_block(x);
  f.reset();
  for (double s : f.state())
    EXPECT_EQ(s, 0.0);
  for (double y : f.process_block(std::vector<double>(200, 0.0)))
    EXPECT_EQ(y, 0.0);
}

TEST(ProcessBlock, NonFiniteInputReportsIndex) {
  auto f = build_filter(design_prototype_fixture(), WarpingCoefficient(0.1),
                        FilterMode::lowpass());
  std::vector<double> x(10, 0.0);
  x[7] = std::numeric_limits<double>::quiet_NaN();
  try {
    f.process_block(x);
    FAIL() << "expected NonFiniteInputError";
  } catch (const NonFiniteInputError &e) {
    EXPECT_EQ(e.index(), 7u);
  }
}

TEST(ProcessBlock, StreamingAcrossCallsMatchesSingleCall) {
  std::mt19937_64 rng(3);
  const auto p = random_prototype(rng, 8);
  const auto x = white_noise(500, 11);
  for (FilterMode m : {FilterMode::lowpass(), FilterMode::bandpass(),
                       FilterMode::highpass(), FilterMode::bandstop()}) {
    auto whole = build_filter(p, WarpingCoefficient(-0.45), m);
    auto split = whole;
    const auto y1 = whole.process_block(x);
    std::vector<double> y2;
    for (std::size_t start = 0; start < x.size(); start += 37) {
      const std::size_t len = std::min<std::size_t>(37, x.size() - start);
      const auto part =
          split.process_block(std::span<const double>(x).subspan(start, len));
      y2.insert(y2.end(), part.begin(), part.end());
    }
    EXPECT_EQ(y1, y2);
  }
}

TEST(ProcessBlock, Linearity) {
  const auto x = white_noise(400, 5);
  for (FilterMode m : {FilterMode::lowpass(), FilterMode::bandstop()}) {
    auto base = build_filter(design_prototype_fixture(), WarpingCoefficient(0.4), m);
    const auto y = base.process_block(x);
    for (double c : {-1.0, 2.0}) {
      auto f = build_filter(design_prototype_fixture(), WarpingCoefficient(0.4), m);
      std::vector<double> xc(x);
      for (double &v : xc)
        v *= c;
      const auto yc = f.process_block(xc);
      for (std::size_t n = 0; n < y.size(); ++n)
        EXPECT_NEAR(yc[n], c * y[n], 1e-12);
    }
  }
}

TEST(ProcessBlock, ImpulseResponseDecaysAfterSettlingHorizon) {
  const auto &p = design_prototype_fixture();
  for (double a : {-0.8, -0.3, 0.0, 0.5, 0.8})
    for (FilterMode m : {FilterMode::lowpass(), FilterMode::bandpass(),
                         FilterMode::highpass(), FilterMode::bandstop()}) {
      auto f = build_filter(p, WarpingCoefficient(a), m);
      const std::size_t horizon = f.settling_horizon();
      std::vector<double> x(horizon + 200, 0.0);
      x[0] = 1.0;
      const auto y = f.process_block(x);
      for (std::size_t n = horizon; n < y.size(); ++n)
        ASSERT_LT(std::abs(y[n]), 1e-9)
            << "alpha " << a << " mode " << m.bits() << " n " << n;
    }
}

TEST(ProcessBlock, SteadyStateSineGainMatchesFrequencyResponse) {
  const auto &p = design_prototype_fixture();
  for (double a : {-0.5, 0.0, 0.335})
    for (FilterMode m : {FilterMode::lowpass(), FilterMode::bandpass(),
                         FilterMode::highpass(), FilterMode::bandstop()}) {
      const auto f = build_filter(p, WarpingCoefficient(a), m);
      for (double freq : {0.02, 0.05, 0.25, 0.5, 0.8}) {
        const double gain =
            steady_state_gain(f, freq, f.settling_horizon(), 2000);
        EXPECT_NEAR(gain, std::abs(f.response_at(freq)), 1e-6)
            << "alpha " << a << " mode " << m.bits() << " f " << freq;
      }
    }
}

TEST(ProcessBlock, ImpulseResponseSpectrumMatchesTransferFunction) {
  // Independent of the section recursion: the DFT of the (decayed) impulse
  // response must equal the closed-form transfer function.
  std::mt19937_64 rng(17);
  for (FilterMode m : {FilterMode::lowpass(), FilterMode::bandpass(),
                       FilterMode::highpass(), FilterMode::bandstop()}) {
    const auto p = random_prototype(rng, 6);
    auto f = build_filter(p, WarpingCoefficient(0.62), m);
    std::vector<double> x(f.settling_horizon() + 64, 0.0);
    x[0] = 1.0;
    const auto y = f.process_block(x);
    for (double w : uniform_grid(65))
      EXPECT_LT(std::abs(oracle::dft_at(y, w) - f.response_at(w)), 1e-8)
          << m.bits() << " at " << w;
  }
}
