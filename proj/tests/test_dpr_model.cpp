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
#include <aptvdf/dpr_model.hpp>

#include <gtest/gtest.h>

using namespace aptvdf;

TEST(IcapThroughput, WordWidthTimesClock) {
  EXPECT_EQ(icap_throughput(32, 100e6), 400e6);
  EXPECT_EQ(icap_throughput(8, 100e6), 100e6);
  EXPECT_EQ(icap_throughput(32, 1.0), 4.0);
  EXPECT_THROW(icap_throughput(16, 100e6), PreconditionError);
  EXPECT_THROW(icap_throughput(32, 0.0), PreconditionError);
}

TEST(ReconfigTime, PartialIcapWithSetupOverhead) {
  const double t = reconfig_time({"p", 94464, 16, 2}, {"icap", 4e8, 80e-6});
  EXPECT_NEAR(t, 316.16e-6, 1e-12);
  EXPECT_LE(std::abs(t - 324e-6) / 324e-6, 0.03);
}

TEST(ReconfigTime, UnitCase) {
  EXPECT_EQ(reconfig_time({"b", 1, 0, 0}, {"i", 1.0, 0.0}), 1.0);
}

TEST(ReconfigTime, PartialJtag) {
  EXPECT_NEAR(reconfig_time({"p", 94464, 16, 2}, {"jtag", 452197.0, 0.0}),
              0.2089, 1e-4);
}

TEST(ReconfigTime, InvalidDescriptors) {
  EXPECT_THROW(reconfig_time({"b", 0, 0, 0}, {"i", 1.0, 0.0}),
               PreconditionError);
  EXPECT_THROW(reconfig_time({"b", 10, 0, 0}, {"i", 0.0, 0.0}),
               PreconditionError);
  EXPECT_THROW(reconfig_time({"b", 10, 0, 0}, {"i", 1.0, -1.0}),
               PreconditionError);
}

TEST(ReconfigTime, MonotoneInSizeAndThroughput) {
  const ReconfigInterface i{"i", 1e6, 1e-5};
  double prev = 0.0;
  for (std::uint64_t size = 1; size < 1u << 24; size *= 3) {
    const double t = reconfig_time({"b", size, 0, 0}, i);
    EXPECT_GT(t, prev);
    prev = t;
  }
  prev = 1e300;
  for (double tp = 1.0; tp < 1e10; tp *= 7) {
    const double t = reconfig_time({"b", 94464, 0, 0}, {"i", tp, 1e-5});
    EXPECT_LT(t, prev);
    prev = t;
  }
}

TEST(CalibrateThroughput, TableRows) {
  EXPECT_NEAR(calibrate_throughput(94464, 208.9e-3, 0.0), 452197.0, 1.0);
  const double full = calibrate_throughput(1716.0 * 1024.0, 3.80, 0.0);
  EXPECT_NEAR(full, 462417.0, 1.0);
  EXPECT_LE(std::abs(full - 452197.0) / 452197.0, 0.03);
  EXPECT_EQ(calibrate_throughput(400, 1.0, 0.0), 400.0);
}

TEST(CalibrateThroughput, NonPositiveEffectiveTime) {
  EXPECT_THROW(calibrate_throughput(100, 1e-6, 1e-6), PreconditionError);
  EXPECT_THROW(calibrate_throughput(100, 1e-6, 2e-6), PreconditionError);
}

TEST(CalibrateThroughput, InvertsReconfigTime) {
  for (double tp : {1e3, 452197.0, 4e8, 3.3e9})
    for (double ovh : {0.0, 80e-6, 1e-3})
      for (std::uint64_t size : {1000ull, 94464ull, 1757184ull}) {
        const ReconfigInterface i{"i", tp, ovh};
        const double t = reconfig_time({"b", size, 0, 0}, i);
        EXPECT_NEAR(calibrate_throughput(double(size), t, ovh) / tp, 1.0,
                    1e-9);
      }
}

TEST(ReconfigEnergy, ProductOfPowerAndTime) {
  EXPECT_NEAR(reconfig_energy(0.160, 324e-6), 51.84e-6, 1e-15);
  EXPECT_EQ(reconfig_energy(0.0, 12.0), 0.0);
  EXPECT_DOUBLE_EQ(reconfig_energy(0.450, 1.0), 0.45);
  EXPECT_DOUBLE_EQ(reconfig_energy(0.320, 324e-6),
                   2.0 * reconfig_energy(0.160, 324e-6));
  EXPECT_THROW(reconfig_energy(0.1, -1.0), PreconditionError);
}

TEST(CompareModes, ReferenceRows) {
  const auto rep = compare_modes(reference::reconfiguration_rows());
  ASSERT_EQ(rep.modes.size(), 3u);
  EXPECT_NEAR(*rep.measured(0, 2), 3.80 / 324e-6, 1e-6);
  EXPECT_NEAR(*rep.measured(0, 2), 11728.4, 0.1);
  EXPECT_NEAR(*rep.measured(1, 2), 644.75, 0.01);
  EXPECT_NEAR(rep.modes[2].predicted_s, 316.16e-6, 1e-12);
  // Calibrated rows reproduce their own measurement.
  EXPECT_NEAR(rep.modes[0].predicted_s, 3.80, 1e-12);
  EXPECT_NEAR(rep.modes[1].predicted_s, 208.9e-3, 1e-12);
  EXPECT_NEAR(rep.speedup(0, 2) / 1.17e4, 1.0, 0.03);
}

TEST(CompareModes, IdenticalRowsHaveUnitSpeedup) {
  const ModeRow r{{"a", 1000, 0, 0}, {"i", 1e6, 0.0}, std::nullopt};
  const auto rep = compare_modes({r, r});
  EXPECT_EQ(rep.speedup(0, 1), 1.0);
  EXPECT_FALSE(rep.measured(0, 1).has_value());
}

TEST(CompareModes, NeedsTwoRows) {
  EXPECT_THROW(compare_modes({}), PreconditionError);
  EXPECT_THROW(compare_modes({{{"a", 1, 0, 0}, {"i", 1.0, 0.0}, {}}}),
               PreconditionError);
}

TEST(CompareModes, JsonAndTableOutput) {
  const auto rep = compare_modes(reference::reconfiguration_rows());
  const auto j = to_json(rep);
  ASSERT_EQ(j["modes"].size(), 3u);
  EXPECT_EQ(j["modes"][2]["label"], "Partial (ICAP32 DMA)");
  EXPECT_EQ(j["speedups"].size(), 6u);
  const std::string table = to_table(rep);
  EXPECT_NE(table.find("316.16 us"), std::string::npos);
  EXPECT_NE(table.find("Full (JTAG)"), std::string::npos);
}

TEST(Json, InterfaceAndBitstreamRoundTrip) {
  const auto i = nlohmann::json::parse(
                     R"({"name":"ICAP32 DMA","throughput_bps":4e8,"setup_overhead_s":8e-5})")
                     .get<ReconfigInterface>();
  EXPECT_EQ(i.throughput_bps, 4e8);
  const auto b = nlohmann::json::parse(
                     R"({"label":"rr","size_bytes":94464,"frames":16,"frame_regions":2})")
                     .get<BitstreamInfo>();
  EXPECT_EQ(b.size_bytes, 94464u);
  EXPECT_EQ(b.frames, 16u);
  const nlohmann::json back = b;
  EXPECT_EQ(back.get<BitstreamInfo>().label, "rr");
  EXPECT_THROW(nlohmann::json::parse(R"({"label":"x","size_bytes":0})")
                   .get<BitstreamInfo>(),
               PreconditionError);
}

TEST(ReferenceDataset, PowerTableIsSelfConsistent) {
  for (const auto &p : reference::power_estimates()) {
    EXPECT_NO_THROW(p.validate());
    EXPECT_LE(p.sum_mismatch_mw(), 2.0);
  }
  for (const auto &r : reference::resources())
    EXPECT_NO_THROW(r.validate());
  for (const auto &c : reference::consistency_checks())
    EXPECT_TRUE(c.pass) << c.name << " = " << c.value;
}

TEST(ReferenceDataset, PartialBitstreamDescriptor) {
  const auto b = reference::partial_bitstream();
  EXPECT_EQ(b.size_bytes, 94464u);
  EXPECT_EQ(b.frames, 16u);
  EXPECT_EQ(b.frame_regions, 2u);
  EXPECT_EQ(reference::icap32_dma().throughput_bps, 4e8);
}
