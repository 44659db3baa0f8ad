// Copyright 2026 The triphoton Authors
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

#include <fstream>
#include <functional>

#include <gtest/gtest.h>

#include "test_util.hpp"
#include "triphoton/config_io.hpp"

namespace triphoton {
namespace {

std::string error_key(const std::function<void()>& f) {
  try {
    f();
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "<no error>";
}

std::filesystem::path write_file(const std::string& text) {
  const auto path = testing::scratch_dir() / "run.cfg";
  std::ofstream(path) << text;
  return path;
}

TEST(ParseConfig, DefaultsMatchCaptionRatios) {
  const SimConfig c = parse_config(std::nullopt);
  EXPECT_DOUBLE_EQ(c.g_mev / c.kappa_mev, 50.0);
  EXPECT_DOUBLE_EQ(c.zeta_mev / c.kappa_mev, 30.0);
  EXPECT_DOUBLE_EQ(c.xi_mev / c.kappa_mev, 10.0);
  EXPECT_DOUBLE_EQ(c.kappa_mev / c.pump_mev, 1000.0);
  EXPECT_EQ(c.omega0_mev, 500.0);
  EXPECT_EQ(c.omega_qd_mev, 500.0);
  EXPECT_EQ(c.detuning(), 0.0);
  EXPECT_EQ(describe_ratios(c), "g/kappa=50 zeta/kappa=30 xi/kappa=10 kappa/P=1000");
  EXPECT_EQ(c.snapshots_kappa, (std::vector<double>{0.0, 0.216, 0.328}));
  EXPECT_EQ(c.truncation, (Truncation{3, 9, 4}));
  EXPECT_EQ(c.frame, Frame::rotating);
}

TEST(ParseConfig, NegativeKappaNamesKey) {
  EXPECT_EQ(error_key([] { parse_config(std::nullopt, {"kappa_mev=-1"}); }), "kappa_mev");
  EXPECT_EQ(error_key([] { parse_config(std::nullopt, {"kappa_mev=0"}); }), "kappa_mev");
  EXPECT_EQ(error_key([] { parse_config(std::nullopt, {"g_mev=-0.5"}); }), "g_mev");
  EXPECT_EQ(error_key([] { parse_config(std::nullopt, {"omega0_mev=nan"}); }), "omega0_mev");
}

TEST(ParseConfig, ZeroPumpAccepted) {
  const SimConfig c = parse_config(std::nullopt, {"pump_mev=0"});
  EXPECT_EQ(c.pump_mev, 0.0);
  EXPECT_EQ(describe_ratios(c), "g/kappa=50 zeta/kappa=30 xi/kappa=10 kappa/P=inf");
}

TEST(ParseConfig, DistinctDiagnostics) {
  EXPECT_EQ(error_key([] { parse_config(std::nullopt, {"bogus=1"}); }), "bogus");
  EXPECT_EQ(error_key([] { parse_config(std::filesystem::path("/nonexistent/run.cfg")); }), "config");
  EXPECT_EQ(error_key([] { parse_config(std::nullopt, {"g_mev=five"}); }), "g_mev");
  EXPECT_EQ(error_key([] { parse_config(std::nullopt, {"trunc1=-1"}); }), "trunc1");
  EXPECT_EQ(error_key([] { parse_config(std::nullopt, {"trunc1=2.5"}); }), "trunc1");
  EXPECT_EQ(error_key([] { parse_config(std::nullopt, {"frame=sideways"}); }), "frame");
  EXPECT_EQ(error_key([] { parse_config(std::nullopt, {"snapshots_kappa=0.1,0.9"}); }), "snapshots_kappa");
  EXPECT_EQ(error_key([] { parse_config(std::nullopt, {"initial_state=e,0,12,0"}); }), "initial_state");
  EXPECT_EQ(error_key([] { parse_config(std::nullopt, {"grid_n=1"}); }), "grid_n");
  EXPECT_EQ(error_key([] { parse_config(std::nullopt, {"no_equals_sign"}); }), "no_equals_sign");
}

TEST(ParseConfig, FileThenOverrides) {
  const auto path = write_file(
      "# production run\n"
      "g_mev = 4.5   # weaker coupling\n"
      "frame = lab\n"
      "snapshots_kappa = 0, 0.1\n"
      "\n"
      "trunc1 = 6\n");
  const SimConfig c = parse_config(path, {"g_mev=4", "trunc2=2"});
  EXPECT_EQ(c.g_mev, 4.0);
  EXPECT_EQ(c.frame, Frame::lab);
  EXPECT_EQ(c.snapshots_kappa, (std::vector<double>{0.0, 0.1}));
  EXPECT_EQ(c.truncation, (Truncation{3, 6, 2}));
}

TEST(ParseConfig, FileErrors) {
  EXPECT_EQ(error_key([] { parse_config(write_file("g_mev = 1\ng_mev = 2\n")); }), "g_mev");
  EXPECT_EQ(error_key([] { parse_config(write_file("just some words\n")); }), "config");
  EXPECT_EQ(error_key([] { parse_config(write_file("xi_mev =\n")); }), "xi_mev");
}

TEST(ParseConfig, CanonicalTextRoundTrips) {
  SimConfig c;
  c.omega_qd_mev = 499.123456789;
  c.pump_mev = 3.3e-5;
  c.frame = Frame::lab;
  c.snapshots_kappa = {0.0, 0.05, 0.2};
  c.initial_state = "0.5*g,0,0,0 + 0.5*e,0,0,0";
  c.record_stride = 9;
  const std::string text = to_config_text(c);
  const SimConfig back = parse_config(write_file(text));
  EXPECT_EQ(to_config_text(back), text);
  EXPECT_EQ(back.omega_qd_mev, c.omega_qd_mev);
  EXPECT_EQ(back.pump_mev, c.pump_mev);
}

TEST(FormatNumber, ShortestRoundTrip) {
  EXPECT_EQ(format_number(0.216), "0.216");
  EXPECT_EQ(format_number(0.0), "0");
  EXPECT_EQ(format_number(500.0), "500");
  const double awkward = 0.1 + 0.2;
  EXPECT_EQ(std::stod(format_number(awkward)), awkward);
}

}  // namespace
}  // namespace triphoton
