#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "topocouple/config.hpp"
#include "topocouple/error.hpp"
#include "topocouple/report.hpp"

namespace tc = topocouple;

namespace {

tc::RunConfig z_identity_config() {
  return tc::parse_config_text("H = Z^1\nG = Z^1\nmap = identity\nrH = 24\nrG = 40\neval = 8\nseed = 7\n");
}

std::string stage_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const tc::Error& e) {
    return e.stage();
  }
  return "";
}

}  // namespace

TEST(Config, ParsesTextAndDefaults) {
  const auto cfg = tc::parse_config_text("# comment\n\nH = Z^2\n  map =  scale:2  \nrH = 9\n");
  EXPECT_EQ(cfg.group_h, "Z^2");
  EXPECT_EQ(cfg.group_g, "Z^1");
  EXPECT_EQ(cfg.map, "scale:2");
  EXPECT_EQ(cfg.radius_h, 9);
  EXPECT_EQ(cfg.epsilon, tc::Rational(1, 2));
  EXPECT_EQ(cfg.seed, 0u);
  EXPECT_TRUE(cfg.checks.empty());
}

TEST(Config, ErrorsNameTheLine) {
  try {
    tc::parse_config_text("H = Z\nbogus = 3\n");
    FAIL();
  } catch (const tc::Error& e) {
    EXPECT_EQ(e.stage(), "config");
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  EXPECT_THROW(tc::parse_config_text("rH = -1\n"), tc::Error);
  EXPECT_THROW(tc::parse_config_text("rH\n"), tc::Error);
  EXPECT_THROW(tc::parse_config_text("epsilon = 0\n"), tc::Error);
  EXPECT_THROW(tc::parse_config_text("moduli = guess\n"), tc::Error);
}

TEST(Config, FormatRoundTrips) {
  auto cfg = z_identity_config();
  tc::apply_setting(cfg, "checks", "sandwich,lipschitz");
  tc::apply_setting(cfg, "s", "7/2");
  const auto text = tc::format_config(cfg);
  EXPECT_EQ(tc::format_config(tc::parse_config_text(text)), text);
}

TEST(Config, FileAndOverrides) {
  const auto path = std::filesystem::temp_directory_path() / "topocouple_test_config.txt";
  std::ofstream(path) << "H = Z\nrH = 12\n";
  auto cfg = tc::parse_config_file(path);
  tc::apply_setting(cfg, "rH", "16");
  EXPECT_EQ(cfg.radius_h, 16);
  std::filesystem::remove(path);
  EXPECT_THROW(tc::parse_config_file(path), tc::Error);
}

TEST(Pipeline, IntegerIdentityCertificate) {
  const auto cert = tc::run_all(z_identity_config());
  ASSERT_EQ(cert.checks.size(), tc::all_check_names().size());
  for (const auto& c : cert.checks) EXPECT_EQ(c.status, tc::Status::kPass) << c.name << " " << c.witness;
  EXPECT_EQ(tc::exit_code(cert), 0);
  const auto report = nlohmann::json::parse(tc::render_report(cert));
  EXPECT_EQ(report["constants"]["s"], "3/1");
  EXPECT_EQ(report["constants"]["M"], 3);
  EXPECT_EQ(report["window_metadata"]["scope"], "orbit-scale");
  for (std::size_t i = 1; i < report["checks"].size(); ++i) {
    EXPECT_LT(report["checks"][i - 1]["name"].get<std::string>(), report["checks"][i]["name"].get<std::string>());
  }
}

TEST(Pipeline, ScaleTwoCertificate) {
  const auto cert = tc::run_all(tc::parse_config_text("map = scale:2\nrH = 16\nrG = 40\n"));
  EXPECT_FALSE(cert.any_failed());
  for (const auto& [k, v] : cert.constants) {
    if (k == "s") EXPECT_EQ(std::get<std::string>(v), "2/1");
  }
}

TEST(Pipeline, SelectedChecksOnly) {
  auto cfg = z_identity_config();
  tc::apply_setting(cfg, "checks", "sandwich,net");
  const auto cert = tc::run_all(cfg);
  ASSERT_EQ(cert.checks.size(), 2u);
  EXPECT_EQ(cert.checks[0].name, "net");
  EXPECT_EQ(cert.checks[1].name, "sandwich");
  tc::apply_setting(cfg, "checks", "nonsense");
  EXPECT_EQ(stage_of([&] { tc::run_all(cfg); }), "config");
}

TEST(Pipeline, StageTaggedErrors) {
  EXPECT_EQ(stage_of([] { tc::run_all(tc::parse_config_text("H = Q_8\n")); }), "groups");
  EXPECT_EQ(stage_of([] { tc::run_all(tc::parse_config_text("map = matrix:1,2\n")); }), "map");
  EXPECT_EQ(stage_of([] { tc::run_all(tc::parse_config_text("rH = 24\neval = 30\n")); }), "config");
  EXPECT_EQ(stage_of([] { tc::run_all(tc::parse_config_text("H = F_3\nrH = 30\nbudget = 1000\n")); }), "window");
}

TEST(Pipeline, ConstantTableMapFailsAtScale) {
  const auto path = std::filesystem::temp_directory_path() / "topocouple_constant_map.txt";
  {
    std::ofstream out(path);
    for (int n = -6; n <= 6; ++n) out << n << " -> 0\n";
  }
  auto cfg = tc::parse_config_text("rH = 6\nrG = 6\n");
  tc::apply_setting(cfg, "map", "table:" + path.string());
  try {
    tc::run_all(cfg);
    FAIL();
  } catch (const tc::Error& e) {
    EXPECT_EQ(e.stage(), "scale");
    EXPECT_NE(std::string(e.what()).find("kappa bounded"), std::string::npos) << e.what();
  }
  std::filesystem::remove(path);
}

TEST(Pipeline, Deterministic) {
  auto cfg = tc::parse_config_text("H = Z^2\nG = Z^2\nmap = matrix:1,1;0,1\nrH = 8\nrG = 24\nsample_cap = 40\nseed = 11\n");
  EXPECT_EQ(tc::render_report(tc::run_all(cfg)), tc::render_report(tc::run_all(cfg)));
}

TEST(Pipeline, SamplingIsStratifiedAndSeeded) {
  const std::vector<std::int64_t> g{0, 1, 1, 2, 2, 3, 3};
  const std::vector<std::int64_t> h{0, 1, 1, 2, 2};
  EXPECT_EQ(tc::sample_orbit_pairs(g, h, 100, 0).size(), 35u);
  const auto a = tc::sample_orbit_pairs(g, h, 10, 3);
  EXPECT_EQ(a, tc::sample_orbit_pairs(g, h, 10, 3));
  EXPECT_LE(a.size(), 16u);
  EXPECT_GE(a.size(), 5u);
}

TEST(Report, FailureGivesExitOne) {
  auto cfg = z_identity_config();
  tc::apply_setting(cfg, "m_offset", "-2");
  tc::apply_setting(cfg, "checks", "psi_structure");
  const auto cert = tc::run_all(cfg);
  EXPECT_TRUE(cert.any_failed());
  EXPECT_EQ(tc::exit_code(cert), 1);
  const auto text = tc::render_report(cert);
  EXPECT_EQ(text.back(), '\n');
  EXPECT_NE(text.find("\"status\": \"fail\""), std::string::npos);
}

TEST(Report, UnwritablePath) {
  const auto cert = tc::run_all(tc::parse_config_text("rH = 12\nrG = 24\nchecks = net\n"));
  EXPECT_THROW(tc::emit_report(cert, "/nonexistent-dir/x/report.json"), tc::Error);
}
