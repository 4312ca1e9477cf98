#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "topocouple/certify.hpp"
#include "topocouple/error.hpp"

namespace tc = topocouple;

namespace {

std::vector<tc::OrbitPoint> orbits_at(const fixture::Pipeline& f, std::initializer_list<std::pair<std::int64_t, std::int64_t>> gh,
                                      std::int64_t eval_radius) {
  std::vector<tc::OrbitPoint> out;
  for (const auto& [g, h] : gh) out.push_back(tc::orbit_point(f.p, tc::Element{g}, tc::Element{h}, f.wh->ball(eval_radius)));
  return out;
}

std::string detail(const tc::CheckResult& r, const std::string& key) {
  for (const auto& [k, v] : r.details) {
    if (k == key) return v;
  }
  return "";
}

const tc::GroupBall kUnit{tc::Element{0}, 1};

}  // namespace

TEST(CheckNet, PassesAndCatchesGaps) {
  const auto& f = fixture::z_identity();
  EXPECT_EQ(tc::check_net(*f.wh, f.p->net()).status, tc::Status::kPass);
  auto broken = f.p->net();
  broken.points.erase(broken.points.begin() + 3);
  EXPECT_EQ(tc::check_net(*f.wh, broken).status, tc::Status::kFail);
  auto crowded = f.p->net();
  crowded.points.push_back(tc::Element{1});
  EXPECT_EQ(tc::check_net(*f.wh, crowded).status, tc::Status::kFail);
}

TEST(CheckModuli, Tables) {
  const auto& f = fixture::z_identity();
  EXPECT_EQ(tc::check_moduli(f.m, nullptr).status, tc::Status::kPass);
  auto bad = f.m;
  bad.omega[5] = 100;
  EXPECT_EQ(tc::check_moduli(bad, nullptr).status, tc::Status::kFail);
}

TEST(CheckPartition, IntegerIdentity) {
  const auto& f = fixture::z_identity();
  const auto r = tc::check_partition(*f.p);
  EXPECT_EQ(r.status, tc::Status::kPass);
  EXPECT_EQ(r.margin, tc::Rational(0));
  const auto s = tc::check_psi_structure(*f.p, f.p->M());
  EXPECT_EQ(s.status, tc::Status::kPass);
  EXPECT_EQ(detail(s, "max_Z_h"), "3");
  EXPECT_EQ(tc::check_psi_structure(*f.p, 2).status, tc::Status::kFail);
}

TEST(CheckMembership, Examples) {
  const auto& f = fixture::z_identity();
  std::vector<tc::SparseDensity> points;
  for (const auto& h : f.wh->ball(f.p->inner_radius())) points.push_back(tc::psi(*f.p, h));
  const auto r = tc::check_membership_X(points, f.p->omega_s1(), *f.wg);
  EXPECT_EQ(r.status, tc::Status::kPass);
  EXPECT_EQ(detail(r, "max_center_diameter"), "6");
  EXPECT_EQ(detail(r, "diameter_bound"), "8");

  const std::vector single{tc::block_density(*f.wg, {{tc::Element{5}, 1}})};
  const auto one = tc::check_membership_X(single, f.p->omega_s1(), *f.wg);
  EXPECT_EQ(one.status, tc::Status::kPass);
  EXPECT_EQ(detail(one, "max_center_diameter"), "0");
}

TEST(CheckMembership, CatchesCloseBlocks) {
  const auto& f = fixture::z_identity();
  const std::vector bad{tc::block_density(*f.wg, {{tc::Element{0}, {1, 2}}, {tc::Element{2}, {1, 2}}})};
  const auto r = tc::check_membership_X(bad, f.p->omega_s1(), *f.wg);
  EXPECT_EQ(r.status, tc::Status::kFail);
  EXPECT_NE(r.witness.find("centers_3_discrete"), std::string::npos);
}

TEST(CheckLipschitz, BoundAndTightestConstant) {
  const auto& f = fixture::z_identity();
  const auto orbits = orbits_at(f, {{0, 0}, {3, -2}}, 4);
  const tc::Rational bound = tc::Rational(2 * f.p->M()) * std::max(f.p->N_empirical(), f.p->N_apriori());
  const auto r = tc::check_lipschitz(*f.p, orbits, bound);
  EXPECT_EQ(r.status, tc::Status::kPass);
  EXPECT_GE(tc::Rational::parse(detail(r, "tightest_constant")), tc::Rational(7, 15));
  EXPECT_EQ(tc::check_lipschitz(*f.p, orbits, tc::Rational(7, 180)).status, tc::Status::kFail);
}

TEST(CheckLipschitz, ZeroBoundFails) {
  const auto& f = fixture::z_identity();
  const auto r = tc::check_lipschitz(*f.p, {}, tc::Rational(0));
  EXPECT_EQ(r.status, tc::Status::kFail);
}

TEST(CheckLipschitz, DiscontinuousTableMapStillPasses) {
  const auto g = tc::make_group("Z");
  std::string text;
  for (int n = -24; n <= 24; ++n) text += std::to_string(n) + " -> " + std::to_string(n > 0 ? n + 20 : n) + "\n";
  const auto phi = tc::parse_table(text, g, g, "jump");
  auto wh = std::make_shared<const tc::Window>(tc::build_window(g, 24));
  auto wg = std::make_shared<const tc::Window>(tc::build_window(g, 80));
  const auto m = tc::estimate_moduli(phi, *wh, *wg, 48);
  const tc::Rational s(tc::choose_scale(m));
  const auto p = tc::build_partition(wh, wg, phi, m, s);
  EXPECT_GT(wg->distance(phi.apply(tc::Element{0}), phi.apply(tc::Element{1})), 20);
  const auto bound = tc::Rational(2 * p->M()) * std::max(p->N_empirical(), p->N_apriori());
  EXPECT_EQ(tc::check_lipschitz(*p, {}, bound).status, tc::Status::kPass);
}

TEST(CheckSandwich, ConcretePairAndVacuous) {
  const auto& f = fixture::z_identity();
  const auto o = tc::orbit_point(f.p, tc::Element{0}, tc::Element{0}, std::vector<tc::Element>{tc::Element{0}, tc::Element{8}});
  const auto sd = tc::support_distance(o.value(0), o.value(1), *f.wg);
  EXPECT_GE(sd, 8 - 10);
  EXPECT_LE(sd, 8 + 10);
  const std::vector orbits{o};
  EXPECT_EQ(tc::check_sandwich(orbits, f.m, f.p->omega_s1()).status, tc::Status::kPass);
  const std::vector lone{tc::orbit_point(f.p, tc::Element{0}, tc::Element{0}, f.wh->ball(0))};
  EXPECT_EQ(tc::check_sandwich(lone, f.m, f.p->omega_s1()).status, tc::Status::kVacuous);
}

TEST(CheckSandwich, InflatedKappaFails) {
  const auto& f = fixture::z_identity();
  const auto orbits = orbits_at(f, {{0, 0}}, 8);
  auto inflated = f.m;
  for (auto& k : inflated.kappa) {
    if (k) *k += 30;
  }
  const auto r = tc::check_sandwich(orbits, inflated, f.p->omega_s1());
  EXPECT_EQ(r.status, tc::Status::kFail);
  EXPECT_NE(r.witness.find("lower"), std::string::npos);
}

TEST(CheckProperness, IntegerIdentityThreshold) {
  const auto& f = fixture::z_identity();
  const auto orbits = orbits_at(f, {{0, 0}, {1, 0}, {0, 2}}, 18);
  const auto diam = tc::ball_diameter(*f.wg, 1);
  EXPECT_EQ(diam, 2);
  const auto r = tc::check_properness_H(orbits, f.m, {kUnit, {1, 2}, diam + 2 * f.p->omega_s1() + 2});
  EXPECT_EQ(r.status, tc::Status::kPass);
  EXPECT_EQ(detail(r, "threshold"), "12");
}

TEST(CheckProperness, ShrunkThresholdFailsAtOne) {
  const auto& f = fixture::z_identity();
  const auto orbits = orbits_at(f, {{0, 0}}, 8);
  const auto r = tc::check_properness_H(orbits, f.m, {kUnit, {1, 2}, 0});
  EXPECT_EQ(r.status, tc::Status::kFail);
  EXPECT_NE(r.witness.find("at h=1"), std::string::npos) << r.witness;
}

TEST(CheckProperness, VacuousInTinyWindow) {
  // Inner radius 4: no coordinate reaches the threshold 12.
  const auto f = fixture::build("Z", "Z", "identity", 8, 40);
  const auto orbits = orbits_at(f, {{0, 0}}, 2);
  EXPECT_EQ(tc::check_properness_H(orbits, f.m, {kUnit, {1, 2}, 12}).status, tc::Status::kVacuous);
}

TEST(CheckCocompactness, RecentresFarTranslate) {
  const auto& f = fixture::z_identity();
  const auto orbits = orbits_at(f, {{0, 0}, {20, 0}}, 0);
  const auto r = tc::check_cocompactness_H(orbits, f.m, f.p->omega_s1(), {tc::Rational(1), std::nullopt, {1, 2}});
  EXPECT_EQ(r.status, tc::Status::kPass);
  EXPECT_EQ(r.margin, tc::Rational(1, 2));
}

TEST(CheckCocompactness, SmallKFails) {
  const auto& f = fixture::z_identity();
  const auto orbits = orbits_at(f, {{0, 0}}, 0);
  const auto r = tc::check_cocompactness_H(orbits, f.m, f.p->omega_s1(), {tc::Rational(1), 0, {1, 2}});
  EXPECT_EQ(r.status, tc::Status::kFail);
}

TEST(CheckCocompactness, FarPointNeedsLargerWindow) {
  const auto& f = fixture::z_identity();
  const auto orbits = orbits_at(f, {{100, 0}}, 0);
  EXPECT_THROW(tc::check_cocompactness_H(orbits, f.m, f.p->omega_s1(), {tc::Rational(1), std::nullopt, {1, 2}}), tc::Error);
}

TEST(CheckGAction, PassesAndShrunkThresholdFails) {
  const auto& f = fixture::z_identity();
  const auto orbits = orbits_at(f, {{0, 0}, {2, 3}, {-5, 1}}, 2);
  const auto omega = f.p->omega_s1();
  const auto ok = tc::check_G_action(orbits, omega, {kUnit, {1, 2}, 2 * omega + 2 + 2 * 2});
  EXPECT_EQ(ok[0].status, tc::Status::kPass);
  EXPECT_EQ(ok[1].status, tc::Status::kPass);
  const auto bad = tc::check_G_action(orbits, omega, {kUnit, {1, 2}, 0});
  EXPECT_EQ(bad[0].status, tc::Status::kFail);
}

TEST(CheckGAction, SupportDiameterIngredient) {
  const auto& f = fixture::z_identity();
  const auto omega = f.p->omega_s1();
  for (const auto& h : f.wh->ball(f.p->inner_radius())) {
    ASSERT_LE(tc::support_diameter(tc::psi(*f.p, h), *f.wg), 2 * omega + 2);
  }
}

TEST(CheckGAction, VacuousWhenKMissesSupports) {
  const auto& f = fixture::z_identity();
  const auto orbits = orbits_at(f, {{0, 0}}, 2);
  const auto r = tc::check_G_action(orbits, f.p->omega_s1(), {tc::GroupBall{tc::Element{30}, 0}, 1, 0});
  EXPECT_EQ(r[0].status, tc::Status::kVacuous);
}

TEST(CheckResult, StatusFollowsMargin) {
  const auto& f = fixture::z_identity();
  const auto orbits = orbits_at(f, {{0, 0}, {4, -3}}, 6);
  for (const auto& r : {tc::check_sandwich(orbits, f.m, f.p->omega_s1()), tc::check_lipschitz(*f.p, orbits, 1),
                        tc::check_properness_H(orbits, f.m, {kUnit, {1, 2}, 3})}) {
    if (r.population == 0) {
      EXPECT_EQ(r.status, tc::Status::kVacuous);
    } else {
      EXPECT_EQ(r.status == tc::Status::kPass, r.margin >= tc::Rational(0)) << r.name;
    }
  }
}
