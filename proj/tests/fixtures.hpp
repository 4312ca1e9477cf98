#pragma once

#include <memory>
#include <string>

#include "topocouple/coarse_map.hpp"
#include "topocouple/moduli.hpp"
#include "topocouple/partition.hpp"

namespace fixture {

namespace tc = topocouple;

struct Pipeline {
  tc::Group h, g;
  std::shared_ptr<const tc::Window> wh, wg;
  tc::CoarseMap phi;
  tc::Moduli m;
  std::shared_ptr<const tc::PartitionOfUnity> p;
};

/// Partition for the given map with analytic moduli and the least scale.
inline Pipeline build(const std::string& h, const std::string& g, const std::string& rule, std::int64_t rh, std::int64_t rg) {
  auto gh = tc::make_group(h);
  auto gg = tc::make_group(g);
  auto wh = std::make_shared<const tc::Window>(tc::build_window(gh, rh));
  auto wg = std::make_shared<const tc::Window>(tc::build_window(gg, rg));
  auto phi = tc::make_map(rule, gh, gg);
  auto m = tc::analytic_moduli(phi, 8 * (rh + rg));
  const tc::Rational s(tc::choose_scale(m));
  auto p = tc::build_partition(wh, wg, phi, m, s);
  return {gh, gg, wh, wg, std::move(phi), std::move(m), std::move(p)};
}

/// (Z, Z, identity) with radius_H 24 and radius_G 40, s = 3.
inline const Pipeline& z_identity() {
  static const Pipeline p = build("Z", "Z", "identity", 24, 40);
  return p;
}

}  // namespace fixture
