#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "topocouple/rational.hpp"
#include "topocouple/window.hpp"

namespace topocouple {

/// One shift zB of the closed unit ball with its convex coefficient.
struct Block {
  Element center;
  Rational coefficient;

  friend bool operator==(const Block&, const Block&) = default;
};

/// A finitely supported nonnegative function on a discrete group G, integrated
/// against counting measure scaled by 1/|B| so the closed unit ball has mass 1.
///
/// `atoms` is sorted by normal form and holds positive values only. `blocks`
/// carries the convex-combination structure when the density was assembled
/// from shifts of B (empty for hand-built raw densities).
struct SparseDensity {
  Group group;
  Rational normalizer;
  std::vector<std::pair<Element, Rational>> atoms;
  std::vector<Block> blocks;

  Rational mass() const;
  Rational value_at(const Element& g) const;

  friend bool operator==(const SparseDensity& a, const SparseDensity& b) {
    return a.normalizer == b.normalizer && a.atoms == b.atoms && a.blocks == b.blocks;
  }
};

/// Sum of coefficient * indicator(zB) over the blocks, with B the unit ball of
/// the window's group. Overlapping blocks add up.
SparseDensity block_density(const Window& w_g, std::vector<Block> blocks);

/// Exact L^1 distance. Throws Error("psi", ...) if the normalizers differ.
Rational l1_distance(const SparseDensity& a, const SparseDensity& b);

/// min d_G(a, b) over the two supports (support = essential support here).
std::int64_t support_distance(const SparseDensity& a, const SparseDensity& b, const Window& w_g);

/// Left-regular representation: atoms (x, w) -> (g x, w).
SparseDensity act_left(const Element& g, const SparseDensity& xi);

/// Closed ball in G; membership and distances via the word metric.
struct GroupBall {
  Element center;
  std::int64_t radius = 0;
};

/// <xi, chi_K> for K a ball.
Rational mass_in(const SparseDensity& xi, const GroupBall& k, const Window& w_g);
/// Distance from the support of xi to K (0 when they meet). Word metrics are
/// geodesic, so d(x, K) = max(0, d(x, center) - radius).
std::int64_t distance_to(const SparseDensity& xi, const GroupBall& k, const Window& w_g);
/// Largest pairwise distance inside the support.
std::int64_t support_diameter(const SparseDensity& xi, const Window& w_g);

/// Text form: `<element> <num>/<den>` per atom, then a `# blocks` section with
/// `# <center> <num>/<den>` lines.
std::string serialize(const SparseDensity& xi);

}  // namespace topocouple
