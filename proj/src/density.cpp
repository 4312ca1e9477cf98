#include "topocouple/density.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace topocouple {

Rational SparseDensity::mass() const {
  Rational total(0);
  for (const auto& [g, w] : atoms) total += w;
  return total * normalizer;
}

Rational SparseDensity::value_at(const Element& g) const {
  const auto it = std::lower_bound(atoms.begin(), atoms.end(), g,
                                   [](const auto& atom, const Element& key) { return atom.first < key; });
  if (it == atoms.end() || !(it->first == g)) return Rational(0);
  return it->second;
}

SparseDensity block_density(const Window& w_g, std::vector<Block> blocks) {
  if (w_g.radius() < 1) throw Error("psi", "the G window must contain the unit ball");
  const auto unit = w_g.ball(1);
  const auto& G = w_g.model();
  std::map<Element, Rational> acc;
  for (const auto& b : blocks) {
    if (b.coefficient.sign() == 0) continue;
    for (const auto& u : unit) acc[G.multiply(b.center, u)] += b.coefficient;
  }
  SparseDensity out;
  out.group = w_g.group();
  out.normalizer = Rational(1, static_cast<std::int64_t>(unit.size()));
  for (auto& [g, w] : acc) {
    if (w.sign() != 0) out.atoms.emplace_back(g, w);
  }
  std::sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) { return a.center < b.center; });
  out.blocks = std::move(blocks);
  return out;
}

Rational l1_distance(const SparseDensity& a, const SparseDensity& b) {
  if (!(a.normalizer == b.normalizer)) throw Error("psi", "L1 distance between densities with different normalizers");
  Rational total(0);
  auto ia = a.atoms.begin();
  auto ib = b.atoms.begin();
  while (ia != a.atoms.end() || ib != b.atoms.end()) {
    if (ib == b.atoms.end() || (ia != a.atoms.end() && ia->first < ib->first)) {
      total += ia->second;
      ++ia;
    } else if (ia == a.atoms.end() || ib->first < ia->first) {
      total += ib->second;
      ++ib;
    } else {
      total += abs(ia->second - ib->second);
      ++ia;
      ++ib;
    }
  }
  return total * a.normalizer;
}

std::int64_t support_distance(const SparseDensity& a, const SparseDensity& b, const Window& w_g) {
  if (a.atoms.empty() || b.atoms.empty()) throw Error("psi", "support distance of an empty density");
  const auto& G = w_g.model();
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (const auto& [x, wx] : a.atoms) {
    const auto x_inv = G.inverse(x);
    for (const auto& [y, wy] : b.atoms) {
      best = std::min(best, w_g.length(G.multiply(x_inv, y)));
      if (best == 0) return 0;
    }
  }
  return best;
}

SparseDensity act_left(const Element& g, const SparseDensity& xi) {
  const auto& G = *xi.group;
  SparseDensity out;
  out.group = xi.group;
  out.normalizer = xi.normalizer;
  out.atoms.reserve(xi.atoms.size());
  for (const auto& [x, w] : xi.atoms) out.atoms.emplace_back(G.multiply(g, x), w);
  std::sort(out.atoms.begin(), out.atoms.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
  out.blocks.reserve(xi.blocks.size());
  for (const auto& b : xi.blocks) out.blocks.push_back(Block{G.multiply(g, b.center), b.coefficient});
  std::sort(out.blocks.begin(), out.blocks.end(), [](const Block& a, const Block& b) { return a.center < b.center; });
  return out;
}

Rational mass_in(const SparseDensity& xi, const GroupBall& k, const Window& w_g) {
  Rational total(0);
  for (const auto& [x, w] : xi.atoms) {
    if (w_g.distance(k.center, x) <= k.radius) total += w;
  }
  return total * xi.normalizer;
}

std::int64_t distance_to(const SparseDensity& xi, const GroupBall& k, const Window& w_g) {
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (const auto& [x, w] : xi.atoms) best = std::min(best, std::max<std::int64_t>(0, w_g.distance(k.center, x) - k.radius));
  return best;
}

std::int64_t support_diameter(const SparseDensity& xi, const Window& w_g) {
  std::int64_t best = 0;
  for (std::size_t i = 0; i < xi.atoms.size(); ++i) {
    for (std::size_t j = i + 1; j < xi.atoms.size(); ++j) {
      best = std::max(best, w_g.distance(xi.atoms[i].first, xi.atoms[j].first));
    }
  }
  return best;
}

std::string serialize(const SparseDensity& xi) {
  const auto& G = *xi.group;
  std::string out;
  for (const auto& [x, w] : xi.atoms) out += G.format(x) + " " + w.str() + "\n";
  out += "# blocks\n";
  for (const auto& b : xi.blocks) out += "# " + G.format(b.center) + " " + b.coefficient.str() + "\n";
  return out;
}

}  // namespace topocouple
