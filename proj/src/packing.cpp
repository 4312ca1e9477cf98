#include "topocouple/packing.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>
#include <vector>

namespace topocouple {
namespace {

using Bits = std::vector<std::uint64_t>;

struct CliqueSearch {
  std::size_t n = 0;
  std::size_t words = 0;
  std::vector<Bits> adj;
  std::uint64_t budget = 0;
  std::uint64_t nodes = 0;
  bool aborted = false;
  std::size_t best = 0;

  static bool test(const Bits& b, std::size_t i) { return (b[i >> 6] >> (i & 63)) & 1U; }
  static void set(Bits& b, std::size_t i) { b[i >> 6] |= std::uint64_t{1} << (i & 63); }

  // Greedy sequential colouring bound (Tomita-style): returns vertices in
  // colour order with their colour numbers.
  void colour(const Bits& candidates, std::vector<std::size_t>& order, std::vector<std::size_t>& bound) const {
    order.clear();
    bound.clear();
    Bits uncoloured = candidates;
    std::size_t colour_num = 0;
    auto any = [](const Bits& b) { return std::any_of(b.begin(), b.end(), [](std::uint64_t x) { return x != 0; }); };
    while (any(uncoloured)) {
      ++colour_num;
      Bits q = uncoloured;
      while (any(q)) {
        std::size_t v = 0;
        for (std::size_t k = 0; k < words; ++k) {
          if (q[k]) {
            v = k * 64 + static_cast<std::size_t>(std::countr_zero(q[k]));
            break;
          }
        }
        uncoloured[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
        q[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
        for (std::size_t k = 0; k < words; ++k) q[k] &= ~adj[v][k];
        order.push_back(v);
        bound.push_back(colour_num);
      }
    }
  }

  void expand(std::size_t size, Bits candidates) {
    if (aborted) return;
    if (++nodes > budget) {
      aborted = true;
      return;
    }
    std::vector<std::size_t> order;
    std::vector<std::size_t> bound;
    colour(candidates, order, bound);
    for (std::size_t i = order.size(); i-- > 0;) {
      if (size + bound[i] <= best) return;
      const std::size_t v = order[i];
      Bits next(words);
      bool nonempty = false;
      for (std::size_t k = 0; k < words; ++k) {
        next[k] = candidates[k] & adj[v][k];
        nonempty |= next[k] != 0;
      }
      if (nonempty) {
        expand(size + 1, std::move(next));
      } else if (size + 1 > best) {
        best = size + 1;
      }
      if (aborted) return;
      candidates[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
    }
  }
};

}  // namespace

PackingResult packing_number(const Window& w, const Rational& separation, const Rational& diam_bound,
                             const PackingOptions& options) {
  if (separation <= Rational(0) || diam_bound < Rational(0)) {
    throw Error("window", "packing needs positive separation and nonnegative diameter bound");
  }
  if (diam_bound + separation > Rational(2 * w.radius()) || diam_bound > Rational(w.radius())) {
    throw Error("window", "packing with separation " + separation.str() + " and diameter " + diam_bound.str() +
                              " does not fit the radius-" + std::to_string(w.radius()) + " window");
  }
  const std::int64_t diam = diam_bound.floor();
  const auto ball = w.ball(diam);

  PackingResult result;
  // Disjoint balls of radius rho < separation/2 around the points all sit
  // inside ball(1, diam + rho).
  const std::int64_t rho = (separation / Rational(2)).ceil() - 1;
  if (diam + rho <= w.radius()) {
    result.volume_bound = static_cast<std::int64_t>(w.ball_size(diam + rho) / w.ball_size(rho));
  } else {
    result.volume_bound = static_cast<std::int64_t>(ball.size());
  }

  auto compatible = [&](const Element& a, const Element& b) {
    const Rational d(w.distance(a, b));
    return d >= separation && d <= diam_bound;
  };

  std::vector<Element> greedy;
  for (const auto& e : ball) {
    if (std::all_of(greedy.begin(), greedy.end(), [&](const Element& y) { return compatible(y, e); })) greedy.push_back(e);
  }
  result.lower_bound = static_cast<std::int64_t>(greedy.size());

  std::vector<Element> candidates;
  for (const auto& e : ball.subspan(1)) {
    if (Rational(w.length(e)) >= separation) candidates.push_back(e);
  }
  if (candidates.size() > options.candidate_limit) {
    result.value = result.volume_bound;
    result.exact = false;
    return result;
  }

  CliqueSearch search;
  search.n = candidates.size();
  search.words = (search.n + 63) / 64;
  search.adj.assign(search.n, Bits(search.words, 0));
  for (std::size_t i = 0; i < search.n; ++i) {
    for (std::size_t j = i + 1; j < search.n; ++j) {
      if (compatible(candidates[i], candidates[j])) {
        CliqueSearch::set(search.adj[i], j);
        CliqueSearch::set(search.adj[j], i);
      }
    }
  }
  search.budget = options.node_budget;
  search.best = static_cast<std::size_t>(std::max<std::int64_t>(result.lower_bound - 1, 0));
  Bits all(search.words, 0);
  for (std::size_t i = 0; i < search.n; ++i) CliqueSearch::set(all, i);
  if (search.n > 0) search.expand(0, all);
  result.nodes = search.nodes;

  if (search.aborted) {
    result.value = result.volume_bound;
    result.exact = false;
  } else {
    result.value = static_cast<std::int64_t>(search.best) + 1;  // + identity
    result.exact = true;
  }
  return result;
}

}  // namespace topocouple
