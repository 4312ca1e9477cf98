#pragma once

#include <cstdint>

#include "topocouple/rational.hpp"
#include "topocouple/window.hpp"

namespace topocouple {

struct PackingOptions {
  /// Branch-and-bound nodes before giving up on an exact answer.
  std::uint64_t node_budget = 2'000'000;
  /// Candidate sets larger than this skip the exact search entirely.
  std::size_t candidate_limit = 4096;
};

struct PackingResult {
  std::int64_t value = 0;        // exact maximum, or an upper bound when !exact
  bool exact = false;
  std::int64_t lower_bound = 0;  // greedy configuration size
  std::int64_t volume_bound = 0;
  std::uint64_t nodes = 0;
};

/// Maximum size of a set with pairwise distances >= separation and diameter
/// <= diam_bound. By left-invariance such a set may be assumed to contain
/// the identity, so it lies in ball(1, diam_bound); the search runs over
/// that ball.
///
/// Requires diam_bound + separation <= 2 * radius and diam_bound <= radius.
PackingResult packing_number(const Window& w, const Rational& separation, const Rational& diam_bound,
                             const PackingOptions& options = {});

}  // namespace topocouple
