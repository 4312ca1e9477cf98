#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "topocouple/groups.hpp"
#include "topocouple/rational.hpp"

namespace topocouple {

/// The full ball of radius R around the identity in the word metric,
/// enumerated breadth-first in the model's generator order.
///
/// Elements are sorted by word length, so the ball of any radius r <= R is
/// a prefix of elements().
class Window {
 public:
  static constexpr std::size_t kDefaultBudget = 5'000'000;

  const Group& group() const { return group_; }
  const GroupModel& model() const { return *group_; }
  std::int64_t radius() const { return radius_; }
  std::size_t size() const { return elements_.size(); }

  std::span<const Element> elements() const { return elements_; }
  std::span<const std::int64_t> lengths() const { return lengths_; }

  /// Prefix of elements() with word length <= r (r clamped to radius()).
  std::span<const Element> ball(std::int64_t r) const;
  std::size_t ball_size(std::int64_t r) const { return ball(r).size(); }

  std::optional<std::size_t> find(const Element& e) const;
  bool contains(const Element& e) const { return find(e).has_value(); }

  /// Word length of e: looked up in the window, otherwise taken from the
  /// model's closed form. Throws Error("window", ...) when neither applies.
  std::int64_t length(const Element& e) const;

  /// d(a, b) = |a^{-1} b|. Left-invariant by construction.
  std::int64_t distance(const Element& a, const Element& b) const;

 private:
  friend Window build_window(Group, std::int64_t, std::span<const Element>, std::size_t);

  Group group_;
  std::int64_t radius_ = 0;
  std::vector<Element> elements_;
  std::vector<std::int64_t> lengths_;
  std::vector<std::size_t> level_end_;  // level_end_[r] = #elements of length <= r
  std::unordered_map<Element, std::size_t, ElementHash> index_;
};

/// Breadth-first ball of radius R. Throws Error("window", ...) when the
/// element count exceeds `budget`, naming the radius that broke it.
Window build_window(Group g, std::int64_t radius, std::size_t budget = Window::kDefaultBudget);

/// Same, expanding children in the given generator order (must be a
/// permutation of the model's generators).
Window build_window(Group g, std::int64_t radius, std::span<const Element> generator_order,
                    std::size_t budget = Window::kDefaultBudget);

/// A maximal s-discrete subset Y of a window.
struct Net {
  Rational scale;
  std::vector<Element> points;
  std::unordered_map<Element, std::size_t, ElementHash> index;

  bool contains(const Element& e) const { return index.contains(e); }
};

/// Greedy scan in BFS order keeping every element at distance >= s from all
/// previously kept points. Requires s >= 1.
Net greedy_net(const Window& w, const Rational& s);

}  // namespace topocouple
