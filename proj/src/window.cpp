#include "topocouple/window.hpp"

#include <algorithm>
#include <string>

namespace topocouple {

std::span<const Element> Window::ball(std::int64_t r) const {
  if (r < 0) return {};
  const auto level = static_cast<std::size_t>(std::min(r, radius_));
  return std::span<const Element>(elements_).first(level_end_[level]);
}

std::optional<std::size_t> Window::find(const Element& e) const {
  const auto it = index_.find(e);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::int64_t Window::length(const Element& e) const {
  if (const auto it = index_.find(e); it != index_.end()) return lengths_[it->second];
  if (const auto len = group_->word_length(e)) return *len;
  throw Error("window", "element " + group_->format(e) + " lies outside the radius-" + std::to_string(radius_) +
                            " window of " + group_->name() + "; enlarge the window");
}

std::int64_t Window::distance(const Element& a, const Element& b) const {
  return length(group_->multiply(group_->inverse(a), b));
}

Window build_window(Group g, std::int64_t radius, std::size_t budget) {
  const auto gens = g->generators();
  return build_window(std::move(g), radius, gens, budget);
}

Window build_window(Group g, std::int64_t radius, std::span<const Element> generator_order, std::size_t budget) {
  if (radius < 0) throw Error("window", "negative window radius");
  {
    auto expected = g->generators();
    std::vector<Element> given(generator_order.begin(), generator_order.end());
    std::sort(expected.begin(), expected.end());
    std::sort(given.begin(), given.end());
    if (expected != given) throw Error("window", "generator order is not a permutation of the generators of " + g->name());
  }
  Window w;
  w.group_ = g;
  w.radius_ = radius;
  w.elements_.push_back(g->identity());
  w.lengths_.push_back(0);
  w.index_.emplace(g->identity(), 0);
  w.level_end_.push_back(1);
  std::size_t level_begin = 0;
  for (std::int64_t r = 1; r <= radius; ++r) {
    const std::size_t level_stop = w.elements_.size();
    for (std::size_t i = level_begin; i < level_stop; ++i) {
      for (const auto& gen : generator_order) {
        Element child = g->multiply(w.elements_[i], gen);
        if (w.index_.contains(child)) continue;
        if (w.elements_.size() >= budget) {
          throw Error("window", "ball of " + g->name() + " exceeds the element budget of " + std::to_string(budget) +
                                    " at radius " + std::to_string(r));
        }
        w.index_.emplace(child, w.elements_.size());
        w.elements_.push_back(std::move(child));
        w.lengths_.push_back(r);
      }
    }
    level_begin = level_stop;
    w.level_end_.push_back(w.elements_.size());
  }
  return w;
}

Net greedy_net(const Window& w, const Rational& s) {
  if (s < Rational(1)) throw Error("window", "net scale must be >= 1, got " + s.str());
  Net net;
  net.scale = s;
  for (const auto& e : w.elements()) {
    const bool far = std::all_of(net.points.begin(), net.points.end(),
                                 [&](const Element& y) { return Rational(w.distance(y, e)) >= s; });
    if (!far) continue;
    net.index.emplace(e, net.points.size());
    net.points.push_back(e);
  }
  return net;
}

}  // namespace topocouple
