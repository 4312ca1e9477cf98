#pragma once

#include <memory>
#include <span>
#include <vector>

#include "topocouple/partition.hpp"

namespace topocouple {

/// The point g . psi . h of X^H, materialised on a finite set of
/// coordinates f:  (g psi h)_f = lambda(g) psi_{h f}.
class OrbitPoint {
 public:
  OrbitPoint(std::shared_ptr<const PartitionOfUnity> p, Element g, Element h, std::span<const Element> eval);

  const Element& g() const { return g_; }
  const Element& h() const { return h_; }
  std::span<const Element> eval() const { return eval_; }
  /// Cached value at eval()[i].
  const SparseDensity& value(std::size_t i) const { return values_[i]; }
  /// Value at an arbitrary coordinate; throws Error("orbit", ...) when h f
  /// leaves the inner window.
  SparseDensity at(const Element& f) const;
  /// True when the coordinate f can be evaluated.
  bool defined_at(const Element& f) const;

  const PartitionOfUnity& partition() const { return *p_; }
  std::shared_ptr<const PartitionOfUnity> partition_ptr() const { return p_; }

 private:
  std::shared_ptr<const PartitionOfUnity> p_;
  Element g_;
  Element h_;
  std::vector<Element> eval_;
  std::vector<SparseDensity> values_;
};

OrbitPoint orbit_point(std::shared_ptr<const PartitionOfUnity> p, const Element& g, const Element& h,
                       std::span<const Element> eval);

/// (g' . xi) for xi = g . psi . h is the orbit point g' g . psi . h.
OrbitPoint act_left(const Element& g, const OrbitPoint& xi);
/// (xi . h')_f = xi_{h' f}; for xi = g . psi . h this is g . psi . (h h').
OrbitPoint act_right(const OrbitPoint& xi, const Element& h);

}  // namespace topocouple
