#include "topocouple/orbit.hpp"

#include <string>

namespace topocouple {

OrbitPoint::OrbitPoint(std::shared_ptr<const PartitionOfUnity> p, Element g, Element h, std::span<const Element> eval)
    : p_(std::move(p)), g_(std::move(g)), h_(std::move(h)), eval_(eval.begin(), eval.end()) {
  values_.reserve(eval_.size());
  for (const auto& f : eval_) values_.push_back(at(f));
}

bool OrbitPoint::defined_at(const Element& f) const {
  return p_->in_inner(p_->window_h()->model().multiply(h_, f));
}

SparseDensity OrbitPoint::at(const Element& f) const {
  const auto& H = p_->window_h()->model();
  const Element hf = H.multiply(h_, f);
  if (!p_->in_inner(hf)) {
    throw Error("orbit", "h f = " + H.format(hf) + " escapes the inner window (radius " + std::to_string(p_->inner_radius()) +
                             "); shrink the evaluation window or enlarge radius_H");
  }
  return act_left(g_, psi(*p_, hf));
}

OrbitPoint orbit_point(std::shared_ptr<const PartitionOfUnity> p, const Element& g, const Element& h,
                       std::span<const Element> eval) {
  return OrbitPoint(std::move(p), g, h, eval);
}

OrbitPoint act_left(const Element& g, const OrbitPoint& xi) {
  const auto& G = xi.partition().window_g()->model();
  return OrbitPoint(xi.partition_ptr(), G.multiply(g, xi.g()), xi.h(), xi.eval());
}

OrbitPoint act_right(const OrbitPoint& xi, const Element& h) {
  const auto& H = xi.partition().window_h()->model();
  return OrbitPoint(xi.partition_ptr(), xi.g(), H.multiply(xi.h(), h), xi.eval());
}

}  // namespace topocouple
