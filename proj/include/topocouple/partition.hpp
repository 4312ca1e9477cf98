#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "topocouple/coarse_map.hpp"
#include "topocouple/density.hpp"
#include "topocouple/moduli.hpp"
#include "topocouple/packing.hpp"
#include "topocouple/window.hpp"

namespace topocouple {

/// Bumps theta_y(h) = max(0, s + 1 - d(h, y)) over a maximal s-discrete net
/// Y of the H window, normalised into the partition of unity
/// alpha_{phi(y)} = theta_y / Theta on the inner window
/// ball(1, R_H - (s + 1)), where no bump is truncated by the window edge.
class PartitionOfUnity {
 public:
  /// Nonzero weights at one inner-window point.
  struct Row {
    std::vector<std::pair<std::size_t, Rational>> theta;  // (net index, theta_y(h)), theta > 0
    Rational Theta;
  };

  std::shared_ptr<const Window> window_h() const { return w_h_; }
  std::shared_ptr<const Window> window_g() const { return w_g_; }
  const CoarseMap& map() const { return phi_; }
  const Net& net() const { return net_; }
  /// Z = phi[Y], aligned with net().points.
  std::span<const Element> images() const { return images_; }

  const Rational& scale() const { return s_; }
  std::int64_t inner_radius() const { return inner_radius_; }
  /// omega_phi(s + 1) from the moduli used at construction.
  std::int64_t omega_s1() const { return omega_s1_; }
  const PackingResult& packing() const { return packing_; }
  std::int64_t M() const { return packing_.value; }
  /// Largest |alpha_z(h) - alpha_z(h')| over adjacent inner pairs.
  const Rational& N_empirical() const { return n_empirical_; }
  /// 1 + C (s + 1), C = most net points within distance s + 1 of an inner point.
  const Rational& N_apriori() const { return n_apriori_; }
  std::int64_t max_overlap() const { return max_overlap_; }

  bool in_inner(const Element& h) const;
  /// Throws Error("psi", ...) outside the inner window.
  const Row& row(const Element& h) const;

  Rational theta(std::size_t y, const Element& h) const;
  /// Direct sum over the whole net; independent of the cached rows.
  Rational Theta(const Element& h) const;
  /// (z, alpha_z(h)) for the nonzero weights at h.
  std::vector<std::pair<Element, Rational>> alpha(const Element& h) const;

 private:
  friend std::shared_ptr<const PartitionOfUnity> build_partition(std::shared_ptr<const Window>, std::shared_ptr<const Window>,
                                                                 const CoarseMap&, const Moduli&, const Rational&,
                                                                 const PackingOptions&);

  std::shared_ptr<const Window> w_h_;
  std::shared_ptr<const Window> w_g_;
  CoarseMap phi_;
  Net net_;
  std::vector<Element> images_;
  Rational s_;
  std::int64_t inner_radius_ = 0;
  std::size_t inner_count_ = 0;
  std::int64_t omega_s1_ = 0;
  PackingResult packing_;
  Rational n_empirical_;
  Rational n_apriori_;
  std::int64_t max_overlap_ = 0;
  std::vector<Row> rows_;  // indexed by window position, inner prefix only
};

/// Requires kappa(s) >= 3 in m, an inner window of radius >= 0 and the
/// packing precondition for separation 3 and diameter 2 omega(s + 1).
std::shared_ptr<const PartitionOfUnity> build_partition(std::shared_ptr<const Window> w_h, std::shared_ptr<const Window> w_g,
                                                        const CoarseMap& phi, const Moduli& m, const Rational& s,
                                                        const PackingOptions& packing = {});

/// psi_h = sum_z alpha_z(h) chi_{zB}. Throws Error("psi", ...) outside the
/// inner window, when two blocks overlap, or when |Z_h| > M.
SparseDensity psi(const PartitionOfUnity& p, const Element& h);

}  // namespace topocouple
