#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "topocouple/coarse_map.hpp"
#include "topocouple/window.hpp"

namespace topocouple {

enum class Provenance { kWindow, kAnalytic };

/// Compression and expansion tables of phi on integer arguments 0..t_max.
///
/// kappa[t] is the minimum target distance over scanned pairs with source
/// distance >= t (empty when no such pair exists); omega[t] the maximum over
/// pairs with source distance <= t. Real arguments use the step rule
/// kappa(t) = kappa(ceil t), omega(t) = omega(ceil t).
struct Moduli {
  using Pair = std::pair<Element, Element>;

  Provenance provenance = Provenance::kWindow;
  std::int64_t t_max = 0;
  std::vector<std::optional<std::int64_t>> kappa;
  std::vector<std::int64_t> omega;
  /// Number of scanned pairs feeding each entry (zero for analytic tables).
  std::vector<std::uint64_t> kappa_pairs;
  std::vector<std::uint64_t> omega_pairs;
  std::vector<std::optional<Pair>> kappa_witness;
  std::vector<std::optional<Pair>> omega_witness;

  /// Throws Error("moduli", ...) when t is beyond the table or kappa is
  /// undefined there.
  std::int64_t kappa_at(const Rational& t) const;
  std::int64_t omega_at(const Rational& t) const;
  bool kappa_defined(std::int64_t t) const { return t >= 0 && t <= t_max && kappa[t].has_value(); }
};

/// Exhaustive scan over all pairs of W_H. Requires t_max <= 2 * W_H.radius.
Moduli estimate_moduli(const CoarseMap& phi, const Window& w_h, const Window& w_g, std::int64_t t_max);

/// Tabulates phi.analytic() on 0..t_max. Throws if the map has no closed form.
Moduli analytic_moduli(const CoarseMap& phi, std::int64_t t_max);

class ScaleError : public Error {
 public:
  enum class Reason { kKappaBounded, kTableTooShort };
  ScaleError(Reason reason, const std::string& what) : Error("scale", what), reason_(reason) {}
  Reason reason() const noexcept { return reason_; }

 private:
  Reason reason_;
};

/// Least integer s >= 1 with kappa(s) >= 3.
std::int64_t choose_scale(const Moduli& m);

struct CoboundedRadius {
  Rational radius;              // sup distance + 1
  std::int64_t sup_distance = 0;
  Element witness;              // core element attaining the sup
};

/// max over g in the core window of min over h in W_H of d_G(g, phi(h)),
/// plus one. Certified for the core window only.
CoboundedRadius cobounded_radius(const CoarseMap& phi, const Window& w_h, const Window& w_g_core);

}  // namespace topocouple
