#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "topocouple/moduli.hpp"
#include "topocouple/orbit.hpp"
#include "topocouple/partition.hpp"

namespace topocouple {

enum class Status { kPass, kFail, kVacuous };
std::string_view to_string(Status s);

/// Verdict of one check. status is vacuous iff population == 0; otherwise
/// pass iff margin >= 0. The margin is the exact minimum slack to the bound
/// over all checked instances and `witness` names the instance attaining it.
struct CheckResult {
  std::string name;
  Status status = Status::kVacuous;
  std::string witness;
  Rational margin;
  std::uint64_t population = 0;
  /// Informational entries (sub-margins, tightest constants), in order.
  std::vector<std::pair<std::string, std::string>> details;
};

/// s-discreteness and s-density of a net, exhaustively over the window.
CheckResult check_net(const Window& w, const Net& net);

/// Monotone tables; window estimates bracketing the analytic tables when
/// `analytic` is given.
CheckResult check_moduli(const Moduli& window, const Moduli* analytic);

/// Sum of alpha is exactly 1, Theta >= 1, bump bounds and 1-Lipschitz bumps,
/// 3-separation of Z, all on the inner window.
CheckResult check_partition(const PartitionOfUnity& p);

/// For every inner h: unit mass, |Z_h| <= m_used, Z_h in ball(phi(h), omega),
/// supp in ball(phi(h), omega + 1), diam supp <= 2 omega + 2, disjoint blocks.
CheckResult check_psi_structure(const PartitionOfUnity& p, std::int64_t m_used);

/// Each density is a convex combination of chi_{g_i B} over a 3-discrete set
/// of diameter <= 2 omega(s + 1).
CheckResult check_membership_X(std::span<const SparseDensity> points, std::int64_t omega_s1, const Window& w_g);

/// ||psi_a - psi_b||_1 <= bound * d_H(a, b) over all inner pairs, and the
/// same over every orbit point's evaluation pairs.
CheckResult check_lipschitz(const PartitionOfUnity& p, std::span<const OrbitPoint> orbits, const Rational& bound);

/// kappa(d) - 2 omega - 2 <= d_G(supp xi_f1, supp xi_f2) <= omega(d) + 2 omega + 2
/// with d = d_H(f1, f2), over distinct evaluation pairs.
CheckResult check_sandwich(std::span<const OrbitPoint> orbits, const Moduli& m, std::int64_t omega_s1);

struct ProperHParams {
  GroupBall k;
  Rational epsilon{1, 2};
  /// Qualifying h satisfy kappa(d_H(h, 1)) > threshold.
  std::int64_t threshold = 0;
};

/// For zeta among the orbits with <zeta_1, chi_K> >= epsilon and every
/// computable coordinate h above the threshold, supp(zeta_h) misses K.
CheckResult check_properness_H(std::span<const OrbitPoint> orbits, const Moduli& m, const ProperHParams& params);

struct CocompactHParams {
  Rational R;
  /// Radius of K; defaults to floor(R + omega(s + 1) + 1).
  std::optional<std::int64_t> k_radius;
  Rational epsilon{1, 2};
};

/// For each orbit point, searches f in ball(1_H, r) for <xi_f, chi_K> >= 1/2.
/// The search is exhaustive, so no finite dense subset of the ball is
/// needed. Throws Error("certify", ...) when no witness is found and the
/// ball is not fully evaluable.
CheckResult check_cocompactness_H(std::span<const OrbitPoint> orbits, const Moduli& m, std::int64_t omega_s1,
                                  const CocompactHParams& params);

struct GActionParams {
  GroupBall k;
  Rational epsilon{1, 2};
  /// g with d_G(g, 1) > threshold must move supp(xi_1) off K.
  std::int64_t threshold = 0;
};

/// [0]: properness over the G window, [1]: cocompactness by recentring
/// supp(xi_1) into ball(1_G, 4 omega + 4).
std::array<CheckResult, 2> check_G_action(std::span<const OrbitPoint> orbits, std::int64_t omega_s1,
                                          const GActionParams& params);

/// Exact diameter of ball(1, r) in the window.
std::int64_t ball_diameter(const Window& w, std::int64_t r);

}  // namespace topocouple
