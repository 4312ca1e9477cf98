#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "topocouple/certify.hpp"
#include "topocouple/packing.hpp"

namespace topocouple {

struct RunConfig {
  std::string group_h = "Z^1";
  std::string group_g = "Z^1";
  std::string map = "identity";
  std::int64_t radius_h = 24;
  std::int64_t radius_g = 40;
  /// Defaults to floor(inner_radius / 2).
  std::optional<std::int64_t> eval_radius;
  std::optional<Rational> scale;
  std::uint64_t seed = 0;
  /// Check names to run; empty runs all.
  std::vector<std::string> checks;
  std::string output;
  Rational epsilon{1, 2};
  /// Radius of the G ball orbit samples are drawn from; defaults to eval_radius.
  std::optional<std::int64_t> orbit_radius_g;
  /// Radius of the G core window for the coboundedness radius R.
  std::optional<std::int64_t> core_radius;
  /// Added to M before it enters any bound.
  std::int64_t m_offset = 0;
  /// "auto" (analytic when the map has closed forms), "window" or "analytic".
  std::string moduli = "auto";
  std::size_t sample_cap = 10'000;
  std::size_t window_budget = Window::kDefaultBudget;
  PackingOptions packing;
};

/// All check names in report order.
const std::vector<std::string>& all_check_names();

using MetaValue = std::variant<std::int64_t, bool, std::string>;

struct Certificate {
  /// Exact constants; rationals rendered "num/den".
  std::vector<std::pair<std::string, MetaValue>> constants;
  std::vector<CheckResult> checks;  // sorted by name
  std::vector<std::pair<std::string, MetaValue>> window_metadata;

  bool any_failed() const;
  const CheckResult* find(std::string_view name) const;
};

/// Intermediate objects of a run, kept for callers that inspect them.
struct PipelineState {
  Group h, g;
  std::shared_ptr<const Window> w_h, w_g;
  std::optional<CoarseMap> phi;
  Moduli window_moduli;
  std::optional<Moduli> analytic;
  const Moduli* used = nullptr;
  Rational s;
  std::shared_ptr<const PartitionOfUnity> partition;
  std::int64_t eval_radius = 0;
  CoboundedRadius cobounded;
  std::int64_t core_radius = 0;
  std::int64_t orbit_radius_g = 0;
  std::vector<OrbitPoint> orbits;
};

/// Builds groups, windows, map, moduli, scale, partition, R and the orbit
/// samples without running any check.
void prepare_pipeline(const RunConfig& config, PipelineState& state);

/// Builds every stage and runs the selected checks. Deterministic in the
/// config, seed included. Stage failures surface as Error with their tag.
Certificate run_all(const RunConfig& config, PipelineState* state = nullptr);

/// Stratified by |g| + |h|: every pair when the product is <= cap, otherwise
/// a seeded proportional sample of about cap pairs.
std::vector<std::pair<std::size_t, std::size_t>> sample_orbit_pairs(std::span<const std::int64_t> g_lengths,
                                                                    std::span<const std::int64_t> h_lengths,
                                                                    std::size_t cap, std::uint64_t seed);

}  // namespace topocouple
