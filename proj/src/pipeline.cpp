#include "topocouple/pipeline.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace topocouple {

const std::vector<std::string>& all_check_names() {
  static const std::vector<std::string> names = {
      "cocompactness_H", "g_action_cocompactness", "g_action_properness", "lipschitz", "membership_X", "moduli",
      "net",             "partition_of_unity",     "properness_H",        "psi_structure", "sandwich"};
  return names;
}

bool Certificate::any_failed() const {
  return std::any_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.status == Status::kFail; });
}

const CheckResult* Certificate::find(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::vector<std::pair<std::size_t, std::size_t>> sample_orbit_pairs(std::span<const std::int64_t> g_lengths,
                                                                    std::span<const std::int64_t> h_lengths,
                                                                    std::size_t cap, std::uint64_t seed) {
  std::vector<std::pair<std::size_t, std::size_t>> all;
  all.reserve(g_lengths.size() * h_lengths.size());
  for (std::size_t i = 0; i < g_lengths.size(); ++i) {
    for (std::size_t j = 0; j < h_lengths.size(); ++j) all.emplace_back(i, j);
  }
  if (all.size() <= cap) return all;

  std::map<std::int64_t, std::vector<std::pair<std::size_t, std::size_t>>> strata;
  for (const auto& p : all) strata[g_lengths[p.first] + h_lengths[p.second]].push_back(p);
  // Raw engine output is specified by the standard; distributions are not.
  std::mt19937_64 rng(seed);
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (auto& [level, members] : strata) {
    const std::size_t quota = std::max<std::size_t>(1, members.size() * cap / all.size());
    for (std::size_t k = 0; k < quota && k < members.size(); ++k) {
      const std::size_t pick = k + static_cast<std::size_t>(rng() % (members.size() - k));
      std::swap(members[k], members[pick]);
      out.push_back(members[k]);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

template <class F>
auto stage(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(name, e.what());
  }
}

}  // namespace

void prepare_pipeline(const RunConfig& cfg, PipelineState& st) {
  if (cfg.radius_h <= 0 || cfg.radius_g <= 0) throw Error("config", "radii must be positive");

  st.h = stage("groups", [&] { return make_group(cfg.group_h); });
  st.g = stage("groups", [&] { return make_group(cfg.group_g); });
  st.w_h = stage("window", [&] { return std::make_shared<const Window>(build_window(st.h, cfg.radius_h, cfg.window_budget)); });
  st.w_g = stage("window", [&] { return std::make_shared<const Window>(build_window(st.g, cfg.radius_g, cfg.window_budget)); });
  st.phi = stage("map", [&] { return make_map(cfg.map, st.h, st.g); });
  const auto& phi = *st.phi;

  st.window_moduli = stage("moduli", [&] { return estimate_moduli(phi, *st.w_h, *st.w_g, 2 * cfg.radius_h); });
  if (cfg.moduli != "window" && phi.analytic()) {
    st.analytic = analytic_moduli(phi, 8 * (cfg.radius_h + cfg.radius_g));
  }
  if (cfg.moduli == "analytic" && !st.analytic) throw Error("moduli", "map '" + phi.descriptor() + "' has no analytic moduli");
  if (cfg.moduli != "auto" && cfg.moduli != "window" && cfg.moduli != "analytic") {
    throw Error("config", "moduli must be auto, window or analytic");
  }
  st.used = st.analytic ? &*st.analytic : &st.window_moduli;
  const Moduli& m = *st.used;

  st.s = cfg.scale ? *cfg.scale : Rational(stage("scale", [&] { return choose_scale(m); }));
  st.partition = stage("partition", [&] { return build_partition(st.w_h, st.w_g, phi, m, st.s, cfg.packing); });
  const auto& p = *st.partition;
  const auto inner = p.inner_radius();

  st.eval_radius = cfg.eval_radius.value_or(inner / 2);
  if (st.eval_radius < 0 || st.eval_radius > inner) {
    throw Error("config", "contradictory radii: eval_radius " + std::to_string(st.eval_radius) + " + s + 1 exceeds radius_H " +
                              std::to_string(cfg.radius_h));
  }

  const std::int64_t core = cfg.core_radius.value_or(
      std::min<std::int64_t>(cfg.radius_g, m.kappa_defined(cfg.radius_h) ? *m.kappa[cfg.radius_h] / 2 : cfg.radius_h / 2));
  st.cobounded = stage("moduli", [&] {
    const auto w_core = build_window(st.g, core, cfg.window_budget);
    return cobounded_radius(phi, *st.w_h, w_core);
  });

  // Orbit samples g . psi . h with h f inside the inner window for all f.
  const std::int64_t g_radius = cfg.orbit_radius_g.value_or(st.eval_radius);
  const auto g_ball = st.w_g->ball(g_radius);
  const auto h_ball = st.w_h->ball(inner - st.eval_radius);
  const auto eval = st.w_h->ball(st.eval_radius);
  const auto pairs = sample_orbit_pairs(st.w_g->lengths().first(g_ball.size()), st.w_h->lengths().first(h_ball.size()),
                                        cfg.sample_cap, cfg.seed);
  st.orbits.clear();
  stage("orbit", [&] {
    for (const auto& [gi, hi] : pairs) st.orbits.push_back(orbit_point(st.partition, g_ball[gi], h_ball[hi], eval));
    return 0;
  });
  st.core_radius = core;
  st.orbit_radius_g = g_radius;
}

Certificate run_all(const RunConfig& cfg, PipelineState* out_state) {
  PipelineState local;
  PipelineState& st = out_state ? *out_state : local;
  prepare_pipeline(cfg, st);
  const auto& phi = *st.phi;
  const Moduli& m = *st.used;
  const auto& p = *st.partition;
  const auto inner = p.inner_radius();
  const auto omega = p.omega_s1();
  const auto core = st.core_radius;
  const auto g_radius = st.orbit_radius_g;

  const std::int64_t m_used = p.M() + cfg.m_offset;
  const Rational n_used = std::max(p.N_empirical(), p.N_apriori());
  const Rational lipschitz_bound = Rational(2) * Rational(m_used) * n_used;
  const GroupBall k_unit{st.g->identity(), 1};
  const auto diam_k = ball_diameter(*st.w_g, 1);
  const std::int64_t proper_h_threshold = diam_k + 2 * omega + 2;
  const std::int64_t g_threshold = 2 * omega + 2 + 2 * diam_k;

  auto wanted = [&](const std::string& name) {
    return cfg.checks.empty() || std::find(cfg.checks.begin(), cfg.checks.end(), name) != cfg.checks.end();
  };
  for (const auto& c : cfg.checks) {
    if (std::find(all_check_names().begin(), all_check_names().end(), c) == all_check_names().end()) {
      throw Error("config", "unknown check '" + c + "'");
    }
  }

  Certificate cert;
  stage("certify", [&] {
    if (wanted("net")) cert.checks.push_back(check_net(*st.w_h, p.net()));
    if (wanted("moduli")) cert.checks.push_back(check_moduli(st.window_moduli, st.analytic ? &*st.analytic : nullptr));
    if (wanted("partition_of_unity")) cert.checks.push_back(check_partition(p));
    if (wanted("psi_structure")) cert.checks.push_back(check_psi_structure(p, m_used));
    if (wanted("membership_X")) {
      std::vector<SparseDensity> points;
      for (const auto& h : st.w_h->ball(inner)) points.push_back(psi(p, h));
      for (const auto& o : st.orbits) {
        for (std::size_t i = 0; i < o.eval().size(); ++i) points.push_back(o.value(i));
      }
      cert.checks.push_back(check_membership_X(points, omega, *st.w_g));
    }
    if (wanted("lipschitz")) cert.checks.push_back(check_lipschitz(p, st.orbits, lipschitz_bound));
    if (wanted("sandwich")) cert.checks.push_back(check_sandwich(st.orbits, m, omega));
    if (wanted("properness_H")) {
      cert.checks.push_back(check_properness_H(st.orbits, m, ProperHParams{k_unit, cfg.epsilon, proper_h_threshold}));
    }
    if (wanted("cocompactness_H")) {
      cert.checks.push_back(check_cocompactness_H(st.orbits, m, omega, CocompactHParams{st.cobounded.radius, std::nullopt, cfg.epsilon}));
    }
    if (wanted("g_action_properness") || wanted("g_action_cocompactness")) {
      auto both = check_G_action(st.orbits, omega, GActionParams{k_unit, cfg.epsilon, g_threshold});
      for (auto& c : both) {
        if (wanted(c.name)) cert.checks.push_back(std::move(c));
      }
    }
    return 0;
  });
  std::sort(cert.checks.begin(), cert.checks.end(), [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });

  const auto& pk = p.packing();
  cert.constants = {
      {"s", st.s.str()},
      {"omega_s_plus_1", omega},
      {"M", pk.value},
      {"M_exact", pk.exact},
      {"M_lower_bound", pk.lower_bound},
      {"M_volume_bound", pk.volume_bound},
      {"M_used", m_used},
      {"N_empirical", p.N_empirical().str()},
      {"N_apriori", p.N_apriori().str()},
      {"N_used", n_used.str()},
      {"lipschitz_bound", lipschitz_bound.str()},
      {"R", st.cobounded.radius.str()},
      {"cobounded_sup_distance", st.cobounded.sup_distance},
      {"epsilon", cfg.epsilon.str()},
      {"properness_H_K_radius", k_unit.radius},
      {"properness_H_K_diameter", diam_k},
      {"properness_H_threshold", proper_h_threshold},
      {"g_action_threshold", g_threshold},
      {"g_action_cover_radius", 4 * omega + 4},
      {"cocompactness_K_radius", (st.cobounded.radius + Rational(omega + 1)).floor()},
      {"unit_ball_size", static_cast<std::int64_t>(st.w_g->ball_size(1))},
      {"net_points", static_cast<std::int64_t>(p.net().points.size())},
  };
  if (const auto* c = cert.find("cocompactness_H")) {
    for (const auto& [k, v] : c->details) {
      if (k == "r_max") cert.constants.emplace_back("r_max", v);
    }
  }
  std::sort(cert.constants.begin(), cert.constants.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  cert.window_metadata = {
      {"group_H", st.h->name()},
      {"group_G", st.g->name()},
      {"map", phi.descriptor()},
      {"radius_H", cfg.radius_h},
      {"radius_G", cfg.radius_g},
      {"inner_radius_H", inner},
      {"eval_radius", st.eval_radius},
      {"orbit_radius_G", g_radius},
      {"core_radius_G", core},
      {"window_size_H", static_cast<std::int64_t>(st.w_h->size())},
      {"window_size_G", static_cast<std::int64_t>(st.w_g->size())},
      {"orbit_samples", static_cast<std::int64_t>(st.orbits.size())},
      {"seed", static_cast<std::int64_t>(cfg.seed)},
      {"moduli_provenance", std::string(m.provenance == Provenance::kAnalytic ? "analytic" : "window")},
      {"moduli_t_max", m.t_max},
      {"scope", std::string("orbit-scale")},
  };
  std::sort(cert.window_metadata.begin(), cert.window_metadata.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return cert;
}

}  // namespace topocouple
