#include "topocouple/certify.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace topocouple {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::kPass: return "pass";
    case Status::kFail: return "fail";
    case Status::kVacuous: return "vacuous";
  }
  return "?";
}

namespace {

/// Running minimum of slacks, overall and per named condition.
class Tracker {
 public:
  explicit Tracker(std::string name) { result_.name = std::move(name); }

  template <class WitnessFn>
  void observe(const std::string& condition, const Rational& slack, WitnessFn&& witness) {
    auto& sub = sub_for(condition);
    ++sub.population;
    if (!sub.margin || slack < *sub.margin) sub.margin = slack;
    ++result_.population;
    if (!have_ || slack < result_.margin) {
      have_ = true;
      result_.margin = slack;
      result_.witness = condition + ": " + witness();
    }
  }

  void detail(std::string key, std::string value) { extra_.emplace_back(std::move(key), std::move(value)); }

  CheckResult finish() {
    for (const auto& [cond, sub] : subs_) {
      result_.details.emplace_back(cond + ".population", std::to_string(sub.population));
      result_.details.emplace_back(cond + ".margin", sub.margin ? sub.margin->str() : "none");
    }
    for (auto& kv : extra_) result_.details.push_back(std::move(kv));
    if (result_.population == 0) {
      result_.status = Status::kVacuous;
      result_.margin = Rational(0);
      result_.witness = "none";
    } else {
      result_.status = result_.margin >= Rational(0) ? Status::kPass : Status::kFail;
    }
    return std::move(result_);
  }

 private:
  struct Sub {
    std::uint64_t population = 0;
    std::optional<Rational> margin;
  };
  Sub& sub_for(const std::string& cond) {
    for (auto& [c, s] : subs_) {
      if (c == cond) return s;
    }
    subs_.emplace_back(cond, Sub{});
    return subs_.back().second;
  }

  CheckResult result_;
  bool have_ = false;
  std::vector<std::pair<std::string, Sub>> subs_;
  std::vector<std::pair<std::string, std::string>> extra_;
};

std::string fmt(const GroupModel& g, const Element& e) { return g.format(e); }

std::string orbit_name(const OrbitPoint& o) {
  const auto& p = o.partition();
  return "g=" + fmt(p.window_g()->model(), o.g()) + " h=" + fmt(p.window_h()->model(), o.h());
}

}  // namespace

std::int64_t ball_diameter(const Window& w, std::int64_t r) {
  const auto ball = w.ball(r);
  std::int64_t best = 0;
  for (std::size_t i = 0; i < ball.size(); ++i) {
    for (std::size_t j = i + 1; j < ball.size(); ++j) best = std::max(best, w.distance(ball[i], ball[j]));
  }
  return best;
}

CheckResult check_net(const Window& w, const Net& net) {
  Tracker t("net");
  const auto& G = w.model();
  const Rational& s = net.scale;
  for (std::size_t i = 0; i < net.points.size(); ++i) {
    for (std::size_t j = i + 1; j < net.points.size(); ++j) {
      const auto d = w.distance(net.points[i], net.points[j]);
      t.observe("discrete", Rational(d) - s, [&] { return fmt(G, net.points[i]) + " ~ " + fmt(G, net.points[j]); });
    }
  }
  // Integer distances: d < s iff d <= ceil(s) - 1.
  const std::int64_t strict = s.ceil() - 1;
  for (const auto& h : w.elements()) {
    std::int64_t nearest = std::numeric_limits<std::int64_t>::max();
    for (const auto& y : net.points) {
      nearest = std::min(nearest, w.distance(h, y));
      if (nearest == 0) break;
    }
    t.observe("dense", Rational(strict - nearest), [&] { return fmt(G, h); });
  }
  t.detail("scale", s.str());
  t.detail("points", std::to_string(net.points.size()));
  return t.finish();
}

CheckResult check_moduli(const Moduli& window, const Moduli* analytic) {
  Tracker t("moduli");
  for (std::int64_t i = 0; i + 1 <= window.t_max; ++i) {
    if (window.kappa[i] && window.kappa[i + 1]) {
      t.observe("kappa_nondecreasing", Rational(*window.kappa[i + 1] - *window.kappa[i]),
                [&] { return "t=" + std::to_string(i); });
    }
    t.observe("omega_nondecreasing", Rational(window.omega[i + 1] - window.omega[i]), [&] { return "t=" + std::to_string(i); });
  }
  if (analytic) {
    const auto top = std::min(window.t_max, analytic->t_max);
    for (std::int64_t i = 0; i <= top; ++i) {
      if (window.kappa[i] && analytic->kappa[i]) {
        t.observe("kappa_brackets_analytic", Rational(*window.kappa[i] - *analytic->kappa[i]),
                  [&] { return "t=" + std::to_string(i); });
      }
      t.observe("omega_brackets_analytic", Rational(analytic->omega[i] - window.omega[i]),
                [&] { return "t=" + std::to_string(i); });
    }
  }
  return t.finish();
}

CheckResult check_partition(const PartitionOfUnity& p) {
  Tracker t("partition_of_unity");
  const auto& wh = *p.window_h();
  const auto& H = wh.model();
  const auto& G = p.window_g()->model();
  const auto inner = wh.ball(p.inner_radius());
  const Rational s = p.scale();
  const Rational one(1);
  for (const auto& h : inner) {
    const auto& row = p.row(h);
    Rational sum(0);
    for (const auto& [y, th] : row.theta) sum += th / row.Theta;
    t.observe("sum_alpha_is_one", -abs(sum - one), [&] { return fmt(H, h); });
    t.observe("Theta_at_least_one", row.Theta - one, [&] { return fmt(H, h); });
    // The cached row must agree with a direct sum over the whole net.
    t.observe("Theta_matches_direct_sum", -abs(row.Theta - p.Theta(h)), [&] { return fmt(H, h); });
    for (std::size_t y = 0; y < p.net().points.size(); ++y) {
      const auto d = Rational(wh.distance(h, p.net().points[y]));
      if (d <= s) {
        t.observe("theta_at_least_one_within_s", p.theta(y, h) - one, [&] { return fmt(H, h); });
      } else if (d >= s + one) {
        t.observe("theta_zero_beyond_s_plus_1", -p.theta(y, h), [&] { return fmt(H, h); });
      }
    }
  }
  // 1-Lipschitz bumps on adjacent inner pairs.
  const auto gens = H.generators();
  for (const auto& h : inner) {
    const auto& a = p.row(h);
    for (const auto& gen : gens) {
      const auto k = H.multiply(h, gen);
      if (!p.in_inner(k)) continue;
      const auto& b = p.row(k);
      std::map<std::size_t, Rational> diff;
      for (const auto& [y, th] : a.theta) diff[y] += th;
      for (const auto& [y, th] : b.theta) diff[y] -= th;
      for (const auto& [y, d] : diff) {
        t.observe("theta_1_lipschitz", one - abs(d), [&] { return fmt(H, h) + " ~ " + fmt(H, k); });
      }
    }
  }
  const auto zs = p.images();
  const auto& wg = *p.window_g();
  for (std::size_t i = 0; i < zs.size(); ++i) {
    for (std::size_t j = i + 1; j < zs.size(); ++j) {
      t.observe("Z_3_separated", Rational(wg.distance(zs[i], zs[j]) - 3), [&] { return fmt(G, zs[i]) + " ~ " + fmt(G, zs[j]); });
    }
  }
  return t.finish();
}

CheckResult check_psi_structure(const PartitionOfUnity& p, std::int64_t m_used) {
  Tracker t("psi_structure");
  const auto& wh = *p.window_h();
  const auto& wg = *p.window_g();
  const auto& H = wh.model();
  const auto omega = p.omega_s1();
  const auto unit = static_cast<std::int64_t>(wg.ball_size(1));
  std::int64_t largest = 0;
  for (const auto& h : wh.ball(p.inner_radius())) {
    const auto xi = psi(p, h);
    const auto name = [&] { return fmt(H, h); };
    const auto center = p.map().apply(h);
    t.observe("unit_mass", -abs(xi.mass() - Rational(1)), name);
    const auto zh = static_cast<std::int64_t>(xi.blocks.size());
    largest = std::max(largest, zh);
    t.observe("Z_h_at_most_M", Rational(m_used - zh), name);
    for (const auto& b : xi.blocks) t.observe("Z_h_in_ball", Rational(omega - wg.distance(center, b.center)), name);
    for (const auto& [x, w] : xi.atoms) t.observe("support_in_ball", Rational(omega + 1 - wg.distance(center, x)), name);
    t.observe("support_diameter", Rational(2 * omega + 2 - support_diameter(xi, wg)), name);
    t.observe("blocks_disjoint", Rational(static_cast<std::int64_t>(xi.atoms.size()) - zh * unit), name);
  }
  t.detail("max_Z_h", std::to_string(largest));
  return t.finish();
}

CheckResult check_membership_X(std::span<const SparseDensity> points, std::int64_t omega_s1, const Window& w_g) {
  Tracker t("membership_X");
  const auto& G = w_g.model();
  std::int64_t worst_diam = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& xi = points[i];
    const auto name = [&] { return "point " + std::to_string(i); };
    if (xi.blocks.empty()) {
      t.observe("has_blocks", Rational(-1), name);
      continue;
    }
    Rational sum(0);
    for (const auto& b : xi.blocks) {
      t.observe("coefficients_nonnegative", b.coefficient, name);
      sum += b.coefficient;
    }
    t.observe("coefficients_sum_to_one", -abs(sum - Rational(1)), name);
    std::int64_t diam = 0;
    for (std::size_t a = 0; a < xi.blocks.size(); ++a) {
      for (std::size_t b = a + 1; b < xi.blocks.size(); ++b) {
        const auto d = w_g.distance(xi.blocks[a].center, xi.blocks[b].center);
        diam = std::max(diam, d);
        t.observe("centers_3_discrete", Rational(d - 3), [&] {
          return name() + " " + fmt(G, xi.blocks[a].center) + " ~ " + fmt(G, xi.blocks[b].center);
        });
      }
    }
    worst_diam = std::max(worst_diam, diam);
    t.observe("centers_diameter", Rational(2 * omega_s1 - diam), name);
    const auto rebuilt = block_density(w_g, xi.blocks);
    t.observe("atoms_match_blocks", -l1_distance(xi, rebuilt), name);
  }
  t.detail("max_center_diameter", std::to_string(worst_diam));
  t.detail("diameter_bound", std::to_string(2 * omega_s1));
  return t.finish();
}

CheckResult check_lipschitz(const PartitionOfUnity& p, std::span<const OrbitPoint> orbits, const Rational& bound) {
  Tracker t("lipschitz");
  const auto& wh = *p.window_h();
  const auto& H = wh.model();
  const auto inner = wh.ball(p.inner_radius());
  std::vector<SparseDensity> values;
  values.reserve(inner.size());
  for (const auto& h : inner) values.push_back(psi(p, h));
  Rational tightest(0);
  auto observe = [&](const std::string& cond, const SparseDensity& a, const SparseDensity& b, std::int64_t d, auto&& name) {
    const Rational v = l1_distance(a, b);
    if (d > 0 && v / Rational(d) > tightest) tightest = v / Rational(d);
    t.observe(cond, bound * Rational(d) - v, name);
  };
  for (std::size_t i = 0; i < inner.size(); ++i) {
    for (std::size_t j = i + 1; j < inner.size(); ++j) {
      observe("psi", values[i], values[j], wh.distance(inner[i], inner[j]),
              [&] { return fmt(H, inner[i]) + " ~ " + fmt(H, inner[j]); });
    }
  }
  for (const auto& o : orbits) {
    const auto eval = o.eval();
    for (std::size_t i = 0; i < eval.size(); ++i) {
      for (std::size_t j = i + 1; j < eval.size(); ++j) {
        observe("orbit", o.value(i), o.value(j), wh.distance(eval[i], eval[j]),
                [&] { return orbit_name(o) + " f=" + fmt(H, eval[i]) + " ~ " + fmt(H, eval[j]); });
      }
    }
  }
  t.detail("bound", bound.str());
  t.detail("tightest_constant", tightest.str());
  return t.finish();
}

CheckResult check_sandwich(std::span<const OrbitPoint> orbits, const Moduli& m, std::int64_t omega_s1) {
  Tracker t("sandwich");
  for (const auto& o : orbits) {
    const auto& wh = *o.partition().window_h();
    const auto& wg = *o.partition().window_g();
    const auto& H = wh.model();
    const auto eval = o.eval();
    for (std::size_t i = 0; i < eval.size(); ++i) {
      for (std::size_t j = i + 1; j < eval.size(); ++j) {
        const auto d = wh.distance(eval[i], eval[j]);
        const auto sd = support_distance(o.value(i), o.value(j), wg);
        const auto name = [&] { return orbit_name(o) + " f=" + fmt(H, eval[i]) + " ~ " + fmt(H, eval[j]); };
        t.observe("lower", Rational(sd - (m.kappa_at(Rational(d)) - 2 * omega_s1 - 2)), name);
        t.observe("upper", Rational(m.omega_at(Rational(d)) + 2 * omega_s1 + 2 - sd), name);
      }
    }
  }
  return t.finish();
}

CheckResult check_properness_H(std::span<const OrbitPoint> orbits, const Moduli& m, const ProperHParams& params) {
  Tracker t("properness_H");
  std::uint64_t zetas = 0;
  for (const auto& o : orbits) {
    const auto& wh = *o.partition().window_h();
    const auto& wg = *o.partition().window_g();
    const auto& H = wh.model();
    const auto zeta_1 = o.at(H.identity());
    if (mass_in(zeta_1, params.k, wg) < params.epsilon) continue;
    ++zetas;
    for (std::size_t i = 0; i < wh.size(); ++i) {
      const auto& h = wh.elements()[i];
      const auto len = wh.lengths()[i];
      if (!m.kappa_defined(len) || *m.kappa[len] <= params.threshold) continue;
      if (!o.defined_at(h)) continue;
      const auto d = distance_to(o.at(h), params.k, wg);
      // Disjoint from K iff the distance is at least 1.
      t.observe("support_misses_K", Rational(d - 1), [&] { return orbit_name(o) + " at h=" + fmt(H, h); });
    }
  }
  t.detail("threshold", std::to_string(params.threshold));
  t.detail("epsilon", params.epsilon.str());
  t.detail("K_radius", std::to_string(params.k.radius));
  t.detail("zeta_in_K_epsilon", std::to_string(zetas));
  return t.finish();
}

CheckResult check_cocompactness_H(std::span<const OrbitPoint> orbits, const Moduli& m, std::int64_t omega_s1,
                                  const CocompactHParams& params) {
  Tracker t("cocompactness_H");
  const std::int64_t k_radius = params.k_radius.value_or((params.R + Rational(omega_s1 + 1)).floor());
  std::int64_t r_max = 0;
  for (const auto& o : orbits) {
    const auto& wh = *o.partition().window_h();
    const auto& wg = *o.partition().window_g();
    const auto& H = wh.model();
    const auto& G = wg.model();
    const GroupBall k{G.identity(), k_radius};
    const auto c = o.at(H.identity());
    const auto diam_c = support_diameter(c, wg);
    std::int64_t dist_c = std::numeric_limits<std::int64_t>::max();
    for (const auto& [x, w] : c.atoms) dist_c = std::min(dist_c, wg.length(x));
    const Rational bound = Rational(omega_s1 + 1 + diam_c + dist_c) + params.R;
    // r = sup{t : kappa(t) <= bound}; kappa is nondecreasing, undefined entries count as +inf.
    std::optional<std::int64_t> r;
    for (std::int64_t s = 0; s <= m.t_max; ++s) {
      if (m.kappa[s] && Rational(*m.kappa[s]) <= bound) r = s;
    }
    if (!r) r = 0;
    if (*r == m.t_max && m.kappa[m.t_max]) {
      throw Error("certify", "kappa table too short to determine r for " + orbit_name(o) + " (t_max = " + std::to_string(m.t_max) + ")");
    }
    r_max = std::max(r_max, *r);
    bool complete = *r <= wh.radius();
    std::optional<Rational> best;
    Element witness = H.identity();
    for (const auto& f : wh.ball(*r)) {
      if (!o.defined_at(f)) {
        complete = false;
        continue;
      }
      const auto mass = mass_in(o.at(f), k, wg);
      if (!best || mass > *best) {
        best = mass;
        witness = f;
      }
    }
    if ((!best || *best < params.epsilon) && !complete) {
      throw Error("certify", "no witness found and ball(1_H, " + std::to_string(*r) + ") is not evaluable for " + orbit_name(o) +
                                 "; enlarge radius_H");
    }
    const Rational achieved = best.value_or(Rational(0));
    t.observe("witness_mass", achieved - params.epsilon, [&] { return orbit_name(o) + " f=" + fmt(H, witness); });
  }
  t.detail("K_radius", std::to_string(k_radius));
  t.detail("R", params.R.str());
  t.detail("r_max", std::to_string(r_max));
  t.detail("search", "exhaustive over ball(1_H, r)");
  return t.finish();
}

std::array<CheckResult, 2> check_G_action(std::span<const OrbitPoint> orbits, std::int64_t omega_s1,
                                          const GActionParams& params) {
  Tracker proper("g_action_properness");
  Tracker cocompact("g_action_cocompactness");
  const std::int64_t cover_radius = 4 * omega_s1 + 4;
  std::uint64_t xis = 0;
  for (const auto& o : orbits) {
    const auto& wg = *o.partition().window_g();
    const auto& G = wg.model();
    const auto& H = o.partition().window_h()->model();
    const auto xi_1 = o.at(H.identity());

    if (mass_in(xi_1, params.k, wg) >= params.epsilon) {
      ++xis;
      for (std::size_t i = 0; i < wg.size(); ++i) {
        if (wg.lengths()[i] <= params.threshold) continue;
        const auto& g = wg.elements()[i];
        std::int64_t d = std::numeric_limits<std::int64_t>::max();
        for (const auto& [x, w] : xi_1.atoms) {
          d = std::min(d, std::max<std::int64_t>(0, wg.distance(params.k.center, G.multiply(g, x)) - params.k.radius));
        }
        proper.observe("translate_misses_K", Rational(d - 1), [&] { return orbit_name(o) + " by " + fmt(G, g); });
      }
    }

    const auto g = G.inverse(xi_1.atoms.front().first);
    const auto moved = act_left(g, xi_1);
    std::int64_t far = 0;
    for (const auto& [x, w] : moved.atoms) far = std::max(far, wg.length(x));
    const auto name = [&] { return orbit_name(o) + " recentred by " + fmt(G, g); };
    cocompact.observe("support_in_cover_ball", Rational(cover_radius - far), name);
    cocompact.observe("mass_in_cover_ball", -abs(mass_in(moved, GroupBall{G.identity(), cover_radius}, wg) - Rational(1)), name);
  }
  proper.detail("threshold", std::to_string(params.threshold));
  proper.detail("epsilon", params.epsilon.str());
  proper.detail("K_radius", std::to_string(params.k.radius));
  proper.detail("xi_in_K_epsilon", std::to_string(xis));
  cocompact.detail("cover_radius", std::to_string(cover_radius));
  return {proper.finish(), cocompact.finish()};
}

}  // namespace topocouple
