#include "topocouple/moduli.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace topocouple {

std::int64_t Moduli::kappa_at(const Rational& t) const {
  const auto i = std::max<std::int64_t>(t.ceil(), 0);
  if (i > t_max) throw Error("moduli", "kappa(" + t.str() + ") is beyond the table (t_max = " + std::to_string(t_max) + ")");
  if (!kappa[i]) throw Error("moduli", "kappa(" + t.str() + ") has no witnessing pair in the window");
  return *kappa[i];
}

std::int64_t Moduli::omega_at(const Rational& t) const {
  const auto i = std::max<std::int64_t>(t.ceil(), 0);
  if (i > t_max) throw Error("moduli", "omega(" + t.str() + ") is beyond the table (t_max = " + std::to_string(t_max) + ")");
  return omega[i];
}

Moduli estimate_moduli(const CoarseMap& phi, const Window& w_h, const Window& w_g, std::int64_t t_max) {
  if (t_max < 0 || t_max > 2 * w_h.radius()) {
    throw Error("moduli", "t_max must lie in [0, 2 * radius_H] = [0, " + std::to_string(2 * w_h.radius()) + "]");
  }
  const auto hs = w_h.elements();
  const auto& H = w_h.model();
  const auto& G = w_g.model();
  std::vector<Element> img;
  std::vector<Element> h_inv;
  std::vector<Element> img_inv;
  img.reserve(hs.size());
  for (const auto& h : hs) {
    img.push_back(phi.apply(h));
    h_inv.push_back(H.inverse(h));
    img_inv.push_back(G.inverse(img.back()));
  }

  const std::int64_t d_max = 2 * w_h.radius();
  constexpr auto kNone = std::numeric_limits<std::int64_t>::max();
  std::vector<std::int64_t> min_at(d_max + 1, kNone);
  std::vector<std::int64_t> max_at(d_max + 1, -1);
  std::vector<std::uint64_t> count_at(d_max + 1, 0);
  std::vector<std::pair<std::size_t, std::size_t>> min_pair(d_max + 1);
  std::vector<std::pair<std::size_t, std::size_t>> max_pair(d_max + 1);

  for (std::size_t i = 0; i < hs.size(); ++i) {
    for (std::size_t j = i; j < hs.size(); ++j) {
      const std::int64_t dh = i == j ? 0 : w_h.length(H.multiply(h_inv[i], hs[j]));
      std::int64_t dg = 0;
      try {
        dg = w_g.length(G.multiply(img_inv[i], img[j]));
      } catch (const Error&) {
        throw Error("moduli", "target distance d_G(phi(" + H.format(hs[i]) + "), phi(" + H.format(hs[j]) +
                                  ")) is unresolvable in the G window; enlarge radius_G");
      }
      ++count_at[dh];
      if (dg < min_at[dh]) {
        min_at[dh] = dg;
        min_pair[dh] = {i, j};
      }
      if (dg > max_at[dh]) {
        max_at[dh] = dg;
        max_pair[dh] = {i, j};
      }
    }
  }

  Moduli m;
  m.provenance = Provenance::kWindow;
  m.t_max = t_max;
  m.kappa.assign(t_max + 1, std::nullopt);
  m.omega.assign(t_max + 1, 0);
  m.kappa_pairs.assign(t_max + 1, 0);
  m.omega_pairs.assign(t_max + 1, 0);
  m.kappa_witness.assign(t_max + 1, std::nullopt);
  m.omega_witness.assign(t_max + 1, std::nullopt);

  // kappa: suffix minimum over distances >= t.
  std::int64_t best = kNone;
  std::uint64_t pairs = 0;
  std::optional<std::pair<std::size_t, std::size_t>> arg;
  for (std::int64_t d = d_max; d >= 0; --d) {
    pairs += count_at[d];
    if (count_at[d] && min_at[d] < best) {
      best = min_at[d];
      arg = min_pair[d];
    }
    if (d <= t_max) {
      m.kappa_pairs[d] = pairs;
      if (arg) {
        m.kappa[d] = best;
        m.kappa_witness[d] = Moduli::Pair{hs[arg->first], hs[arg->second]};
      }
    }
  }
  // omega: prefix maximum over distances <= t.
  std::int64_t top = -1;
  pairs = 0;
  arg.reset();
  for (std::int64_t d = 0; d <= t_max; ++d) {
    pairs += count_at[d];
    if (count_at[d] && max_at[d] > top) {
      top = max_at[d];
      arg = max_pair[d];
    }
    m.omega_pairs[d] = pairs;
    m.omega[d] = std::max<std::int64_t>(top, 0);
    if (arg) m.omega_witness[d] = Moduli::Pair{hs[arg->first], hs[arg->second]};
  }
  return m;
}

Moduli analytic_moduli(const CoarseMap& phi, std::int64_t t_max) {
  if (!phi.analytic()) throw Error("moduli", "map '" + phi.descriptor() + "' has no closed-form moduli");
  if (t_max < 0) throw Error("moduli", "negative t_max");
  const auto& a = *phi.analytic();
  Moduli m;
  m.provenance = Provenance::kAnalytic;
  m.t_max = t_max;
  for (std::int64_t t = 0; t <= t_max; ++t) {
    m.kappa.emplace_back(a.kappa(t));
    m.omega.push_back(a.omega(t));
  }
  m.kappa_pairs.assign(t_max + 1, 0);
  m.omega_pairs.assign(t_max + 1, 0);
  m.kappa_witness.assign(t_max + 1, std::nullopt);
  m.omega_witness.assign(t_max + 1, std::nullopt);
  return m;
}

std::int64_t choose_scale(const Moduli& m) {
  std::int64_t last = -1;
  for (std::int64_t t = 1; t <= m.t_max; ++t) {
    if (!m.kappa[t]) continue;
    if (*m.kappa[t] >= 3) return t;
    last = t;
  }
  if (last < 0) {
    throw ScaleError(ScaleError::Reason::kTableTooShort, "no kappa values beyond t = 0; enlarge the H window");
  }
  const auto half = std::max<std::int64_t>(last / 2, 0);
  const std::int64_t at_half = m.kappa[half].value_or(0);
  if (*m.kappa[last] > at_half) {
    throw ScaleError(ScaleError::Reason::kTableTooShort,
                     "kappa still growing at t_max = " + std::to_string(last) + " (kappa = " + std::to_string(*m.kappa[last]) +
                         "); enlarge the H window or t_max");
  }
  throw ScaleError(ScaleError::Reason::kKappaBounded,
                   "kappa bounded: kappa(t) <= " + std::to_string(*m.kappa[last]) + " for all t <= " + std::to_string(last) +
                       "; the map is not expansive");
}

CoboundedRadius cobounded_radius(const CoarseMap& phi, const Window& w_h, const Window& w_g_core) {
  const auto& G = w_g_core.model();
  std::vector<Element> images;
  {
    std::unordered_map<Element, bool, ElementHash> seen;
    for (const auto& h : w_h.elements()) {
      auto z = phi.apply(h);
      if (seen.emplace(z, true).second) images.push_back(std::move(z));
    }
  }
  CoboundedRadius out;
  out.witness = G.identity();
  for (const auto& g : w_g_core.elements()) {
    const auto g_inv = G.inverse(g);
    std::int64_t nearest = std::numeric_limits<std::int64_t>::max();
    for (const auto& z : images) {
      nearest = std::min(nearest, w_g_core.length(G.multiply(g_inv, z)));
      if (nearest == 0) break;
    }
    if (nearest > out.sup_distance) {
      out.sup_distance = nearest;
      out.witness = g;
    }
  }
  out.radius = Rational(out.sup_distance + 1);
  return out;
}

}  // namespace topocouple
