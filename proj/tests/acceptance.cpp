// Acceptance suite: one line per criterion, exit status 1 if any fails.
// Usage: acceptance [path-to-cli]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "topocouple/config.hpp"
#include "topocouple/report.hpp"

namespace tc = topocouple;

namespace {

/// Collects failed expectations for one criterion.
struct Verdict {
  std::vector<std::string> problems;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }
};

tc::RunConfig config(const std::string& text) { return tc::parse_config_text(text); }

/// Every check either passes with margin >= 0 or is vacuous; vacuous ones
/// are noted. With `strict`, vacuous checks are problems too.
void expect_checks(Verdict& v, const tc::Certificate& cert, bool strict) {
  v.expect(cert.checks.size() == tc::all_check_names().size(), "not every check ran");
  for (const auto& c : cert.checks) {
    if (c.status == tc::Status::kVacuous) {
      v.expect(!strict, c.name + " vacuous");
      v.notes.push_back(c.name + " vacuous");
      continue;
    }
    v.expect(c.status == tc::Status::kPass && c.margin >= tc::Rational(0), c.name + " " + std::string(tc::to_string(c.status)) +
                                                                                 " margin " + c.margin.str() + " at " + c.witness);
  }
}

std::string constant(const tc::Certificate& cert, const std::string& key) {
  for (const auto& [k, v] : cert.constants) {
    if (k != key) continue;
    if (const auto* s = std::get_if<std::string>(&v)) return *s;
    if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
    return std::get<bool>(v) ? "true" : "false";
  }
  return "";
}

void expect_runtime(Verdict& v, double seconds, double limit) {
  std::ostringstream s;
  s.precision(2);
  s << std::fixed << seconds << " s";
  v.notes.push_back(s.str());
  v.expect(seconds < limit, "runtime " + s.str() + " over " + std::to_string(static_cast<int>(limit)) + " s");
}

template <class F>
double timed(F&& f) {
  const auto start = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

const char* kIdentity = "H = Z^1\nG = Z^1\nmap = identity\nrH = 24\nrG = 40\neval = 8\nseed = 7\n";

Verdict criterion_identity() {
  Verdict v;
  tc::PipelineState st;
  tc::Certificate cert;
  const double secs = timed([&] { cert = tc::run_all(config(kIdentity), &st); });
  v.expect(st.s == tc::Rational(3), "s = " + st.s.str());
  const auto& p = *st.partition;
  for (const auto& h : st.w_h->ball(p.inner_radius())) {
    tc::Rational sum;
    for (const auto& [z, a] : p.alpha(h)) sum += a;
    v.expect(sum == tc::Rational(1), "alpha sum " + sum.str() + " at " + st.h->format(h));
    const auto mass = tc::psi(p, h).mass();
    v.expect(mass == tc::Rational(1), "psi mass " + mass.str() + " at " + st.h->format(h));
  }
  expect_checks(v, cert, true);
  expect_runtime(v, secs, 10);
  return v;
}

Verdict criterion_scaling() {
  Verdict v;
  tc::PipelineState st;
  tc::Certificate cert;
  const double secs = timed([&] { cert = tc::run_all(config("map = scale:2\nrH = 16\nrG = 40\n"), &st); });
  for (std::int64_t t = 0; t <= 12; ++t) {
    v.expect(st.window_moduli.kappa[t] == 2 * t, "window kappa(" + std::to_string(t) + ")");
    v.expect(st.window_moduli.omega[t] == 2 * t, "window omega(" + std::to_string(t) + ")");
  }
  v.expect(st.s == tc::Rational(2), "s = " + st.s.str());
  expect_checks(v, cert, true);
  expect_runtime(v, secs, 10);
  return v;
}

Verdict criterion_plane() {
  Verdict v;
  tc::PipelineState st;
  tc::Certificate cert;
  const double secs =
      timed([&] { cert = tc::run_all(config("H = Z^2\nG = Z^2\nmap = matrix:1,1;0,1\nrH = 10\nrG = 30\n"), &st); });
  expect_checks(v, cert, false);
  for (const tc::Moduli* m : std::vector<const tc::Moduli*>{&st.window_moduli, st.used}) {
    for (std::int64_t t = 1; t <= m->t_max; ++t) {
      if (m->kappa[t] && m->kappa[t - 1]) v.expect(*m->kappa[t - 1] <= *m->kappa[t], "kappa decreases at " + std::to_string(t));
      v.expect(m->omega[t - 1] <= m->omega[t], "omega decreases at " + std::to_string(t));
    }
  }
  const auto& p = *st.partition;
  const auto omega = p.omega_s1();
  for (const auto& h : st.w_h->ball(p.inner_radius())) {
    const auto center = st.phi->apply(h);
    for (const auto& [x, w] : tc::psi(p, h).atoms) {
      // Independent l1 distance on Z^2.
      const auto d = std::llabs(x.nf[0] - center.nf[0]) + std::llabs(x.nf[1] - center.nf[1]);
      v.expect(d <= omega + 1, "support escapes ball at h = " + st.h->format(h));
    }
  }
  expect_runtime(v, secs, 60);
  return v;
}

Verdict criterion_free() {
  Verdict v;
  tc::PipelineState st;
  tc::Certificate cert;
  const double secs = timed([&] { cert = tc::run_all(config("H = F_2\nG = F_2\nmap = identity\nrH = 6\nrG = 10\n"), &st); });
  const auto& p = *st.partition;
  const auto& wh = *st.w_h;
  const auto& net = p.net().points;
  const auto s = p.scale();
  for (std::size_t i = 0; i < net.size(); ++i)
    for (std::size_t j = i + 1; j < net.size(); ++j) v.expect(tc::Rational(wh.distance(net[i], net[j])) >= s, "net not s-discrete");
  for (const auto& h : wh.elements()) {
    bool near = false;
    for (const auto& y : net) near = near || tc::Rational(wh.distance(h, y)) < s;
    v.expect(near, "net not s-dense at " + st.h->format(h));
  }
  const auto* lip = cert.find("lipschitz");
  v.expect(lip && lip->status == tc::Status::kPass, "lipschitz did not pass");
  const auto& G = *st.g;
  for (const auto& h : wh.ball(p.inner_radius())) {
    const auto xi = tc::psi(p, h);
    std::set<tc::Element> seen;
    std::size_t total = 0;
    for (const auto& b : xi.blocks) {
      for (const auto& u : st.w_g->ball(1)) {
        seen.insert(G.multiply(b.center, u));
        ++total;
      }
    }
    v.expect(seen.size() == total, "overlapping blocks at h = " + st.h->format(h));
  }
  for (const auto& c : cert.checks) v.expect(c.status != tc::Status::kFail, c.name + " failed");
  expect_runtime(v, secs, 60);
  return v;
}

Verdict criterion_packing_oracle() {
  Verdict v;
  int compared = 0;
  for (const auto& [name, radius] : {std::pair{"Z^1", 30}, std::pair{"Z^2", 12}}) {
    const auto w = tc::build_window(tc::make_group(name), radius);
    for (std::int64_t sep = 1; sep <= 4; ++sep) {
      for (std::int64_t diam = 0; diam <= radius; ++diam) {
        if (w.ball_size(diam) > 25 || diam + sep > 2 * radius) continue;
        std::vector<tc::Element> cand;
        for (const auto& c : w.ball(diam)) {
          if (w.length(c) >= sep) cand.push_back(c);
        }
        std::vector<std::vector<std::int64_t>> dist(cand.size(), std::vector<std::int64_t>(cand.size()));
        for (std::size_t i = 0; i < cand.size(); ++i)
          for (std::size_t j = 0; j < cand.size(); ++j) dist[i][j] = w.distance(cand[i], cand[j]);
        const int expect = 1 + oracle::max_packing_subsets(dist, sep, diam);
        const auto got = tc::packing_number(w, sep, diam);
        v.expect(got.exact && got.value == expect, std::string(name) + " sep " + std::to_string(sep) + " diam " +
                                                      std::to_string(diam) + ": " + std::to_string(got.value) + " vs " +
                                                      std::to_string(expect));
        ++compared;
      }
    }
  }
  v.notes.push_back(std::to_string(compared) + " instances");
  v.expect(compared > 0, "no instances compared");
  return v;
}

Verdict criterion_liveness() {
  Verdict v;
  tc::PipelineState st;
  tc::prepare_pipeline(config(kIdentity), st);
  const auto& p = *st.partition;
  const auto omega = p.omega_s1();
  const auto& wg = *st.w_g;
  const tc::GroupBall k{st.g->identity(), 1};
  std::vector<tc::OrbitPoint> base{tc::orbit_point(st.partition, tc::Element{0}, tc::Element{0}, st.w_h->ball(8))};

  auto expect_fail = [&](const tc::CheckResult& r, const std::string& label) {
    v.expect(r.status == tc::Status::kFail, label + " did not fail");
    if (r.status == tc::Status::kFail) v.notes.push_back(label);
  };
  const std::vector close{tc::block_density(wg, {{tc::Element{0}, {1, 2}}, {tc::Element{2}, {1, 2}}})};
  expect_fail(tc::check_membership_X(close, omega, wg), "membership_X");
  expect_fail(tc::check_lipschitz(p, base, tc::Rational(0)), "lipschitz");
  auto inflated = *st.used;
  for (auto& kv : inflated.kappa) {
    if (kv) *kv += 30;
  }
  expect_fail(tc::check_sandwich(base, inflated, omega), "sandwich");
  const auto proper = tc::check_properness_H(base, *st.used, {k, {1, 2}, 0});
  expect_fail(proper, "properness_H");
  v.expect(proper.witness.find("at h=1") != std::string::npos, "properness_H witness is not h = 1: " + proper.witness);
  expect_fail(tc::check_cocompactness_H(base, *st.used, omega, {st.cobounded.radius, 0, {1, 2}}), "cocompactness_H");
  expect_fail(tc::check_G_action(base, omega, {k, {1, 2}, 0})[0], "g_action_properness");
  return v;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Verdict criterion_determinism(const std::string& cli) {
  Verdict v;
  const auto a = tc::render_report(tc::run_all(config(kIdentity)));
  const auto b = tc::render_report(tc::run_all(config(kIdentity)));
  v.expect(a == b, "in-process reports differ");
  if (!cli.empty()) {
    const auto dir = std::filesystem::temp_directory_path();
    const auto r1 = dir / "topocouple_acceptance_1.json";
    const auto r2 = dir / "topocouple_acceptance_2.json";
    const std::string args = " certify --H Z^1 --G Z^1 --map identity --rH 24 --rG 40 --eval 8 --seed 7 --output ";
    const int c1 = std::system((cli + args + r1.string()).c_str());
    const int c2 = std::system((cli + args + r2.string()).c_str());
    v.expect(c1 == 0 && c2 == 0, "certify exit codes " + std::to_string(c1) + ", " + std::to_string(c2));
    const auto t1 = slurp(r1);
    v.expect(!t1.empty() && t1 == slurp(r2), "CLI reports differ");
    v.expect(t1 == a, "CLI report differs from in-process report");
    std::filesystem::remove(r1);
    std::filesystem::remove(r2);
    v.notes.push_back("CLI and in-process");
  } else {
    v.notes.push_back("in-process only");
  }
  return v;
}

Verdict criterion_monotone_m() {
  Verdict v;
  const auto base = tc::run_all(config(kIdentity));
  auto cfg = config(kIdentity);
  cfg.m_offset = 3;
  const auto bumped = tc::run_all(cfg);
  v.expect(constant(bumped, "M_used") == std::to_string(std::stoll(constant(base, "M")) + 3), "M_used is not M + 3");
  for (const auto& c : base.checks) {
    const auto* after = bumped.find(c.name);
    v.expect(after != nullptr, c.name + " missing");
    if (after && c.status == tc::Status::kPass) v.expect(after->status != tc::Status::kFail, c.name + " flipped to fail");
  }
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"identity pipeline Z -> Z", criterion_identity},
      {"scaling pipeline n -> 2n", criterion_scaling},
      {"2-D pipeline (a,b) -> (a+b,b)", criterion_plane},
      {"nonabelian pipeline F_2 -> F_2", criterion_free},
      {"packing number vs subset oracle", criterion_packing_oracle},
      {"liveness on constructed violations", criterion_liveness},
      {"byte-identical reports", [&] { return criterion_determinism(cli); }},
      {"M + 3 flips no pass to fail", criterion_monotone_m},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.problems.push_back(std::string("exception: ") + e.what());
    }
    const bool ok = v.problems.empty();
    failed += !ok;
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first;
    if (!v.notes.empty()) {
      std::cout << " [";
      for (std::size_t j = 0; j < v.notes.size(); ++j) std::cout << (j ? "; " : "") << v.notes[j];
      std::cout << "]";
    }
    std::cout << "\n";
    for (const auto& p : v.problems) std::cout << "    " << p << "\n";
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
