// Command-line front end: window statistics, moduli tables, nets, packing
// numbers, psi densities and full certificates.

#include <chrono>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "topocouple/config.hpp"
#include "topocouple/report.hpp"

namespace tc = topocouple;

namespace {

/// Flag values collected per subcommand and applied over the config file.
struct Settings {
  std::string config_file;
  std::map<std::string, std::string> flags;

  tc::RunConfig resolve() const {
    tc::RunConfig cfg;
    if (!config_file.empty()) cfg = tc::parse_config_file(config_file);
    for (const auto& [k, v] : flags) tc::apply_setting(cfg, k, v);
    return cfg;
  }
};

void add_run_flags(CLI::App* sub, Settings& s, std::initializer_list<const char*> keys) {
  sub->add_option("--config", s.config_file, "key = value config file; flags override it");
  for (const char* key : keys) {
    sub->add_option_function<std::string>(std::string("--") + key, [&s, key](const std::string& v) { s.flags[key] = v; },
                                          std::string("config key ") + key);
  }
}

const std::initializer_list<const char*> kAllKeys = {"H",      "G",       "map",  "rH",      "rG",       "eval",
                                                     "s",      "seed",    "checks", "output", "epsilon", "orbit_rG",
                                                     "core",   "m_offset", "moduli", "sample_cap", "budget",
                                                     "packing_nodes"};

int cmd_ball(const Settings& s, bool list) {
  const auto cfg = s.resolve();
  const auto w = tc::build_window(tc::make_group(cfg.group_h), cfg.radius_h, cfg.window_budget);
  std::cout << "group " << w.model().name() << "\nradius " << w.radius() << "\nsize " << w.size() << "\n";
  for (std::int64_t r = 0; r <= w.radius(); ++r) std::cout << "ball " << r << " " << w.ball_size(r) << "\n";
  if (list) {
    for (std::size_t i = 0; i < w.size(); ++i) std::cout << w.model().format(w.elements()[i]) << " " << w.lengths()[i] << "\n";
  }
  return 0;
}

int cmd_moduli(const Settings& s, std::optional<std::int64_t> t_max) {
  const auto cfg = s.resolve();
  const auto h = tc::make_group(cfg.group_h);
  const auto g = tc::make_group(cfg.group_g);
  const auto wh = tc::build_window(h, cfg.radius_h, cfg.window_budget);
  const auto wg = tc::build_window(g, cfg.radius_g, cfg.window_budget);
  const auto phi = tc::make_map(cfg.map, h, g);
  const auto m = tc::estimate_moduli(phi, wh, wg, t_max.value_or(2 * cfg.radius_h));
  std::cout << "# t kappa omega\n";
  for (std::int64_t t = 0; t <= m.t_max; ++t) {
    std::cout << t << " " << (m.kappa[t] ? std::to_string(*m.kappa[t]) : std::string("-")) << " " << m.omega[t] << "\n";
  }
  return 0;
}

int cmd_net(const Settings& s) {
  const auto cfg = s.resolve();
  if (!cfg.scale) throw tc::Error("config", "net needs --s");
  const auto w = tc::build_window(tc::make_group(cfg.group_h), cfg.radius_h, cfg.window_budget);
  const auto net = tc::greedy_net(w, *cfg.scale);
  std::cout << "# " << net.points.size() << " points, s = " << net.scale.str() << "\n";
  for (const auto& y : net.points) std::cout << w.model().format(y) << "\n";
  return 0;
}

int cmd_packing(const Settings& s, const std::string& sep, const std::string& diam) {
  const auto cfg = s.resolve();
  const auto w = tc::build_window(tc::make_group(cfg.group_g), cfg.radius_g, cfg.window_budget);
  const auto r = tc::packing_number(w, tc::Rational::parse(sep), tc::Rational::parse(diam), cfg.packing);
  std::cout << "M " << r.value << "\nexact " << (r.exact ? "true" : "false") << "\nlower_bound " << r.lower_bound
            << "\nvolume_bound " << r.volume_bound << "\nnodes " << r.nodes << "\n";
  return 0;
}

int cmd_psi(const Settings& s, const std::string& h_text) {
  const auto cfg = s.resolve();
  tc::PipelineState st;
  tc::prepare_pipeline(cfg, st);
  const auto h = st.h->parse(h_text);
  st.h->validate(h);
  std::cout << "# psi_h for h = " << st.h->format(h) << ", s = " << st.s.str() << ", |B| = " << st.w_g->ball_size(1) << "\n";
  std::cout << tc::serialize(tc::psi(*st.partition, h));
  return 0;
}

int cmd_certify(const Settings& s) {
  const auto cfg = s.resolve();
  const auto cert = tc::run_all(cfg);
  tc::emit_report(cert, cfg.output.empty() ? std::filesystem::path("-") : std::filesystem::path(cfg.output));
  return tc::exit_code(cert);
}

int cmd_demo() {
  struct Row {
    const char* label;
    tc::RunConfig cfg;
  };
  std::vector<Row> rows;
  {
    tc::RunConfig c;
    c.group_h = c.group_g = "Z^1";
    c.map = "identity";
    c.radius_h = 24;
    c.radius_g = 40;
    c.eval_radius = 8;
    c.seed = 7;
    rows.push_back({"Z -> Z identity", c});
  }
  {
    tc::RunConfig c;
    c.group_h = c.group_g = "Z^1";
    c.map = "scale:2";
    c.radius_h = 16;
    c.radius_g = 40;
    rows.push_back({"Z -> Z scale:2", c});
  }
  {
    tc::RunConfig c;
    c.group_h = c.group_g = "Z^2";
    c.map = "matrix:1,1;0,1";
    c.radius_h = 10;
    c.radius_g = 30;
    rows.push_back({"Z^2 -> Z^2 matrix:1,1;0,1", c});
  }
  int code = 0;
  std::cout << std::left << std::setw(28) << "config" << std::setw(6) << "s" << std::setw(8) << "M" << std::setw(7) << "pass"
            << std::setw(7) << "fail" << std::setw(9) << "vacuous" << "seconds\n";
  for (auto& row : rows) {
    const auto start = std::chrono::steady_clock::now();
    const auto cert = tc::run_all(row.cfg);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    int pass = 0, fail = 0, vac = 0;
    for (const auto& c : cert.checks) {
      pass += c.status == tc::Status::kPass;
      fail += c.status == tc::Status::kFail;
      vac += c.status == tc::Status::kVacuous;
    }
    std::string s_text, m_text;
    for (const auto& [k, v] : cert.constants) {
      if (k == "s") s_text = std::get<std::string>(v);
      if (k == "M") m_text = std::to_string(std::get<std::int64_t>(v));
    }
    std::cout << std::setw(28) << row.label << std::setw(6) << s_text << std::setw(8) << m_text << std::setw(7) << pass
              << std::setw(7) << fail << std::setw(9) << vac << std::fixed << std::setprecision(2) << secs << "\n";
    code = std::max(code, tc::exit_code(cert));
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"topocouple: coarse equivalences, partitions of unity and coupling certificates"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);

  Settings ball_s, moduli_s, net_s, packing_s, psi_s, certify_s;
  bool list = false;
  std::optional<std::int64_t> t_max;
  std::string sep = "3", diam = "0", h_text = "e";

  auto* ball = app.add_subcommand("ball", "Window statistics for the H group");
  add_run_flags(ball, ball_s, {"H", "rH", "budget"});
  ball->add_flag("--list", list, "Print every element with its word length");

  auto* moduli = app.add_subcommand("moduli", "Window-estimated kappa/omega tables");
  add_run_flags(moduli, moduli_s, {"H", "G", "map", "rH", "rG", "budget"});
  moduli->add_option("--tmax", t_max, "Largest tabulated t (default 2 rH)");

  auto* net = app.add_subcommand("net", "Greedy maximal s-discrete net of the H window");
  add_run_flags(net, net_s, {"H", "rH", "s", "budget"});

  auto* packing = app.add_subcommand("packing", "Packing number M in the G window");
  add_run_flags(packing, packing_s, {"G", "rG", "budget", "packing_nodes"});
  packing->add_option("--sep", sep, "Separation (default 3)");
  packing->add_option("--diam", diam, "Diameter bound")->required();

  auto* psi = app.add_subcommand("psi", "Serialize psi_h");
  add_run_flags(psi, psi_s, kAllKeys);
  psi->add_option("--h", h_text, "Element of H in its text syntax")->required();

  auto* certify = app.add_subcommand("certify", "Run every check and write the report");
  add_run_flags(certify, certify_s, kAllKeys);

  auto* demo = app.add_subcommand("demo", "Run the built-in configurations and print a summary");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ball) return cmd_ball(ball_s, list);
    if (*moduli) return cmd_moduli(moduli_s, t_max);
    if (*net) return cmd_net(net_s);
    if (*packing) return cmd_packing(packing_s, sep, diam);
    if (*psi) return cmd_psi(psi_s, h_text);
    if (*certify) return cmd_certify(certify_s);
    if (*demo) return cmd_demo();
  } catch (const tc::Error& e) {
    std::cerr << "error " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error " << e.what() << "\n";
    return 2;
  }
  return 2;
}
