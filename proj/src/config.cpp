#include "topocouple/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace topocouple {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <class T>
T to_number(std::string_view key, std::string_view v) {
  T out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size()) {
    throw Error("config", "bad value '" + std::string(v) + "' for " + std::string(key));
  }
  return out;
}

}  // namespace

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  const std::string v(value);
  if (key == "H") cfg.group_h = v;
  else if (key == "G") cfg.group_g = v;
  else if (key == "map") cfg.map = v;
  else if (key == "rH") cfg.radius_h = to_number<std::int64_t>(key, value);
  else if (key == "rG") cfg.radius_g = to_number<std::int64_t>(key, value);
  else if (key == "eval") cfg.eval_radius = to_number<std::int64_t>(key, value);
  else if (key == "s") {
    try {
      cfg.scale = Rational::parse(value);
    } catch (const std::exception&) {
      throw Error("config", "bad scale '" + v + "'");
    }
    if (*cfg.scale < Rational(1)) throw Error("config", "scale must be >= 1");
  } else if (key == "seed") cfg.seed = to_number<std::uint64_t>(key, value);
  else if (key == "checks") {
    cfg.checks.clear();
    if (value != "all") {
      std::string_view rest = value;
      while (!rest.empty()) {
        const auto comma = rest.find(',');
        const auto item = trim(rest.substr(0, comma));
        if (!item.empty()) cfg.checks.emplace_back(item);
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
      }
    }
  } else if (key == "output") cfg.output = v;
  else if (key == "epsilon") {
    try {
      cfg.epsilon = Rational::parse(value);
    } catch (const std::exception&) {
      throw Error("config", "bad epsilon '" + v + "'");
    }
    if (cfg.epsilon <= Rational(0)) throw Error("config", "epsilon must be positive");
  } else if (key == "orbit_rG") cfg.orbit_radius_g = to_number<std::int64_t>(key, value);
  else if (key == "core") cfg.core_radius = to_number<std::int64_t>(key, value);
  else if (key == "m_offset") cfg.m_offset = to_number<std::int64_t>(key, value);
  else if (key == "moduli") {
    if (v != "auto" && v != "window" && v != "analytic") throw Error("config", "moduli must be auto, window or analytic");
    cfg.moduli = v;
  } else if (key == "sample_cap") cfg.sample_cap = to_number<std::size_t>(key, value);
  else if (key == "budget") cfg.window_budget = to_number<std::size_t>(key, value);
  else if (key == "packing_nodes") cfg.packing.node_budget = to_number<std::uint64_t>(key, value);
  else throw Error("config", "unknown key '" + std::string(key) + "'");

  if ((key == "rH" && cfg.radius_h <= 0) || (key == "rG" && cfg.radius_g <= 0)) {
    throw Error("config", "radii must be positive");
  }
  if (key == "eval" && *cfg.eval_radius < 0) throw Error("config", "eval radius must be nonnegative");
}

RunConfig parse_config_text(std::string_view text, RunConfig base) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view l = line;
    if (const auto hash = l.find('#'); hash != std::string_view::npos) l = l.substr(0, hash);
    l = trim(l);
    if (l.empty()) continue;
    const auto eq = l.find('=');
    if (eq == std::string_view::npos) throw Error("config", "line " + std::to_string(line_no) + ": expected key = value");
    try {
      apply_setting(base, l.substr(0, eq), l.substr(eq + 1));
    } catch (const Error& e) {
      throw Error("config", "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return base;
}

RunConfig parse_config_file(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw Error("config", "cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), std::move(base));
}

std::string format_config(const RunConfig& cfg) {
  std::ostringstream out;
  out << "H = " << cfg.group_h << "\n"
      << "G = " << cfg.group_g << "\n"
      << "map = " << cfg.map << "\n"
      << "rH = " << cfg.radius_h << "\n"
      << "rG = " << cfg.radius_g << "\n";
  if (cfg.eval_radius) out << "eval = " << *cfg.eval_radius << "\n";
  if (cfg.scale) out << "s = " << cfg.scale->str() << "\n";
  out << "seed = " << cfg.seed << "\n";
  out << "checks = ";
  if (cfg.checks.empty()) out << "all";
  for (std::size_t i = 0; i < cfg.checks.size(); ++i) out << (i ? "," : "") << cfg.checks[i];
  out << "\n";
  if (!cfg.output.empty()) out << "output = " << cfg.output << "\n";
  out << "epsilon = " << cfg.epsilon.str() << "\n";
  if (cfg.orbit_radius_g) out << "orbit_rG = " << *cfg.orbit_radius_g << "\n";
  if (cfg.core_radius) out << "core = " << *cfg.core_radius << "\n";
  out << "m_offset = " << cfg.m_offset << "\n"
      << "moduli = " << cfg.moduli << "\n"
      << "sample_cap = " << cfg.sample_cap << "\n"
      << "budget = " << cfg.window_budget << "\n"
      << "packing_nodes = " << cfg.packing.node_budget << "\n";
  return out.str();
}

}  // namespace topocouple
