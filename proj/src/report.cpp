#include "topocouple/report.hpp"

#include <fstream>
#include <iostream>

#include "json.hpp"

namespace topocouple {
namespace {

nlohmann::json to_json(const MetaValue& v) {
  return std::visit([](const auto& x) { return nlohmann::json(x); }, v);
}

}  // namespace

std::string render_report(const Certificate& cert) {
  nlohmann::json doc;
  nlohmann::json constants = nlohmann::json::object();
  for (const auto& [k, v] : cert.constants) constants[k] = to_json(v);
  nlohmann::json meta = nlohmann::json::object();
  for (const auto& [k, v] : cert.window_metadata) meta[k] = to_json(v);
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : cert.checks) {
    nlohmann::json details = nlohmann::json::object();
    for (const auto& [k, v] : c.details) details[k] = v;
    checks.push_back({{"name", c.name},
                      {"status", std::string(to_string(c.status))},
                      {"witness", c.witness},
                      {"margin", c.margin.str()},
                      {"population", c.population},
                      {"details", details}});
  }
  doc["constants"] = constants;
  doc["checks"] = checks;
  doc["window_metadata"] = meta;
  return doc.dump(2) + "\n";
}

void emit_report(const Certificate& cert, const std::filesystem::path& path) {
  const auto text = render_report(cert);
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("report", "cannot write report to " + path.string());
  out << text;
  if (!out) throw Error("report", "failed writing report to " + path.string());
}

int exit_code(const Certificate& cert) { return cert.any_failed() ? 1 : 0; }

}  // namespace topocouple
