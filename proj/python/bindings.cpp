#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "topocouple/config.hpp"
#include "topocouple/report.hpp"

namespace py = pybind11;
namespace tc = topocouple;

namespace {

tc::RunConfig config_from(const py::dict& settings) {
  tc::RunConfig cfg;
  for (const auto& [k, v] : settings) tc::apply_setting(cfg, py::str(k).cast<std::string>(), py::str(v).cast<std::string>());
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_topocouple, m) {
  m.doc() = "Exact coarse-equivalence certificates";

  py::register_exception<tc::Error>(m, "TopocoupleError", PyExc_RuntimeError);

  py::class_<tc::GroupModel, std::shared_ptr<tc::GroupModel>>(m, "Group")
      .def_property_readonly("name", &tc::GroupModel::name)
      .def("identity", [](const tc::GroupModel& g) { return g.format(g.identity()); })
      .def("generators",
           [](const tc::GroupModel& g) {
             std::vector<std::string> out;
             for (const auto& e : g.generators()) out.push_back(g.format(e));
             return out;
           })
      .def("multiply",
           [](const tc::GroupModel& g, const std::string& a, const std::string& b) {
             return g.format(tc::multiply(g, g.parse(a), g.parse(b)));
           })
      .def("inverse", [](const tc::GroupModel& g, const std::string& a) { return g.format(tc::inverse(g, g.parse(a))); })
      .def("normalize", [](const tc::GroupModel& g, const std::string& a) { return g.format(g.parse(a)); });

  m.def(
      "make_group", [](const std::string& d) { return std::const_pointer_cast<tc::GroupModel>(tc::make_group(d)); },
      py::arg("descriptor"));

  m.def(
      "ball_sizes",
      [](const std::string& group, std::int64_t radius) {
        const auto w = tc::build_window(tc::make_group(group), radius);
        std::vector<std::size_t> out;
        for (std::int64_t r = 0; r <= radius; ++r) out.push_back(w.ball_size(r));
        return out;
      },
      py::arg("group"), py::arg("radius"));

  m.def(
      "distance",
      [](const std::string& group, std::int64_t radius, const std::string& a, const std::string& b) {
        const auto w = tc::build_window(tc::make_group(group), radius);
        return w.distance(w.model().parse(a), w.model().parse(b));
      },
      py::arg("group"), py::arg("radius"), py::arg("a"), py::arg("b"));

  m.def(
      "net",
      [](const std::string& group, std::int64_t radius, const std::string& s) {
        const auto w = tc::build_window(tc::make_group(group), radius);
        std::vector<std::string> out;
        for (const auto& y : tc::greedy_net(w, tc::Rational::parse(s)).points) out.push_back(w.model().format(y));
        return out;
      },
      py::arg("group"), py::arg("radius"), py::arg("s"));

  m.def(
      "packing_number",
      [](const std::string& group, std::int64_t radius, const std::string& sep, const std::string& diam) {
        const auto w = tc::build_window(tc::make_group(group), radius);
        const auto r = tc::packing_number(w, tc::Rational::parse(sep), tc::Rational::parse(diam));
        return py::make_tuple(r.value, r.exact);
      },
      py::arg("group"), py::arg("radius"), py::arg("sep"), py::arg("diam"));

  m.def(
      "moduli",
      [](const std::string& h, const std::string& g, const std::string& map, std::int64_t r_h, std::int64_t r_g) {
        const auto gh = tc::make_group(h);
        const auto gg = tc::make_group(g);
        const auto wh = tc::build_window(gh, r_h);
        const auto wg = tc::build_window(gg, r_g);
        const auto mod = tc::estimate_moduli(tc::make_map(map, gh, gg), wh, wg, 2 * r_h);
        return py::make_tuple(mod.kappa, mod.omega);
      },
      py::arg("H"), py::arg("G"), py::arg("map"), py::arg("rH"), py::arg("rG"));

  m.def(
      "psi",
      [](const py::dict& settings, const std::string& h) {
        tc::PipelineState st;
        tc::prepare_pipeline(config_from(settings), st);
        return tc::serialize(tc::psi(*st.partition, st.h->parse(h)));
      },
      py::arg("settings"), py::arg("h"));

  m.def(
      "certify",
      [](const py::dict& settings) {
        const auto cert = tc::run_all(config_from(settings));
        return py::make_tuple(tc::render_report(cert), tc::exit_code(cert));
      },
      py::arg("settings"),
      "Runs every check; returns (report_json, exit_code). Settings use the config-file keys.");

  m.def(
      "certify_config",
      [](const std::string& text) {
        const auto cert = tc::run_all(tc::parse_config_text(text));
        return py::make_tuple(tc::render_report(cert), tc::exit_code(cert));
      },
      py::arg("text"));
}
