#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sharpset/cases.hpp"
#include "sharpset/cli.hpp"
#include "sharpset/closedform.hpp"

namespace py = pybind11;
using namespace sharpset;

namespace {

// Everything crosses the boundary as JSON text so rationals stay exact
// ("num/den" strings) and the Python side mirrors the CLI report schema.

std::string run_json(const std::string& config) {
  py::gil_scoped_release release;
  return to_json(run(config_from_json(json::parse(config)))).dump();
}

std::string cases_json(const std::string& family, int D, int T, int y0, int y_minus1, const std::string& symmetry) {
  const CaseFamily fam = case_family(parse_family(family), D, T, y0, y_minus1);
  json out = json::array();
  for (const auto& c : enumerate_cases(fam, parse_symmetry(symmetry))) {
    json rep = json::object();
    for (std::size_t p = 0; p < fam.params.size(); ++p) rep[fam.params[p]] = to_json(c.representative[p]);
    out.push_back({{"ordering", c.text}, {"representative", rep}, {"model", to_json(c.spec)}});
  }
  return out.dump();
}

std::string reduce_json(const std::string& vectors) {
  const IneqSet r = eliminate_redundant(as_ineqs(vecs_from_json(json::parse(vectors)), "python"));
  return to_json(r.ys()).dump();
}

std::string render_json(const std::string& y, const std::vector<std::string>& labels) {
  return render_inequality(vec_from_json(json::parse(y)), labels);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact sharp moment inequalities for panel discrete choice models";
  m.attr("__version__") = kVersion;

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<GateRefusal>(m, "GateRefusal", PyExc_RuntimeError);

  m.def("run_json", &run_json, py::arg("config"), "Run the pipeline on a JSON config; returns the JSON report.");
  m.def("cases_json", &cases_json, py::arg("family"), py::arg("D") = 2, py::arg("T") = 2, py::arg("y0") = 0,
        py::arg("y_minus1") = 0, py::arg("symmetry") = "canonical");
  m.def("reduce_json", &reduce_json, py::arg("vectors"));
  m.def("render_json", &render_json, py::arg("y"), py::arg("labels"));
  m.def("outcome_labels", &outcome_labels, py::arg("D"), py::arg("T"));
}
