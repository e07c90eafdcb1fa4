#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bigalois/commands.hpp"

namespace py = pybind11;
using namespace bigalois;

namespace {

CommandOptions options(int degree, int bound, int tower_cap) {
  CommandOptions o;
  o.degree = degree;
  o.bound = bound;
  o.tower_cap = tower_cap;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Certificates for B(E,F) and SL_q(2) fusion rules";

  m.def(
      "present",
      [](const std::string& e, int tower_cap) {
        py::gil_scoped_release release;
        return cmd_present({"E", e}, options(3, 4, tower_cap));
      },
      py::arg("e"), py::arg("tower_cap") = 4);
  m.def(
      "bigalois",
      [](const std::string& e, const std::string& f, int degree, int bound, int tower_cap) {
        py::gil_scoped_release release;
        return cmd_bigalois({"E", e}, {"F", f}, options(degree, bound, tower_cap));
      },
      py::arg("e"), py::arg("f"), py::arg("degree") = 3, py::arg("bound") = 4,
      py::arg("tower_cap") = 4);
  m.def("fusion", &cmd_fusion, py::arg("regime"), py::arg("k"), py::arg("l"));
  m.def(
      "verify",
      [](const std::string& kind, const std::vector<std::string>& texts, int tower_cap) {
        std::vector<InputFile> files;
        for (std::size_t i = 0; i < texts.size(); ++i) {
          files.push_back({"input" + std::to_string(i + 1), texts[i]});
        }
        py::gil_scoped_release release;
        return cmd_verify(kind, files, options(3, 4, tower_cap));
      },
      py::arg("kind"), py::arg("texts"), py::arg("tower_cap") = 4);

  py::class_<Report>(m, "Report")
      .def_readonly("exit_code", &Report::exit_code)
      .def("json", &Report::json)
      .def("text", &Report::text)
      .def("data_json", [](const Report& r) { return r.data.dump(); });
}
