// Copyright 2026 The pamon Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pamon/compiler/purpose.hpp"
#include "pamon/ltlf/parser.hpp"
#include "pamon/monitor/monitor.hpp"
#include "pamon/policy/trace_io.hpp"
#include "pamon/wsp/wsp.hpp"

namespace py = pybind11;
using namespace pamon;

namespace {

Request to_request(const py::tuple& t) {
  if (t.size() != 5) throw py::value_error("a request is (wid, subject, task, owner, purpose)");
  return {t[0].cast<std::string>(), t[1].cast<std::string>(), t[2].cast<std::string>(), t[3].cast<std::string>(),
          t[4].cast<std::string>()};
}

py::tuple from_request(const Request& r) { return py::make_tuple(r.wid, r.subject, r.task, r.owner, r.purpose); }

py::list from_trace(const std::vector<Request>& rs) {
  py::list out;
  for (const auto& r : rs) out.append(from_request(r));
  return out;
}

}  // namespace

PYBIND11_MODULE(_pamon, m) {
  m.doc() = "Purpose-aware access control monitor";

  py::register_exception<Error>(m, "PamonError");

  m.def("parse", [](const std::string& text) { return to_string(ltlf::parse(text)); },
        "Parse an LTLf formula and return it in canonical form");
  m.def(
      "evaluate",
      [](const std::string& formula, const std::vector<std::set<std::string>>& trace) {
        return !trace.empty() && ltlf::evaluate(ltlf::parse(formula), ltlf::PropTrace(trace), 0);
      },
      py::arg("formula"), py::arg("trace"));
  m.def(
      "sub_purpose",
      [](const std::string& f1, const std::string& f2) { return sub_purpose(ltlf::parse(f1), ltlf::parse(f2)); },
      py::arg("of"), py::arg("within"));

  py::class_<Policy>(m, "Policy")
      .def_static("load", &load_policy_file, py::arg("path"), py::arg("workflow_dir") = "")
      .def_property_readonly("subjects", &Policy::subjects)
      .def_property_readonly("tasks", &Policy::tasks)
      .def_property_readonly("purposes", &Policy::purposes)
      .def("__str__", &print_policy);

  m.def(
      "achievable",
      [](const Policy& p, const std::string& purpose, const std::string& wid) {
        const auto r = purpose_achievable(p, purpose, wid);
        py::dict out;
        out["achievable"] = r.achievable;
        out["witness"] = r.witness ? py::object(from_trace(*r.witness)) : py::none();
        out["substitution"] = r.substitution ? py::cast(*r.substitution) : py::none();
        out["substitutions_tried"] = r.stats.substitutions_tried;
        out["states_explored"] = r.stats.states_explored;
        return out;
      },
      py::arg("policy"), py::arg("purpose"), py::arg("wid") = "wid");

  m.def(
      "to_dot",
      [](const Policy& p, const std::string& purpose, const std::string& stage) {
        if (!p.has_purpose(purpose)) throw UnknownEntityError("purpose", purpose);
        SymbolicAutomaton a = build_pre_automaton(build_purpose_formula(p, purpose));
        if (stage == "specialized") {
          a = specialize(a, p);
        } else if (stage != "pre") {
          throw py::value_error("stage must be 'pre' or 'specialized'");
        }
        return to_dot(a);
      },
      py::arg("policy"), py::arg("purpose"), py::arg("stage") = "pre");

  py::class_<MonitorState>(m, "Monitor")
      .def(py::init([](const Policy& p, const std::string& purpose, const std::string& wid, std::size_t cap) {
             return init_instance(make_snapshot(p, 1, cap), purpose, wid);
           }),
           py::arg("policy"), py::arg("purpose"), py::arg("wid") = "wid", py::arg("grounding_cap") = kDefaultGroundingCap)
      .def(
          "step",
          [](MonitorState& s, const py::tuple& r) {
            const auto res = step(s, to_request(r));
            return py::make_tuple(to_string(res.decision), to_string(res.verdict), res.coarse);
          },
          "Decide (wid, subject, task, owner, purpose); returns (decision, verdict, coarse)")
      .def("close", [](MonitorState& s) { close_instance(s); })
      .def_property_readonly("verdict", [](const MonitorState& s) { return to_string(s.verdict()); })
      .def_property_readonly("trace", [](const MonitorState& s) { return from_trace(s.trace().requests()); })
      .def_property_readonly("frozen", &MonitorState::frozen);

  m.def("read_trace", [](const std::string& path) { return from_trace(read_trace_file(path)); });
}
