#include "linfty/bracket_system.hpp"
#include "linfty/document.hpp"
#include "linfty/errors.hpp"
#include "linfty/examples.hpp"
#include "linfty/series.hpp"
#include "linfty/superspace.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace linfty;

// Rationals cross the boundary as "num/den" strings.
namespace {

std::vector<std::string> strings_of(const Series& s) { return s.to_strings(); }

std::vector<std::size_t> indices_of(const GradedSpace& space, const std::vector<std::string>& names) {
  std::vector<std::size_t> out;
  for (const auto& n : names) out.push_back(space.index_of(n));
  return out;
}

py::dict element_dict(const Element& e, const GradedSpace& space) {
  py::dict d;
  for (const auto& [i, c] : e.terms()) d[py::str(space.generator(i).name)] = format_rational(c);
  return d;
}

py::list names_list(const GradedSpace& space, const BracketKey& key) {
  py::list l;
  for (auto i : key) l.append(space.generator(i).name);
  return l;
}

py::dict jacobi_dict(const JacobiReport& report) {
  py::list arities;
  for (const auto& a : report.arities) {
    py::dict entry;
    entry["arity"] = a.arity;
    entry["tuples"] = a.tuples_checked;
    entry["passed"] = a.passed();
    if (a.counterexample) {
      entry["inputs"] = names_list(*report.space, a.counterexample->inputs);
      entry["defect"] = element_dict(a.counterexample->defect, *report.space);
    }
    arities.append(entry);
  }
  py::dict d;
  d["passed"] = report.passed();
  d["arities"] = arities;
  return d;
}

py::dict delta_squared_dict(const DeltaSquaredReport& r) {
  py::dict d;
  d["passed"] = r.passed();
  d["monomials"] = r.monomials_checked;
  if (r.witness) d["witness"] = r.witness->to_string();
  if (r.residue) d["residue"] = r.residue->to_string();
  return d;
}

py::dict example_dict(ExampleSystems ex) {
  py::dict d;
  d["v"] = std::move(ex.v);
  d["w"] = std::move(ex.w);
  d["delta"] = ex.delta ? py::cast(std::move(*ex.delta)) : py::none();
  return d;
}

}  // namespace

PYBIND11_MODULE(_linfty, m) {
  m.doc() = "Exact verification of finite-dimensional L-infinity algebras";

  py::register_exception<ConsistencyError>(m, "ConsistencyError", PyExc_ArithmeticError);
  py::register_exception<TruncationError>(m, "TruncationError", PyExc_ArithmeticError);

  py::enum_<Symmetry>(m, "Symmetry").value("skew", Symmetry::skew).value("symmetric", Symmetry::symmetric);

  py::class_<BracketSystem>(m, "BracketSystem")
      .def_property_readonly("symmetry", &BracketSystem::symmetry)
      .def_property_readonly("max_arity", &BracketSystem::max_arity)
      .def_property_readonly("generators",
                             [](const BracketSystem& s) {
                               std::vector<std::pair<std::string, int>> out;
                               for (const auto& g : s.space().generators()) out.emplace_back(g.name, g.degree);
                               return out;
                             })
      .def("entry_count", &BracketSystem::entry_count)
      .def(
          "eval",
          [](const BracketSystem& s, const std::vector<std::string>& names) {
            const auto idx = indices_of(s.space(), names);
            return element_dict(s.eval(std::span<const std::size_t>(idx)), s.space());
          },
          py::arg("inputs"))
      .def(
          "set",
          [](BracketSystem& s, const std::vector<std::string>& names, const std::map<std::string, std::string>& value) {
            Element e;
            for (const auto& [gen, c] : value) e.add_term(s.space().index_of(gen), parse_rational(c));
            s.set_by_name(names, e);
          },
          py::arg("inputs"), py::arg("value"))
      .def("__eq__", &BracketSystem::operator==);

  py::class_<DeltaSpec>(m, "DeltaSpec")
      .def_property_readonly("bosons", &DeltaSpec::bosons)
      .def_property_readonly("order", &DeltaSpec::order)
      .def_property_readonly("selection_rule", &DeltaSpec::selection_rule);

  m.def("example1", [](std::size_t max_arity, std::size_t order) { return example_dict(example1_system(max_arity, order)); },
        py::arg("max_arity") = 8, py::arg("order") = 32);
  m.def(
      "example2",
      [](std::size_t dim0, std::size_t dim1, std::size_t max_arity, std::size_t order) {
        return example_dict(example2_system(dim0, dim1, dim1, max_arity, order));
      },
      py::arg("dim0") = 3, py::arg("dim1") = 3, py::arg("max_arity") = 8, py::arg("order") = 32);
  m.def(
      "one_boson_delta",
      [](const std::vector<std::string>& f1, const std::vector<std::string>& f2, const std::vector<std::string>& g1,
         const std::vector<std::string>& g2) {
        return DeltaSpec::one_boson(Series::from_strings(f1), Series::from_strings(f2), Series::from_strings(g1),
                                    Series::from_strings(g2));
      },
      py::arg("f1"), py::arg("f2"), py::arg("g1"), py::arg("g2"));

  m.def("verify_jacobi", [](const BracketSystem& s, std::size_t n) { return jacobi_dict(verify_jacobi(s, n)); },
        py::arg("system"), py::arg("n_max"));
  m.def(
      "jacobi_defect",
      [](const BracketSystem& s, const std::vector<std::string>& names) {
        const auto idx = indices_of(s.space(), names);
        return element_dict(jacobi_defect(s, std::span<const std::size_t>(idx)), s.space());
      },
      py::arg("system"), py::arg("inputs"));
  m.def(
      "desuspend",
      [](const BracketSystem& s, std::optional<std::vector<std::string>> names) { return desuspend_system(s, names); },
      py::arg("system"), py::arg("names") = py::none());
  m.def(
      "suspend",
      [](const BracketSystem& s, std::optional<std::vector<std::string>> names) { return suspend_system(s, names); },
      py::arg("system"), py::arg("names") = py::none());
  m.def("first_difference", &first_difference, py::arg("a"), py::arg("b"), py::arg("max_arity"));

  m.def("brackets_from_delta", &brackets_from_delta, py::arg("delta"), py::arg("max_arity"));
  m.def("delta_from_brackets", &delta_from_brackets, py::arg("system"), py::arg("order") = py::none());
  m.def(
      "delta_squared_check",
      [](const DeltaSpec& d, unsigned degree) { return delta_squared_dict(delta_squared_check(d, degree)); },
      py::arg("delta"), py::arg("degree_bound"));
  m.def(
      "nilpotency_holds",
      [](const DeltaSpec& d, std::optional<std::size_t> order) { return nilpotency_conditions(d, order).all_zero(); },
      py::arg("delta"), py::arg("order") = py::none());

  m.def("c1_closed", [](long n) { return format_rational(c1_closed(n)); }, py::arg("n"));
  m.def("c1_recursive", [](long n) { return format_rational(c1_recursive(n)); }, py::arg("n"));
  m.def("c2_daily", [](long n) { return format_rational(c2_daily(n)); }, py::arg("n"));
  m.def("b_closed", [](long n) { return format_rational(b_closed(n)); }, py::arg("m"));
  m.def("lambert_w_series", [](std::size_t order) { return strings_of(lambert_w_series(order)); }, py::arg("order"));
  m.def("g_series", [](std::size_t order) { return strings_of(g_series(order)); }, py::arg("order"));
  m.def(
      "nilcheck_one_boson",
      [](const std::vector<std::string>& f1, const std::vector<std::string>& f2, const std::vector<std::string>& g1,
         const std::vector<std::string>& g2) {
        return strings_of(nilcheck_one_boson(Series::from_strings(f1), Series::from_strings(f2),
                                             Series::from_strings(g1), Series::from_strings(g2)));
      },
      py::arg("f1"), py::arg("f2"), py::arg("g1"), py::arg("g2"));

  m.def(
      "parse_document",
      [](const std::string& text) {
        auto doc = parse_document(text);
        return py::make_tuple(doc.brackets ? py::cast(std::move(*doc.brackets)) : py::none(),
                              doc.delta ? py::cast(std::move(*doc.delta)) : py::none());
      },
      py::arg("text"));
  m.def(
      "dump_document",
      [](std::optional<BracketSystem> brackets, std::optional<DeltaSpec> delta) {
        return dump_document(SystemDocument{std::move(brackets), std::move(delta)});
      },
      py::arg("brackets") = py::none(), py::arg("delta") = py::none());
}
