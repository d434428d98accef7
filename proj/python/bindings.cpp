#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "confmodels/catalog.hpp"
#include "confmodels/cohomology.hpp"
#include "confmodels/io.hpp"
#include "confmodels/structure_maps.hpp"

namespace py = pybind11;
using namespace confmodels;

namespace {

using Ctx = std::shared_ptr<const ModelContext>;

// Algebra handle: a catalog spec ("cp(2)", "genus 3") or a path to a JSON description.
Ctx load(const std::string& spec)
{
    if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json")
        return ModelContext::make(std::make_shared<const PDAlgebra>(validate_algebra(read_algebra_file(spec))));
    return ModelContext::make(catalog_get(spec));
}

ModelKind kind_of(const std::string& text)
{
    auto k = parse_model_kind(text);
    if (!k)
        throw py::value_error("unknown model kind '" + text + "'");
    return *k;
}

py::dict betti_dict(const BettiTable& b)
{
    py::dict out;
    for (const auto& [pq, d] : b.entries)
        out[py::make_tuple(pq.first, pq.second)] = d;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Rational models of configuration spaces";

    py::register_exception<CatalogError>(m, "CatalogError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<StructureMapError>(m, "StructureMapError", PyExc_ValueError);

    py::class_<ModelContext, std::shared_ptr<ModelContext>>(m, "Algebra")
        .def_property_readonly("name", [](const ModelContext& c) { return c.algebra().name(); })
        .def_property_readonly("dim", [](const ModelContext& c) { return c.algebra().dim(); })
        .def_property_readonly("formal_dimension", [](const ModelContext& c) { return c.algebra().formal_dimension(); })
        .def_property_readonly("euler_characteristic", [](const ModelContext& c) { return euler_characteristic(c.algebra()); })
        .def_property_readonly("poincare", [](const ModelContext& c) { return algebra_poincare_poly(c.algebra().algebra()).to_string(); })
        .def("canonical_json", [](const ModelContext& c) { return canonical_algebra_json(c.algebra()); });

    m.def(
        "algebra", [](const std::string& spec) { return std::const_pointer_cast<ModelContext>(load(spec)); }, py::arg("spec"),
        "Catalog algebra ('cp(2)', 'genus 3', ...) or a JSON file.");

    m.def("catalog", [] {
        std::vector<std::string> keys;
        for (const auto& e : catalog_entries())
            keys.push_back(e.key);
        return keys;
    });

    m.def(
        "model_size",
        [](const std::shared_ptr<ModelContext>& a, const std::string& kind, int n) { return a->model(kind_of(kind), n)->size(); },
        py::arg("algebra"), py::arg("kind"), py::arg("n"));

    m.def(
        "predicted_dimension", [](const std::string& kind, int dim_h, int n) { return predicted_dimension(kind_of(kind), dim_h, n); },
        py::arg("kind"), py::arg("dim_h"), py::arg("n"));

    m.def(
        "betti",
        [](const std::shared_ptr<ModelContext>& a, const std::string& kind, int n) {
            py::gil_scoped_release release;
            BettiTable b = betti(*a->model(kind_of(kind), n));
            py::gil_scoped_acquire acquire;
            return betti_dict(b);
        },
        py::arg("algebra"), py::arg("kind"), py::arg("n"), "{(p, q): dim H^{p,q}}");

    m.def(
        "poincare",
        [](const std::shared_ptr<ModelContext>& a, const std::string& kind, int n) {
            BettiTable b = betti(*a->model(kind_of(kind), n));
            const BigradedPolynomial p = b.poincare();
            return py::make_tuple(p.to_string(), p.at_s_equals_one().to_string());
        },
        py::arg("algebra"), py::arg("kind"), py::arg("n"), "(P(s,t), P(t)) as strings");

    m.def(
        "betti_json",
        [](const std::shared_ptr<ModelContext>& a, const std::string& kind, int n) {
            return betti_json(betti(*a->model(kind_of(kind), n)), kind, a->algebra().name(), n);
        },
        py::arg("algebra"), py::arg("kind"), py::arg("n"));

    m.def(
        "psi_is_quasi_isomorphism",
        [](const std::shared_ptr<ModelContext>& a, int n) {
            py::gil_scoped_release release;
            return induced_map(psi(a, n)).iso();
        },
        py::arg("algebra"), py::arg("n"));

    m.def(
        "reduce_over_h",
        [](const std::shared_ptr<ModelContext>& a, int n) {
            ReductionReport r = reduce_over_H(a, n);
            py::dict out;
            out["ok"] = r.ok();
            out["j_dim"] = r.j_dim;
            out["quotient_dim"] = r.quotient_dim;
            out["target_dim"] = r.target_dim;
            out["findings"] = r.findings;
            return out;
        },
        py::arg("algebra"), py::arg("n"));

    m.def(
        "column_acyclicity", [](const std::shared_ptr<ModelContext>& a, int n) { return column_acyclicity(a, n).ok(); }, py::arg("algebra"),
        py::arg("n"));

    m.def(
        "verify",
        [](const std::string& suite, const std::shared_ptr<ModelContext>& a, int n_max, const std::shared_ptr<ModelContext>& b) {
            SuiteReport r;
            if (suite == "sigma")
                r = sigma_suite(a, n_max);
            else if (suite == "simplicial")
                r = simplicial_suite(a, n_max);
            else if (suite == "closed-faces")
                r = closed_face_controls(a, n_max);
            else if (suite == "coaction")
                r = coaction_suite(a, n_max);
            else if (suite == "connected-sum")
                r = connected_sum_suite(a, b ? b : a, n_max);
            else
                throw py::value_error("unknown suite '" + suite + "'");
            return r.to_json();
        },
        py::arg("suite"), py::arg("algebra"), py::arg("n_max") = 3, py::arg("second") = nullptr, "Report as a JSON array of checks.");
}
