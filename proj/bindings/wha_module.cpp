#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wha/canonical.hpp"
#include "wha/instances.hpp"
#include "wha/io.hpp"

namespace py = pybind11;

namespace {

py::dict report_dict(const wha::StructureReport& rep) {
    py::dict residuals;
    for (const auto& it : rep.items) residuals[py::str(it.name)] = it.residual;
    py::dict out;
    out["pass"] = rep.pass();
    out["tol"] = rep.tol;
    out["residuals"] = residuals;
    return out;
}

}  // namespace

PYBIND11_MODULE(_wha, m) {
    m.doc() = "numerical toolkit for finite dimensional C*-quantum groupoids";

    py::register_exception<wha::Error>(m, "WhaError");

    py::class_<wha::BlockAlgebra>(m, "BlockAlgebra")
        .def(py::init<std::vector<int>, std::string>(), py::arg("blocks"),
             py::arg("label") = std::string())
        .def_property_readonly("blocks", &wha::BlockAlgebra::blocks)
        .def_property_readonly("label", &wha::BlockAlgebra::label)
        .def_property_readonly("dim", &wha::BlockAlgebra::dim)
        .def("__repr__", [](const wha::BlockAlgebra& a) {
            std::string s = "BlockAlgebra([";
            for (size_t i = 0; i < a.blocks().size(); ++i)
                s += (i ? "," : "") + std::to_string(a.blocks()[i]);
            return s + "])";
        });

    py::class_<wha::AlgElement>(m, "Element")
        .def_static(
            "from_vector",
            [](const wha::BlockAlgebra& a, const wha::Vector& v) {
                return wha::AlgElement::from_vector(a, v);
            },
            py::arg("algebra"), py::arg("vector"))
        .def_static("identity", &wha::AlgElement::identity)
        .def_property_readonly("algebra", &wha::AlgElement::algebra)
        .def_property_readonly("vector", &wha::AlgElement::to_vector)
        .def("__add__", [](const wha::AlgElement& a, const wha::AlgElement& b) { return a + b; })
        .def("__sub__", [](const wha::AlgElement& a, const wha::AlgElement& b) { return a - b; })
        .def("__mul__", [](const wha::AlgElement& a, const wha::AlgElement& b) { return a * b; })
        .def("adjoint", &wha::AlgElement::adjoint)
        .def("norm", &wha::AlgElement::norm);

    m.def("residual",
          [](const wha::AlgElement& a, const wha::AlgElement& b) { return wha::residual(a, b); });

    py::class_<wha::WeakHopf>(m, "WeakHopf")
        .def_property_readonly("algebra", [](const wha::WeakHopf& w) { return w.A; })
        .def_property_readonly("gauge", [](const wha::WeakHopf& w) { return w.gauge; })
        .def_property_readonly("delta_matrix",
                               [](const wha::WeakHopf& w) { return w.delta.matrix(); })
        .def_property_readonly("kappa_matrix",
                               [](const wha::WeakHopf& w) { return w.kappa.matrix(); })
        .def_property_readonly("epsilon_row",
                               [](const wha::WeakHopf& w) { return w.eps.matrix(); });

    m.def("pair_groupoid", &wha::pair_groupoid_wha, py::arg("n"));
    m.def(
        "function_groupoid",
        [](const std::string& kind, int n) {
            wha::FiniteGroupoid g;
            if (kind == "cyclic")
                g = wha::FiniteGroupoid::cyclic_group(n);
            else if (kind == "pair")
                g = wha::FiniteGroupoid::pair_groupoid(n);
            else if (kind == "discrete")
                g = wha::FiniteGroupoid::discrete(n);
            else
                throw wha::InvalidGroupoid("unknown groupoid kind: " + kind);
            return wha::function_algebra_wha(g);
        },
        py::arg("kind"), py::arg("n"));
    m.def(
        "op_tensor",
        [](const std::vector<int>& blocks) {
            return wha::op_tensor_wha(wha::BlockAlgebra(blocks, "base"));
        },
        py::arg("blocks"));

    m.def(
        "check_axioms",
        [](const wha::WeakHopf& w, double tol) { return report_dict(wha::check_axioms(w, tol)); },
        py::arg("w"), py::arg("tol") = 1e-8);

    m.def(
        "cartan_target_blocks",
        [](const wha::WeakHopf& w, uint64_t seed, double tol) {
            return wha::cartan_target(w, seed, tol).recovered.structure.blocks();
        },
        py::arg("w"), py::arg("seed") = 1, py::arg("tol") = 1e-8);
    m.def(
        "cartan_source_blocks",
        [](const wha::WeakHopf& w, uint64_t seed, double tol) {
            return wha::cartan_source(w, seed, tol).recovered.structure.blocks();
        },
        py::arg("w"), py::arg("seed") = 1, py::arg("tol") = 1e-8);

    m.def("haar_projection", &wha::haar_projection, py::arg("w"), py::arg("tol") = 1e-8);
    m.def(
        "haar_measure",
        [](const wha::WeakHopf& w, double tol) { return wha::haar_measure(w, tol).matrix(); },
        py::arg("w"), py::arg("tol") = 1e-8);

    m.def(
        "canonical_element",
        [](const wha::WeakHopf& w, uint64_t seed, double tol) {
            const wha::CanonicalElement ce = wha::canonical_element(w, seed, tol);
            return py::make_tuple(ce.q, ce.spectrum);
        },
        py::arg("w"), py::arg("seed") = 1, py::arg("tol") = 1e-8,
        "returns (q, sorted spectrum)");

    m.def(
        "sample_admissible",
        [](const wha::WeakHopf& w, uint64_t seed, double tol) {
            const wha::AdmissibleK k = wha::sample_admissible(w, seed, tol);
            return py::make_tuple(k.k, k.spectrum_kinv_q);
        },
        py::arg("w"), py::arg("seed"), py::arg("tol") = 1e-8,
        "returns (k, sorted spectrum of k^{-1} q)");
    m.def("is_admissible", &wha::is_admissible, py::arg("w"), py::arg("k"),
          py::arg("tol") = 1e-8);

    m.def("deform", &wha::deform, py::arg("w"), py::arg("k"), py::arg("tol") = 1e-8,
          py::arg("verify") = true);
    m.def("deform_to_involutive_base", &wha::deform_to_involutive_base, py::arg("w"),
          py::arg("tol") = 1e-8);
    m.def("spectrum_invariant", &wha::spectrum_invariant, py::arg("w"), py::arg("seed") = 1,
          py::arg("tol") = 1e-8);

    m.def(
        "is_weak_kac",
        [](const wha::WeakHopf& w, double tol) {
            const wha::WeakKacFlags f = wha::is_weak_kac(w, tol);
            return py::make_tuple(f.kappa_involutive, f.phi_tracial);
        },
        py::arg("w"), py::arg("tol") = 1e-8);

    m.def(
        "save",
        [](const wha::WeakHopf& w, const std::map<std::string, std::string>& metadata) {
            return wha::save(w, metadata);
        },
        py::arg("w"), py::arg("metadata") = std::map<std::string, std::string>{});
    m.def("load", &wha::load, py::arg("bytes"));
    m.def("save_element", &wha::save_element, py::arg("x"));
    m.def("load_element", &wha::load_element, py::arg("bytes"));
}
