#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hagkit/approximation.hpp"
#include "hagkit/dynamics.hpp"
#include "hagkit/errors.hpp"
#include "hagkit/io.hpp"
#include "hagkit/special.hpp"

namespace py = pybind11;
using namespace hagkit;

namespace {

MultiIndex to_index(const std::vector<int>& k) { return MultiIndex(k); }

PhasePoint to_point(const RVec& x, const RVec& xi) { return {x, xi}; }

py::dict report_dict(const ValidationReport& rep) {
    py::dict residuals;
    for (const auto& r : rep.residuals) residuals[py::str(r.name)] = py::make_tuple(r.value, r.ok);
    py::dict d;
    d["passed"] = rep.passed;
    d["residuals"] = residuals;
    d["text"] = rep.to_string();
    return d;
}

std::vector<std::vector<int>> index_list(const IndexSet& s) {
    std::vector<std::vector<int>> out;
    out.reserve(s.size());
    for (const auto& k : s) out.push_back(k.entries());
    return out;
}

IndexSet make_set(int d, const std::string& kind, int n) {
    if (kind == "hyperbolic") return IndexSet::hyperbolic(d, n);
    if (kind == "total") return IndexSet::total_degree(d, n);
    if (kind == "box") return IndexSet::box(MultiIndex(std::vector<int>(static_cast<std::size_t>(d), n)));
    throw DataError("index set kind must be hyperbolic, total or box");
}

PotentialModel make_potential(const py::object& spec, int d) {
    if (py::isinstance<py::str>(spec)) {
        const auto name = spec.cast<std::string>();
        if (name == "harmonic") return PotentialModel::harmonic(d);
        if (name == "quartic") return PotentialModel::quartic(d);
        throw DataError("unknown potential '" + name + "'");
    }
    return PotentialModel::quadratic(spec.cast<RMat>());
}

}  // namespace

PYBIND11_MODULE(_hagkit, m) {
    m.doc() = "Hagedorn wavepackets, their phase-space transforms and semiclassical propagation";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<StructuralError>(m, "StructuralError", base.ptr());
    py::register_exception<DataError>(m, "DataError", base.ptr());
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<SingularityError>(m, "SingularityError", base.ptr());
    py::register_exception<NumericalError>(m, "NumericalError", base.ptr());
    py::register_exception<ResourceError>(m, "ResourceError", base.ptr());
    py::register_exception<IoError>(m, "IoError", base.ptr());
    py::register_exception<InternalError>(m, "InternalError", base.ptr());

    py::class_<ParameterSet>(m, "ParameterSet")
        .def(py::init([](double eps, RVec q, RVec p, CMat Q, CMat P) {
                 ParameterSet ps;
                 ps.epsilon = eps;
                 ps.q = std::move(q);
                 ps.p = std::move(p);
                 ps.Q = std::move(Q);
                 ps.P = std::move(P);
                 return ps;
             }),
             py::arg("epsilon"), py::arg("q"), py::arg("p"), py::arg("Q"), py::arg("P"))
        .def_static("standard", &ParameterSet::standard, py::arg("d"), py::arg("epsilon") = 1.0)
        .def_readwrite("epsilon", &ParameterSet::epsilon)
        .def_readwrite("q", &ParameterSet::q)
        .def_readwrite("p", &ParameterSet::p)
        .def_readwrite("Q", &ParameterSet::Q)
        .def_readwrite("P", &ParameterSet::P)
        .def_property_readonly("dim", &ParameterSet::dim)
        .def("to_json", [](const ParameterSet& ps) { return params_to_json(ps); })
        .def_static("from_json", &parse_params_json)
        .def("hash", [](const ParameterSet& ps) { return hash_hex(params_hash(ps)); })
        .def("__repr__", [](const ParameterSet& ps) {
            return "<ParameterSet d=" + std::to_string(ps.dim()) + " eps=" + format_double(ps.epsilon) + ">";
        });

    m.def("load_params", &load_params);
    m.def("validate", [](const ParameterSet& ps, double tol) { return report_dict(validate(ps, tol)); },
          py::arg("params"), py::arg("tol") = kDefaultTol);
    m.def("width_matrix", &width_matrix);
    m.def("symplectic_embed", [](const ParameterSet& ps) {
        const auto e = symplectic_embed(ps);
        return py::make_tuple(e.F, e.F_inv);
    });
    m.def("from_squeeze", &from_squeeze, py::arg("q"), py::arg("p"), py::arg("W"), py::arg("epsilon") = 1.0,
          py::arg("tol") = kDefaultTol);
    m.def("to_squeeze", [](const ParameterSet& ps) {
        const auto s = to_squeeze(ps);
        return py::make_tuple(s.W, s.V);
    });
    m.def("polar_normalize", [](const ParameterSet& ps) {
        auto r = polar_normalize(ps);
        return py::make_tuple(r.params, r.U);
    });
    m.def("fourier_dual", [](const ParameterSet& ps) {
        auto r = fourier_dual(ps);
        return py::make_tuple(r.params, r.phase);
    });

    m.def("hermite_poly", &hermite_poly);
    m.def("laguerre_poly", &laguerre_poly);
    m.def("hermite_function", &hermite_function);
    m.def("hermite_wigner", &hermite_wigner);
    m.def("hermite_fbi", &hermite_fbi);
    m.def("hermite_husimi", &hermite_husimi);
    m.def("laguerre_kernel_one", &laguerre_kernel_one);
    m.def("laguerre_kernel_two", &laguerre_kernel_two);

    py::class_<Basis>(m, "Basis")
        .def(py::init<ParameterSet, double>(), py::arg("params"), py::arg("tol") = kDefaultTol)
        .def_property_readonly("params", &Basis::params)
        .def_property_readonly("dim", &Basis::dim)
        .def_property_readonly("C", &Basis::C);

    m.def("index_set", [](int d, const std::string& kind, int n) { return index_list(make_set(d, kind, n)); },
          py::arg("d"), py::arg("kind"), py::arg("n"), "multi-indices of a set, in graded lexicographic order");

    m.def("wavepacket", [](const Basis& b, const std::vector<int>& k, const RVec& x) {
        return wavepacket_eval(b, to_index(k), x);
    });
    m.def("wavepackets", [](const Basis& b, const std::string& kind, int n, const RVec& x) {
        const auto set = make_set(b.dim(), kind, n);
        const auto v = wavepackets_eval(b, set, x);
        return CVec(Eigen::Map<const CVec>(v.data(), static_cast<Eigen::Index>(v.size())));
    });

    m.def(
        "wigner",
        [](const Basis& b, const std::vector<int>& k, const std::vector<int>& l, const RVec& x, const RVec& xi,
           const std::string& method) {
            const auto pt = to_point(x, xi);
            if (method == "closed") return wigner_closed(b, to_index(k), to_index(l), pt);
            if (method == "recurrence") {
                MultiIndex top(b.dim());
                for (int j = 0; j < b.dim(); ++j) top[j] = std::max(k[j], l[j]);
                const auto set = IndexSet::box(top);
                return wigner_table(b, set, pt).at(set, to_index(k), to_index(l));
            }
            throw DataError("method must be closed or recurrence");
        },
        py::arg("basis"), py::arg("k"), py::arg("l"), py::arg("x"), py::arg("xi"), py::arg("method") = "closed");
    m.def("wigner_table", [](const Basis& b, const std::string& kind, int n, const RVec& x, const RVec& xi) {
        return wigner_table(b, make_set(b.dim(), kind, n), to_point(x, xi)).values;
    });
    m.def("fbi", [](const Basis& b, const std::vector<int>& k, const RVec& x, const RVec& xi) {
        return fbi_closed(b, to_index(k), to_point(x, xi));
    });
    m.def("husimi", [](const Basis& b, const std::vector<int>& k, const RVec& x, const RVec& xi) {
        return husimi(b, to_index(k), to_point(x, xi));
    });

    m.def(
        "project",
        [](const std::function<cplx(const RVec&)>& psi, const Basis& b, int K) {
            const auto set = hyperbolic_set(b.dim(), K);
            const auto pr = project(psi, b, set, default_projection_spec(b));
            py::dict d;
            d["indices"] = index_list(set);
            d["coeffs"] = CVec(Eigen::Map<const CVec>(pr.coeffs.coeffs.data(),
                                                      static_cast<Eigen::Index>(pr.coeffs.coeffs.size())));
            d["psi_norm2"] = pr.psi_norm2;
            d["bessel_defect"] = pr.bessel_defect;
            d["truncation_warning"] = pr.truncation_warning;
            return d;
        },
        py::arg("psi"), py::arg("basis"), py::arg("K"),
        "coefficients <phi_k, psi> over the hyperbolic set of cutoff K");
    m.def("reconstruct", [](const CVec& coeffs, const Basis& b, int K, const RVec& x) {
        CoefficientVector c;
        c.set = hyperbolic_set(b.dim(), K);
        if (static_cast<std::size_t>(coeffs.size()) != c.set.size())
            throw StructuralError("coefficient count does not match the hyperbolic set");
        c.coeffs.assign(coeffs.data(), coeffs.data() + coeffs.size());
        return reconstruct(c, b, x);
    });

    m.def(
        "propagate",
        [](const ParameterSet& ps, const py::object& potential, double T, double dt) {
            const auto tr = propagate(initial_state(ps), make_potential(potential, ps.dim()), T, dt);
            py::list states;
            for (const auto& s : tr.states) {
                py::dict d;
                d["t"] = s.t;
                d["params"] = s.params;
                d["action"] = s.action;
                d["det_phase"] = s.det_phase;
                states.append(d);
            }
            py::dict out;
            out["states"] = states;
            out["completed"] = tr.completed;
            out["diagnostic"] = tr.diagnostic;
            out["final_drift"] = tr.final_drift;
            return out;
        },
        py::arg("params"), py::arg("potential"), py::arg("T"), py::arg("dt"),
        "potential is 'harmonic', 'quartic' or a symmetric matrix H for x^T H x / 2");
}
