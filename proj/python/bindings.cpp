#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "waring/canonical.hpp"
#include "waring/decomposer.hpp"
#include "waring/oracle.hpp"
#include "waring/power_sums.hpp"
#include "waring/report.hpp"

namespace py = pybind11;
using namespace waring;

namespace {

std::vector<std::uint64_t> codes(const std::vector<Elem>& v) {
    std::vector<std::uint64_t> out;
    out.reserve(v.size());
    for (auto e : v) out.push_back(e.v);
    return out;
}

Elem elem(const Field& f, std::uint64_t v) { return f.elem(v); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact sums of k-th powers in upper-triangular matrix algebras over finite fields";

    PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error_type;
    error_type.call_once_and_store_result(
        [&]() { return py::exception<Error>(m, "WaringError", PyExc_ValueError); });
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            const auto args = py::make_tuple(e.what(), std::string(to_string(e.kind())));
            PyErr_SetObject(error_type.get_stored().ptr(), args.ptr());
        }
    });

    py::class_<Field>(m, "Field")
        .def(py::init([](std::uint64_t p, unsigned deg, std::optional<std::vector<std::uint64_t>> modulus) {
                 return Field::make(p, deg, std::move(modulus));
             }),
             py::arg("p"), py::arg("m") = 1, py::arg("modulus") = py::none())
        .def_static("parse", &Field::parse, py::arg("text"))
        .def_property_readonly("p", &Field::p)
        .def_property_readonly("m", &Field::m)
        .def_property_readonly("q", &Field::q)
        .def("add", [](const Field& f, std::uint64_t a, std::uint64_t b) { return f.add(elem(f, a), elem(f, b)).v; })
        .def("mul", [](const Field& f, std::uint64_t a, std::uint64_t b) { return f.mul(elem(f, a), elem(f, b)).v; })
        .def("inv", [](const Field& f, std::uint64_t a) { return f.inv(elem(f, a)).v; })
        .def("pow", [](const Field& f, std::uint64_t a, std::uint64_t e) { return f.pow(elem(f, a), e).v; })
        .def("kth_power_image", [](const Field& f, std::uint64_t k) { return codes(f.kth_power_image(k)); })
        .def("kth_roots",
             [](const Field& f, std::uint64_t lambda, std::uint64_t k) { return codes(f.kth_roots(elem(f, lambda), k)); })
        .def("minus_one_is_kth_power", &Field::minus_one_is_kth_power)
        .def("__eq__", [](const Field& a, const Field& b) { return a == b; })
        .def("__str__", &Field::to_string)
        .def("__repr__", [](const Field& f) { return "Field('" + f.to_string() + "')"; });

    py::class_<UTMatrix>(m, "Matrix")
        .def(py::init([](const Field& f, const std::string& text) { return parse_matrix(f, text); }), py::arg("field"),
             py::arg("text"))
        .def_static("identity", &UTMatrix::identity)
        .def_static("zero", &UTMatrix::zero)
        .def_property_readonly("field", &UTMatrix::field)
        .def_property_readonly("n", &UTMatrix::size)
        .def("__getitem__", [](const UTMatrix& a, std::pair<std::size_t, std::size_t> ij) { return a.at(ij.first, ij.second).v; })
        .def("diag", [](const UTMatrix& a) { return codes(a.diag()); })
        .def("to_text", [](const UTMatrix& a) { return to_text(a); })
        .def("pretty", [](const UTMatrix& a) { return to_pretty(a); })
        .def("__pow__", [](const UTMatrix& a, std::uint64_t e) { return mat_pow(a, e); })
        .def("__mul__", [](const UTMatrix& a, const UTMatrix& b) { return a * b; })
        .def("__add__", [](const UTMatrix& a, const UTMatrix& b) { return a + b; })
        .def("__sub__", [](const UTMatrix& a, const UTMatrix& b) { return a - b; })
        .def("__eq__", [](const UTMatrix& a, const UTMatrix& b) { return a == b; })
        .def("__str__", [](const UTMatrix& a) { return to_text(a); })
        .def("__repr__", [](const UTMatrix& a) { return "Matrix('" + to_text(a) + "')"; });

    m.def("inverse", &inverse);
    m.def("kth_root_distinct_diag", &kth_root_distinct_diag, py::arg("c"), py::arg("k"));
    m.def("kth_root_sparse", &kth_root_sparse, py::arg("c"), py::arg("k"));
    m.def("kth_root_backsubstitute", &kth_root_backsubstitute, py::arg("c"), py::arg("k"));
    m.def("parse_presentation", &parse_presentation, py::arg("field"), py::arg("text"), py::arg("n") = 0);
    m.def("is_indecomposable", &is_indecomposable);

    // Structured results travel as JSON text; the Python package decodes them.
    m.def("_classify", [](const Field& f, std::uint64_t lambda, std::uint64_t k) {
        return to_json(classify_solutions(f, elem(f, lambda), k)).dump();
    });
    m.def("_decompose", [](const UTMatrix& c, std::uint64_t k, int parts) {
        return to_json(parts == 3 ? decompose_three(c, k) : decompose_two(c, k)).dump();
    });
    m.def("_decompose_structured", [](const UTMatrix& c, std::uint64_t k) {
        const auto out = decompose_structured(c, k);
        json j;
        j["explored"] = out.explored;
        if (out.result) j["result"] = to_json(*out.result);
        if (out.plan) j["plan"] = to_json(*out.plan);
        if (out.obstruction) j["obstruction"] = to_json(*out.obstruction);
        return j.dump();
    });
    m.def("_diagonalize", [](const UTMatrix& a) { return to_json(diagonalize_distinct(a).witness).dump(); });
    m.def("_bn_conjugate", [](const UTMatrix& a, const UTMatrix& b) {
        const auto w = bn_conjugate(a, b);
        return w ? to_json(*w).dump() : std::string("null");
    });
    m.def("_lang_weil", [](const Field& f, std::uint64_t k, const std::vector<std::uint64_t>& alpha) {
        std::vector<Elem> a;
        for (auto v : alpha) a.push_back(elem(f, v));
        return to_json(lang_weil_check(f, k, a)).dump();
    });
    m.def("_negative_checks", [](const Field& f, std::uint64_t k) { return to_json(negative_checks(f, k)).dump(); });
    m.def("min_waring_number",
          static_cast<std::optional<std::size_t> (*)(const UTMatrix&, std::uint64_t, std::size_t)>(&min_waring_number), py::arg("c"), py::arg("k"), py::arg("cap") = 4);
    m.def("verify_decomposition", [](const UTMatrix& c, const std::vector<UTMatrix>& parts, std::uint64_t k) {
        return verify_decomposition(c, parts, k);
    });
}
