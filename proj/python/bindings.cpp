#include <optional>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "specnorm/commands.hpp"
#include "specnorm/error.hpp"

namespace py = pybind11;
using namespace specnorm;

namespace {

Json parse(const std::string& text) { return load_json_argument(text); }

std::pair<bool, std::string> answer(const CommandResult& r) { return {r.verdict, r.doc.dump()}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "JSON-level entry points; see the specnorm package for the Python API.";

    static py::exception<Error> input_error(m, "InputError", PyExc_ValueError);
    static py::exception<Error> resource_guard(m, "ResourceGuard", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& err) {
            const std::string msg = std::string(to_string(err.kind())) + ": " + err.what();
            if (err.is_resource_guard()) {
                PyErr_SetString(resource_guard.ptr(), msg.c_str());
            } else {
                PyErr_SetString(input_error.ptr(), msg.c_str());
            }
        } catch (const nlohmann::json::exception& err) {
            PyErr_SetString(input_error.ptr(), (std::string("schema: ") + err.what()).c_str());
        }
    });

    m.attr("FORMAT") = kFormatTag;

    m.def("entail", [](const std::string& a, const std::string& b) { return answer(entail_command(parse(a), parse(b))); },
          py::arg("a_side"), py::arg("b_side"));
    m.def("canon", [](const std::string& t) { return answer(canon_command(parse(t))); }, py::arg("term"));
    m.def("leq", [](const std::string& s, const std::string& t) { return answer(leq_command(parse(s), parse(t))); },
          py::arg("lhs"), py::arg("rhs"));
    m.def(
        "lattice_check",
        [](const std::string& lattice) { return answer(lattice_check_command(lattice_argument(lattice, true))); },
        py::arg("lattice"));
    m.def(
        "lattice_dot", [](const std::string& lattice) { return lattice_to_dot(lattice_argument(lattice, true)); },
        py::arg("lattice"));
    m.def(
        "hom_check",
        [](const std::string& hom, std::optional<std::size_t> bound) {
            return answer(hom_check_command(parse(hom), bound));
        },
        py::arg("hom"), py::arg("bound") = py::none());
    m.def(
        "construct",
        [](const std::string& lattice, std::optional<std::size_t> stages, std::optional<std::uint64_t> seed,
           std::optional<std::string> lambda_cap, std::optional<std::string> base) {
            ConstructOptions options{stages, seed, lambda_cap, std::nullopt};
            if (base) options.base = parse(*base);
            const FiniteLattice l = lattice_argument(lattice);
            ConstructOutput out;
            {
                py::gil_scoped_release release;
                out = construct_command(l, options);
            }
            return std::make_pair(trace_to_jsonl(out.trace), to_json(out.report, *out.trace.header.lattice).dump());
        },
        py::arg("lattice"), py::arg("stages") = py::none(), py::arg("seed") = py::none(),
        py::arg("lambda_cap") = py::none(), py::arg("base") = py::none());
    m.def(
        "verify_trace",
        [](const std::string& jsonl, std::size_t window) {
            return answer(verify_trace_command(trace_from_jsonl(jsonl), window));
        },
        py::arg("trace"), py::arg("window") = 100);
}
