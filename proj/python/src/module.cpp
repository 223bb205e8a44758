#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "addchain/bounds.hpp"
#include "addchain/chain_format.hpp"
#include "addchain/cli.hpp"
#include "addchain/counting.hpp"
#include "addchain/family.hpp"
#include "addchain/report_json.hpp"
#include "addchain/search.hpp"

namespace py = pybind11;
using namespace addchain;

namespace {

// Results cross the boundary as JSON text; the Python side decodes them.
std::string dump(const json::Json& j) { return j.dump(); }

FamilyParams make_params(int digits, int u, int k, double budget_r) {
  FamilyParams p;
  p.digits = digits;
  p.u = u;
  p.k = k;
  p.budget_r = budget_r;
  return p;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  static py::handle error_type = py::exception<Error>(m, "AddchainError").release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const std::string msg = std::string(to_string(e.kind())) + ": " + e.what();
      PyErr_SetString(error_type.ptr(), msg.c_str());
    }
  });

  m.def("cli_run", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code;
    {
      py::gil_scoped_release release;
      code = cli::run(args, out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
  });

  m.def("ell", [](Value n, bool verbose) { return dump(json::search_result(ell(n), verbose)); },
        py::arg("n"), py::arg("verbose") = false, py::call_guard<py::gil_scoped_release>());
  m.def("ell_oracle", &ell_oracle, py::arg("n"), py::call_guard<py::gil_scoped_release>());
  m.def("bounds", [](Value n, bool with_ell) {
    return dump(json::bound_report(bound_report(n, with_ell ? std::optional<int>(ell(n).ell) : std::nullopt)));
  }, py::arg("n"), py::arg("with_ell") = true, py::call_guard<py::gil_scoped_release>());
  m.def("count_h", [](int k, bool collect) { return dump(json::h_result(count_H(k, collect))); },
        py::arg("k"), py::arg("collect") = false, py::call_guard<py::gil_scoped_release>());
  m.def("count_f", [](int mm, double r, int threads) { return dump(json::count_result(count_F(mm, r, nullptr, threads))); },
        py::arg("m"), py::arg("r"), py::arg("threads") = 1, py::call_guard<py::gil_scoped_release>());
  m.def("histogram", [](int mm, int threads) { return dump(json::histogram(mm, ell_histogram(mm, nullptr, threads))); },
        py::arg("m"), py::arg("threads") = 1, py::call_guard<py::gil_scoped_release>());
  m.def("scholz", [](int n) { return dump(json::scholz_report(scholz_check(n))); }, py::arg("n"));
  m.def("envelope", [](int mm, double c, double eps) { return dump(json::envelope(theorem_envelope(mm, c, eps))); },
        py::arg("m"), py::arg("c"), py::arg("eps"));
  m.def("normalize_chain", [](const std::string& text) { return format_chain(parse_chain(text)); }, py::arg("text"));
  m.def("family_size", [](int digits, int u, int k, double budget_r) {
    const FamilyParams p = make_params(digits, u, k, budget_r);
    return dump(json::family_size(p, family_size(p)));
  }, py::arg("digits"), py::arg("u"), py::arg("k"), py::arg("budget_r"));
  m.def("family_chain", [](int digits, int u, int k, double budget_r, std::vector<int> s, std::vector<Value> U) {
    return dump(json::family_instance(generate_chain(make_params(digits, u, k, budget_r), s, U)));
  }, py::arg("digits"), py::arg("u"), py::arg("k"), py::arg("budget_r"), py::arg("s"), py::arg("U"));
}
