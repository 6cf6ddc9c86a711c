#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "iwalog/eval.hpp"
#include "iwalog/suites.hpp"

namespace py = pybind11;

namespace {

using iwalog::io::json;

std::string evaluate(const std::string& op, const std::vector<std::string>& operands, std::int64_t l, int prec,
                     int trunc, const std::vector<std::int64_t>& group, std::int64_t k, const std::string& h0,
                     bool determined) {
  iwalog::io::EvalOptions opt;
  opt.defaults = {l, prec, trunc, group};
  opt.k = k;
  opt.h0 = h0;
  opt.determined = determined;
  std::vector<json> xs;
  for (const auto& s : operands) xs.push_back(iwalog::io::read_operand(s));
  py::gil_scoped_release release;
  return iwalog::io::evaluate(op, xs, opt).dump();
}

std::string verify(const std::string& suite, std::int64_t l, int prec, int trunc, const std::vector<std::int64_t>& group,
                   std::uint64_t seed, int samples) {
  const iwalog::verify::JobConfig cfg{l, prec, trunc, group, seed, samples};
  py::gil_scoped_release release;
  return iwalog::verify::to_json(iwalog::verify::run_suite(suite, cfg)).dump();
}

std::string selftest() {
  py::gil_scoped_release release;
  return iwalog::verify::to_json(iwalog::verify::run_selftest()).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  static py::exception<iwalog::Error> error(m, "Error");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const iwalog::Error& e) {
      // args = (code, detail, exit_code)
      py::tuple args = py::make_tuple(iwalog::error_code_name(e.code()), e.detail(), iwalog::io::exit_code_for(e.code()));
      PyErr_SetObject(error.ptr(), args.ptr());
    } catch (const json::exception& e) {
      py::tuple args = py::make_tuple("ParseError", e.what(), 2);
      PyErr_SetObject(error.ptr(), args.ptr());
    }
  });

  m.def("evaluate", &evaluate, py::arg("op"), py::arg("operands"), py::arg("l"), py::arg("prec"), py::arg("trunc"),
        py::arg("group"), py::arg("k"), py::arg("h0"), py::arg("determined"));
  m.def("verify", &verify, py::arg("suite"), py::arg("l"), py::arg("prec"), py::arg("trunc"), py::arg("group"),
        py::arg("seed"), py::arg("samples"));
  m.def("selftest", &selftest);
  m.def("operation_names", &iwalog::io::operation_names);
  m.def("suite_names", &iwalog::verify::suite_names);
}
