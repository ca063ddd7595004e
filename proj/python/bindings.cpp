#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "agreetensor/agreement.hpp"
#include "agreetensor/cli.hpp"
#include "agreetensor/geometry.hpp"
#include "agreetensor/invariants.hpp"
#include "agreetensor/io.hpp"

namespace py = pybind11;
using namespace agreetensor;
using nlohmann::json;

namespace {

std::vector<std::string> exact_entries(const ExactTensor& t) {
  std::vector<std::string> out;
  for (const Rational& x : t.entries()) out.push_back(to_string(x));
  return out;
}

ExactTensor exact_tensor(int n, const std::vector<std::string>& entries) {
  std::vector<Rational> values;
  for (const auto& e : entries) values.push_back(parse_rational(e));
  return ExactTensor::from_entries(n, std::move(values));
}

std::vector<std::string> polynomial_strings(const std::vector<SparsePolynomial>& polys) {
  std::vector<std::string> out;
  for (const auto& p : polys) out.push_back(p.to_string());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  py::register_exception<Error>(m, "AgreetensorError", PyExc_ValueError);

  m.def("materialize", [](const std::string& params) {
    const auto t = materialize(params_from_json(json::parse(params)));
    return py::make_tuple(t.n(), exact_entries(t));
  });

  m.def("kappas_exact", [](int n, const std::vector<std::string>& entries) {
    const auto k = pairwise_kappas(exact_tensor(n, entries));
    return std::vector<std::string>{to_string(k.kappa12), to_string(k.kappa13), to_string(k.kappa23)};
  });

  m.def("kappas_float", [](int n, std::vector<double> entries) {
    const auto k = pairwise_kappas(FloatTensor::from_entries(n, std::move(entries)));
    return std::vector<double>{k.kappa12, k.kappa13, k.kappa23};
  });

  m.def("catalog", [](const std::string& family, int n) {
    return polynomial_strings(catalog(parse_family(family), n));
  });

  m.def("evaluate", [](const std::string& poly, int n, const std::vector<std::string>& entries) {
    return to_string(SparsePolynomial::parse(poly).evaluate(
        exact_tensor(n, entries)));
  });

  m.def("fiber_dimension", [](const std::string& family, int n, int degree) {
    return fiber_dimension(parse_family(family), n, degree);
  });

  m.def("toric_member", [](int n, const std::vector<std::string>& entries, const std::string& family) {
    const auto r = toric_membership(exact_tensor(n, entries), parse_family(family));
    return py::make_tuple(r.member, r.reason);
  });

  m.def(
      "fit",
      [](const std::string& family, int n, std::vector<std::uint64_t> counts, std::uint64_t seed, double tol,
         std::size_t max_iter, int restarts) {
        FitOptions options;
        options.seed = seed;
        options.tol = tol;
        options.max_iter = max_iter;
        options.restarts = restarts;
        py::gil_scoped_release release;
        return fit_to_json(fit(CountTensor::from_entries(n, std::move(counts)), parse_family(family), options))
            .dump();
      },
      py::arg("family"), py::arg("n"), py::arg("counts"), py::arg("seed") = 0, py::arg("tol") = 0.0,
      py::arg("max_iter") = FitOptions{}.max_iter, py::arg("restarts") = FitOptions{}.restarts);

  m.def("counterexample", [](const std::string& direction, int n) {
    return counterexample_to_json(boundary_counterexample(parse_direction(direction), n)).dump();
  });

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code;
    {
      py::gil_scoped_release release;
      code = cli::run(args, out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
  });
}
