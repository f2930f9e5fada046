#include <algorithm>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ncg/errors.hpp"
#include "ncg/io.hpp"
#include "ncg/principal.hpp"
#include "ncg/scenario.hpp"

namespace py = pybind11;
using namespace ncg;

namespace {

// Structured values cross the boundary as JSON text; the Python side decodes them.
std::string dump(const Json& j) { return j.dump(); }

ThetaPtr theta_of(const std::vector<std::vector<double>>& rows) { return make_theta(ThetaMatrix::from_rows(rows)); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spectral triples on noncommutative tori";

  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_RuntimeError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  m.def("kr_signs", [](int d) {
    const auto s = kr_signs(d);
    return py::make_tuple(s.eps, s.eps_prime, s.eps_double_prime ? py::cast(*s.eps_double_prime) : py::none());
  }, py::arg("d"));

  m.def("monomial_product", [](const MultiIndex& k, const MultiIndex& l, const std::vector<std::vector<double>>& theta) {
    const auto p = monomial_product(k, l, ThetaMatrix::from_rows(theta));
    return py::make_tuple(p.phase, p.index);
  }, py::arg("k"), py::arg("l"), py::arg("theta"));

  m.def("check_principality_json", [](const std::vector<std::vector<double>>& theta, int n, int radius) {
    return dump(report_to_json(check_principality(theta_of(theta), n, lattice_box(n, radius))));
  }, py::arg("theta"), py::arg("n"), py::arg("radius"));

  m.def("dirac_spectrum", [](const std::vector<std::vector<double>>& theta, int n, int m_, int cutoff) {
    py::gil_scoped_release release;
    return spectrum(build_flat_triple(theta_of(theta), n, m_, cutoff).D);
  }, py::arg("theta"), py::arg("n"), py::arg("m"), py::arg("cutoff"));

  m.def("twisted_spectra", [](const std::vector<std::vector<double>>& theta, int n, int m_, int cutoff,
                              const std::vector<double>& constants) {
    py::gil_scoped_release release;
    const auto t = theta_of(theta);
    const auto p = projectable_flat_example(t, n, m_, cutoff);
    const auto base = restrict_to_H0(p);
    const auto tw = twisted_dirac(base, ConnectionFamily::constant(t, n, m_, constants), p);
    return std::make_pair(spectrum(tw.D_omega), spectrum(tw.script_D_omega));
  }, py::arg("theta"), py::arg("n"), py::arg("m"), py::arg("cutoff"), py::arg("constants"));

  m.def("base_triple_recipe_json", [](int j, int n) { return dump(recipe_to_json(base_triple_recipe(j, n))); },
        py::arg("j"), py::arg("n"));

  m.def("kr_sweep_json", [](int max_dim, int cutoff, std::uint64_t seed, double tolerance) {
    py::gil_scoped_release release;
    return dump(run_kr_sweep(max_dim, cutoff, seed, tolerance).to_json());
  }, py::arg("max_dim"), py::arg("cutoff") = 2, py::arg("seed") = 3, py::arg("tolerance") = 1e-12);

  m.def("run_scenario_json", [](const std::string& config, const std::vector<std::string>& only) {
    const auto j = Json::parse(config);
    auto c = parse_config(j);
    if (c.id.empty()) c.id = "python";
    // Spectra only go to disk when the caller names a directory.
    c.spectra = c.spectra && j.contains("out_dir");
    py::gil_scoped_release release;
    return dump(run_scenario(c, only).to_json());
  }, py::arg("config"), py::arg("only") = std::vector<std::string>{});

  m.def("spectrum_csv", [](std::vector<double> eigenvalues, double resolution) {
    std::sort(eigenvalues.begin(), eigenvalues.end());
    return spectrum_csv(merge_spectrum(eigenvalues, resolution));
  }, py::arg("eigenvalues"), py::arg("resolution") = 1e-9);
}
