#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <vector>

#include "rsnlab/ague.hpp"
#include "rsnlab/experiments.hpp"
#include "rsnlab/fredholm.hpp"
#include "rsnlab/kernels.hpp"
#include "rsnlab/rng.hpp"
#include "rsnlab/shape.hpp"
#include "rsnlab/sorting_network.hpp"
#include "rsnlab/spacings.hpp"
#include "rsnlab/tableau.hpp"

namespace py = pybind11;
using namespace rsn;

namespace {

// Tableaux cross the boundary as row lists; RNG state stays on the C++ side,
// so every function takes a seed and is deterministic in it.
std::vector<std::vector<int>> tableau_rows(const StandardTableau& t) {
  std::vector<std::vector<int>> rows;
  const Shape& s = t.shape();
  for (int i = 1; i <= s.num_rows(); ++i) {
    std::vector<int> row;
    for (int j = 1; j <= s.row_len(i); ++j) row.push_back(t.at(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Shape shape_from_rows(const std::vector<int>& rows) { return Shape(rows); }

}  // namespace

PYBIND11_MODULE(_rsnlab, m) {
  m.doc() =
      "Random sorting network laboratory: samplers, exact identities, "
      "correlation kernels and limit laws.";

  // Exact counting (arbitrary precision, returned as decimal strings).
  m.def("stanley_count", [](int n) { return stanley_count(n).str(); },
        py::arg("n"), "Number of sorting networks on n wires, exact.");
  m.def("count_syt", [](const std::vector<int>& rows) { return count_syt(shape_from_rows(rows)).str(); },
        py::arg("rows"), "Hook length formula count for the given partition.");
  m.def("staircase_rows", [](int n) { return Shape::staircase(n).rows(); }, py::arg("n"));
  m.def("staircase_minus_rows",
        [](int n, int k) { return Shape::staircase_minus(n, k).rows(); }, py::arg("n"),
        py::arg("k"));

  // Networks and the sliding bijection.
  m.def("sample_network",
        [](int n, std::uint64_t seed) {
          Rng g = make_rng(seed);
          return sample_network(n, g).swaps();
        },
        py::arg("n"), py::arg("seed"), "Swap word of a uniform sorting network.");
  m.def("is_sorting_network", &is_sorting_network, py::arg("n"), py::arg("swaps"));
  m.def("edelman_greene",
        [](const std::vector<std::vector<int>>& rows) {
          return edelman_greene(StandardTableau::from_rows(rows)).swaps();
        },
        py::arg("rows"), "Swap word of the sliding image of a staircase tableau.");
  m.def("wiring_svg",
        [](int n, const std::vector<int>& swaps) { return wiring_svg(SortingNetwork(n, swaps)); },
        py::arg("n"), py::arg("swaps"));
  m.def("first_swap_time",
        [](int n, const std::vector<int>& swaps, int k) {
          return first_swap_time(SortingNetwork(n, swaps), k);
        },
        py::arg("n"), py::arg("swaps"), py::arg("k"));
  m.def("spacing",
        [](int n, const std::vector<int>& swaps, int k, long long anchor) {
          return spacing_sp1(SortingNetwork(n, swaps), k, anchor);
        },
        py::arg("n"), py::arg("swaps"), py::arg("k"), py::arg("anchor") = 0);

  // Tableaux.
  m.def("sample_syt",
        [](const std::vector<int>& rows, std::uint64_t seed) {
          Rng g = make_rng(seed);
          return tableau_rows(sample_syt(shape_from_rows(rows), g));
        },
        py::arg("rows"), py::arg("seed"), "Uniform standard Young tableau as row lists.");

  // Swap-occurrence densities.
  m.def("rho_exact", [](int n, int k) { return big_to_double(rho_exact(n, k)); }, py::arg("n"),
        py::arg("k"), "Probability that a fixed time slot carries swap k.");
  m.def("rho_exact_str", [](int n, int k) {
          BigRat r = rho_exact(n, k);
          return boost::multiprecision::numerator(r).str() + "/" +
                 boost::multiprecision::denominator(r).str();
        },
        py::arg("n"), py::arg("k"));
  m.def("rho_asym", &rho_asym, py::arg("n"), py::arg("k"));

  // Antisymmetric Gaussian spectra.
  m.def("positive_spectrum",
        [](int dim, std::uint64_t seed) {
          Rng g = make_rng(seed);
          return positive_spectrum(sample_antisym(dim, g));
        },
        py::arg("dim"), py::arg("seed"), "Positive eigenvalues of i*a, descending.");
  m.def("corners_interlace",
        [](int levels, std::uint64_t seed, double tol) {
          Rng g = make_rng(seed);
          return corners_config(levels, g).interlaces(tol);
        },
        py::arg("levels"), py::arg("seed"), py::arg("tol") = 1e-9);
  m.def("sample_tfs",
        [](int k, std::uint64_t seed) {
          Rng g = make_rng(seed);
          return sample_tfs(k, g);
        },
        py::arg("k"), py::arg("seed"), "Smallest positive eigenvalue of a 2k x 2k sample.");

  // Kernels.
  m.def("kernel_K", &kernel_K, py::arg("k"), py::arg("u1"), py::arg("u2"));
  m.def("limiting_kernel",
        [](int k, double u1, double u2) { return limiting_kernel_hermite(k, u1, u2); },
        py::arg("k"), py::arg("u1"), py::arg("u2"));
  m.def("conditioned_kernel",
        [](int k, int x1, double u1, int x2, double u2) {
          return conditioned_kernel(k, x1, u1, x2, u2);
        },
        py::arg("k"), py::arg("x1"), py::arg("u1"), py::arg("x2"), py::arg("u2"));
  m.def("finite_n_kernel",
        [](int n, int x1, double u1, int x2, double u2) {
          return finite_n_kernel(Shape::staircase(n), x1, u1, x2, u2);
        },
        py::arg("n"), py::arg("x1"), py::arg("u1"), py::arg("x2"), py::arg("u2"));

  // Limit laws.
  m.def("survival_tfs", &survival_tfs, py::arg("k"), py::arg("t"),
        "P(scaled first-swap time > t) in the edge limit.");
  m.def("density_g", &density_g, py::arg("k"), py::arg("x"));
  m.def("density_ghat", &density_ghat, py::arg("k"), py::arg("x"));

  // Experiment drivers (JSON summaries).
  m.def("exact_suite_json", [](int n) { return exact_suite(n).summary_json(); }, py::arg("n"));
  m.def("exact_suite_ok", [](int n) { return exact_suite(n).all_ok(); }, py::arg("n"));
  m.def("mc_first_swap_json",
        [](int n, int k, long long samples, std::uint64_t seed, int jobs) {
          return mc_first_swap(n, k, samples, seed, jobs).summary_json();
        },
        py::arg("n"), py::arg("k"), py::arg("samples"), py::arg("seed"), py::arg("jobs") = 1);
  m.def("mc_spacing_json",
        [](int n, int k, long long samples, std::uint64_t seed, int jobs) {
          return mc_spacing(n, k, samples, seed, jobs).summary_json();
        },
        py::arg("n"), py::arg("k"), py::arg("samples"), py::arg("seed"), py::arg("jobs") = 1);

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);
}
