// bindings.cpp — Python surface for the core operations: models, Gibbs
// oracles, generator assembly, dynamics, threshold ledgers, estimator.
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gibbslab/certificates.hpp"
#include "gibbslab/dynamics.hpp"
#include "gibbslab/estimator.hpp"
#include "gibbslab/generator.hpp"
#include "gibbslab/hamiltonian.hpp"
#include "gibbslab/model_io.hpp"

namespace py = pybind11;
using namespace gibbslab;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Detailed-balanced Gibbs-sampler laboratory (C++ core)";

  py::class_<LatticeSpec>(m, "LatticeSpec")
      .def(py::init<int, int>(), py::arg("dimension"), py::arg("side_length"))
      .def_readonly("dimension", &LatticeSpec::dimension)
      .def_readonly("side_length", &LatticeSpec::side_length)
      .def("site_count", &LatticeSpec::site_count)
      .def("distance", &LatticeSpec::distance);

  py::class_<SpinHamiltonian>(m, "SpinHamiltonian")
      .def_property_readonly("n_sites", &SpinHamiltonian::sites)
      .def_property_readonly("dim", &SpinHamiltonian::dim)
      .def_readonly("matrix", &SpinHamiltonian::matrix)
      .def_readonly("evals", &SpinHamiltonian::evals)
      .def_readonly("evecs", &SpinHamiltonian::evecs)
      .def_property_readonly("coupling_j", [](const SpinHamiltonian& h) { return h.stats.j(); });

  py::class_<GeneratorMatrix>(m, "GeneratorMatrix")
      .def_readonly("superop", &GeneratorMatrix::superop)
      .def_readonly("beta", &GeneratorMatrix::beta)
      .def_readonly("n_sites", &GeneratorMatrix::n_sites)
      .def("adjoint", &GeneratorMatrix::adjoint);

  m.def("load_model", &load_model, py::arg("path"));
  m.def("parse_model", &parse_model, py::arg("json_text"));
  m.def("gibbs_state", &gibbs_state, py::arg("h"), py::arg("beta"));
  m.def("partition_value", &partition_value, py::arg("h"), py::arg("beta"));
  m.def("depolarizing_rate", &depolarizing_rate);

  m.def(
      "full_generator",
      [](const SpinHamiltonian& h, double beta) { return full_generator(h, beta); },
      py::arg("h"), py::arg("beta"));
  m.def(
      "local_generator",
      [](const SpinHamiltonian& h, int a, double beta) { return local_generator(h, a, beta); },
      py::arg("h"), py::arg("site"), py::arg("beta"));

  m.def("fixed_point", &fixed_point, py::arg("gen"), py::arg("sv_threshold") = 1e-8);
  m.def(
      "spectral_gap",
      [](const GeneratorMatrix& gen) { return spectral_gap(gen).gap; }, py::arg("gen"));
  m.def(
      "mixing_time",
      [](const GeneratorMatrix& gen, double eps, std::uint64_t seed) {
        return mixing_time(gen, eps, {}, seed).time;
      },
      py::arg("gen"), py::arg("eps"), py::arg("seed") = 17);
  m.def("kms_residual", &kms_residual, py::arg("gen"), py::arg("sigma"), py::arg("samples") = 24,
        py::arg("seed") = 7);
  m.def(
      "evolve_state",
      [](const GeneratorMatrix& gen, const Matrix& rho0, const std::vector<double>& times) {
        return evolve_state(gen, rho0, times).states;
      },
      py::arg("gen"), py::arg("rho0"), py::arg("times"));

  py::class_<ThresholdLedger>(m, "ThresholdLedger")
      .def_readonly("regime", &ThresholdLedger::regime)
      .def_readonly("dimension", &ThresholdLedger::dimension)
      .def_readonly("beta", &ThresholdLedger::beta)
      .def_readonly("r0", &ThresholdLedger::r0)
      .def_readonly("eta", &ThresholdLedger::eta)
      .def_readonly("delta_r0", &ThresholdLedger::delta_r0)
      .def_readonly("f_r0", &ThresholdLedger::f_r0)
      .def_readonly("kappa", &ThresholdLedger::kappa)
      .def_readonly("lambda_", &ThresholdLedger::lambda)
      .def_readonly("margin", &ThresholdLedger::margin)
      .def_readonly("certified", &ThresholdLedger::certified)
      .def_readonly("divergent", &ThresholdLedger::divergent);

  m.def(
      "zeta_bound",
      [](int r, double beta_j) {
        const ZetaBound z = zeta_bound(r, beta_j);
        return py::make_tuple(z.three_term, z.simplified);
      },
      py::arg("r"), py::arg("beta_j"));
  m.def("delta_tail", &delta_tail, py::arg("r0"), py::arg("beta_j"));
  m.def("kappa_local", &kappa_local, py::arg("dimension"), py::arg("j"), py::arg("beta"),
        py::arg("r0"));
  m.def("kappa_long_range", &kappa_long_range, py::arg("dimension"), py::arg("nu"), py::arg("g"),
        py::arg("k_const"), py::arg("beta"), py::arg("r0"));
  m.def(
      "beta_star",
      [](const std::string& regime, int dimension, double j_or_g, double nu, double k_const) {
        const BetaStarResult res = beta_star_search(regime, dimension, j_or_g, nu, k_const);
        return py::make_tuple(res.beta_star, res.r0);
      },
      py::arg("regime"), py::arg("dimension"), py::arg("j_or_g"), py::arg("nu") = 0.0,
      py::arg("k_const") = 0.0);

  py::class_<AnnealingSchedule>(m, "AnnealingSchedule")
      .def_readonly("betas", &AnnealingSchedule::betas)
      .def_readonly("ratio_bound", &AnnealingSchedule::ratio_bound)
      .def("length", &AnnealingSchedule::length);

  py::class_<EstimateReport>(m, "EstimateReport")
      .def_readonly("estimate", &EstimateReport::estimate)
      .def_readonly("target", &EstimateReport::target)
      .def_readonly("relative_error", &EstimateReport::relative_error)
      .def_readonly("ratio_bound", &EstimateReport::ratio_bound)
      .def_readonly("samples_per_step", &EstimateReport::samples_per_step)
      .def_readonly("failed", &EstimateReport::failed)
      .def_readonly("trials", &EstimateReport::trials)
      .def_readonly("successes", &EstimateReport::successes)
      .def_readonly("success_fraction", &EstimateReport::success_fraction)
      .def_readonly("success_lower_confidence", &EstimateReport::success_lower_confidence);

  m.def("build_uniform_schedule", &build_uniform_schedule, py::arg("h"), py::arg("beta_min"),
        py::arg("beta_max"), py::arg("c"));
  m.def("exact_ratio", &exact_ratio, py::arg("h"), py::arg("beta_i"), py::arg("beta_next"));
  m.def("dyer_frieze_estimate", &dyer_frieze_estimate, py::arg("h"), py::arg("schedule"),
        py::arg("eps"), py::arg("eps_b"), py::arg("seed"));
  m.def(
      "success_probability_harness",
      [](const SpinHamiltonian& h, double beta_max, double c, double eps, double eps_b,
         std::uint64_t seed, int trials) {
        HarnessConfig config;
        config.beta_max = beta_max;
        config.c = c;
        config.eps = eps;
        config.eps_b = eps_b;
        config.seed = seed;
        return success_probability_harness(h, config, trials);
      },
      py::arg("h"), py::arg("beta_max"), py::arg("c") = 0.25, py::arg("eps") = 0.1,
      py::arg("eps_b") = 0.0, py::arg("seed") = 1, py::arg("trials") = 100);
}
