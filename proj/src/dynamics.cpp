// dynamics.cpp — semigroup evolution and spectral diagnostics.
#include "gibbslab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "gibbslab/linalg.hpp"
#include "gibbslab/rng.hpp"

namespace gibbslab {

namespace {

void validate_state(const Matrix& rho) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument("evolve: state must be square");
  if (std::abs(rho.trace().real() - 1.0) > 1e-9 || std::abs(rho.trace().imag()) > 1e-9)
    throw std::invalid_argument("evolve: state must have unit trace");
  if (!is_hermitian(rho, 1e-9)) throw std::invalid_argument("evolve: state must be Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
  if (es.eigenvalues().minCoeff() < -1e-8)
    throw std::invalid_argument("evolve: state must be positive semidefinite");
}

void validate_times(const std::vector<double>& times) {
  for (size_t i = 0; i < times.size(); ++i) {
    if (times[i] < 0.0) throw std::invalid_argument("evolve: times must be >= 0");
    if (i > 0 && times[i] < times[i - 1])
      throw std::invalid_argument("evolve: times must be ascending");
  }
}

EvolutionResult evolve_vec(const Matrix& superop, const Vector& v0,
                           const std::vector<double>& times, const Matrix* reference,
                           const std::string& method) {
  validate_times(times);
  const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(superop.rows()))));
  EvolutionResult result;
  result.times = times;
  result.states.reserve(times.size());

  std::unique_ptr<Propagator> prop;
  if (method == "auto" || method == "spectral") prop = std::make_unique<Propagator>(superop);
  for (double t : times) {
    Vector vt;
    if (method == "expm")
      vt = matrix_exp(superop * t) * v0;
    else
      vt = prop->apply(t, v0);
    result.states.push_back(unvec(vt, d));
  }
  if (reference != nullptr) {
    result.trace_distances.reserve(times.size());
    for (const Matrix& s : result.states)
      result.trace_distances.push_back(trace_distance(s, *reference));
  }
  return result;
}

}  // namespace

EvolutionResult evolve_state(const GeneratorMatrix& gen, const Matrix& rho0,
                             const std::vector<double>& times, const Matrix* reference,
                             const std::string& method) {
  validate_state(rho0);
  return evolve_vec(gen.superop, vec(rho0), times, reference, method);
}

EvolutionResult evolve_observable(const Matrix& gen_adjoint, const Matrix& x,
                                  const std::vector<double>& times, const std::string& method) {
  return evolve_vec(gen_adjoint, vec(x), times, nullptr, method);
}

Matrix fixed_point(const GeneratorMatrix& gen, double sv_threshold) {
  const Matrix& l = gen.superop;
  const RealVector sv = singular_values(l);
  const double scale = std::max(1.0, sv.size() ? sv(0) : 0.0);
  int null_dim = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) <= sv_threshold * scale) ++null_dim;
  if (null_dim != 1)
    throw std::runtime_error("fixed_point: degenerate null space (dimension " +
                             std::to_string(null_dim) + ")");

  EigResult es = eig(l);
  int idx = 0;
  double best = std::abs(es.values(0));
  for (int i = 1; i < es.values.size(); ++i) {
    const double mag = std::abs(es.values(i));
    if (mag < best) {
      best = mag;
      idx = i;
    }
  }
  const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(l.rows()))));
  Matrix sigma = unvec(es.vectors.col(idx), d);
  sigma = 0.5 * (sigma + sigma.adjoint());  // project to Hermitian
  const double tr = sigma.trace().real();
  if (std::abs(tr) < 1e-12) throw std::runtime_error("fixed_point: traceless null vector");
  sigma /= tr;
  if (trace_norm(unvec(l * vec(sigma), d)) > 1e-9)
    throw std::runtime_error("fixed_point: residual exceeds 1e-9");
  return sigma;
}

GapResult spectral_gap(const GeneratorMatrix& gen) {
  GapResult result;
  EigResult es = eig(gen.superop);
  result.spectrum = es.values;
  const double scale = es.values.cwiseAbs().maxCoeff();
  double max_real = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < es.values.size(); ++i) {
    if (std::abs(es.values(i)) <= 1e-10 * std::max(1.0, scale)) continue;  // stationary part
    max_real = std::max(max_real, es.values(i).real());
  }
  result.gap = std::isfinite(max_real) ? -max_real : 0.0;
  return result;
}

MixingResult mixing_time(const GeneratorMatrix& gen, double eps,
                         const std::vector<Matrix>& initial_set, std::uint64_t seed,
                         double t_cap) {
  if (!(eps > 0.0 && eps < 2.0)) throw std::invalid_argument("mixing_time: eps in (0,2)");
  const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(gen.superop.rows()))));

  std::vector<Matrix> states = initial_set;
  if (states.empty()) {
    for (int i = 0; i < d; ++i) {
      Matrix rho = Matrix::Zero(d, d);
      rho(i, i) = 1.0;
      states.push_back(rho);
    }
    Rng rng(seed);
    for (int i = 0; i < 20; ++i) states.push_back(rng.pure_state(d));
  }

  const Matrix sigma = fixed_point(gen);
  Propagator prop(gen.superop);
  std::vector<Vector> v0s;
  v0s.reserve(states.size());
  for (const Matrix& s : states) v0s.push_back(vec(s));

  auto worst_distance = [&](double t) {
    double worst = 0.0;
    for (const Vector& v0 : v0s)
      worst = std::max(worst, trace_distance(unvec(prop.apply(t, v0), d), sigma));
    return worst;
  };

  MixingResult result;
  result.eps = eps;
  result.n_initial_states = static_cast<int>(states.size());
  if (worst_distance(0.0) <= eps) {
    result.time = 0.0;
    return result;
  }
  // geometric sweep, ratio 1.25
  double t_hi = 0.1;
  while (worst_distance(t_hi) > eps) {
    t_hi *= 1.25;
    if (t_hi > t_cap) throw std::runtime_error("mixing_time: cap exceeded");
  }
  double t_lo = (t_hi > 0.1) ? t_hi / 1.25 : 0.0;
  // bisection to 1e-3 relative
  while (t_hi - t_lo > 1e-3 * t_hi) {
    const double mid = 0.5 * (t_lo + t_hi);
    if (worst_distance(mid) <= eps)
      t_hi = mid;
    else
      t_lo = mid;
  }
  result.time = t_hi;
  return result;
}

double kms_residual(const GeneratorMatrix& gen, const Matrix& sigma, int samples,
                    std::uint64_t seed) {
  const int d = static_cast<int>(sigma.rows());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sigma);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw std::invalid_argument("kms_residual: sigma must be full rank");
  const Matrix sqrt_sigma = es.operatorSqrt();
  const Matrix ldag = gen.adjoint();

  auto kms_inner = [&](const Matrix& x, const Matrix& y) {
    return (x.adjoint() * sqrt_sigma * y * sqrt_sigma).trace();
  };

  Rng rng(seed);
  double max_defect = 0.0;
  double max_action = 0.0;  // sampled ||L†||
  for (int s = 0; s < samples; ++s) {
    const Matrix x = rng.hermitian_unit(d);
    const Matrix y = rng.hermitian_unit(d);
    const Matrix lx = unvec(ldag * vec(x), d);
    const Matrix ly = unvec(ldag * vec(y), d);
    max_defect = std::max(max_defect, std::abs(kms_inner(x, ly) - kms_inner(lx, y)));
    max_action = std::max({max_action, operator_norm(lx), operator_norm(ly)});
  }
  return (max_action > 0.0) ? max_defect / max_action : max_defect;
}

}  // namespace gibbslab
