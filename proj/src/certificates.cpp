// certificates.cpp — oscillator norms, locality defects, truncation-distance
// bounds, and the threshold-constant ledger.
#include "gibbslab/certificates.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>

#include "gibbslab/dynamics.hpp"
#include "gibbslab/linalg.hpp"
#include "gibbslab/rng.hpp"

namespace gibbslab {

namespace {

double g_of(double x) {  // g(x) = sqrt(x) / (1 + sqrt(x))
  const double s = std::sqrt(x);
  return s / (1.0 + s);
}

double ipow(double base, int e) {
  double out = 1.0;
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

// Heisenberg picture of the site Pauli under H: V e^{+iEt} V† A V e^{-iEt} V†.
Matrix heisenberg_pauli(const SpinHamiltonian& h, int a, int alpha, double t) {
  const Matrix a_full = embed_on_sites(pauli(alpha), {a}, h.sites());
  Vector phase(h.dim());
  for (int j = 0; j < h.dim(); ++j) phase(j) = std::exp(Complex(0.0, h.evals(j) * t));
  const Matrix at = h.evecs.adjoint() * a_full * h.evecs;
  return h.evecs * (phase.asDiagonal() * at * phase.conjugate().asDiagonal()) * h.evecs.adjoint();
}

double binomial(int n, int k) {
  double out = 1.0;
  for (int i = 0; i < k; ++i) out = out * (n - i) / (i + 1);
  return out;
}

// Hurwitz zeta sum_{m>=0} (a+m)^{-s} for s > 1, via Euler-Maclaurin with a
// recorded remainder bound. Bernoulli numbers B_2..B_12.
struct ZetaResult {
  double value;
  double error;
};
ZetaResult hurwitz_zeta(double s, double a) {
  if (!(s > 1.0)) throw std::invalid_argument("hurwitz_zeta: s must be > 1");
  const int n_direct = 40;
  double sum = 0.0;
  for (int k = 0; k < n_direct; ++k) sum += std::pow(a + k, -s);
  const double x = a + n_direct;
  sum += std::pow(x, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(x, -s);
  static const double bern[] = {1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0,
                                -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0};
  double factor = s;           // rising factorial (s)_{2j-1} / (2j)!
  double power = std::pow(x, -s - 1.0);
  double err = 0.0;
  for (int j = 1; j <= 6; ++j) {
    const double term = bern[j - 1] * factor * power;
    sum += term;
    err = std::abs(term);  // EM remainder is bounded by the last included term's scale
    factor *= (s + 2.0 * j - 1.0) * (s + 2.0 * j) / ((2.0 * j + 1.0) * (2.0 * j + 2.0));
    power /= x * x;
  }
  return {sum, err};
}

struct SeriesResult {
  double value = 0.0;
  double tail_bound = 0.0;
};

// sum_{l >= r0} (2l+1)^p (l - r0 + 1)^s Delta(l) for geometric
// Delta(l) = c * g^l; direct summation with a geometric tail bound.
SeriesResult geometric_series(int p, int s, double c, double g, int r0) {
  SeriesResult out;
  if (c == 0.0 || g == 0.0) return out;
  auto term = [&](int l) {
    return ipow(2.0 * l + 1.0, p) * ipow(static_cast<double>(l - r0 + 1), s) * c *
           std::pow(g, l);
  };
  int l = r0;
  for (;; ++l) {
    const double t = term(l);
    out.value += t;
    if (t < 1e-16 * out.value && l > r0 + 4) break;
    if (l - r0 > 100000) throw std::runtime_error("geometric_series: no convergence");
  }
  const double t_next = term(l + 1);
  const double ratio =
      g * ipow((2.0 * l + 5.0) / (2.0 * l + 3.0), p) *
      ipow(static_cast<double>(l - r0 + 3) / static_cast<double>(l - r0 + 2), s);
  out.tail_bound = (ratio < 1.0) ? t_next / (1.0 - ratio)
                                 : std::numeric_limits<double>::infinity();
  return out;
}

// sum_{l >= r0} (2l+1)^p Delta(l) for power-law Delta(l) = c * l^{-q},
// via binomial expansion into Hurwitz zetas (exact up to the EM remainder).
SeriesResult power_series_plain(int p, double c, double q, int r0) {
  SeriesResult out;
  for (int i = 0; i <= p; ++i) {
    ZetaResult z = hurwitz_zeta(q - i, r0);
    const double coeff = binomial(p, i) * ipow(2.0, i) * c;
    out.value += coeff * z.value;
    out.tail_bound += std::abs(coeff) * z.error;
  }
  return out;
}

// sum_{l >= r0} (l - r0 + 1) (2l+1)^p Delta(l), power-law Delta, using
// (l - r0 + 1) = l - (r0 - 1).
SeriesResult power_series_linear(int p, double c, double q, int r0) {
  SeriesResult out;
  for (int i = 0; i <= p; ++i) {
    ZetaResult z1 = hurwitz_zeta(q - i - 1.0, r0);
    ZetaResult z0 = hurwitz_zeta(q - i, r0);
    const double coeff = binomial(p, i) * ipow(2.0, i) * c;
    out.value += coeff * (z1.value - (r0 - 1.0) * z0.value);
    out.tail_bound += std::abs(coeff) * (z1.error + std::abs(r0 - 1.0) * z0.error);
  }
  return out;
}

ThresholdLedger assemble_kappa(ThresholdLedger led, double delta_r0, const SeriesResult& s1,
                               const SeriesResult& s2) {
  const int d2 = 2 * led.r0 + 1;
  const double vol2 = ipow(d2, 2 * led.dimension);
  const double vol1 = ipow(d2, led.dimension);
  led.delta_r0 = delta_r0;
  led.f_r0 = 5.0 * vol2 * delta_r0 + (5.0 + 2.0 * led.r0 + 2.0 * vol1) * s1.value +
             2.0 * s2.value;
  led.kappa = 4.0 * vol2 * led.eta + led.f_r0;
  led.lambda = depolarizing_rate();
  led.margin = led.lambda - led.kappa;
  led.truncation_error =
      (5.0 + 2.0 * led.r0 + 2.0 * vol1) * s1.tail_bound + 2.0 * s2.tail_bound;
  led.certified = led.margin > 0.0 && led.truncation_error < 1e-12 * led.kappa;
  return led;
}

}  // namespace

Matrix delta_site(const Matrix& x, int a, int n) {
  return x - site_depolarize(x, a, n);
}

double oscillator_norm(const Matrix& x, int n) {
  double out = 0.0;
  for (int a = 0; a < n; ++a) out += operator_norm(delta_site(x, a, n));
  return out;
}

OscillatorReport oscillator_decay(const Matrix& gen_adjoint, int n_sites, const Matrix& x,
                                  const std::vector<double>& times, double decay_rate,
                                  const std::string& id) {
  OscillatorReport report;
  report.observable_id = id;
  report.times = times;
  EvolutionResult evo = evolve_observable(gen_adjoint, x, times);
  for (const Matrix& xt : evo.states) {
    std::vector<double> per_site;
    double total = 0.0;
    for (int a = 0; a < n_sites; ++a) {
      const double na = operator_norm(delta_site(xt, a, n_sites));
      per_site.push_back(na);
      total += na;
    }
    report.site_breakdown.push_back(per_site);
    report.norms.push_back(total);
  }
  // least-squares exponential fit on the log scale, above the noise floor
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int m = 0;
  for (size_t i = 0; i < report.norms.size(); ++i) {
    if (report.norms[i] <= 1e-10) continue;
    const double lx = times[i], ly = std::log(report.norms[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  const double denom = m * sxx - sx * sx;
  report.fitted_rate = (m >= 2 && std::abs(denom) > 0.0) ? -(m * sxy - sx * sy) / denom : 0.0;

  if (decay_rate >= 0.0) {
    report.bound_checked = true;
    report.bound_holds = true;
    const double n0 = report.norms.empty() ? 0.0 : report.norms.front();
    for (size_t i = 0; i < report.norms.size(); ++i) {
      const double envelope = std::exp(-decay_rate * (times[i] - times.front())) * n0 + 1e-8;
      report.bound_holds = report.bound_holds && report.norms[i] <= envelope;
    }
  }
  return report;
}

DefectResult lr_defect(const SpinHamiltonian& h, int a, int alpha, int r, double t) {
  if (r < 1) throw std::invalid_argument("lr_defect: r must be >= 1");
  const SpinHamiltonian h_ball = restrict_to(h, ball(h.lattice, a, r));
  DefectResult out;
  out.defect = operator_norm(heisenberg_pauli(h, a, alpha, t) - heisenberg_pauli(h_ball, a, alpha, t));
  const double j = h.stats.j();
  double factorial = 1.0;
  for (int i = 2; i <= r; ++i) factorial *= i;
  out.bound = std::pow(2.0 * j * std::abs(t), r) / factorial;
  return out;
}

DefectResult lr_defect_long_range(const SpinHamiltonian& h, int a, int alpha, int r, double t,
                                  double c_h, double v_lr, double nu) {
  if (r <= v_lr * std::abs(t))
    throw std::invalid_argument("lr_defect_long_range: requires r > v_lr * |t|");
  const SpinHamiltonian h_ball = restrict_to(h, ball(h.lattice, a, r));
  DefectResult out;
  out.defect = operator_norm(heisenberg_pauli(h, a, alpha, t) - heisenberg_pauli(h_ball, a, alpha, t));
  const int dim = h.lattice.dimension;
  out.bound = c_h * std::pow(std::abs(t), dim + 1.0) *
              std::pow(r - v_lr * std::abs(t), static_cast<double>(dim) - nu);
  return out;
}

double generator_distance_lower_bound(const Matrix& l1_adjoint, const Matrix& l2_adjoint,
                                      int n_sites, int samples, std::uint64_t seed,
                                      int ascent_steps) {
  if (l1_adjoint.rows() != l2_adjoint.rows())
    throw std::invalid_argument("generator_distance_lower_bound: dimension mismatch");
  const Matrix diff = l1_adjoint - l2_adjoint;
  const int d = 1 << n_sites;
  Rng rng(seed);

  auto value = [&](const Matrix& x) { return operator_norm(unvec(diff * vec(x), d)); };

  double best = 0.0;
  Matrix best_x = Matrix::Identity(d, d);
  for (int s = 0; s < samples; ++s) {
    Matrix x;
    if (s % 2 == 0) {
      std::vector<int> alphas(n_sites);
      int nonzero = 0;
      for (int i = 0; i < n_sites; ++i) {
        alphas[i] = rng.uniform_int(4);
        nonzero += alphas[i] != 0;
      }
      if (nonzero == 0) alphas[rng.uniform_int(n_sites)] = 1 + rng.uniform_int(3);
      x = pauli_string(alphas);
    } else {
      const Matrix u = rng.haar_unitary(d);
      Vector signs(d);
      for (int i = 0; i < d; ++i) signs(i) = rng.bernoulli(0.5) ? 1.0 : -1.0;
      x = u * signs.asDiagonal() * u.adjoint();
    }
    const double v = value(x);
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  for (int step = 0; step < ascent_steps; ++step) {
    Matrix candidate = best_x + 0.1 * rng.hermitian_unit(d);
    candidate /= operator_norm(candidate);
    const double v = value(candidate);
    if (v > best) {
      best = v;
      best_x = candidate;
    }
  }
  return best;
}

ZetaBound zeta_bound(int r, double beta_j) {
  if (r < 1 || !(beta_j > 0.0)) throw std::invalid_argument("zeta_bound: r >= 1, beta_j > 0");
  const double g = g_of(beta_j);
  const double u = std::sqrt(beta_j) * (1.0 + std::sqrt(beta_j));
  const double e = std::exp(1.0);
  ZetaBound out;
  out.three_term = 7.0 * std::pow(g, r) +
                   23.0 * u * std::exp(-static_cast<double>(r) * r / (4.0 * e * e * u * u)) +
                   112.0 * std::exp(-kPi * r / (e * u));
  out.simplified = 14.0 * std::pow(g, r);
  return out;
}

double delta_tail(int r0, double beta_j) {
  if (r0 < 1 || !(beta_j > 0.0)) throw std::invalid_argument("delta_tail: r0 >= 1, beta_j > 0");
  if (beta_j > 1.0 / 200.0)
    std::cerr << "delta_tail: beta*J = " << beta_j
              << " is outside the validated range (0, 1/200]; computing anyway\n";
  const double g = g_of(beta_j);
  return 14.0 * std::pow(g, r0) / (1.0 - g);
}

ThresholdLedger kappa_local(int dimension, double j, double beta, int r0) {
  if (dimension < 1 || r0 < 1 || !(j > 0.0) || !(beta > 0.0))
    throw std::invalid_argument("kappa_local: invalid inputs");
  const double x = beta * j;
  if (x > 1.0 / 200.0)
    throw std::invalid_argument("kappa_local: beta*J must be <= 1/200");
  ThresholdLedger led;
  led.regime = "local";
  led.dimension = dimension;
  led.j = j;
  led.beta = beta;
  led.r0 = r0;
  const double g = g_of(x);
  led.base = g;
  led.eta = x;
  const double c = 14.0 / (1.0 - g);  // Delta(l) = c * g^l
  const SeriesResult s1 = geometric_series(2 * dimension - 1, 0, c, g, r0);
  const SeriesResult s2 = geometric_series(2 * dimension - 2, 1, c, g, r0);
  led = assemble_kappa(std::move(led), c * std::pow(g, r0), s1, s2);
  for (int r = r0; r < r0 + 20; ++r) led.zeta_table.push_back({r, 14.0 * std::pow(g, r)});
  return led;
}

ThresholdLedger kappa_long_range(int dimension, double nu, double g, double k_const, double beta,
                                 int r0) {
  if (dimension < 1 || r0 < 1 || !(g > 0.0) || !(beta > 0.0) || !(k_const > 0.0))
    throw std::invalid_argument("kappa_long_range: invalid inputs");
  if (!(beta * g < 0.25))
    throw std::invalid_argument("kappa_long_range: requires beta*g < 1/4");
  ThresholdLedger led;
  led.regime = "long-range";
  led.dimension = dimension;
  led.g = g;
  led.nu = nu;
  led.k_const = k_const;
  led.beta = beta;
  led.r0 = r0;
  led.eta = beta * g;
  led.base = std::pow(beta * g, (dimension + 1.0) / 2.0);
  led.lambda = depolarizing_rate();
  if (nu <= 4.0 * dimension + 2.0) {
    led.divergent = true;
    led.kappa = std::numeric_limits<double>::infinity();
    led.f_r0 = std::numeric_limits<double>::infinity();
    led.margin = -std::numeric_limits<double>::infinity();
    led.certified = false;
    return led;
  }
  const double q = nu - 2.0 * dimension - 2.0;  // Delta(l) = c * l^{-q}
  const double c = k_const * led.base;
  const SeriesResult s1 = power_series_plain(2 * dimension - 1, c, q, r0);
  const SeriesResult s2 = power_series_linear(2 * dimension - 2, c, q, r0);
  led = assemble_kappa(std::move(led), c * std::pow(static_cast<double>(r0), -q), s1, s2);
  for (int l = r0; l < r0 + 20; ++l)
    led.zeta_table.push_back({l, c * std::pow(static_cast<double>(l), -q)});
  return led;
}

BetaStarResult beta_star_search(const std::string& regime, int dimension, double j_or_g,
                                double nu, double k_const, int r0_min, int r0_max) {
  const bool local = regime == "local";
  if (!local && regime != "long-range")
    throw std::invalid_argument("beta_star_search: regime must be local or long-range");

  auto best_ledger = [&](double beta) {
    ThresholdLedger best;
    best.kappa = std::numeric_limits<double>::infinity();
    best.margin = -std::numeric_limits<double>::infinity();
    for (int r0 = r0_min; r0 <= r0_max; ++r0) {
      ThresholdLedger led = local ? kappa_local(dimension, j_or_g, beta, r0)
                                  : kappa_long_range(dimension, nu, j_or_g, k_const, beta, r0);
      if (led.kappa < best.kappa) best = led;
    }
    return best;
  };

  const double cap = local ? 1.0 / (200.0 * j_or_g) : 0.25 / j_or_g * (1.0 - 1e-12);
  double lo = 0.0, hi = cap;
  if (best_ledger(hi).certified) {
    lo = hi;
  } else {
    while (hi - lo > 1e-9 * cap) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= 0.0) break;
      if (best_ledger(mid).certified)
        lo = mid;
      else
        hi = mid;
    }
  }
  BetaStarResult out;
  out.beta_star = lo;
  if (lo > 0.0) {
    out.ledger = best_ledger(lo);
    out.r0 = out.ledger.r0;
  }
  return out;
}

}  // namespace gibbslab
