// gibbs_lab.cpp — command-line front end for the laboratory.
//
// Subcommands: spectrum, mix, threshold, lr-check, partition. Every command
// loads a model file, runs the corresponding module, writes CSV tables and a
// JSON report into --out-dir, and exits 0 only when all of its configured
// assertions pass. Outputs embed the config hash and seed; a rerun with the
// same configuration and seed is byte-identical.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gibbslab/certificates.hpp"
#include "gibbslab/dynamics.hpp"
#include "gibbslab/estimator.hpp"
#include "gibbslab/filters.hpp"
#include "gibbslab/generator.hpp"
#include "gibbslab/hamiltonian.hpp"
#include "gibbslab/linalg.hpp"
#include "gibbslab/model_io.hpp"
#include "gibbslab/rng.hpp"
#include "gibbslab/types.hpp"

using namespace gibbslab;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// ---------------------------------------------------------------------------
// Shared plumbing
// ---------------------------------------------------------------------------

struct CommonOpts {
  std::string model_path;
  std::string out_dir = "out";
  std::uint64_t seed = 1;
  std::string profile = "default";
};

struct Tolerances {
  double fixed_point;
  double kms;
  double curve;      // analytic-curve and telescoping matches
  double identity;   // exact algebraic identities
  int probes;        // sampled-norm probe count
};

Tolerances tolerances_for(const std::string& profile) {
  if (profile == "strict") return {1e-10, 1e-7, 1e-9, 1e-12, 80};
  return {1e-8, 1e-6, 1e-8, 1e-10, 40};
}

void add_common(CLI::App* cmd, CommonOpts& opts, const std::string& default_model) {
  opts.model_path = default_model;
  cmd->add_option("--model", opts.model_path, "model JSON file")
      ->capture_default_str();
  cmd->add_option("--seed", opts.seed, "RNG seed embedded in all outputs")
      ->capture_default_str();
  cmd->add_option("--out-dir", opts.out_dir, "output directory")->capture_default_str();
  cmd->add_option("--tolerance-profile", opts.profile, "numerical strictness")
      ->check(CLI::IsMember({"strict", "default"}))
      ->capture_default_str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Collects pass/fail assertions; the command exit code is derived from it.
struct Assertions {
  int checked = 0;
  std::vector<std::string> failures;

  void require(bool cond, const std::string& msg) {
    ++checked;
    if (!cond) failures.push_back(msg);
  }
  void require_le(double value, double bound, const std::string& what) {
    ++checked;
    if (!(value <= bound)) {
      std::ostringstream os;
      os.precision(6);
      os << std::scientific << what << ": " << value << " > " << bound;
      failures.push_back(os.str());
    }
  }
  int finish(const std::string& command) const {
    if (failures.empty()) {
      std::cout << command << ": " << checked << " assertions passed\n";
      return 0;
    }
    std::cerr << command << ": " << failures.size() << " of " << checked
              << " assertions FAILED\n";
    for (const std::string& f : failures) std::cerr << "  - " << f << "\n";
    return 1;
  }
};

// Deterministic output writer: CSV numeric fields go through format_double,
// and every file starts with (or contains) the config hash + seed.
class Outputs {
 public:
  Outputs(const CommonOpts& opts, const std::string& canonical_config)
      : dir_(opts.out_dir), seed_(opts.seed), canonical_(canonical_config) {
    hash_ = config_hash(canonical_);
    fs::create_directories(dir_);
  }

  std::uint64_t hash() const { return hash_; }

  void write_csv(const std::string& name, const std::string& header,
                 const std::vector<std::vector<std::string>>& rows) const {
    std::ofstream out(dir_ / name, std::ios::binary);
    out << "# config_hash=" << hash_hex(hash_) << " seed=" << seed_ << "\n";
    out << header << "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
      out << "\n";
    }
  }

  void write_json(const std::string& name, json payload) const {
    payload["config_hash"] = hash_hex(hash_);
    payload["seed"] = seed_;
    payload["canonical_config"] = canonical_;
    std::ofstream out(dir_ / name, std::ios::binary);
    out << payload.dump(2) << "\n";
  }

 private:
  fs::path dir_;
  std::uint64_t seed_;
  std::string canonical_;
  std::uint64_t hash_ = 0;
};

std::string canonical_config(const std::string& command, const CommonOpts& opts,
                             const std::string& extra) {
  std::ostringstream os;
  os << "cmd=" << command << ";model=" << opts.model_path
     << ";model_hash=" << hash_hex(config_hash(read_file(opts.model_path)))
     << ";seed=" << opts.seed << ";profile=" << opts.profile;
  if (!extra.empty()) os << ";" << extra;
  return os.str();
}

std::string fd(double x) { return format_double(x); }

json ledger_json(const ThresholdLedger& led) {
  json j;
  j["regime"] = led.regime;
  j["dimension"] = led.dimension;
  j["beta"] = led.beta;
  j["j"] = led.j;
  j["nu"] = led.nu;
  j["g"] = led.g;
  j["k_const"] = led.k_const;
  j["r0"] = led.r0;
  j["eta"] = led.eta;
  j["base"] = led.base;
  j["delta_r0"] = led.delta_r0;
  j["f_r0"] = led.f_r0;
  j["kappa"] = led.kappa;
  j["lambda"] = led.lambda;
  j["margin"] = led.margin;
  j["certified"] = led.certified;
  j["divergent"] = led.divergent;
  json table = json::array();
  for (const auto& [r, z] : led.zeta_table) table.push_back({{"r", r}, {"zeta", z}});
  j["zeta_table"] = table;
  return j;
}

ThresholdLedger best_local_ledger(int dimension, double j, double beta, int r0_max) {
  ThresholdLedger best = kappa_local(dimension, j, beta, 1);
  for (int r0 = 2; r0 <= r0_max; ++r0) {
    const ThresholdLedger led = kappa_local(dimension, j, beta, r0);
    if (led.kappa < best.kappa) best = led;
  }
  return best;
}

ThresholdLedger best_long_range_ledger(int dimension, double nu, double g, double k_const,
                                       double beta, int r0_max) {
  ThresholdLedger best = kappa_long_range(dimension, nu, g, k_const, beta, 1);
  for (int r0 = 2; r0 <= r0_max; ++r0) {
    const ThresholdLedger led = kappa_long_range(dimension, nu, g, k_const, beta, r0);
    if (led.kappa < best.kappa) best = led;
  }
  return best;
}

// ---------------------------------------------------------------------------
// spectrum — eigenvalues, partition table, Gibbs diagnostics
// ---------------------------------------------------------------------------

int cmd_spectrum(const CommonOpts& opts, const std::vector<double>& betas) {
  const Tolerances tol = tolerances_for(opts.profile);
  std::ostringstream extra;
  extra << "betas=";
  for (std::size_t i = 0; i < betas.size(); ++i) extra << (i ? "," : "") << fd(betas[i]);
  const Outputs out(opts, canonical_config("spectrum", opts, extra.str()));

  const SpinHamiltonian h = load_model(opts.model_path);
  Assertions as;

  std::vector<std::vector<std::string>> eig_rows;
  for (int k = 0; k < h.dim(); ++k) {
    eig_rows.push_back({std::to_string(k), fd(h.evals(k))});
    if (k > 0) as.require(h.evals(k) >= h.evals(k - 1), "eigenvalues not ascending");
  }
  out.write_csv("spectrum_eigenvalues.csv", "index,eigenvalue", eig_rows);

  std::vector<std::vector<std::string>> z_rows;
  json z_table = json::array();
  for (double beta : betas) {
    const double z = partition_value(h, beta);
    const Matrix sigma = gibbs_state(h, beta);
    const RealVector sev = sigma.selfadjointView<Eigen::Lower>().eigenvalues();
    const double min_eig = sev.minCoeff();
    const double trace_defect = std::abs(sigma.trace().real() - 1.0);
    const double purity = (sigma * sigma).trace().real();
    z_rows.push_back({fd(beta), fd(z), fd(std::log(z)), fd(min_eig), fd(trace_defect),
                      fd(purity)});
    z_table.push_back({{"beta", beta}, {"partition_value", z}, {"min_eigenvalue", min_eig}});

    as.require(min_eig >= -tol.identity, "Gibbs state not PSD at beta=" + fd(beta));
    as.require_le(trace_defect, tol.identity, "Gibbs trace defect at beta=" + fd(beta));
    if (beta == 0.0)
      as.require(std::abs(z - std::pow(2.0, h.sites())) <= tol.identity * z,
                 "Z(0) != 2^n");
    // Independent evaluation straight from the eigenvalue list.
    double direct = 0.0;
    for (int k = 0; k < h.dim(); ++k) direct += std::exp(-beta * h.evals(k));
    as.require(std::abs(z - direct) <= 1e-12 * direct,
               "partition value vs direct eigenvalue sum at beta=" + fd(beta));
  }
  out.write_csv("spectrum_partition.csv",
                "beta,partition_value,log_partition,gibbs_min_eigenvalue,"
                "gibbs_trace_defect,gibbs_purity",
                z_rows);

  json rep;
  rep["model"] = opts.model_path;
  rep["n_sites"] = h.sites();
  rep["hilbert_dim"] = h.dim();
  rep["coupling"] = {{"h", h.stats.h}, {"k", h.stats.k}, {"l", h.stats.l},
                     {"j", h.stats.j()}};
  rep["ground_energy"] = h.evals(0);
  rep["spectral_width"] = h.evals(h.dim() - 1) - h.evals(0);
  rep["partition_table"] = z_table;
  out.write_json("spectrum_report.json", rep);

  return as.finish("spectrum");
}

// ---------------------------------------------------------------------------
// mix — trajectories, gap, mixing time, detailed-balance residual
// ---------------------------------------------------------------------------

Matrix analytic_depolarized_product(const std::vector<Matrix>& site_factors, double t) {
  const double w = std::exp(-depolarizing_rate() * t);
  Matrix state = Matrix::Identity(1, 1);
  for (const Matrix& factor : site_factors) {
    const Matrix mixed = w * factor + (1.0 - w) * 0.5 * Matrix::Identity(2, 2);
    state = kron(state, mixed);
  }
  return state;
}

int cmd_mix(const CommonOpts& opts, double beta, double eps, double t_max, int t_count,
            int haar_states, const std::vector<std::string>& sweep_models) {
  const Tolerances tol = tolerances_for(opts.profile);
  std::ostringstream extra;
  extra << "beta=" << fd(beta) << ";eps=" << fd(eps) << ";t_max=" << fd(t_max)
        << ";t_count=" << t_count << ";haar_states=" << haar_states;
  for (const std::string& m : sweep_models) extra << ";sweep=" << m;
  const Outputs out(opts, canonical_config("mix", opts, extra.str()));

  const SpinHamiltonian h = load_model(opts.model_path);
  Assertions as;

  // Warn (not fail) outside the certified high-temperature range.
  const double beta_star = beta_star_search("local", 1, std::max(h.stats.j(), 1e-12)).beta_star;
  const bool certified_range = beta <= beta_star;
  if (!certified_range)
    std::cerr << "warning: beta=" << fd(beta) << " above certified beta*=" << fd(beta_star)
              << "; mixing certificates do not apply\n";

  const GeneratorMatrix gen = full_generator(h, beta);
  const Matrix sigma = gibbs_state(h, beta);
  const Matrix fp = fixed_point(gen);
  const double fp_dist = trace_distance(fp, sigma);
  as.require_le(fp_dist, tol.fixed_point, "fixed point vs Gibbs state");
  const double kms = kms_residual(gen, sigma, 50, opts.seed);
  as.require_le(kms, tol.kms, "detailed-balance residual");
  const GapResult gap = spectral_gap(gen);
  as.require(gap.gap > 0.0, "spectral gap not positive");
  const MixingResult mixing = mixing_time(gen, eps);
  as.require(mixing.time >= 0.0, "mixing time negative");

  std::vector<double> times;
  for (int i = 0; i < t_count; ++i)
    times.push_back(t_max * static_cast<double>(i) / std::max(1, t_count - 1));

  // Initial set: computational basis states plus seeded Haar pure states.
  struct Initial {
    std::string id;
    Matrix rho;
    std::vector<Matrix> site_factors;  // nonempty for product states
  };
  std::vector<Initial> initials;
  for (int b = 0; b < h.dim(); ++b) {
    Matrix rho = Matrix::Zero(h.dim(), h.dim());
    rho(b, b) = 1.0;
    std::vector<Matrix> factors;
    for (int a = h.sites() - 1; a >= 0; --a) {
      Matrix f = Matrix::Zero(2, 2);
      f(((b >> a) & 1), ((b >> a) & 1)) = 1.0;
      factors.push_back(f);
    }
    initials.push_back({"basis_" + std::to_string(b), rho, factors});
  }
  Rng rng(opts.seed);
  for (int k = 0; k < haar_states; ++k)
    initials.push_back({"haar_" + std::to_string(k), rng.pure_state(h.dim()), {}});

  std::vector<std::vector<std::string>> traj_rows;
  for (const Initial& init : initials) {
    const EvolutionResult evo = evolve_state(gen, init.rho, times, &sigma);
    for (std::size_t i = 0; i < times.size(); ++i) {
      traj_rows.push_back({init.id, fd(times[i]), fd(evo.trace_distances[i])});
      if (i > 0)
        as.require(evo.trace_distances[i] <= evo.trace_distances[i - 1] + 1e-9,
                   init.id + ": trace distance not monotone at t=" + fd(times[i]));
      // At beta = 0 the semigroup factorizes per site; compare the product
      // closed form for every product initial state.
      if (beta == 0.0 && !init.site_factors.empty()) {
        const Matrix analytic = analytic_depolarized_product(init.site_factors, times[i]);
        as.require_le(trace_distance(evo.states[i], analytic), tol.curve,
                      init.id + ": depolarizing closed-form mismatch at t=" + fd(times[i]));
      }
    }
    as.require(evo.trace_distances.front() <= 1.0 + 1e-12,
               init.id + ": initial distance above 1");
  }
  out.write_csv("mix_trajectories.csv", "state,time,trace_distance", traj_rows);

  // Optional n-sweep: mixing times across a model family at this beta.
  json sweep = json::array();
  if (!sweep_models.empty()) {
    std::vector<std::vector<std::string>> rows;
    for (const std::string& path : sweep_models) {
      CommonOpts sub = opts;
      sub.model_path = path;
      const SpinHamiltonian hs = load_model(path);
      const MixingResult ms = mixing_time(full_generator(hs, beta), eps);
      rows.push_back({path, std::to_string(hs.sites()), fd(ms.time)});
      sweep.push_back({{"model", path}, {"n", hs.sites()}, {"t_eps", ms.time}});
      as.require(ms.time >= 0.0, "sweep mixing time negative for " + path);
    }
    out.write_csv("mix_scaling.csv", "model,n,t_eps", rows);
  }

  json rep;
  rep["model"] = opts.model_path;
  rep["beta"] = beta;
  rep["beta_star_local"] = beta_star;
  rep["certified_range"] = certified_range;
  rep["eps"] = eps;
  rep["spectral_gap"] = gap.gap;
  rep["mixing_time"] = mixing.time;
  rep["n_initial_states"] = static_cast<int>(initials.size());
  rep["fixed_point_distance"] = fp_dist;
  rep["kms_residual"] = kms;
  if (!sweep.empty()) rep["sweep"] = sweep;
  out.write_json("mix_report.json", rep);

  return as.finish("mix");
}

// ---------------------------------------------------------------------------
// threshold — kappa sweeps and beta* search, ledgers to disk
// ---------------------------------------------------------------------------

int cmd_threshold(const CommonOpts& opts, const std::string& regime, int dimension, double j,
                  double nu, double g, double k_const, int r0_max, int grid_points) {
  std::ostringstream extra;
  extra << "regime=" << regime << ";dimension=" << dimension << ";j=" << fd(j)
        << ";nu=" << fd(nu) << ";g=" << fd(g) << ";k_const=" << fd(k_const)
        << ";r0_max=" << r0_max << ";grid=" << grid_points;
  const Outputs out(opts, canonical_config("threshold", opts, extra.str()));
  Assertions as;

  const bool local = (regime == "local");
  json rep;
  rep["regime"] = regime;
  rep["dimension"] = dimension;

  if (!local && nu <= 4.0 * dimension + 2.0) {
    // Divergent tail: record the refusal and stop; nothing is certified.
    const ThresholdLedger led = kappa_long_range(dimension, nu, g, k_const, 1e-3, 1);
    as.require(led.divergent && !led.certified, "divergent tail not flagged");
    rep["divergent"] = true;
    rep["ledger"] = ledger_json(led);
    out.write_csv("threshold_sweep.csv",
                  "beta,coupling,kappa,lambda,margin,r0_best,certified",
                  {{fd(1e-3), fd(1e-3 * g), "inf", fd(led.lambda), "-inf", "1", "0"}});
    out.write_json("threshold_report.json", rep);
    return as.finish("threshold");
  }

  const BetaStarResult bs =
      local ? beta_star_search("local", dimension, j)
            : beta_star_search("long-range", dimension, g, nu, k_const, 1, r0_max);
  as.require(bs.ledger.certified && bs.ledger.margin >= 0.0, "beta* ledger not certified");
  rep["beta_star"] = bs.beta_star;
  rep["beta_star_r0"] = bs.r0;
  rep["ledger_at_beta_star"] = ledger_json(bs.ledger);

  // Geometric beta sweep around beta*: kappa must be monotone in beta and
  // certification must flip exactly at the threshold.
  std::vector<std::vector<std::string>> rows;
  double prev_kappa = -1.0;
  for (int i = 0; i < grid_points; ++i) {
    const double factor =
        0.25 * std::pow(8.0, static_cast<double>(i) / std::max(1, grid_points - 1));
    const double beta = factor * bs.beta_star;
    const ThresholdLedger led = local
                                    ? best_local_ledger(dimension, j, beta, r0_max)
                                    : best_long_range_ledger(dimension, nu, g, k_const, beta,
                                                             r0_max);
    rows.push_back({fd(beta), fd(local ? beta * j : beta * g), fd(led.kappa), fd(led.lambda),
                    fd(led.margin), std::to_string(led.r0), led.certified ? "1" : "0"});
    as.require(led.kappa >= prev_kappa - 1e-15,
               "kappa not monotone in beta at grid point " + std::to_string(i));
    prev_kappa = led.kappa;
    const bool should_certify = beta <= bs.beta_star * (1.0 - 1e-9);
    if (should_certify)
      as.require(led.certified, "not certified below beta* at grid point " + std::to_string(i));
    if (beta >= bs.beta_star * (1.0 + 1e-9))
      as.require(!led.certified, "certified above beta* at grid point " + std::to_string(i));
  }
  out.write_csv("threshold_sweep.csv", "beta,coupling,kappa,lambda,margin,r0_best,certified",
                rows);

  if (local && dimension == 1) {
    // Reference point: betaJ = 1/615 with r0 = 4 must certify.
    const ThresholdLedger ref = kappa_local(1, j, (1.0 / 615.0) / j, 4);
    as.require(ref.certified && ref.margin > 0.0, "betaJ=1/615 reference does not certify");
    rep["reference_betaJ_615"] = ledger_json(ref);
  }
  out.write_json("threshold_report.json", rep);
  return as.finish("threshold");
}

// ---------------------------------------------------------------------------
// lr-check — light-cone defects and generator truncation distances
// ---------------------------------------------------------------------------

int cmd_lrcheck(const CommonOpts& opts, int r_max, const std::vector<double>& times, int site,
                bool long_range, double c_h, double v_lr, double nu, double beta_j,
                bool skip_truncation) {
  const Tolerances tol = tolerances_for(opts.profile);
  std::ostringstream extra;
  extra << "r_max=" << r_max << ";site=" << site << ";long_range=" << long_range
        << ";c_h=" << fd(c_h) << ";v_lr=" << fd(v_lr) << ";nu=" << fd(nu)
        << ";beta_j=" << fd(beta_j) << ";skip_truncation=" << skip_truncation;
  for (double t : times) extra << ";t=" << fd(t);
  const Outputs out(opts, canonical_config("lr-check", opts, extra.str()));

  const SpinHamiltonian h = load_model(opts.model_path);
  Assertions as;
  const int a = (site >= 0) ? site : h.sites() / 2;

  std::vector<std::vector<std::string>> defect_rows;
  for (int alpha = 1; alpha <= 3; ++alpha) {
    for (int r = 1; r <= r_max; ++r) {
      for (double t : times) {
        if (long_range && r <= v_lr * t) continue;  // bound undefined inside the cone
        const DefectResult res = long_range
                                     ? lr_defect_long_range(h, a, alpha, r, t, c_h, v_lr, nu)
                                     : lr_defect(h, a, alpha, r, t);
        const bool pass = res.defect <= res.bound + 1e-10;
        defect_rows.push_back({std::to_string(a), std::to_string(alpha), std::to_string(r),
                               fd(t), fd(res.defect), fd(res.bound), pass ? "1" : "0"});
        as.require(pass, "defect above bound at alpha=" + std::to_string(alpha) +
                             " r=" + std::to_string(r) + " t=" + fd(t));
      }
    }
  }
  out.write_csv("lr_defect.csv", "site,alpha,r,t,defect,bound,pass", defect_rows);

  json rep;
  rep["model"] = opts.model_path;
  rep["site"] = a;
  rep["mode"] = long_range ? "long-range" : "local";
  rep["coupling_j"] = h.stats.j();

  if (!skip_truncation && !long_range) {
    const double beta = beta_j / h.stats.j();
    FilterFunctions filters(beta);
    const GeneratorMatrix full_site = local_generator(h, a, filters);
    std::vector<std::vector<std::string>> trunc_rows;
    const int r_cap = std::min(r_max, std::max(h.sites() - 1 - a, a));
    for (int r = 1; r <= r_cap; ++r) {
      const GeneratorMatrix trunc = truncated_local_generator(h, a, r, filters);
      const double dist = generator_distance_lower_bound(trunc.adjoint(), full_site.adjoint(),
                                                         h.sites(), tol.probes, opts.seed + r);
      const ZetaBound z = zeta_bound(r, beta_j);
      const bool pass = dist <= z.simplified + 1e-12;
      trunc_rows.push_back({std::to_string(r), fd(dist), fd(z.three_term), fd(z.simplified),
                            pass ? "1" : "0"});
      as.require(pass, "truncation distance above zeta at r=" + std::to_string(r));
    }
    out.write_csv("lr_truncation.csv", "r,sampled_distance,zeta_three_term,zeta_simplified,pass",
                  trunc_rows);
    rep["beta"] = beta;
    rep["beta_j"] = beta_j;
  }

  out.write_json("lr_report.json", rep);
  return as.finish("lr-check");
}

// ---------------------------------------------------------------------------
// partition — annealing estimator and success-probability harness
// ---------------------------------------------------------------------------

int cmd_partition(const CommonOpts& opts, double beta_min, double beta_max, double c,
                  double eps, double eps_b, int trials, double min_success_lcb) {
  if (!(eps > 0.0)) throw CLI::ValidationError("--eps must be positive");
  if (trials > 1 && trials < 100)
    throw CLI::ValidationError("--trials must be 1 or >= 100 (confidence bound needs samples)");
  const Tolerances tol = tolerances_for(opts.profile);
  std::ostringstream extra;
  extra << "beta_min=" << fd(beta_min) << ";beta_max=" << fd(beta_max) << ";c=" << fd(c)
        << ";eps=" << fd(eps) << ";eps_b=" << fd(eps_b) << ";trials=" << trials
        << ";min_success_lcb=" << fd(min_success_lcb);
  const Outputs out(opts, canonical_config("partition", opts, extra.str()));

  const SpinHamiltonian h = load_model(opts.model_path);
  Assertions as;

  const AnnealingSchedule schedule = build_uniform_schedule(h, beta_min, beta_max, c);
  as.require(schedule.ratio_bound <= std::exp(c) + 1e-12, "per-step ratio bound above e^c");

  // Telescoping identity of the exact ratios, straight from the spectrum.
  double product = 1.0;
  for (int i = 0; i + 1 < schedule.length(); ++i)
    product *= exact_ratio(h, schedule.betas[i], schedule.betas[i + 1]);
  const double shift = std::exp(beta_max * h.evals(0)) * partition_value(h, beta_max) /
                       (std::exp(beta_min * h.evals(0)) * partition_value(h, beta_min));
  as.require(std::abs(product - shift) <= tol.curve * std::abs(shift),
             "telescoping product vs exact partition ratio");

  EstimateReport rep_data;
  if (trials <= 1) {
    rep_data = dyer_frieze_estimate(h, schedule, eps, eps_b, opts.seed);
  } else {
    HarnessConfig config;
    config.beta_min = beta_min;
    config.beta_max = beta_max;
    config.c = c;
    config.eps = eps;
    config.eps_b = eps_b;
    config.seed = opts.seed;
    rep_data = success_probability_harness(h, config, trials);
    as.require(rep_data.success_lower_confidence >= min_success_lcb,
               "99% success lower bound below threshold");
  }
  as.require(std::abs(rep_data.target - partition_value(h, beta_max)) <=
                 1e-12 * rep_data.target,
             "report target vs exact partition value");
  for (std::size_t i = 0; i < rep_data.step_second_moment_ratio.size(); ++i)
    as.require(rep_data.step_second_moment_ratio[i] <=
                   2.0 * rep_data.ratio_bound + 1e-12,
               "step " + std::to_string(i) + " second moment above 2B");
  as.require(!rep_data.failed || rep_data.estimate == 0.0, "failed flag inconsistent");

  std::vector<std::vector<std::string>> step_rows;
  for (int i = 0; i + 1 < schedule.length(); ++i) {
    const double exact = exact_ratio(h, schedule.betas[i], schedule.betas[i + 1]);
    const double mean = (i < static_cast<int>(rep_data.step_means.size()))
                            ? rep_data.step_means[i]
                            : 0.0;
    const long long samples = (i < static_cast<int>(rep_data.samples_per_step.size()))
                                  ? rep_data.samples_per_step[i]
                                  : 0;
    const double m2 = (i < static_cast<int>(rep_data.step_second_moment_ratio.size()))
                          ? rep_data.step_second_moment_ratio[i]
                          : 0.0;
    step_rows.push_back({std::to_string(i), fd(schedule.betas[i]), fd(schedule.betas[i + 1]),
                         fd(exact), fd(mean), std::to_string(samples), fd(m2)});
  }
  out.write_csv("partition_steps.csv",
                "step,beta_lo,beta_hi,exact_ratio,sampled_mean,samples,second_moment_ratio",
                step_rows);

  json rep;
  rep["model"] = opts.model_path;
  rep["beta_min"] = beta_min;
  rep["beta_max"] = beta_max;
  rep["c"] = c;
  rep["eps"] = eps;
  rep["eps_b"] = eps_b;
  rep["schedule_length"] = schedule.length();
  rep["ratio_bound"] = schedule.ratio_bound;
  rep["ratio_bound_used"] = rep_data.ratio_bound_used;
  rep["estimate"] = rep_data.estimate;
  rep["target"] = rep_data.target;
  rep["relative_error"] = rep_data.relative_error;
  rep["failed"] = rep_data.failed;
  if (trials > 1) {
    rep["trials"] = rep_data.trials;
    rep["successes"] = rep_data.successes;
    rep["success_fraction"] = rep_data.success_fraction;
    rep["success_lower_confidence"] = rep_data.success_lower_confidence;
  }
  out.write_json("partition_report.json", rep);

  return as.finish("partition");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"desk-scale laboratory for detailed-balanced Gibbs samplers"};
  app.require_subcommand(1);

  // spectrum
  CommonOpts spectrum_opts;
  std::vector<double> spectrum_betas = {0.0, 0.25, 0.5, 1.0};
  CLI::App* spectrum = app.add_subcommand("spectrum", "eigenvalues and partition table");
  add_common(spectrum, spectrum_opts, "models/ising_chain_3.json");
  spectrum->add_option("--betas", spectrum_betas, "inverse temperatures")->delimiter(',');

  // mix
  CommonOpts mix_opts;
  double mix_beta = 0.0, mix_eps = 0.05, mix_tmax = 10.0;
  int mix_tcount = 21, mix_haar = 3;
  std::vector<std::string> mix_sweep;
  CLI::App* mix = app.add_subcommand("mix", "dynamics, gap, mixing time");
  add_common(mix, mix_opts, "models/ising_chain_2.json");
  mix->add_option("--beta", mix_beta, "inverse temperature")->capture_default_str();
  mix->add_option("--eps", mix_eps, "mixing accuracy")->capture_default_str();
  mix->add_option("--t-max", mix_tmax, "trajectory horizon")->capture_default_str();
  mix->add_option("--t-count", mix_tcount, "trajectory points")->capture_default_str();
  mix->add_option("--haar-states", mix_haar, "random pure initial states")
      ->capture_default_str();
  mix->add_option("--sweep-models", mix_sweep, "model files for the n-sweep table")
      ->delimiter(',');

  // threshold
  CommonOpts threshold_opts;
  std::string regime = "local";
  int dimension = 1, r0_max = 60, grid_points = 13;
  double thr_j = 1.0, thr_nu = 7.0, thr_g = 1.0, thr_k = 1.0;
  CLI::App* threshold = app.add_subcommand("threshold", "kappa sweeps and beta* search");
  add_common(threshold, threshold_opts, "models/ising_chain_3.json");
  threshold->add_option("--regime", regime, "certificate regime")
      ->check(CLI::IsMember({"local", "long-range"}))
      ->capture_default_str();
  threshold->add_option("--dimension", dimension, "lattice dimension")->capture_default_str();
  threshold->add_option("--j", thr_j, "local coupling J")->capture_default_str();
  threshold->add_option("--nu", thr_nu, "long-range decay exponent")->capture_default_str();
  threshold->add_option("--g", thr_g, "long-range coupling g")->capture_default_str();
  threshold->add_option("--k-const", thr_k, "long-range constant K")->capture_default_str();
  threshold->add_option("--r0-max", r0_max, "max truncation radius in sweeps")
      ->capture_default_str();
  threshold->add_option("--grid", grid_points, "beta sweep points")->capture_default_str();

  // lr-check
  CommonOpts lr_opts;
  int lr_rmax = 4, lr_site = -1;
  std::vector<double> lr_times = {0.25, 0.5, 0.75, 1.0};
  bool lr_long_range = false, lr_skip_trunc = false;
  double lr_ch = 1.0, lr_vlr = 1.0, lr_nu = 7.0, lr_betaj = 1.0 / 615.0;
  CLI::App* lrcheck = app.add_subcommand("lr-check", "light-cone and truncation checks");
  add_common(lrcheck, lr_opts, "models/ising_chain_5.json");
  lrcheck->add_option("--r-max", lr_rmax, "max ball radius")->capture_default_str();
  lrcheck->add_option("--site", lr_site, "observable site (-1 = center)")
      ->capture_default_str();
  lrcheck->add_option("--times", lr_times, "evolution times")->delimiter(',');
  lrcheck->add_flag("--long-range", lr_long_range, "use the power-law defect bound");
  lrcheck->add_option("--c-h", lr_ch, "power-law bound constant C_H")->capture_default_str();
  lrcheck->add_option("--v-lr", lr_vlr, "power-law velocity")->capture_default_str();
  lrcheck->add_option("--nu", lr_nu, "power-law decay exponent")->capture_default_str();
  lrcheck->add_option("--beta-j", lr_betaj, "betaJ for the truncation table")
      ->capture_default_str();
  lrcheck->add_flag("--skip-truncation", lr_skip_trunc, "skip generator truncation distances");

  // partition
  CommonOpts part_opts;
  double part_bmin = 0.0, part_bmax = 0.5, part_c = 0.25, part_eps = 0.1, part_epsb = 0.0;
  int part_trials = 1;
  double part_min_lcb = 0.0;
  CLI::App* partition = app.add_subcommand("partition", "annealing partition estimator");
  add_common(partition, part_opts, "models/single_z.json");
  partition->add_option("--beta-min", part_bmin, "schedule start")->capture_default_str();
  partition->add_option("--beta-max", part_bmax, "schedule end")->capture_default_str();
  partition->add_option("--c", part_c, "per-step log-ratio budget")->capture_default_str();
  partition->add_option("--eps", part_eps, "target relative error")->capture_default_str();
  partition->add_option("--eps-b", part_epsb, "injected block-encoding error")
      ->capture_default_str();
  partition->add_option("--trials", part_trials, "harness trials (1 = single estimate)")
      ->capture_default_str();
  partition->add_option("--min-success-lcb", part_min_lcb,
                        "required 99% success lower bound (harness mode)")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (spectrum->parsed()) return cmd_spectrum(spectrum_opts, spectrum_betas);
    if (mix->parsed())
      return cmd_mix(mix_opts, mix_beta, mix_eps, mix_tmax, mix_tcount, mix_haar, mix_sweep);
    if (threshold->parsed())
      return cmd_threshold(threshold_opts, regime, dimension, thr_j, thr_nu, thr_g, thr_k,
                           r0_max, grid_points);
    if (lrcheck->parsed())
      return cmd_lrcheck(lr_opts, lr_rmax, lr_times, lr_site, lr_long_range, lr_ch, lr_vlr,
                         lr_nu, lr_betaj, lr_skip_trunc);
    if (partition->parsed())
      return cmd_partition(part_opts, part_bmin, part_bmax, part_c, part_eps, part_epsb,
                           part_trials, part_min_lcb);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
