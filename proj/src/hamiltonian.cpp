// hamiltonian.cpp — Hamiltonian assembly, restriction, Gibbs/partition
// oracles, and long-range decay certification.
#include "gibbslab/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gibbslab/linalg.hpp"

namespace gibbslab {

namespace {

void validate_terms(const LatticeSpec& spec, const std::vector<InteractionTerm>& terms) {
  const int n = spec.site_count();
  for (const auto& term : terms) {
    if (term.sites.empty()) throw std::invalid_argument("InteractionTerm: empty support");
    for (int s : term.sites)
      if (s < 0 || s >= n) throw std::invalid_argument("InteractionTerm: site out of range");
    for (size_t i = 0; i + 1 < term.sites.size(); ++i)
      if (term.sites[i] >= term.sites[i + 1])
        throw std::invalid_argument("InteractionTerm: sites must be strictly ascending");
    const int dk = 1 << term.sites.size();
    if (term.op.rows() != dk || term.op.cols() != dk)
      throw std::invalid_argument("InteractionTerm: operator dimension != 2^{|support|}");
    const double scale = std::max(1.0, term.op.cwiseAbs().maxCoeff());
    if ((term.op - term.op.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
      throw std::invalid_argument("InteractionTerm: operator is not Hermitian");
  }
}

LocalityStats compute_stats(const LatticeSpec& spec, const std::vector<InteractionTerm>& terms) {
  LocalityStats stats;
  std::vector<int> per_site(spec.site_count(), 0);
  for (const auto& term : terms) {
    stats.h = std::max(stats.h, operator_norm(term.op));
    stats.k = std::max(stats.k, static_cast<int>(term.sites.size()));
    for (int s : term.sites) per_site[s] += 1;
  }
  stats.l = per_site.empty() ? 0 : *std::max_element(per_site.begin(), per_site.end());
  return stats;
}

}  // namespace

SpinHamiltonian build_hamiltonian(const LatticeSpec& spec, std::vector<InteractionTerm> terms) {
  const int n = spec.site_count();
  if (n > kMaxSites)
    throw std::invalid_argument("build_hamiltonian: site count exceeds the dense cap");
  validate_terms(spec, terms);

  SpinHamiltonian h;
  h.lattice = spec;
  h.terms = std::move(terms);
  const int d = 1 << n;
  h.matrix = Matrix::Zero(d, d);
  for (const auto& term : h.terms) h.matrix += embed_on_sites(term.op, term.sites, n);

  Eigen::SelfAdjointEigenSolver<Matrix> es(h.matrix);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("build_hamiltonian: eigendecomposition failed");
  h.evals = es.eigenvalues();
  h.evecs = es.eigenvectors();
  h.stats = compute_stats(spec, h.terms);
  return h;
}

SpinHamiltonian restrict_to(const SpinHamiltonian& h, const std::set<int>& region) {
  const int n = h.sites();
  for (int s : region)
    if (s < 0 || s >= n) throw std::invalid_argument("restrict_to: region outside lattice");
  std::vector<InteractionTerm> kept;
  for (const auto& term : h.terms) {
    bool inside = true;
    for (int s : term.sites) inside = inside && region.count(s) > 0;
    if (inside) kept.push_back(term);
  }
  return build_hamiltonian(h.lattice, std::move(kept));
}

Matrix gibbs_state(const SpinHamiltonian& h, double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta))
    throw std::invalid_argument("gibbs_state: beta must be finite and >= 0");
  // exp(-beta(E_j - E_min)) / sum, in the eigenbasis; shift avoids overflow.
  const double e_min = h.evals.minCoeff();
  RealVector w = (-(beta * (h.evals.array() - e_min))).exp();
  w /= w.sum();
  return h.evecs * w.cast<Complex>().asDiagonal() * h.evecs.adjoint();
}

double partition_value(const SpinHamiltonian& h, double beta) {
  if (!(beta >= 0.0)) throw std::invalid_argument("partition_value: beta must be >= 0");
  return (-(beta * h.evals.array())).exp().sum();
}

LongRangeReport long_range_check(const SpinHamiltonian& h, const LongRangeProfile& profile) {
  LongRangeReport report;
  const int n = h.sites();
  const auto& lat = h.lattice;
  const int diameter = lattice_diameter(lat);

  auto term_diameter = [&](const InteractionTerm& term) {
    int dm = 0;
    for (size_t i = 0; i < term.sites.size(); ++i)
      for (size_t j = i + 1; j < term.sites.size(); ++j)
        dm = std::max(dm, lat.distance(term.sites[i], term.sites[j]));
    return dm;
  };

  for (int i = 0; i < n; ++i) {
    for (int r = 1; r <= std::max(1, diameter); ++r) {
      double sum = 0.0;
      for (const auto& term : h.terms) {
        const bool touches = std::find(term.sites.begin(), term.sites.end(), i) != term.sites.end();
        if (touches && term_diameter(term) <= r) sum += operator_norm(term.op);
      }
      const double bound = profile.g * std::pow(static_cast<double>(r),
                                                static_cast<double>(lat.dimension) - profile.nu);
      const bool pass = sum <= bound + 1e-12;
      report.radial.push_back({i, r, sum, bound, pass});
      report.all_pass = report.all_pass && pass;
    }
    for (int j = i + 1; j < n; ++j) {
      double sum = 0.0;
      for (const auto& term : h.terms) {
        const bool has_i = std::find(term.sites.begin(), term.sites.end(), i) != term.sites.end();
        const bool has_j = std::find(term.sites.begin(), term.sites.end(), j) != term.sites.end();
        if (has_i && has_j) sum += operator_norm(term.op);
      }
      const double bound = profile.g0 * std::pow(lat.distance(i, j) + 1.0, -profile.nu);
      const bool pass = sum <= bound + 1e-12;
      report.pairwise.push_back({i, j, sum, bound, pass});
      report.all_pass = report.all_pass && pass;
    }
  }
  return report;
}

}  // namespace gibbslab
