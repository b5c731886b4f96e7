// hamiltonian.hpp — lattice spin Hamiltonians: construction, restriction,
// eigensystem, locality statistics, Gibbs/partition oracles, and long-range
// decay certification.
#pragma once

#include <set>
#include <string>
#include <vector>

#include "gibbslab/lattice.hpp"
#include "gibbslab/types.hpp"

namespace gibbslab {

// Hard cap on the number of sites; dense exact linear algebra only.
inline constexpr int kMaxSites = 6;

struct InteractionTerm {
  std::vector<int> sites;  // ascending support
  Matrix op;               // Hermitian, dimension 2^{|sites|}
};

struct LocalityStats {
  double h = 0.0;  // max term operator norm
  int k = 0;       // max support size
  int l = 0;       // max number of terms touching any one site
  double j() const { return h * static_cast<double>(k) * static_cast<double>(l); }
};

struct SpinHamiltonian {
  LatticeSpec lattice;
  std::vector<InteractionTerm> terms;
  Matrix matrix;        // 2^n x 2^n Hermitian
  RealVector evals;     // ascending
  Matrix evecs;         // unitary, columns are eigenvectors
  LocalityStats stats;

  int sites() const { return lattice.site_count(); }
  int dim() const { return static_cast<int>(matrix.rows()); }
};

SpinHamiltonian build_hamiltonian(const LatticeSpec& spec, std::vector<InteractionTerm> terms);

// Keep exactly the terms with support contained in region, embedded on the
// full Hilbert space (identity elsewhere).
SpinHamiltonian restrict_to(const SpinHamiltonian& h, const std::set<int>& region);

Matrix gibbs_state(const SpinHamiltonian& h, double beta);
double partition_value(const SpinHamiltonian& h, double beta);

struct LongRangeProfile {
  double g = 1.0;   // per-site radial scale
  double g0 = 1.0;  // pairwise scale
  double nu = 3.0;  // decay exponent
};

struct LongRangeReport {
  struct RadialRow {
    int site;
    int radius;
    double measured;  // sum of ||h_X|| over terms with diam <= r touching site
    double bound;     // g * r^{D - nu}
    bool pass;
  };
  struct PairRow {
    int site_i, site_j;
    double measured;  // sum of ||h_X|| over terms containing both sites
    double bound;     // g0 * (dist + 1)^{-nu}
    bool pass;
  };
  std::vector<RadialRow> radial;
  std::vector<PairRow> pairwise;
  bool all_pass = true;
};

LongRangeReport long_range_check(const SpinHamiltonian& h, const LongRangeProfile& profile);

}  // namespace gibbslab
