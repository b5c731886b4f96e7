// lattice.hpp — integer lattice [0, L]^D with the l1 graph metric.
#pragma once

#include <set>
#include <vector>

#include "gibbslab/types.hpp"

namespace gibbslab {

struct LatticeSpec {
  int dimension = 1;    // D >= 1
  int side_length = 0;  // sites indexed by [0, L]^D

  int site_count() const;  // (L+1)^D

  // Coordinates of site index i (row-major over [0, L]^D, site 0 at origin).
  std::vector<int> coords(int site) const;
  int index(const std::vector<int>& c) const;

  // l1 graph distance between sites.
  int distance(int a, int b) const;
};

// All sites within l1 distance r of a; |ball| <= (2r+1)^D.
std::set<int> ball(const LatticeSpec& spec, int a, int r);

// Maximum pairwise distance on the lattice.
int lattice_diameter(const LatticeSpec& spec);

}  // namespace gibbslab
