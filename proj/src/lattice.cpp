// lattice.cpp — integer-lattice indexing and l1 balls.
#include "gibbslab/lattice.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace gibbslab {

int LatticeSpec::site_count() const {
  if (dimension < 1) throw std::invalid_argument("LatticeSpec: dimension must be >= 1");
  if (side_length < 0) throw std::invalid_argument("LatticeSpec: side_length must be >= 0");
  int n = 1;
  for (int d = 0; d < dimension; ++d) n *= side_length + 1;
  return n;
}

std::vector<int> LatticeSpec::coords(int site) const {
  const int n = site_count();
  if (site < 0 || site >= n) throw std::invalid_argument("LatticeSpec: site out of range");
  std::vector<int> c(dimension);
  for (int d = dimension - 1; d >= 0; --d) {
    c[d] = site % (side_length + 1);
    site /= side_length + 1;
  }
  return c;
}

int LatticeSpec::index(const std::vector<int>& c) const {
  if (static_cast<int>(c.size()) != dimension)
    throw std::invalid_argument("LatticeSpec: coordinate arity mismatch");
  int idx = 0;
  for (int d = 0; d < dimension; ++d) {
    if (c[d] < 0 || c[d] > side_length)
      throw std::invalid_argument("LatticeSpec: coordinate out of range");
    idx = idx * (side_length + 1) + c[d];
  }
  return idx;
}

int LatticeSpec::distance(int a, int b) const {
  const auto ca = coords(a);
  const auto cb = coords(b);
  int dist = 0;
  for (int d = 0; d < dimension; ++d) dist += std::abs(ca[d] - cb[d]);
  return dist;
}

std::set<int> ball(const LatticeSpec& spec, int a, int r) {
  if (r < 0) throw std::invalid_argument("ball: radius must be >= 0");
  std::set<int> out;
  const int n = spec.site_count();
  for (int b = 0; b < n; ++b)
    if (spec.distance(a, b) <= r) out.insert(b);
  return out;
}

int lattice_diameter(const LatticeSpec& spec) {
  return spec.dimension * spec.side_length;
}

}  // namespace gibbslab
