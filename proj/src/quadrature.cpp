// quadrature.cpp — refining composite-Simpson rule (test oracle only).
#include "gibbslab/quadrature.hpp"

#include <stdexcept>

namespace gibbslab {

namespace {

template <typename Scalar, typename Fn>
Scalar simpson_refining(const Fn& f, double a, double b, double abs_tol, int max_doublings) {
  if (!(b > a)) throw std::invalid_argument("integrate: requires b > a");
  int panels = 16;
  auto composite = [&](int m) {
    const double h = (b - a) / m;
    Scalar acc = f(a) + f(b);
    for (int i = 1; i < m; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * (h / 3.0);
  };
  Scalar prev = composite(panels);
  for (int k = 0; k < max_doublings; ++k) {
    panels *= 2;
    Scalar cur = composite(panels);
    if (std::abs(cur - prev) < abs_tol) return cur;
    prev = cur;
  }
  throw std::runtime_error("integrate: refinement did not converge");
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                 int max_doublings) {
  return simpson_refining<double>(f, a, b, abs_tol, max_doublings);
}

Complex integrate_complex(const std::function<Complex(double)>& f, double a, double b,
                          double abs_tol, int max_doublings) {
  return simpson_refining<Complex>(f, a, b, abs_tol, max_doublings);
}

}  // namespace gibbslab
