// quadrature.hpp — refining composite-Simpson quadrature, used only as an
// independent oracle for the analytic frequency kernels in tests and the
// acceptance gate. Production assembly never integrates numerically.
#pragma once

#include <functional>

#include "gibbslab/types.hpp"

namespace gibbslab {

// Integrate f on [a, b] with composite Simpson, doubling the panel count
// until two successive refinements differ by less than abs_tol (Richardson
// stopping rule). Throws std::runtime_error if max_doublings is exhausted.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-10, int max_doublings = 24);

Complex integrate_complex(const std::function<Complex(double)>& f, double a, double b,
                          double abs_tol = 1e-10, int max_doublings = 24);

}  // namespace gibbslab
