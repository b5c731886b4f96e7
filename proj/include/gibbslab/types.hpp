// types.hpp — shared scalar/matrix aliases for the gibbslab core.
#pragma once

#include <complex>
#include <Eigen/Dense>

namespace gibbslab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

// Decay rate of the fully depolarizing limit of the per-site generator,
// 1/(sqrt(2) e^{1/4}).
inline double depolarizing_rate() { return 1.0 / (std::sqrt(2.0) * std::exp(0.25)); }

}  // namespace gibbslab
