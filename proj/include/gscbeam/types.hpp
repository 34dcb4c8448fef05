#ifndef GSCBEAM_TYPES_HPP
#define GSCBEAM_TYPES_HPP

#include <cmath>
#include <complex>

#include <Eigen/Dense>

namespace gscbeam {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

// Floor returned instead of -inf for degenerate SINR ratios.
inline constexpr double kSinrFloorDb = -300.0;

inline double to_db(double x) { return 10.0 * std::log10(x); }
inline double from_db(double x) { return std::pow(10.0, x / 10.0); }

}  // namespace gscbeam

#endif
