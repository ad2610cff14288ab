#pragma once

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/float128.hpp>
#include <Eigen/Dense>

namespace arcipm {

// Working precision of every vector and matrix in the library. Iterates are
// carried in IEEE quad so that residuals of order 1e-14 are still resolved to
// many digits when the method converges superlinearly.
using Real = boost::multiprecision::float128;
using Vector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
using Matrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
using Index = Eigen::Index;

using boost::multiprecision::abs;
using boost::multiprecision::asin;
using boost::multiprecision::cbrt;
using boost::multiprecision::cos;
using boost::multiprecision::isfinite;
using boost::multiprecision::pow;
using boost::multiprecision::sin;
using boost::multiprecision::sqrt;

inline Matrix to_real(const Eigen::MatrixXd& m) { return m.cast<Real>(); }
inline Vector to_real(const Eigen::VectorXd& v) { return v.cast<Real>(); }
inline Eigen::MatrixXd to_double(const Matrix& m) { return m.cast<double>(); }
inline Eigen::VectorXd to_double(const Vector& v) { return v.cast<double>(); }

}  // namespace arcipm
