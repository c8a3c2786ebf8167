#ifndef NGDIM_TYPES_HPP
#define NGDIM_TYPES_HPP

#include <Eigen/Dense>
#include <complex>

namespace ngdim {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Complex = std::complex<double>;

}  // namespace ngdim

#endif
