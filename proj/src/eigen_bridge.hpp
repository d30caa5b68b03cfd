#pragma once

// Conversions between the library's row-major matrices and Eigen.

#include <Eigen/Dense>

#include "qchan/matrix.hpp"

namespace qchan::detail {

using EigenCMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
using EigenRMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic>;

inline EigenCMatrix to_eigen(const ComplexMatrix& m) {
    EigenCMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
    return out;
}

inline EigenRMatrix to_eigen(const RealMatrix& m) {
    EigenRMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
    return out;
}

inline ComplexMatrix from_eigen(const EigenCMatrix& m) {
    ComplexMatrix out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
    return out;
}

inline RealMatrix from_eigen(const EigenRMatrix& m) {
    RealMatrix out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
    return out;
}

} // namespace qchan::detail
