#pragma once

#include <Eigen/Dense>

namespace dpoem {

using Vector = Eigen::VectorXd;

/// Agent-stacked matrix: row i holds agent i's d-vector.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

}  // namespace dpoem
