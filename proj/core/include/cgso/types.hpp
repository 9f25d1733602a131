#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace cgso {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using SparseMatrix = Eigen::SparseMatrix<double>;
using Index = Eigen::Index;

} // namespace cgso
