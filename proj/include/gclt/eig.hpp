#pragma once

#include <Eigen/Dense>
#include <vector>

namespace gclt {

// Smallest eigenvalue of a symmetric matrix given as a flat row-major array.
inline double min_symmetric_eigenvalue(const std::vector<double>& a, int n) {
  Eigen::MatrixXd M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = a[size_t(i) * n + j];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

}  // namespace gclt
