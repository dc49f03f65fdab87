// dense_oracle.hpp — dense eigensolver reference for the finite-lattice model.
#pragma once

#include <complex>
#include <vector>

#include <Eigen/Eigenvalues>

#include "magnonbath/oracle.hpp"

namespace testref {

struct DenseLines {
  std::vector<double> energy;
  std::vector<double> weight;
};

// Full diagonalisation of the arrowhead matrix; weights are the squared
// impurity components of the eigenvectors.
inline DenseLines dense_arrowhead(const magnonbath::oracle::Arrowhead& arrow) {
  const Eigen::Index n = static_cast<Eigen::Index>(arrow.level.size()) + 1;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  m(0, 0) = arrow.omega0;
  for (Eigen::Index j = 1; j < n; ++j) {
    m(j, j) = arrow.level[j - 1];
    m(0, j) = m(j, 0) = arrow.coupling[j - 1];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  DenseLines out;
  for (Eigen::Index j = 0; j < n; ++j) {
    out.energy.push_back(es.eigenvalues()(j));
    const double c = es.eigenvectors()(0, j);
    out.weight.push_back(c * c);
  }
  return out;
}

inline std::complex<double> lines_amplitude(const DenseLines& lines, double t) {
  std::complex<double> phi{};
  for (std::size_t j = 0; j < lines.energy.size(); ++j)
    phi += lines.weight[j] *
           std::exp(std::complex<double>{0.0, -lines.energy[j] * t});
  return phi;
}

}  // namespace testref
