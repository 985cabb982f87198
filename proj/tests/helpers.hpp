#pragma once

#include <random>

#include "chordnoise/states.hpp"

namespace chordnoise::testing {

inline double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

inline Eigen::MatrixXcd random_complex(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXcd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

// Haar-ish unitary from the QR factor of a Gaussian matrix.
inline Operator random_unitary(int n, std::mt19937_64& rng) {
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(random_complex(n, n, rng));
  return qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
}

// Full-rank mixed state G G^dag / Tr.
inline DensityMatrix random_density(int n, std::mt19937_64& rng) {
  const Eigen::MatrixXcd g = random_complex(n, n, rng);
  Operator rho = g * g.adjoint();
  rho /= rho.trace();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix(rho);
}

inline StateVector random_pure(int n, std::mt19937_64& rng) {
  return StateVector::normalized(random_complex(n, 1, rng).col(0));
}

}  // namespace chordnoise::testing
