#pragma once

#include <utility>

#include "chordnoise/phase_space.hpp"

namespace chordnoise {

/// A normalized pure state in the position basis.
class StateVector {
 public:
  /// Throws std::invalid_argument if the norm differs from 1 by more than 1e-12.
  explicit StateVector(Eigen::VectorXcd amplitudes);

  /// Normalizes the input; throws if it is zero.
  static StateVector normalized(Eigen::VectorXcd amplitudes);

  int dim() const { return static_cast<int>(amps_.size()); }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }

 private:
  Eigen::VectorXcd amps_;
};

/// Hermitian, unit-trace, positive semidefinite operator.
class DensityMatrix {
 public:
  static constexpr double kHermitianTol = 1e-12;
  static constexpr double kTraceTol = 1e-12;
  static constexpr double kPositivityTol = 1e-10;

  /// Validates the invariants; throws std::invalid_argument naming the one violated.
  explicit DensityMatrix(Operator op);

  int dim() const { return static_cast<int>(op_.rows()); }
  const Operator& op() const { return op_; }

  static DensityMatrix maximally_mixed(int dim);

 private:
  Operator op_;
};

/// Discrete Wigner function on the doubled 2N x 2N grid. Entry (xq, xp)
/// sits at phase-space point (xq / 2, xp / 2); the even-even subgrid holds the
/// integer points and sums to Tr(rho).
class WignerGrid {
 public:
  WignerGrid(TorusGeometry geom, Eigen::MatrixXd values);

  const TorusGeometry& geometry() const { return geom_; }
  const Eigen::MatrixXd& values() const { return values_; }
  double operator()(int xq, int xp) const { return values_(xq, xp); }

  /// Sum over the N x N subgrid of even (xq, xp).
  double fundamental_sum() const;

 private:
  TorusGeometry geom_;
  Eigen::MatrixXd values_;
};

/// Coefficient relating the Wigner inner product to the Hilbert-Schmidt one:
/// Tr(rho1 rho2) = wigner_overlap_factor(N) * sum_x W1(x) W2(x).
double wigner_overlap_factor(const TorusGeometry& geom);

/// Periodized circular Gaussian centered at (q0, p0) in unit-torus coordinates.
StateVector coherent_state(const TorusGeometry& geom, double q0, double p0);

/// Equal-weight superposition (relative phase 0) of two coherent states.
StateVector cat_state(const TorusGeometry& geom, std::pair<double, double> c1,
                      std::pair<double, double> c2);

DensityMatrix density_from_pure(const StateVector& psi);

/// Discrete Wigner function of any operator; real when rho is Hermitian.
Eigen::MatrixXcd wigner_values(const Operator& rho, const TorusGeometry& geom);

WignerGrid wigner_function(const DensityMatrix& rho);

}  // namespace chordnoise
