#include "chordnoise/states.hpp"

#include <cmath>
#include <stdexcept>

namespace chordnoise {

namespace {

constexpr int kPeriodizationCutoff = 3;

// Normalization making the even-even subgrid sum equal to Tr(rho).
double wigner_scale(int n) { return 1.0 / (static_cast<double>(n) * n * (n % 2 == 0 ? 4.0 : 2.0)); }

}  // namespace

StateVector::StateVector(Eigen::VectorXcd amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() == 0 || std::abs(amps_.norm() - 1.0) > 1e-12) {
    throw std::invalid_argument("state vector is not normalized");
  }
}

StateVector StateVector::normalized(Eigen::VectorXcd amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw std::invalid_argument("cannot normalize a zero or non-finite vector");
  }
  return StateVector(amplitudes / norm);
}

DensityMatrix::DensityMatrix(Operator op) : op_(std::move(op)) {
  if (op_.rows() == 0 || op_.rows() != op_.cols()) {
    throw std::invalid_argument("density matrix must be square and non-empty");
  }
  if (!op_.allFinite()) {
    throw std::invalid_argument("density matrix has non-finite entries");
  }
  if ((op_ - op_.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol) {
    throw std::invalid_argument("density matrix is not Hermitian");
  }
  if (std::abs(op_.trace() - Complex(1.0)) > kTraceTol) {
    throw std::invalid_argument("density matrix does not have unit trace");
  }
  const Operator hermitian = 0.5 * (op_ + op_.adjoint());
  Eigen::SelfAdjointEigenSolver<Operator> solver(hermitian, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -kPositivityTol) {
    throw std::invalid_argument("density matrix has a negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  return DensityMatrix(Operator::Identity(dim, dim) / static_cast<double>(dim));
}

WignerGrid::WignerGrid(TorusGeometry geom, Eigen::MatrixXd values)
    : geom_(geom), values_(std::move(values)) {
  if (values_.rows() != 2 * geom_.n() || values_.cols() != 2 * geom_.n()) {
    throw std::invalid_argument("Wigner grid must be 2N x 2N");
  }
}

double WignerGrid::fundamental_sum() const {
  double sum = 0.0;
  for (int xq = 0; xq < values_.rows(); xq += 2) {
    for (int xp = 0; xp < values_.cols(); xp += 2) {
      sum += values_(xq, xp);
    }
  }
  return sum;
}

double wigner_overlap_factor(const TorusGeometry& geom) {
  const double n = geom.n();
  const double c = wigner_scale(geom.n());
  return 1.0 / (16.0 * c * c * n * n * n);
}

StateVector coherent_state(const TorusGeometry& geom, double q0, double p0) {
  const int n = geom.n();
  const double nd = n;
  Eigen::VectorXcd amps(n);
  for (int site = 0; site < n; ++site) {
    Complex acc = 0.0;
    for (int m = -kPeriodizationCutoff; m <= kPeriodizationCutoff; ++m) {
      const double x = site / nd + m;
      const double dq = x - q0;
      acc += std::exp(Complex(-kPi * nd * dq * dq, 2.0 * kPi * nd * p0 * x));
    }
    amps(site) = acc;
  }
  return StateVector::normalized(std::move(amps));
}

StateVector cat_state(const TorusGeometry& geom, std::pair<double, double> c1,
                      std::pair<double, double> c2) {
  const auto a = coherent_state(geom, c1.first, c1.second);
  const auto b = coherent_state(geom, c2.first, c2.second);
  return StateVector::normalized(a.amplitudes() + b.amplitudes());
}

DensityMatrix density_from_pure(const StateVector& psi) {
  const auto& v = psi.amplitudes();
  Operator rho = v * v.adjoint();
  // Exact Hermitian symmetry; the outer product is only Hermitian to rounding.
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix(std::move(rho));
}

Eigen::MatrixXcd wigner_values(const Operator& rho, const TorusGeometry& geom) {
  const int n = geom.n();
  const int m = 2 * n;
  const auto chord = chord_transform(rho, geom);
  const double root_n = std::sqrt(static_cast<double>(n));

  // chi(lambda) = Tr(rho T_lambda^dag) on the doubled label grid, where
  // T_(q + N k, p + N l) = (-1)^(p k + q l + N k l) T_(q, p).
  Eigen::MatrixXcd chi(m, m);
  for (int mu = 0; mu < m; ++mu) {
    for (int nu = 0; nu < m; ++nu) {
      const int q = mu % n, k = mu / n;
      const int p = nu % n, l = nu / n;
      const int parity = (p * k + q * l + n * k * l) % 2;
      chi(mu, nu) = (parity ? -root_n : root_n) * chord[{q, p}];
    }
  }

  Eigen::MatrixXcd kernel(m, m);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      kernel(a, b) = std::polar(1.0, 2.0 * kPi * static_cast<double>((a * b) % m) / m);
    }
  }
  // W(xq, xp) = c sum_{mu, nu} chi(mu, nu) exp[-(2 pi i / 2N)(mu xp - nu xq)], so that
  // W of T_a rho T_a^dag is W shifted by 2a.
  const Eigen::MatrixXcd partial = chi * kernel;                   // (mu, xq)
  Eigen::MatrixXcd w = partial.transpose() * kernel.conjugate();  // (xq, xp)
  return w * wigner_scale(n);
}

WignerGrid wigner_function(const DensityMatrix& rho) {
  const TorusGeometry geom(rho.dim());
  return WignerGrid(geom, wigner_values(rho.op(), geom).real());
}

}  // namespace chordnoise
