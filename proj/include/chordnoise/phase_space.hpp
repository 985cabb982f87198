#pragma once

// Discrete toroidal phase space: geometry, Weyl-Heisenberg translations and
// the chord (translation-basis) representation of operators.

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace chordnoise {

using Complex = std::complex<double>;
using Operator = Eigen::MatrixXcd;

inline constexpr double kPi = 3.14159265358979323846;

// Euclidean remainder in [0, n).
inline long long mod(long long value, long long n) {
  const long long r = value % n;
  return r < 0 ? r + n : r;
}

class TorusGeometry {
 public:
  explicit TorusGeometry(int n);

  int n() const { return n_; }
  double hbar_eff() const { return 1.0 / (2.0 * kPi * n_); }
  std::size_t num_points() const {
    return static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_);
  }

  bool operator==(const TorusGeometry&) const = default;

 private:
  int n_;
};

// A grid point (q, p) of the N x N torus, always stored in canonical form.
struct PhasePoint {
  int q = 0;
  int p = 0;

  bool operator==(const PhasePoint&) const = default;
};

PhasePoint canonical(const TorusGeometry& geom, long long q, long long p);

// Row-major linear index q * N + p, used for every N^2-sized table.
inline std::size_t point_index(const TorusGeometry& geom, PhasePoint a) {
  return static_cast<std::size_t>(a.q) * geom.n() + a.p;
}
inline PhasePoint point_at(const TorusGeometry& geom, std::size_t index) {
  return {static_cast<int>(index / geom.n()), static_cast<int>(index % geom.n())};
}

// Representative of a coordinate in [-N/2, N/2).
inline int centered(const TorusGeometry& geom, int coord) {
  const int n = geom.n();
  return coord >= (n + 1) / 2 ? coord - n : coord;
}

// lambda ^ alpha = mu * p - nu * q for lambda = (mu, nu), alpha = (q, p).
long long wedge(PhasePoint lambda, PhasePoint alpha);

// Sign s of the conjugation rule T_a T_l T_a^dag = exp(s * 2 pi i / N * (l ^ a)) T_l.
// Fixed by the group law; guarded by a regression test.
inline constexpr int kConjugationSign = +1;

// T_(q,p) |n> = exp[(2 pi i / N) p (n + q / 2)] |n + q mod N>.
Operator translation_operator(const TorusGeometry& geom, PhasePoint alpha);

// Phase c with T_a1 T_a2 = c * T_{(a1 + a2) mod N}, including the sign picked
// up when the summed label is reduced to its canonical representative.
Complex composition_phase(const TorusGeometry& geom, PhasePoint a1, PhasePoint a2);

// Tr(A^dag B).
Complex hs_inner(const Operator& a, const Operator& b);

class ChordSymbol {
 public:
  ChordSymbol(TorusGeometry geom, std::vector<Complex> coeffs);

  const TorusGeometry& geometry() const { return geom_; }
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  std::vector<Complex>& coeffs() { return coeffs_; }

  Complex operator[](PhasePoint a) const { return coeffs_[point_index(geom_, a)]; }
  Complex& operator[](PhasePoint a) { return coeffs_[point_index(geom_, a)]; }

 private:
  TorusGeometry geom_;
  std::vector<Complex> coeffs_;
};

// a(alpha) = Tr(A T_alpha^dag) / sqrt(N).
ChordSymbol chord_transform(const Operator& a, const TorusGeometry& geom);

// A = sum_alpha a(alpha) T_alpha / sqrt(N).
Operator chord_inverse(const ChordSymbol& s);

}  // namespace chordnoise
