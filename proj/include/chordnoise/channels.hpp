#pragma once

// Noise channels whose Kraus operators are proportional to phase-space
// translations:
//
//   S(rho) = (1 - eps) rho + (eps / N) sum_alpha w(alpha) T_alpha rho T_alpha^dag
//
// with w >= 0 and sum_alpha w = N. Every translation T_l is an eigenoperator
// with eigenvalue (1 - eps) + eps * Ct(l), where Ct is the discrete Fourier
// transform of w over the symplectic pairing.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "chordnoise/phase_space.hpp"
#include "chordnoise/states.hpp"

namespace chordnoise {

enum class ChannelFamily { kDepolarizing, kPhaseDampingLine, kGaussian, kCustom };

std::string to_string(ChannelFamily family);

// The congruence n1 p = n2 q + n3 (mod N) has no solution.
class EmptyLineError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct PhaseSpaceLine {
  int n1 = 0;
  int n2 = 0;
  int n3 = 0;
  std::vector<PhasePoint> points;

  int r() const { return static_cast<int>(points.size()); }
};

PhaseSpaceLine line_points(const TorusGeometry& geom, int n1, int n2, int n3);

class DiagonalChordChannel {
 public:
  static constexpr double kWeightSumTol = 1e-10;

  /// Validates epsilon in [0, 1], w >= 0 and sum w = N.
  DiagonalChordChannel(TorusGeometry geom, double epsilon, std::vector<double> weights,
                       ChannelFamily family = ChannelFamily::kCustom,
                       std::optional<double> sigma = std::nullopt);

  const TorusGeometry& geometry() const { return geom_; }
  double epsilon() const { return epsilon_; }
  const std::vector<double>& weights() const { return weights_; }
  double weight(PhasePoint a) const { return weights_[point_index(geom_, a)]; }
  ChannelFamily family() const { return family_; }
  /// Kernel width for the Gaussian family.
  std::optional<double> sigma() const { return sigma_; }

 private:
  TorusGeometry geom_;
  double epsilon_;
  std::vector<double> weights_;
  ChannelFamily family_;
  std::optional<double> sigma_;
};

struct ChannelSpectrum {
  TorusGeometry geometry;
  std::vector<Complex> values;  // indexed by point_index

  Complex operator[](PhasePoint l) const { return values[point_index(geometry, l)]; }
};

using KrausSet = std::vector<Operator>;

DiagonalChordChannel make_depolarizing(const TorusGeometry& geom, double epsilon);
DiagonalChordChannel make_phase_damping_line(const TorusGeometry& geom, const PhaseSpaceLine& line,
                                             double epsilon);
/// Spectrum exp[-2 pi^2 sigma^2 (mu_c^2 + nu_c^2)] in centered chord coordinates, eps = 1.
DiagonalChordChannel make_gaussian(const TorusGeometry& geom, double sigma);

/// Centered Gaussian chord spectrum, the target of make_gaussian.
double gaussian_chord_spectrum(const TorusGeometry& geom, double sigma, PhasePoint l);

ChannelSpectrum channel_spectrum(const DiagonalChordChannel& ch);

/// Closed-form line spectrum, for n1 invertible mod N or n1 = 0 with n2
/// invertible. Returns nullopt otherwise.
std::optional<ChannelSpectrum> line_spectrum_closed_form(const TorusGeometry& geom,
                                                         const PhaseSpaceLine& line,
                                                         double epsilon);

/// Fast path: modulation of chord coefficients.
Operator apply_channel(const DiagonalChordChannel& ch, const Operator& a);
DensityMatrix apply_channel(const DiagonalChordChannel& ch, const DensityMatrix& rho);

/// Slow path: the explicit translation Kraus sum built from dense matrices.
Operator apply_channel_kraus(const DiagonalChordChannel& ch, const Operator& a);
DensityMatrix apply_channel_kraus(const DiagonalChordChannel& ch, const DensityMatrix& rho);

KrausSet kraus_operators(const DiagonalChordChannel& ch);
/// max |sum M^dag M - I|.
double kraus_completeness_error(const KrausSet& kraus);

/// Superoperator matrix in the skew-projector basis |i><j|, row-major
/// vectorization (index i * N + j). Column k holds vec(S(|k / N><k % N|)).
Eigen::MatrixXcd superoperator_matrix(const DiagonalChordChannel& ch);
Eigen::MatrixXcd conjugation_superoperator(const Operator& u);

/// The N^2 - 1 generalized Gell-Mann generators: U_jk, V_jk, then W_l.
std::vector<Operator> su_n_generators(int n);

/// (1 - eps) I.I + (eps / N) sum_mu Q_mu . Q_mu built from the SU(N)
/// generators, in the skew-projector basis. Restricted to N <= 16.
Eigen::MatrixXcd su_n_generator_superoperator(const TorusGeometry& geom, double epsilon);

/// n * n^-1 = 1 mod N, when gcd(n, N) = 1.
std::optional<int> modular_inverse(long long n, int modulus);

}  // namespace chordnoise
