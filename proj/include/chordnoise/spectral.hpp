#pragma once

// Leading spectrum of the noisy one-step propagator L = S o U in the chord
// basis. With a Gaussian noise kernel, rows of L far from the origin are
// multiplied by a negligible spectrum value and can be dropped, leaving a
// matrix of dimension about 4 (a / (2 pi sigma))^2 instead of N^2.

#include <stdexcept>
#include <vector>

#include "chordnoise/channels.hpp"
#include "chordnoise/dynamics.hpp"

namespace chordnoise {

class EigenSolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TruncatedPropagator {
  TorusGeometry geometry;
  double sigma = 0.0;    // 0 for untruncated oracle builds
  double a_coeff = 0.0;  // 0 for untruncated oracle builds
  std::vector<PhasePoint> kept_modes;
  Eigen::MatrixXcd matrix;
  bool covers_all_modes = false;

  int dim() const { return static_cast<int>(kept_modes.size()); }
};

struct SpectrumResult {
  std::vector<Complex> eigenvalues;  // descending modulus, then ascending phase in [0, 2 pi)
  int dim_used = 0;
};

/// Chord modes kept by the square window of half-width a / (2 pi sigma).
///
/// Along each axis the kept centered coordinates m satisfy |m + 1/2| <= a / (2 pi sigma),
/// i.e. unit cells [m, m + 1) centered inside the window. This gives round(2 a / (2 pi sigma))
/// modes per axis, matching the 4 (a / (2 pi sigma))^2 accounting. Modes are listed in
/// point_index order.
std::vector<PhasePoint> truncation_window(const TorusGeometry& geom, double sigma, double a_coeff);

/// Truncated propagator for a Gaussian channel. Only the kept rows and
/// columns of the unitary supermatrix are computed.
TruncatedPropagator build_noisy_propagator(const DiagonalChordChannel& ch, const UnitaryMap& u,
                                           double a_coeff, int threads = 1);

/// Untruncated N^2 x N^2 propagator for any diagonal channel, N <= 16.
TruncatedPropagator build_full_propagator(const DiagonalChordChannel& ch, const UnitaryMap& u);

/// Full dense eigendecomposition; returns the `count` leading eigenvalues.
SpectrumResult leading_spectrum(const TruncatedPropagator& tp, int count);

/// Sorts in place by descending modulus, ties by ascending phase in [0, 2 pi).
void sort_spectrum(std::vector<Complex>& values);

/// Max distance between the `count` leading eigenvalues of s1 and their
/// partners in s2. Each eigenvalue of s1, taken in modulus order, claims the
/// nearest unclaimed eigenvalue among the leading 2 * count of s2.
double stability_report(const SpectrumResult& s1, const SpectrumResult& s2, int count);

}  // namespace chordnoise
