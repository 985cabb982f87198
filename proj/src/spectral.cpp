#include "chordnoise/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

namespace chordnoise {

namespace {

double phase_0_2pi(Complex z) {
  double phi = std::arg(z);
  if (phi < 0.0) phi += 2.0 * kPi;
  // -0.0 and values that round up to 2 pi fold back to 0
  if (phi >= 2.0 * kPi) phi = 0.0;
  return phi;
}

// Moduli equal to 12 digits are treated as ties.
long long modulus_key(Complex z) { return std::llround(std::abs(z) * 1e12); }

}  // namespace

void sort_spectrum(std::vector<Complex>& values) {
  std::sort(values.begin(), values.end(), [](Complex x, Complex y) {
    const auto kx = modulus_key(x), ky = modulus_key(y);
    if (kx != ky) return kx > ky;
    return phase_0_2pi(x) < phase_0_2pi(y);
  });
}

std::vector<PhasePoint> truncation_window(const TorusGeometry& geom, double sigma, double a_coeff) {
  if (!(sigma > 0.0) || !(a_coeff > 0.0)) {
    throw std::invalid_argument("truncation needs sigma > 0 and a > 0");
  }
  const double half_width = a_coeff / (2.0 * kPi * sigma);
  auto inside = [&](int coord) {
    return std::abs(centered(geom, coord) + 0.5) <= half_width;
  };
  std::vector<PhasePoint> kept;
  for (int q = 0; q < geom.n(); ++q) {
    if (!inside(q)) continue;
    for (int p = 0; p < geom.n(); ++p) {
      if (inside(p)) kept.push_back({q, p});
    }
  }
  return kept;
}

TruncatedPropagator build_noisy_propagator(const DiagonalChordChannel& ch, const UnitaryMap& u,
                                           double a_coeff, int threads) {
  if (!ch.sigma()) {
    throw std::invalid_argument("truncated propagator needs a Gaussian channel");
  }
  const auto& geom = ch.geometry();
  const double sigma = *ch.sigma();
  auto kept = truncation_window(geom, sigma, a_coeff);
  const auto spectrum = channel_spectrum(ch);

  Eigen::MatrixXcd m = chord_supermatrix_block(geom, u, kept, kept, threads);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    m.row(i) *= spectrum[kept[static_cast<std::size_t>(i)]];
  }
  TruncatedPropagator tp{geom, sigma, a_coeff, std::move(kept), std::move(m), false};
  tp.covers_all_modes = tp.kept_modes.size() == geom.num_points();
  return tp;
}

TruncatedPropagator build_full_propagator(const DiagonalChordChannel& ch, const UnitaryMap& u) {
  const auto& geom = ch.geometry();
  if (geom.n() > 16) {
    throw std::invalid_argument("full propagator build is limited to N <= 16");
  }
  const auto spectrum = channel_spectrum(ch);
  Eigen::MatrixXcd m = chord_supermatrix(geom, u).entries();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    m.row(i) *= spectrum.values[static_cast<std::size_t>(i)];
  }
  std::vector<PhasePoint> all;
  for (std::size_t i = 0; i < geom.num_points(); ++i) all.push_back(point_at(geom, i));
  return TruncatedPropagator{geom, 0.0, 0.0, std::move(all), std::move(m), true};
}

SpectrumResult leading_spectrum(const TruncatedPropagator& tp, int count) {
  if (count < 0 || count > tp.dim()) {
    throw std::invalid_argument("requested " + std::to_string(count) + " eigenvalues of a " +
                                std::to_string(tp.dim()) + "-dimensional propagator");
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(tp.matrix, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw EigenSolverError("complex eigensolver did not converge");
  }
  std::vector<Complex> values(solver.eigenvalues().begin(), solver.eigenvalues().end());
  sort_spectrum(values);
  values.resize(static_cast<std::size_t>(count));
  return SpectrumResult{std::move(values), tp.dim()};
}

double stability_report(const SpectrumResult& s1, const SpectrumResult& s2, int count) {
  const auto n1 = static_cast<int>(s1.eigenvalues.size());
  const auto n2 = static_cast<int>(s2.eigenvalues.size());
  if (count < 0 || count > std::min(n1, n2)) {
    throw std::invalid_argument("stability count exceeds available eigenvalues");
  }
  const int pool = std::min(n2, 2 * count);
  std::vector<bool> used(static_cast<std::size_t>(pool), false);
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    int best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (int j = 0; j < pool; ++j) {
      if (used[j]) continue;
      const double dist = std::abs(s1.eigenvalues[i] - s2.eigenvalues[j]);
      if (dist < best_dist) {
        best_dist = dist;
        best = j;
      }
    }
    used[best] = true;
    worst = std::max(worst, best_dist);
  }
  return worst;
}

}  // namespace chordnoise
