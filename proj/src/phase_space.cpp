#include "chordnoise/phase_space.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace chordnoise {

namespace {

// exp(i pi k / N) for k in [0, 2N).
std::vector<Complex> half_roots(int n) {
  std::vector<Complex> roots(2 * static_cast<std::size_t>(n));
  for (int k = 0; k < 2 * n; ++k) {
    roots[k] = std::polar(1.0, kPi * k / n);
  }
  return roots;
}

}  // namespace

TorusGeometry::TorusGeometry(int n) : n_(n) {
  if (n < 2) {
    throw std::invalid_argument("torus dimension must be >= 2, got " + std::to_string(n));
  }
}

PhasePoint canonical(const TorusGeometry& geom, long long q, long long p) {
  return {static_cast<int>(mod(q, geom.n())), static_cast<int>(mod(p, geom.n()))};
}

long long wedge(PhasePoint lambda, PhasePoint alpha) {
  return static_cast<long long>(lambda.q) * alpha.p - static_cast<long long>(lambda.p) * alpha.q;
}

Operator translation_operator(const TorusGeometry& geom, PhasePoint alpha) {
  const int n = geom.n();
  const auto roots = half_roots(n);
  Operator t = Operator::Zero(n, n);
  for (int col = 0; col < n; ++col) {
    const long long k = mod(static_cast<long long>(alpha.p) * (2LL * col + alpha.q), 2LL * n);
    t((col + alpha.q) % n, col) = roots[k];
  }
  return t;
}

Complex composition_phase(const TorusGeometry& geom, PhasePoint a1, PhasePoint a2) {
  const long long n = geom.n();
  const long long q_sum = a1.q + a2.q;
  const long long p_sum = a1.p + a2.p;
  const long long wraps_q = q_sum / n;
  const long long wraps_p = p_sum / n;
  const long long q = q_sum % n;
  const long long p = p_sum % n;
  // T_(q + N k, p + N l) = (-1)^(p k + q l + N k l) T_(q, p)
  const long long triangle = static_cast<long long>(a1.p) * a2.q - static_cast<long long>(a1.q) * a2.p;
  const long long reduction = n * (p * wraps_q + q * wraps_p + n * wraps_q * wraps_p);
  return std::polar(1.0, kPi * static_cast<double>(mod(triangle + reduction, 2 * n)) / n);
}

Complex hs_inner(const Operator& a, const Operator& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("hs_inner: dimension mismatch");
  }
  return (a.adjoint() * b).trace();
}

ChordSymbol::ChordSymbol(TorusGeometry geom, std::vector<Complex> coeffs)
    : geom_(geom), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != geom_.num_points()) {
    throw std::invalid_argument("chord symbol needs N^2 coefficients");
  }
}

ChordSymbol chord_transform(const Operator& a, const TorusGeometry& geom) {
  const int n = geom.n();
  if (a.rows() != n || a.cols() != n) {
    throw std::invalid_argument("chord_transform: operator dimension does not match the torus");
  }
  const auto roots = half_roots(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<Complex> coeffs(geom.num_points());
  for (int q = 0; q < n; ++q) {
    for (int p = 0; p < n; ++p) {
      Complex acc = 0.0;
      for (int col = 0; col < n; ++col) {
        const long long k = mod(static_cast<long long>(p) * (2LL * col + q), 2LL * n);
        acc += a((col + q) % n, col) * std::conj(roots[k]);
      }
      coeffs[point_index(geom, {q, p})] = acc * scale;
    }
  }
  return ChordSymbol(geom, std::move(coeffs));
}

Operator chord_inverse(const ChordSymbol& s) {
  const auto& geom = s.geometry();
  const int n = geom.n();
  const auto roots = half_roots(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  Operator a = Operator::Zero(n, n);
  for (int q = 0; q < n; ++q) {
    for (int p = 0; p < n; ++p) {
      const Complex c = s[{q, p}];
      if (c == Complex(0.0)) continue;
      for (int col = 0; col < n; ++col) {
        const long long k = mod(static_cast<long long>(p) * (2LL * col + q), 2LL * n);
        a((col + q) % n, col) += c * roots[k];
      }
    }
  }
  return a * scale;
}

}  // namespace chordnoise
