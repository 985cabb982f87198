#include "chordnoise/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

namespace chordnoise {

namespace {

std::vector<Complex> half_roots(int n) {
  std::vector<Complex> roots(2 * static_cast<std::size_t>(n));
  for (int k = 0; k < 2 * n; ++k) roots[k] = std::polar(1.0, kPi * k / n);
  return roots;
}

}  // namespace

void LinearMapSpec::validate() const {
  if (a * d - b * c != 1) {
    throw std::invalid_argument("linear map must have determinant 1, got " +
                                std::to_string(a * d - b * c));
  }
}

PhasePoint LinearMapSpec::apply(const TorusGeometry& geom, PhasePoint x) const {
  return canonical(geom, a * x.q + b * x.p, c * x.q + d * x.p);
}

UnitaryMap::UnitaryMap(Operator op) : op_(std::move(op)) {
  if (op_.rows() == 0 || op_.rows() != op_.cols()) {
    throw std::invalid_argument("unitary must be square and non-empty");
  }
  const auto n = op_.rows();
  const double err = (op_.adjoint() * op_ - Operator::Identity(n, n)).cwiseAbs().maxCoeff();
  if (!(err <= kUnitarityTol)) {
    throw std::invalid_argument("operator is not unitary (deviation " + std::to_string(err) + ")");
  }
}

UnitaryMap UnitaryMap::then_after(const UnitaryMap& other) const {
  return UnitaryMap(op_ * other.op_);
}

UnitaryMap quantize_linear_map(const TorusGeometry& geom, const LinearMapSpec& m) {
  m.validate();
  const long long n = geom.n();
  Operator u = Operator::Zero(n, n);
  if (m.b == 0) {
    if (m.a != 1 || m.d != 1) {
      throw UnquantizableMapError("b = 0 kernel needs a = d = 1");
    }
    if (mod(m.c * n, 2) != 0) {
      throw UnquantizableMapError("shear kernel needs c N = 0 (mod 2)");
    }
    for (long long site = 0; site < n; ++site) {
      u(site, site) = std::polar(1.0, kPi * static_cast<double>(mod(m.c * site * site, 2 * n)) / n);
    }
    return UnitaryMap(std::move(u));
  }
  if (m.b != 1 && m.b != -1) {
    throw UnquantizableMapError("generating-function kernel needs b = +-1, got b = " +
                                std::to_string(m.b));
  }
  if (mod(m.a * n, 2) != 0 || mod(m.d * n, 2) != 0) {
    throw UnquantizableMapError("generating-function kernel needs a N = d N = 0 (mod 2)");
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (long long src = 0; src < n; ++src) {
    for (long long dst = 0; dst < n; ++dst) {
      const long long action = m.b * (m.a * src * src - 2 * src * dst + m.d * dst * dst);
      u(dst, src) = scale * std::polar(1.0, kPi * static_cast<double>(mod(action, 2 * n)) / n);
    }
  }
  return UnitaryMap(std::move(u));
}

UnitaryMap nonlinear_kick(const TorusGeometry& geom, double k) {
  const int n = geom.n();
  Operator u = Operator::Zero(n, n);
  for (int site = 0; site < n; ++site) {
    u(site, site) = std::polar(1.0, -(k * n / (2.0 * kPi)) * std::cos(2.0 * kPi * site / n));
  }
  return UnitaryMap(std::move(u));
}

UnitaryMap perturbed_cat(const TorusGeometry& geom, double k, const LinearMapSpec& m) {
  return quantize_linear_map(geom, m).then_after(nonlinear_kick(geom, k));
}

ChordSuperMatrix::ChordSuperMatrix(TorusGeometry geom, Eigen::MatrixXcd entries)
    : geom_(geom), entries_(std::move(entries)) {
  const auto size = static_cast<Eigen::Index>(geom_.num_points());
  if (entries_.rows() != size || entries_.cols() != size) {
    throw std::invalid_argument("chord supermatrix must be N^2 x N^2");
  }
}

Eigen::MatrixXcd chord_supermatrix_block(const TorusGeometry& geom, const UnitaryMap& u,
                                         const std::vector<PhasePoint>& rows,
                                         const std::vector<PhasePoint>& cols, int threads) {
  const int n = geom.n();
  if (u.dim() != n) {
    throw std::invalid_argument("chord_supermatrix: unitary dimension does not match the torus");
  }
  const auto roots = half_roots(n);
  const Operator& uop = u.op();
  const Operator u_adj = uop.adjoint();
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));

  auto build_column = [&](std::size_t j, Operator& ut) {
    const PhasePoint l = cols[j];
    // U T_l: column s of T_l is phi(s) e_{s + q}.
    for (int s = 0; s < n; ++s) {
      const long long k = mod(static_cast<long long>(l.p) * (2LL * s + l.q), 2LL * n);
      ut.col(s) = uop.col((s + l.q) % n) * roots[k];
    }
    const Operator conj = ut * u_adj;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const PhasePoint r = rows[i];
      Complex acc = 0.0;
      for (int s = 0; s < n; ++s) {
        const long long k = mod(static_cast<long long>(r.p) * (2LL * s + r.q), 2LL * n);
        acc += std::conj(roots[k]) * conj((s + r.q) % n, s);
      }
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc / static_cast<double>(n);
    }
  };

  const std::size_t workers =
      std::clamp<std::size_t>(threads < 1 ? 1 : static_cast<std::size_t>(threads), 1,
                              std::max<std::size_t>(cols.size(), 1));
  if (workers == 1) {
    Operator scratch(n, n);
    for (std::size_t j = 0; j < cols.size(); ++j) build_column(j, scratch);
    return out;
  }
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      Operator scratch(n, n);
      for (std::size_t j = w; j < cols.size(); j += workers) build_column(j, scratch);
    });
  }
  for (auto& t : pool) t.join();
  return out;
}

ChordSuperMatrix chord_supermatrix(const TorusGeometry& geom, const UnitaryMap& u) {
  std::vector<PhasePoint> all;
  all.reserve(geom.num_points());
  for (std::size_t i = 0; i < geom.num_points(); ++i) all.push_back(point_at(geom, i));
  return ChordSuperMatrix(geom, chord_supermatrix_block(geom, u, all, all));
}

}  // namespace chordnoise
