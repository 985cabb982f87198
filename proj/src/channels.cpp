#include "chordnoise/channels.hpp"

#include <cmath>
#include <numeric>

namespace chordnoise {

namespace {

void check_epsilon(double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("epsilon must lie in [0, 1], got " + std::to_string(epsilon));
  }
}

// K(a, b) = exp(sign * 2 pi i a b / N)
Eigen::MatrixXcd fourier_kernel(int n, int sign) {
  Eigen::MatrixXcd k(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const long long idx = mod(static_cast<long long>(sign) * a * b, n);
      k(a, b) = std::polar(1.0, 2.0 * kPi * static_cast<double>(idx) / n);
    }
  }
  return k;
}

Eigen::MatrixXd weight_table(const DiagonalChordChannel& ch) {
  const int n = ch.geometry().n();
  Eigen::MatrixXd w(n, n);
  for (int q = 0; q < n; ++q) {
    for (int p = 0; p < n; ++p) w(q, p) = ch.weight({q, p});
  }
  return w;
}

}  // namespace

std::string to_string(ChannelFamily family) {
  switch (family) {
    case ChannelFamily::kDepolarizing: return "depolarizing";
    case ChannelFamily::kPhaseDampingLine: return "pdc-line";
    case ChannelFamily::kGaussian: return "gaussian";
    case ChannelFamily::kCustom: return "custom";
  }
  return "unknown";
}

std::optional<int> modular_inverse(long long n, int modulus) {
  const long long a = mod(n, modulus);
  for (long long x = 1; x < modulus; ++x) {
    if ((a * x) % modulus == 1 % modulus) return static_cast<int>(x);
  }
  return std::nullopt;
}

PhaseSpaceLine line_points(const TorusGeometry& geom, int n1, int n2, int n3) {
  if (n1 == 0 && n2 == 0) {
    throw std::invalid_argument("line needs (n1, n2) != (0, 0)");
  }
  const int n = geom.n();
  PhaseSpaceLine line{n1, n2, n3, {}};
  for (int q = 0; q < n; ++q) {
    for (int p = 0; p < n; ++p) {
      if (mod(static_cast<long long>(n1) * p - static_cast<long long>(n2) * q - n3, n) == 0) {
        line.points.push_back({q, p});
      }
    }
  }
  if (line.points.empty()) {
    throw EmptyLineError("no grid point satisfies " + std::to_string(n1) + " p = " +
                         std::to_string(n2) + " q + " + std::to_string(n3) + " (mod " +
                         std::to_string(n) + ")");
  }
  return line;
}

DiagonalChordChannel::DiagonalChordChannel(TorusGeometry geom, double epsilon,
                                           std::vector<double> weights, ChannelFamily family,
                                           std::optional<double> sigma)
    : geom_(geom), epsilon_(epsilon), weights_(std::move(weights)), family_(family), sigma_(sigma) {
  check_epsilon(epsilon_);
  if (weights_.size() != geom_.num_points()) {
    throw std::invalid_argument("channel needs N^2 weights");
  }
  double total = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("channel weights must be finite and nonnegative");
    }
    total += w;
  }
  if (std::abs(total - geom_.n()) > kWeightSumTol) {
    throw std::invalid_argument("channel weights must sum to N (trace preservation)");
  }
}

DiagonalChordChannel make_depolarizing(const TorusGeometry& geom, double epsilon) {
  check_epsilon(epsilon);
  std::vector<double> w(geom.num_points(), 1.0 / geom.n());
  return DiagonalChordChannel(geom, epsilon, std::move(w), ChannelFamily::kDepolarizing);
}

DiagonalChordChannel make_phase_damping_line(const TorusGeometry& geom, const PhaseSpaceLine& line,
                                             double epsilon) {
  check_epsilon(epsilon);
  if (line.points.empty()) {
    throw EmptyLineError("phase damping needs a nonempty line");
  }
  std::vector<double> w(geom.num_points(), 0.0);
  const double value = static_cast<double>(geom.n()) / line.r();
  for (const auto& pt : line.points) {
    w[point_index(geom, canonical(geom, pt.q, pt.p))] = value;
  }
  return DiagonalChordChannel(geom, epsilon, std::move(w), ChannelFamily::kPhaseDampingLine);
}

double gaussian_chord_spectrum(const TorusGeometry& geom, double sigma, PhasePoint l) {
  const double mu = centered(geom, l.q);
  const double nu = centered(geom, l.p);
  return std::exp(-2.0 * kPi * kPi * sigma * sigma * (mu * mu + nu * nu));
}

DiagonalChordChannel make_gaussian(const TorusGeometry& geom, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("gaussian sigma must be positive, got " + std::to_string(sigma));
  }
  const int n = geom.n();
  Eigen::MatrixXcd target(n, n);
  for (int mu = 0; mu < n; ++mu) {
    for (int nu = 0; nu < n; ++nu) target(mu, nu) = gaussian_chord_spectrum(geom, sigma, {mu, nu});
  }
  // w(q, p) = (1/N) sum_{mu, nu} Ct(mu, nu) exp[-s (2 pi i / N)(mu p - nu q)]
  const int s = kConjugationSign;
  const Eigen::MatrixXcd k_minus = fourier_kernel(n, -s);
  const Eigen::MatrixXcd k_plus = fourier_kernel(n, s);
  const Eigen::MatrixXcd over_mu = target.transpose() * k_minus;  // (nu, p)
  const Eigen::MatrixXcd w = k_plus * over_mu / static_cast<double>(n);  // (q, p)

  std::vector<double> weights(geom.num_points());
  double total = 0.0;
  for (int q = 0; q < n; ++q) {
    for (int p = 0; p < n; ++p) {
      double v = w(q, p).real();
      if (v < -1e-12) {
        throw std::domain_error("gaussian kernel weight went negative: " + std::to_string(v));
      }
      v = std::max(v, 0.0);
      weights[point_index(geom, {q, p})] = v;
      total += v;
    }
  }
  for (double& v : weights) v *= n / total;
  return DiagonalChordChannel(geom, 1.0, std::move(weights), ChannelFamily::kGaussian, sigma);
}

ChannelSpectrum channel_spectrum(const DiagonalChordChannel& ch) {
  const auto& geom = ch.geometry();
  const int n = geom.n();
  const int s = kConjugationSign;
  // Ct(mu, nu) = (1/N) sum_{q, p} w(q, p) exp[s (2 pi i / N)(mu p - nu q)]
  const Eigen::MatrixXcd over_p = weight_table(ch).cast<Complex>() * fourier_kernel(n, s);  // (q, mu)
  const Eigen::MatrixXcd ct =
      over_p.transpose() * fourier_kernel(n, -s) / static_cast<double>(n);  // (mu, nu)
  ChannelSpectrum out{geom, std::vector<Complex>(geom.num_points())};
  const double eps = ch.epsilon();
  for (int mu = 0; mu < n; ++mu) {
    for (int nu = 0; nu < n; ++nu) {
      out.values[point_index(geom, {mu, nu})] = (1.0 - eps) + eps * ct(mu, nu);
    }
  }
  return out;
}

std::optional<ChannelSpectrum> line_spectrum_closed_form(const TorusGeometry& geom,
                                                         const PhaseSpaceLine& line,
                                                         double epsilon) {
  check_epsilon(epsilon);
  const int n = geom.n();
  const int s = kConjugationSign;
  ChannelSpectrum out{geom, std::vector<Complex>(geom.num_points())};
  auto fill = [&](auto&& on_line_phase) {
    for (int mu = 0; mu < n; ++mu) {
      for (int nu = 0; nu < n; ++nu) {
        const auto phase = on_line_phase(mu, nu);
        Complex v = 1.0 - epsilon;
        if (phase) v += epsilon * std::polar(1.0, s * 2.0 * kPi * static_cast<double>(*phase) / n);
        out.values[point_index(geom, {mu, nu})] = v;
      }
    }
  };
  if (line.n1 != 0) {
    const auto inv = modular_inverse(line.n1, n);
    if (!inv) return std::nullopt;
    // Only chords with n2 mu = n1 nu survive, with phase mu * n3 / n1.
    fill([&](int mu, int nu) -> std::optional<long long> {
      if (mod(static_cast<long long>(line.n2) * mu - static_cast<long long>(line.n1) * nu, n) != 0)
        return std::nullopt;
      return mod(static_cast<long long>(mu) * line.n3 % n * *inv, n);
    });
    return out;
  }
  const auto inv = modular_inverse(line.n2, n);
  if (!inv) return std::nullopt;
  // Vertical line q = -n3 / n2: only mu = 0 survives, with phase nu * n3 / n2.
  fill([&](int mu, int nu) -> std::optional<long long> {
    if (mu != 0) return std::nullopt;
    return mod(static_cast<long long>(nu) * line.n3 % n * *inv, n);
  });
  return out;
}

Operator apply_channel(const DiagonalChordChannel& ch, const Operator& a) {
  auto chord = chord_transform(a, ch.geometry());
  const auto spectrum = channel_spectrum(ch);
  for (std::size_t i = 0; i < chord.coeffs().size(); ++i) {
    chord.coeffs()[i] *= spectrum.values[i];
  }
  return chord_inverse(chord);
}

DensityMatrix apply_channel(const DiagonalChordChannel& ch, const DensityMatrix& rho) {
  Operator out = apply_channel(ch, rho.op());
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityMatrix(std::move(out));
}

Operator apply_channel_kraus(const DiagonalChordChannel& ch, const Operator& a) {
  const auto& geom = ch.geometry();
  if (a.rows() != geom.n() || a.cols() != geom.n()) {
    throw std::invalid_argument("apply_channel_kraus: dimension mismatch");
  }
  const double eps = ch.epsilon();
  Operator acc = Operator::Zero(a.rows(), a.cols());
  for (std::size_t i = 0; i < geom.num_points(); ++i) {
    const double w = ch.weights()[i];
    if (w == 0.0) continue;
    const Operator t = translation_operator(geom, point_at(geom, i));
    acc += w * (t * a * t.adjoint());
  }
  return (1.0 - eps) * a + (eps / geom.n()) * acc;
}

DensityMatrix apply_channel_kraus(const DiagonalChordChannel& ch, const DensityMatrix& rho) {
  Operator out = apply_channel_kraus(ch, rho.op());
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityMatrix(std::move(out));
}

KrausSet kraus_operators(const DiagonalChordChannel& ch) {
  const auto& geom = ch.geometry();
  const int n = geom.n();
  KrausSet out;
  if (ch.epsilon() < 1.0) {
    out.push_back(std::sqrt(1.0 - ch.epsilon()) * Operator::Identity(n, n));
  }
  for (std::size_t i = 0; i < geom.num_points(); ++i) {
    const double w = ch.weights()[i];
    if (w == 0.0 || ch.epsilon() == 0.0) continue;
    out.push_back(std::sqrt(ch.epsilon() * w / n) * translation_operator(geom, point_at(geom, i)));
  }
  return out;
}

double kraus_completeness_error(const KrausSet& kraus) {
  if (kraus.empty()) return 1.0;
  const auto n = kraus.front().rows();
  Operator sum = Operator::Zero(n, n);
  for (const auto& m : kraus) sum += m.adjoint() * m;
  return (sum - Operator::Identity(n, n)).cwiseAbs().maxCoeff();
}

Eigen::MatrixXcd superoperator_matrix(const DiagonalChordChannel& ch) {
  const int n = ch.geometry().n();
  Eigen::MatrixXcd s(n * n, n * n);
  for (int k = 0; k < n * n; ++k) {
    Operator basis = Operator::Zero(n, n);
    basis(k / n, k % n) = 1.0;
    const Operator image = apply_channel(ch, basis);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) s(i * n + j, k) = image(i, j);
    }
  }
  return s;
}

Eigen::MatrixXcd conjugation_superoperator(const Operator& u) {
  const auto n = u.rows();
  Eigen::MatrixXcd s(n * n, n * n);
  const Operator uc = u.conjugate();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < n; ++k) {
      s.block(i * n, k * n, n, n) = u(i, k) * uc;
    }
  }
  return s;
}

std::vector<Operator> su_n_generators(int n) {
  std::vector<Operator> sym, anti, diag;
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      Operator u = Operator::Zero(n, n);
      u(j, k) = 1.0;
      u(k, j) = 1.0;
      sym.push_back(u);
      Operator v = Operator::Zero(n, n);
      v(j, k) = Complex(0.0, 1.0);
      v(k, j) = Complex(0.0, -1.0);
      anti.push_back(v);
    }
  }
  for (int l = 1; l < n; ++l) {
    Operator w = Operator::Zero(n, n);
    for (int i = 0; i < l; ++i) w(i, i) = 1.0;
    w(l, l) = -static_cast<double>(l);
    diag.push_back(-std::sqrt(2.0 / (l * (l + 1.0))) * w);
  }
  std::vector<Operator> out;
  out.reserve(static_cast<std::size_t>(n) * n - 1);
  out.insert(out.end(), sym.begin(), sym.end());
  out.insert(out.end(), anti.begin(), anti.end());
  out.insert(out.end(), diag.begin(), diag.end());
  return out;
}

Eigen::MatrixXcd su_n_generator_superoperator(const TorusGeometry& geom, double epsilon) {
  check_epsilon(epsilon);
  const int n = geom.n();
  if (n > 16) {
    throw std::invalid_argument("generator superoperator is limited to N <= 16");
  }
  std::vector<Operator> q_basis;
  q_basis.push_back(Operator::Identity(n, n) / std::sqrt(static_cast<double>(n)));
  for (const auto& g : su_n_generators(n)) q_basis.push_back(g / std::sqrt(2.0));

  Eigen::MatrixXcd s = (1.0 - epsilon) * Eigen::MatrixXcd::Identity(n * n, n * n);
  for (const auto& q : q_basis) {
    s += (epsilon / n) * conjugation_superoperator(q);
  }
  return s;
}

}  // namespace chordnoise
