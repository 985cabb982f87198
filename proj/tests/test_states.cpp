#include <random>

#include "doctest.h"
#include "helpers.hpp"

#include "chordnoise/states.hpp"

using namespace chordnoise;
using chordnoise::testing::max_abs;

namespace {

struct WindowExtremes {
  double max = -1e300, min = 1e300;
  int argmax_q = 0, argmax_p = 0;
};

WindowExtremes scan(const WignerGrid& w, int cq, int cp, int radius) {
  const int m = 2 * w.geometry().n();
  WindowExtremes e;
  for (int dq = -radius; dq <= radius; ++dq) {
    for (int dp = -radius; dp <= radius; ++dp) {
      const int xq = (cq + dq + m) % m, xp = (cp + dp + m) % m;
      const double v = w(xq, xp);
      if (v > e.max) {
        e.max = v;
        e.argmax_q = cq + dq;
        e.argmax_p = cp + dp;
      }
      e.min = std::min(e.min, v);
    }
  }
  return e;
}

}  // namespace

TEST_CASE("state vector and density matrix invariants") {
  Eigen::VectorXcd v(2);
  v << 1.0, 1.0;
  CHECK_THROWS_AS(StateVector{v}, std::invalid_argument);
  CHECK_THROWS_AS(StateVector::normalized(Eigen::VectorXcd::Zero(3)), std::invalid_argument);

  Operator bad = Operator::Identity(2, 2);
  CHECK_THROWS_AS(DensityMatrix{bad}, std::invalid_argument);  // trace 2
  Operator nonherm = Operator::Identity(2, 2) / 2.0;
  nonherm(0, 1) = 0.1;
  CHECK_THROWS_AS(DensityMatrix{nonherm}, std::invalid_argument);
  Operator negative = Operator::Zero(2, 2);
  negative(0, 0) = 1.5;
  negative(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix{negative}, std::invalid_argument);
}

TEST_CASE("coherent state centered at q = 1/2") {
  const TorusGeometry g(32);
  const auto psi = coherent_state(g, 0.5, 0.0);
  const auto& a = psi.amplitudes();
  CHECK(std::abs(a.norm() - 1.0) < 1e-12);
  for (int site = 0; site < 32; ++site) {
    CHECK(std::abs(a(site).imag()) < 1e-14);
    CHECK(a(site).real() > 0.0);
  }
  for (int k = 1; k < 16; ++k) CHECK(std::abs(a(16 + k) - a(16 - k)) < 1e-14);
}

TEST_CASE("coherent state amplitude peak") {
  const TorusGeometry g(32);
  const auto psi = coherent_state(g, 0.4, 0.25);
  Eigen::Index argmax = 0;
  psi.amplitudes().cwiseAbs().maxCoeff(&argmax);
  CHECK(argmax == 13);
}

TEST_CASE("well separated coherent states are orthogonal") {
  const TorusGeometry g(64);
  const auto a = coherent_state(g, 0.25, 0.5);
  const auto b = coherent_state(g, 0.75, 0.5);
  CHECK(std::abs(a.amplitudes().dot(b.amplitudes())) < 1e-6);
}

TEST_CASE("cat states") {
  const TorusGeometry g(32);
  const auto same = cat_state(g, {0.4, 0.25}, {0.4, 0.25});
  CHECK((same.amplitudes() - coherent_state(g, 0.4, 0.25).amplitudes()).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(std::abs(cat_state(g, {0.4, 0.25}, {0.6, 0.75}).amplitudes().norm() - 1.0) < 1e-12);
  const TorusGeometry g64(64);
  CHECK(std::abs(cat_state(g64, {0.4, 0.25}, {0.6, 0.75}).amplitudes().norm() - 1.0) < 1e-12);
}

TEST_CASE("density from pure") {
  Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(2);
  zero(0) = 1.0;
  Operator expected = Operator::Zero(2, 2);
  expected(0, 0) = 1.0;
  CHECK(max_abs(density_from_pure(StateVector(zero)).op() - expected) < 1e-15);

  Eigen::VectorXcd plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  CHECK(max_abs(density_from_pure(StateVector(plus)).op() - Operator::Constant(2, 2, 0.5)) < 1e-15);

  std::mt19937_64 rng(5);
  const auto rho = density_from_pure(chordnoise::testing::random_pure(7, rng));
  CHECK(std::abs((rho.op() * rho.op()).trace() - 1.0) < 1e-12);
}

TEST_CASE("Wigner function of the maximally mixed state is flat on the fundamental subgrid") {
  const TorusGeometry g(8);
  const auto w = wigner_function(DensityMatrix::maximally_mixed(8));
  for (int xq = 0; xq < 16; xq += 2)
    for (int xp = 0; xp < 16; xp += 2) CHECK(w(xq, xp) == doctest::Approx(1.0 / 64).epsilon(1e-12));
  CHECK(w.fundamental_sum() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Wigner function is translation covariant with step 2") {
  const TorusGeometry g(8);
  std::mt19937_64 rng(17);
  const auto rho = chordnoise::testing::random_density(8, rng);
  const auto w = wigner_values(rho.op(), g);
  for (PhasePoint a : {PhasePoint{1, 0}, PhasePoint{0, 1}, PhasePoint{3, 5}}) {
    const Operator t = translation_operator(g, a);
    const auto shifted = wigner_values(t * rho.op() * t.adjoint(), g);
    for (int xq = 0; xq < 16; ++xq)
      for (int xp = 0; xp < 16; ++xp)
        REQUIRE(std::abs(shifted((xq + 2 * a.q) % 16, (xp + 2 * a.p) % 16) - w(xq, xp)) < 1e-14);
  }
}

TEST_CASE("Wigner properties on random states") {
  std::mt19937_64 rng(23);
  for (int n : {3, 8, 16}) {
    const TorusGeometry g(n);
    const auto r1 = chordnoise::testing::random_density(n, rng);
    const auto r2 = chordnoise::testing::random_density(n, rng);
    const auto w1 = wigner_values(r1.op(), g);
    const auto w2 = wigner_values(r2.op(), g);
    CHECK(w1.imag().cwiseAbs().maxCoeff() < 1e-12);
    CHECK(WignerGrid(g, w1.real()).fundamental_sum() == doctest::Approx(1.0).epsilon(1e-10));

    const double a = 0.3;
    const auto mixed = wigner_values(a * r1.op() + (1 - a) * r2.op(), g);
    CHECK(max_abs(mixed - (a * w1 + (1 - a) * w2)) < 1e-12);

    const auto p1 = density_from_pure(chordnoise::testing::random_pure(n, rng));
    const auto p2 = density_from_pure(chordnoise::testing::random_pure(n, rng));
    const double overlap = wigner_overlap_factor(g) *
                           (wigner_function(p1).values().cwiseProduct(wigner_function(p2).values())).sum();
    CHECK(std::abs(overlap - hs_inner(p1.op(), p2.op()).real()) < 1e-10);
  }
}

TEST_CASE("Wigner function of a coherent state peaks at its center") {
  const TorusGeometry g(32);
  const auto w = wigner_function(density_from_pure(coherent_state(g, 0.4, 0.25)));
  // Nearest doubled-grid point to (0.4, 0.25) * 2N = (25.6, 16).
  CHECK(w(26, 16) == doctest::Approx(w.values().maxCoeff()).epsilon(1e-12));
  CHECK(w(26, 16) > 0.0);
}

TEST_CASE("cat state Wigner morphology") {
  const TorusGeometry g(32);
  const auto w = wigner_function(density_from_pure(cat_state(g, {0.4, 0.25}, {0.6, 0.75})));
  const double peak = wigner_function(density_from_pure(coherent_state(g, 0.4, 0.25))).values().maxCoeff();

  const auto blob1 = scan(w, 26, 16, 3);
  CHECK(std::abs(blob1.argmax_q - 25.6) <= 1.0);
  CHECK(std::abs(blob1.argmax_p - 16.0) <= 1.0);
  CHECK(blob1.max > 0.3 * peak);

  const auto blob2 = scan(w, 38, 48, 3);
  CHECK(std::abs(blob2.argmax_q - 38.4) <= 1.0);
  CHECK(std::abs(blob2.argmax_p - 48.0) <= 1.0);
  CHECK(blob2.max > 0.3 * peak);

  // Interference fringes halfway between the blobs take both signs.
  const auto fringe = scan(w, 32, 32, 2);
  CHECK(fringe.max > 0.3 * peak);
  CHECK(fringe.min < -0.3 * peak);
}
