#include <random>

#include "doctest.h"
#include "helpers.hpp"

#include "chordnoise/dynamics.hpp"

using namespace chordnoise;
using chordnoise::testing::max_abs;

namespace {

// Largest deviation of U T_x U^dag from a unimodular multiple of T_{M x}.
double covariance_error(const TorusGeometry& g, const UnitaryMap& u, const LinearMapSpec& m) {
  double worst = 0.0;
  for (std::size_t i = 0; i < g.num_points(); ++i) {
    const PhasePoint x = point_at(g, i);
    const Operator lhs = u.op() * translation_operator(g, x) * u.op().adjoint();
    const Operator target = translation_operator(g, m.apply(g, x));
    const Complex c = (target.adjoint() * lhs).trace() / double(g.n());
    worst = std::max(worst, std::abs(std::abs(c) - 1.0));
    worst = std::max(worst, max_abs(lhs - c * target));
  }
  return worst;
}

}  // namespace

TEST_CASE("linear map validation") {
  CHECK_NOTHROW(LinearMapSpec::arnold_cat().validate());
  CHECK_THROWS_AS((LinearMapSpec{2, 1, 1, 2}).validate(), std::invalid_argument);
  const TorusGeometry g(10);
  CHECK_THROWS_AS(quantize_linear_map(g, {2, 1, 1, 2}), std::invalid_argument);
  CHECK(LinearMapSpec::arnold_cat().apply(g, {3, 4}) == PhasePoint{7, 1});
}

TEST_CASE("identity map quantizes to the identity") {
  const TorusGeometry g(6);
  CHECK(max_abs(quantize_linear_map(g, {1, 0, 0, 1}).op() - Operator::Identity(6, 6)) < 1e-15);
}

TEST_CASE("unquantizable maps are rejected") {
  CHECK_THROWS_AS(quantize_linear_map(TorusGeometry(7), LinearMapSpec::arnold_cat()), UnquantizableMapError);
  CHECK_THROWS_AS(quantize_linear_map(TorusGeometry(8), {1, 2, 0, 1}), UnquantizableMapError);
  CHECK_THROWS_AS(quantize_linear_map(TorusGeometry(5), {1, 0, 1, 1}), UnquantizableMapError);
}

TEST_CASE("cat map is covariant on every translation") {
  const TorusGeometry g(10);
  const auto u = quantize_linear_map(g, LinearMapSpec::arnold_cat());
  CHECK(covariance_error(g, u, LinearMapSpec::arnold_cat()) < 1e-12);
}

TEST_CASE("other supported kernels are covariant") {
  const TorusGeometry g(6);
  for (const LinearMapSpec m : {LinearMapSpec{2, -1, 1, 0}, LinearMapSpec{0, 1, -1, 0}, LinearMapSpec{1, 0, 2, 1},
                                LinearMapSpec{2, 1, 1, 1}}) {
    INFO("M = " << m.a << " " << m.b << " " << m.c << " " << m.d);
    CHECK(covariance_error(g, quantize_linear_map(g, m), m) < 1e-12);
  }
  const TorusGeometry g4(4);
  CHECK(covariance_error(g4, quantize_linear_map(g4, {1, 0, 1, 1}), {1, 0, 1, 1}) < 1e-12);
}

TEST_CASE("cat map is unitary at large N") {
  for (int n : {50, 100}) {
    const auto u = quantize_linear_map(TorusGeometry(n), LinearMapSpec::arnold_cat());
    CHECK(max_abs(u.op().adjoint() * u.op() - Operator::Identity(n, n)) < 1e-12);
  }
}

TEST_CASE("nonlinear kick") {
  const TorusGeometry g(12);
  CHECK(max_abs(nonlinear_kick(g, 0.0).op() - Operator::Identity(12, 12)) < 1e-15);
  const auto kick = nonlinear_kick(g, 0.3);
  CHECK(std::abs(kick.op()(0, 0) - std::polar(1.0, -0.3 * 12 / (2 * kPi))) < 1e-14);
  for (int p = 0; p < 12; ++p) {
    const Operator v = translation_operator(g, {0, p});
    CHECK(max_abs(kick.op() * v - v * kick.op()) < 1e-14);
  }
  const auto cat = quantize_linear_map(g, LinearMapSpec::arnold_cat());
  CHECK(max_abs(perturbed_cat(g, 0.3).op() - cat.op() * kick.op()) < 1e-14);
  CHECK(max_abs(perturbed_cat(g, 0.0).op() - cat.op()) < 1e-15);
}

TEST_CASE("unitary map validation and composition") {
  Operator bad = Operator::Identity(3, 3);
  bad(0, 0) = 1.001;
  CHECK_THROWS_AS(UnitaryMap{bad}, std::invalid_argument);
  std::mt19937_64 rng(2);
  const UnitaryMap a(chordnoise::testing::random_unitary(5, rng));
  const UnitaryMap b(chordnoise::testing::random_unitary(5, rng));
  CHECK(max_abs(a.then_after(b).op() - a.op() * b.op()) < 1e-14);
}

TEST_CASE("chord supermatrix of simple unitaries") {
  const TorusGeometry g(6);
  const auto id = chord_supermatrix(g, UnitaryMap(Operator::Identity(6, 6)));
  CHECK(max_abs(id.entries() - Eigen::MatrixXcd::Identity(36, 36)) < 1e-14);

  const PhasePoint beta{2, 5};
  const auto shift = chord_supermatrix(g, UnitaryMap(translation_operator(g, beta)));
  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(36, 36);
  for (std::size_t i = 0; i < 36; ++i) {
    expected(i, i) = std::polar(1.0, 2.0 * kPi * mod(wedge(point_at(g, i), beta), 6) / 6.0);
  }
  CHECK(max_abs(shift.entries() - expected) < 1e-13);

  const auto cat = chord_supermatrix(g, quantize_linear_map(g, LinearMapSpec::arnold_cat()));
  for (std::size_t j = 0; j < 36; ++j) {
    const PhasePoint l = point_at(g, j);
    const PhasePoint image = LinearMapSpec::arnold_cat().apply(g, l);
    for (std::size_t i = 0; i < 36; ++i) {
      const double mag = std::abs(cat.entries()(i, j));
      REQUIRE(std::abs(mag - (point_at(g, i) == image ? 1.0 : 0.0)) < 1e-12);
    }
  }
}

TEST_CASE("chord supermatrix propagates chord coefficients") {
  std::mt19937_64 rng(19);
  const TorusGeometry g(8);
  const UnitaryMap u(chordnoise::testing::random_unitary(8, rng));
  const UnitaryMap v = perturbed_cat(g, 0.4);
  const auto su = chord_supermatrix(g, u).entries();
  const auto sv = chord_supermatrix(g, v).entries();

  const auto rho = chordnoise::testing::random_density(8, rng);
  const auto before = chord_transform(rho.op(), g);
  const auto after = chord_transform(u.op() * rho.op() * u.op().adjoint(), g);
  Eigen::VectorXcd c(64), c_after(64);
  for (int i = 0; i < 64; ++i) {
    c(i) = before.coeffs()[i];
    c_after(i) = after.coeffs()[i];
  }
  CHECK((su * c - c_after).cwiseAbs().maxCoeff() < 1e-12);

  CHECK(max_abs(chord_supermatrix(g, u.then_after(v)).entries() - su * sv) < 1e-12);
  // Unitary conjugation is unitary on the chord basis.
  CHECK(max_abs(su.adjoint() * su - Eigen::MatrixXcd::Identity(64, 64)) < 1e-12);
}

TEST_CASE("supermatrix blocks match the full matrix for any thread count") {
  const TorusGeometry g(10);
  const auto u = perturbed_cat(g, 0.25, {2, 1, 1, 1});
  const auto full = chord_supermatrix(g, u).entries();
  const std::vector<PhasePoint> rows{{0, 0}, {1, 9}, {4, 4}, {9, 1}};
  const std::vector<PhasePoint> cols{{3, 2}, {0, 0}, {7, 8}};
  const auto one = chord_supermatrix_block(g, u, rows, cols, 1);
  const auto three = chord_supermatrix_block(g, u, rows, cols, 3);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      CHECK(std::abs(one(i, j) - full(point_index(g, rows[i]), point_index(g, cols[j]))) < 1e-13);
  CHECK((one - three).cwiseAbs().maxCoeff() == 0.0);
}
